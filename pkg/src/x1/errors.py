"""Exception types shared across the pipeline."""


class X1Error(Exception):
    """Base class for all pipeline errors."""


class UnknownLanguage(X1Error):
    """Tag does not resolve to any language in the closed set."""


class UnknownCountry(X1Error):
    """Country is not covered by the culture-group mapping."""


class ReservedMarkerInPayload(X1Error):
    """Trace or answer text contains a reserved template marker."""


class FedAfterStop(X1Error):
    """A repetition guard received text after it already fired."""


class IndeterminateLanguage(X1Error):
    """Language detection got empty or whitespace-only input."""


class GatewayError(X1Error):
    """Base class for chat-endpoint failures."""


class EndpointUnavailable(GatewayError):
    """Endpoint kept failing after the configured retries."""


class FixtureMiss(GatewayError):
    """Mock endpoint has no recorded response for a request id."""


class ScorerFailure(X1Error):
    """Quality scorer failed; the filtering batch must abort."""


class JoinFailure(X1Error):
    """A translated trace does not join back to any seed trace."""


class NoNumberFound(X1Error):
    """No extractable number in an answer text."""


class NoPivotAvailable(X1Error):
    """No non-English contrast language can be derived for a question."""


class MalformedTrajectory(X1Error):
    """A generated trajectory is missing its required structure."""


class JudgeUnparseable(X1Error):
    """Judge reply could not be parsed even after a retry."""


class AlignmentMismatch(X1Error):
    """Two result sets do not cover the same (question, run) cells."""


class IncompleteRuns(X1Error):
    """A (question, run) cell is missing from a result set."""


class AllVotesInvalid(X1Error):
    """No language produced an extractable numeric vote."""


class SchemaError(X1Error):
    """A dataset row violates the documented schema."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")
