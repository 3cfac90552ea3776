"""Adaptive multilingual reasoning data pipeline and evaluation harness."""

from .domain import (
    DatasetSource,
    DpoRecord,
    GoldAnswer,
    Judgment,
    ModelEndpoint,
    Question,
    Sampling,
    SftRecord,
    Trajectory,
)
from .gateway import ChatOutcome, ChatRequest, FixtureStore, Gateway
from .guard import GuardState, truncate_text
from .langid import compliance_flags, detect_language, mixing_profile, segment_sentences
from .languages import LANGUAGES, Language, canonical_language, culture_language_for
from .manifest import RunManifest
from .metrics import (
    SampleResult,
    WtlRates,
    benefit_harm,
    cross_language_std,
    majority_vote,
    mean_at_k,
    win_tie_lose,
)
from .template import build_think_prefix, parse_response, render_think_response

__version__ = "0.1.0"

__all__ = [
    "ChatOutcome",
    "ChatRequest",
    "DatasetSource",
    "DpoRecord",
    "FixtureStore",
    "Gateway",
    "GoldAnswer",
    "GuardState",
    "Judgment",
    "LANGUAGES",
    "Language",
    "ModelEndpoint",
    "Question",
    "RunManifest",
    "SampleResult",
    "Sampling",
    "SftRecord",
    "Trajectory",
    "WtlRates",
    "benefit_harm",
    "build_think_prefix",
    "canonical_language",
    "compliance_flags",
    "cross_language_std",
    "culture_language_for",
    "detect_language",
    "majority_vote",
    "mean_at_k",
    "mixing_profile",
    "parse_response",
    "render_think_response",
    "segment_sentences",
    "truncate_text",
    "win_tie_lose",
]
