"""Shared data types: questions, trajectories, judgments, and dataset records."""

from __future__ import annotations

from dataclasses import dataclass, field
from decimal import Decimal
from typing import Any

from .languages import Language, canonical_language

# Built-in sampling quotas, used to sanity-check loaded dataset files.
MATH_QUOTA: dict[str, int] = {
    "Bengali": 200,
    "German": 200,
    "English": 200,
    "Spanish": 200,
    "French": 200,
    "Japanese": 200,
    "Russian": 200,
    "Swahili": 200,
    "Thai": 200,
    "Chinese": 200,
}

CULTURE_QUOTA: dict[str, int] = {
    "Arabic": 200,
    "Danish": 122,
    "German": 200,
    "Greek": 100,
    "English": 200,
    "Spanish": 200,
    "Finnish": 142,
    "French": 200,
    "Irish": 157,
    "Scottish Gaelic": 125,
    "Hindi": 200,
    "Indonesian": 200,
    "Italian": 200,
    "Japanese": 200,
    "Korean": 200,
    "Maori": 141,
    "Malay": 130,
    "Dutch": 200,
    "Norwegian": 173,
    "Polish": 123,
    "Portuguese": 200,
    "Russian": 200,
    "Swedish": 200,
    "Tagalog": 200,
    "Chinese": 200,
}


@dataclass(frozen=True)
class GoldAnswer:
    """Reference answer: either a numeric value or a multiple-choice label."""

    kind: str  # "numeric" | "choice-label"
    numeric_value: Decimal | None = None
    label: str | None = None

    def __post_init__(self) -> None:
        if self.kind == "numeric":
            if self.numeric_value is None or self.label is not None:
                raise ValueError("numeric gold must set numeric_value only")
        elif self.kind == "choice-label":
            if self.label is None or self.numeric_value is not None:
                raise ValueError("choice-label gold must set label only")
        else:
            raise ValueError(f"unknown gold kind: {self.kind!r}")

    @classmethod
    def numeric(cls, value: Decimal | int | str) -> GoldAnswer:
        return cls(kind="numeric", numeric_value=Decimal(str(value)))

    @classmethod
    def choice(cls, label: str) -> GoldAnswer:
        return cls(kind="choice-label", label=label)


@dataclass(frozen=True)
class Question:
    """One benchmark or training item."""

    id: str
    text: str
    prompt_language: Language
    source: str
    gold: GoldAnswer | None = None
    culture_knowledge: str | None = None
    country: str | None = None

    @property
    def scenario(self) -> str:
        """"culture" with culture fields, "math" with a gold answer, else "general"."""
        if self.culture_knowledge is not None or self.country is not None:
            return "culture"
        if self.gold is not None:
            return "math"
        return "general"


@dataclass(frozen=True)
class Trajectory:
    """One model response split into thinking-language marker, trace, and answer."""

    thinking_language: Language | None
    trace: str
    answer: str
    raw: str
    truncated_by_guard: bool = False


@dataclass(frozen=True)
class Judgment:
    """Quality score for a single trajectory."""

    score: Decimal
    method: str  # "math-exact" | "culture-judge"
    judge_model: str | None = None
    rationale: str | None = None

    def __post_init__(self) -> None:
        if not (Decimal(0) <= self.score <= Decimal(10)):
            raise ValueError(f"score out of [0, 10]: {self.score}")
        if self.method == "math-exact" and self.score not in (Decimal(0), Decimal(10)):
            raise ValueError("math-exact scores must be exactly 0 or 10")


@dataclass(frozen=True)
class SftRecord:
    """One supervised training row (input/output pair plus provenance)."""

    input: str
    output: str
    meta: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> dict[str, Any]:
        return {"input": self.input, "output": self.output, "meta": dict(self.meta)}


@dataclass(frozen=True)
class DpoRecord:
    """One preference row: prompt with a preferred and a dispreferred response."""

    prompt: str
    chosen: str
    rejected: str
    meta: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.chosen == self.rejected:
            raise ValueError("chosen and rejected responses must differ")

    def to_json(self) -> dict[str, Any]:
        return {
            "prompt": self.prompt,
            "chosen": self.chosen,
            "rejected": self.rejected,
            "meta": dict(self.meta),
        }


@dataclass(frozen=True)
class DatasetSource:
    """Where a question set comes from and the per-language quotas it should meet."""

    name: str  # "mgsm8kinstruct" | "culturebank" | "custom"
    path: str
    per_language_quota: dict[str, int] = field(default_factory=dict)
    scenario: str | None = None  # "math" | "culture"; inferred per row when unset

    def expected_quota(self) -> dict[str, int] | None:
        if self.name == "mgsm8kinstruct":
            return MATH_QUOTA
        if self.name == "culturebank":
            return CULTURE_QUOTA
        return self.per_language_quota or None


@dataclass(frozen=True)
class Sampling:
    """Decoding parameters forwarded to the endpoint."""

    temperature: float = 0.6
    top_p: float = 0.95
    max_new_tokens: int = 32_768


@dataclass(frozen=True)
class ModelEndpoint:
    """One chat-completion endpoint and how to talk to it."""

    model_name: str
    role: str  # "backbone" | "surface" | "judge" | "mock"
    base_url: str = ""
    api_key_env: str = ""
    default_think_language: Language = canonical_language("en")
    sampling: Sampling = Sampling()
    fixture_path: str | None = None

    def __post_init__(self) -> None:
        if self.role == "mock" and not self.fixture_path:
            raise ValueError("mock endpoints require a fixture_path")

    @property
    def is_mock(self) -> bool:
        return self.role == "mock"


@dataclass
class DatasetSummary:
    """Counts reported after emitting a dataset file."""

    total: int = 0
    per_language: dict[str, int] = field(default_factory=dict)
    discarded: int = 0

    def add(self, language: Language | str, n: int = 1) -> None:
        key = language.name if isinstance(language, Language) else language
        self.per_language[key] = self.per_language.get(key, 0) + n
        self.total += n
