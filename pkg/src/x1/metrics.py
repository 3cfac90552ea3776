"""Pure statistics over benchmark results: accuracy, dispersion, win/tie/lose,
benefit/harm, thinking-language frequency, majority voting, mixing analysis.

All functions are deterministic and side-effect free. Percentages are
computed as 100 * count / total so that exact fixture counts reproduce
exact published rates.
"""

from __future__ import annotations

import statistics
from dataclasses import dataclass
from decimal import Decimal
from typing import Any, Iterable, Mapping, Sequence

from .datasets import language_of_question_id
from .domain import GoldAnswer
from .errors import (
    AlignmentMismatch,
    AllVotesInvalid,
    IncompleteRuns,
    NoNumberFound,
)
from .languages import Language, canonical_language, language_order
from .step2 import _numbers_match, extract_numeric_answer


@dataclass(frozen=True)
class SampleResult:
    """Outcome of one benchmark item in one run."""

    question_id: str
    run_index: int
    correct: bool
    raw_score: float = 0.0
    chosen_think_language: Language | None = None
    switched: bool = False
    compliance_thinking: bool = False
    compliance_answer: bool = False
    mixing_rate: float = 0.0
    truncated: bool = False
    error: str | None = None

    @property
    def compliance_both(self) -> bool:
        return self.compliance_thinking and self.compliance_answer

    @property
    def language(self) -> Language | None:
        return language_of_question_id(self.question_id)

    def to_json(self) -> dict[str, Any]:
        return {
            "question_id": self.question_id,
            "run_index": self.run_index,
            "correct": self.correct,
            "raw_score": self.raw_score,
            "chosen_think_language": (
                self.chosen_think_language.name if self.chosen_think_language else None
            ),
            "switched": self.switched,
            "compliance": {
                "thinking": self.compliance_thinking,
                "answer": self.compliance_answer,
                "both": self.compliance_both,
            },
            "mixing_rate": self.mixing_rate,
            "truncated": self.truncated,
            "error": self.error,
        }

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "SampleResult":
        chosen = data.get("chosen_think_language")
        compliance = data.get("compliance") or {}
        return cls(
            question_id=data["question_id"],
            run_index=int(data["run_index"]),
            correct=bool(data["correct"]),
            raw_score=float(data.get("raw_score", 0.0)),
            chosen_think_language=canonical_language(chosen) if chosen else None,
            switched=bool(data.get("switched", False)),
            compliance_thinking=bool(compliance.get("thinking", False)),
            compliance_answer=bool(compliance.get("answer", False)),
            mixing_rate=float(data.get("mixing_rate", 0.0)),
            truncated=bool(data.get("truncated", False)),
            error=data.get("error"),
        )


# --- accuracy tables ---------------------------------------------------------


@dataclass(frozen=True)
class AccuracyTable:
    """Per-language accuracy (percent) plus their unweighted average."""

    per_language: dict[str, float]
    average: float
    runs: int


def mean_over_languages(per_language: Mapping[str, float]) -> float:
    """Unweighted mean of per-language accuracies."""
    if not per_language:
        raise ValueError("no languages to average")
    return statistics.fmean(per_language.values())


def cross_language_std(per_language: Mapping[str, float]) -> float:
    """Population standard deviation of the per-language accuracies."""
    if len(per_language) < 2:
        raise ValueError("need at least two languages")
    return statistics.pstdev(per_language.values())


def _language_key(result: SampleResult) -> str:
    lang = result.language
    return lang.name if lang else "unknown"


def mean_at_k(results: Sequence[SampleResult]) -> AccuracyTable:
    """Mean over runs of per-run accuracy, per language, plus the overall mean.

    Every (question, run) cell must be present exactly once.
    """
    if not results:
        raise IncompleteRuns("no results")
    seen: set[tuple[str, int]] = set()
    runs = sorted({r.run_index for r in results})
    by_language: dict[str, dict[int, list[bool]]] = {}
    items_by_language: dict[str, set[str]] = {}
    for r in results:
        cell = (r.question_id, r.run_index)
        if cell in seen:
            raise IncompleteRuns(f"duplicate cell {cell}")
        seen.add(cell)
        key = _language_key(r)
        by_language.setdefault(key, {}).setdefault(r.run_index, []).append(r.correct)
        items_by_language.setdefault(key, set()).add(r.question_id)

    per_language: dict[str, float] = {}
    for key in sorted(by_language):
        n_items = len(items_by_language[key])
        run_accs = []
        for run in runs:
            cells = by_language[key].get(run, [])
            if len(cells) != n_items:
                raise IncompleteRuns(f"language {key} run {run}: {len(cells)}/{n_items} cells")
            run_accs.append(100.0 * sum(cells) / n_items)
        per_language[key] = statistics.fmean(run_accs)
    return AccuracyTable(
        per_language=per_language,
        average=mean_over_languages(per_language),
        runs=len(runs),
    )


# --- paired comparisons -------------------------------------------------------


@dataclass(frozen=True)
class WtlRates:
    """Win / tie-correct / tie-incorrect / lose percentages over aligned samples."""

    win: float
    tie_correct: float
    tie_incorrect: float
    lose: float

    def __post_init__(self) -> None:
        total = self.win + self.tie_correct + self.tie_incorrect + self.lose
        if abs(total - 100.0) > 0.01:
            raise ValueError(f"rates must sum to 100, got {total}")


def _aligned(
    base: Sequence[SampleResult], alt: Sequence[SampleResult]
) -> list[tuple[SampleResult, SampleResult]]:
    base_map = {(r.question_id, r.run_index): r for r in base}
    alt_map = {(r.question_id, r.run_index): r for r in alt}
    if len(base_map) != len(base) or len(alt_map) != len(alt):
        raise AlignmentMismatch("duplicate (question, run) cells")
    if base_map.keys() != alt_map.keys():
        missing = base_map.keys() ^ alt_map.keys()
        raise AlignmentMismatch(f"unaligned cells, e.g. {sorted(missing)[:3]}")
    if not base_map:
        raise AlignmentMismatch("empty result sets")
    return [(base_map[k], alt_map[k]) for k in sorted(base_map)]


def win_tie_lose(base: Sequence[SampleResult], alt: Sequence[SampleResult]) -> WtlRates:
    """Per-instance comparison of `alt` against `base`, as percentages."""
    pairs = _aligned(base, alt)
    n = len(pairs)
    win = sum(1 for b, a in pairs if a.correct and not b.correct)
    lose = sum(1 for b, a in pairs if b.correct and not a.correct)
    tie_correct = sum(1 for b, a in pairs if b.correct and a.correct)
    tie_incorrect = n - win - lose - tie_correct
    return WtlRates(
        win=100.0 * win / n,
        tie_correct=100.0 * tie_correct / n,
        tie_incorrect=100.0 * tie_incorrect / n,
        lose=100.0 * lose / n,
    )


@dataclass(frozen=True)
class BenefitReport:
    """Switch-induced rescues and regressions as fractions of all samples."""

    benefit_rate: float
    harm_rate: float

    @property
    def net_benefit(self) -> float:
        return self.benefit_rate - self.harm_rate


def benefit_harm(
    backbone: Sequence[SampleResult], adaptive: Sequence[SampleResult]
) -> BenefitReport:
    """Benefit: switched and rescued; harm: switched and regressed. Denominator
    is always the full aligned sample count."""
    pairs = _aligned(backbone, adaptive)
    n = len(pairs)
    benefit = sum(1 for b, a in pairs if a.switched and not b.correct and a.correct)
    harm = sum(1 for b, a in pairs if a.switched and b.correct and not a.correct)
    return BenefitReport(benefit_rate=100.0 * benefit / n, harm_rate=100.0 * harm / n)


# --- distributions -------------------------------------------------------------


def think_language_frequency(results: Sequence[SampleResult]) -> dict[str, float]:
    """Distribution (percent) of chosen thinking languages; sums to 100."""
    chosen = [r.chosen_think_language for r in results if r.chosen_think_language]
    if not chosen:
        return {}
    counts: dict[str, int] = {}
    for lang in chosen:
        counts[lang.name] = counts.get(lang.name, 0) + 1
    return {name: 100.0 * c / len(chosen) for name, c in sorted(counts.items())}


def native_thinking_rate(results: Sequence[SampleResult]) -> float:
    """Share of samples whose chosen thinking language equals the prompt language."""
    relevant = [r for r in results if r.chosen_think_language is not None]
    if not relevant:
        return 0.0
    native = sum(1 for r in relevant if r.chosen_think_language == r.language)
    return 100.0 * native / len(relevant)


def _ranks(values: Sequence[float]) -> list[float]:
    order = sorted(range(len(values)), key=lambda i: values[i])
    ranks = [0.0] * len(values)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and values[order[j + 1]] == values[order[i]]:
            j += 1
        avg = (i + j) / 2 + 1
        for k in range(i, j + 1):
            ranks[order[k]] = avg
        i = j + 1
    return ranks


def spearman_correlation(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Spearman rank correlation with average ranks for ties."""
    if len(xs) != len(ys) or len(xs) < 2:
        raise ValueError("need two equal-length series of at least 2 points")
    rx, ry = _ranks(xs), _ranks(ys)
    mx, my = statistics.fmean(rx), statistics.fmean(ry)
    cov = sum((a - mx) * (b - my) for a, b in zip(rx, ry))
    vx = sum((a - mx) ** 2 for a in rx)
    vy = sum((b - my) ** 2 for b in ry)
    if vx == 0 or vy == 0:
        return 0.0
    return cov / (vx * vy) ** 0.5


# --- majority voting -----------------------------------------------------------


def majority_vote(
    answers: Mapping[Language, str], gold: GoldAnswer
) -> tuple[Decimal, bool]:
    """Plurality over per-language numeric answers.

    Languages whose answer has no extractable number abstain. Ties between
    equally frequent values go to the value whose earliest voter comes first
    in the canonical language order.
    """
    votes: list[tuple[Language, Decimal]] = []
    for lang in sorted(answers, key=language_order):
        try:
            votes.append((lang, extract_numeric_answer(answers[lang])))
        except NoNumberFound:
            continue
    if not votes:
        raise AllVotesInvalid("no language produced a numeric answer")

    tally: dict[Decimal, int] = {}
    first_voter: dict[Decimal, int] = {}
    for lang, value in votes:
        tally[value] = tally.get(value, 0) + 1
        first_voter.setdefault(value, language_order(lang))
    winner = min(tally, key=lambda v: (-tally[v], first_voter[v]))

    correct = False
    if gold.kind == "numeric" and gold.numeric_value is not None:
        correct = _numbers_match(winner, gold.numeric_value)
    return winner, correct


# --- mixing analysis ------------------------------------------------------------


@dataclass(frozen=True)
class MixingBucket:
    """One partition of non-switched samples by mixing-rate change."""

    count: int
    benefit_rate: float
    harm_rate: float

    @property
    def net_benefit(self) -> float:
        return self.benefit_rate - self.harm_rate


@dataclass(frozen=True)
class MixingBenefitReport:
    increased: MixingBucket
    decreased: MixingBucket
    unchanged: MixingBucket
    total_samples: int


def mixing_benefit_report(
    backbone: Sequence[SampleResult], adaptive: Sequence[SampleResult]
) -> MixingBenefitReport:
    """Partition non-switched samples by mixing change; net benefit per bucket
    is still computed over all aligned samples."""
    pairs = _aligned(backbone, adaptive)
    n = len(pairs)
    buckets: dict[str, list[tuple[SampleResult, SampleResult]]] = {
        "increased": [],
        "decreased": [],
        "unchanged": [],
    }
    for b, a in pairs:
        if a.switched:
            continue
        if a.mixing_rate > b.mixing_rate:
            buckets["increased"].append((b, a))
        elif a.mixing_rate < b.mixing_rate:
            buckets["decreased"].append((b, a))
        else:
            buckets["unchanged"].append((b, a))

    def stats(items: list[tuple[SampleResult, SampleResult]]) -> MixingBucket:
        benefit = sum(1 for b, a in items if not b.correct and a.correct)
        harm = sum(1 for b, a in items if b.correct and not a.correct)
        return MixingBucket(
            count=len(items),
            benefit_rate=100.0 * benefit / n,
            harm_rate=100.0 * harm / n,
        )

    return MixingBenefitReport(
        increased=stats(buckets["increased"]),
        decreased=stats(buckets["decreased"]),
        unchanged=stats(buckets["unchanged"]),
        total_samples=n,
    )


# --- compliance and recall -------------------------------------------------------


@dataclass(frozen=True)
class ComplianceRates:
    """Thinking / answer / both adherence percentages for one sample set."""

    thinking: float
    answer: float
    both: float


def compliance_rates(results: Sequence[SampleResult]) -> ComplianceRates:
    if not results:
        raise ValueError("no results")
    n = len(results)
    return ComplianceRates(
        thinking=100.0 * sum(r.compliance_thinking for r in results) / n,
        answer=100.0 * sum(r.compliance_answer for r in results) / n,
        both=100.0 * sum(r.compliance_both for r in results) / n,
    )


@dataclass(frozen=True)
class RecallStats:
    """Cultural-knowledge recall volume and precision."""

    avg_recall_count_per_thought: float
    recall_accuracy_pct: float

    def __post_init__(self) -> None:
        if self.avg_recall_count_per_thought < 0:
            raise ValueError("recall count must be non-negative")
        if not 0.0 <= self.recall_accuracy_pct <= 100.0:
            raise ValueError("accuracy must be a percentage")


def aggregate_recall(per_thought: Iterable[tuple[int, int]]) -> RecallStats:
    """Aggregate (recall_count, verified_count) pairs, one per thought."""
    counts = 0
    verified = 0
    thoughts = 0
    for recalled, ok in per_thought:
        thoughts += 1
        counts += recalled
        verified += ok
    if thoughts == 0:
        return RecallStats(0.0, 0.0)
    accuracy = 100.0 * verified / counts if counts else 0.0
    return RecallStats(avg_recall_count_per_thought=counts / thoughts, recall_accuracy_pct=accuracy)
