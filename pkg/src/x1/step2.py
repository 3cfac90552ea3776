"""Step-2 builder: paired trajectories, advantageous-language verdicts, emission.

Every question gets two trajectories: the backbone's default one and a
contrast one forced into the "other" language, so that exactly one of the
two thinks in English. Math answers are scored 10/0 by exact numerical
match; culture answers get a 0-10 entailment score from a judge endpoint.
The strictly higher score wins; exact ties are discarded. Each win yields
one marked SFT row, one self-awareness row, and one DPO preference pair.
"""

from __future__ import annotations

import json
import logging
import re
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from pathlib import Path
from typing import Any

from .domain import (
    DatasetSummary,
    DpoRecord,
    GoldAnswer,
    Judgment,
    ModelEndpoint,
    Question,
    SftRecord,
    Trajectory,
)
from .errors import (
    JudgeUnparseable,
    MalformedTrajectory,
    NoNumberFound,
    NoPivotAvailable,
)
from .gateway import ChatRequest, Gateway
from .languages import ENGLISH, Language, canonical_language, culture_language_for
from .template import (
    build_think_prefix,
    parse_response,
    render_awareness_record,
    render_think_response,
)

log = logging.getLogger(__name__)

DEFAULT_WINNER = "default"
CONTRAST_WINNER = "contrast"
TIE = "tie"

CULTURE_JUDGE_PROMPT = (
    "You will be given a culture-related question, a related cultural knowledge "
    "and a response from an agent.\n\n"
    "Your task is to provide a 'total rating' scoring how well the response "
    "from an agent answers the culture-related question and entails the related "
    "cultural knowledge.\n\n"
    "Give your answer as a float on a scale of 0 to 10, where 0 means that the "
    "response from agent is not helpful at all, and 10 means that the answer "
    "completely and helpfully addresses the question.\n\n"
    "Your output should be a float score only.\n\n"
    "Question: {question}\n\n"
    "Cultural Knowledge: {knowledge}\n\n"
    "Response: {response}\n\n"
    "Total rating (a float on a scale of 0 to 10):"
)

JUDGE_RETRY_NUDGE = "Reply with only the float score and nothing else."


@dataclass(frozen=True)
class TrajectoryPair:
    """Default and contrast trajectories for one question."""

    question: Question
    default_traj: Trajectory
    contrast_traj: Trajectory
    default_lang: Language
    contrast_lang: Language

    def __post_init__(self) -> None:
        if self.default_lang == self.contrast_lang:
            raise ValueError("default and contrast languages must differ")
        if (self.default_lang == ENGLISH) == (self.contrast_lang == ENGLISH):
            raise ValueError("exactly one side of a pair must think in English")

    def language_of(self, side: str) -> Language:
        return self.default_lang if side == DEFAULT_WINNER else self.contrast_lang

    def trajectory_of(self, side: str) -> Trajectory:
        return self.default_traj if side == DEFAULT_WINNER else self.contrast_traj


@dataclass(frozen=True)
class Verdict:
    """Scored comparison of the two sides of a pair."""

    pair: TrajectoryPair
    default_score: Judgment
    contrast_score: Judgment
    winner: str  # "default" | "contrast" | "tie"

    @property
    def pair_id(self) -> str:
        return self.pair.question.id

    @property
    def winning_language(self) -> Language | None:
        if self.winner == TIE:
            return None
        return self.pair.language_of(self.winner)


def contrast_language_for(
    q: Question, default_lang: Language, fallback_pivot: Language | None = None
) -> Language:
    """The language the surface model is forced into for this question.

    A non-English default always contrasts with English. An English default
    contrasts with the question's own language (math) or its culture group
    (culture); English-prompt math items need a configured pivot.
    """
    if default_lang != ENGLISH:
        return ENGLISH
    if q.scenario == "culture" and q.country:
        pivot = culture_language_for(q.country)
    else:
        pivot = q.prompt_language
    if pivot == ENGLISH:
        if fallback_pivot is not None and fallback_pivot != ENGLISH:
            return fallback_pivot
        raise NoPivotAvailable(f"question {q.id}: pivot resolves to English")
    return pivot


def build_default_request(backbone: ModelEndpoint, q: Question, seed: int = 0) -> ChatRequest:
    return ChatRequest(endpoint=backbone, user=q.text, seed=seed)


def build_contrast_request(
    surface: ModelEndpoint, q: Question, contrast_lang: Language, seed: int = 0
) -> ChatRequest:
    return ChatRequest(
        endpoint=surface,
        user=q.text,
        forced_prefix=build_think_prefix(contrast_lang),
        seed=seed,
    )


def _to_trajectory(raw_text: str, truncated: bool) -> Trajectory:
    parsed = parse_response(raw_text)
    return Trajectory(
        thinking_language=parsed.marker_language,
        trace=parsed.trace,
        answer=parsed.answer,
        raw=raw_text,
        truncated_by_guard=truncated,
    )


def generate_pair(
    backbone: ModelEndpoint,
    surface: ModelEndpoint,
    q: Question,
    gateway: Gateway | None = None,
    seed: int = 0,
    fallback_pivot: Language | None = None,
) -> TrajectoryPair:
    """Query both endpoints and assemble the pair for one question."""
    gateway = gateway or Gateway()
    default_lang = backbone.default_think_language
    contrast_lang = contrast_language_for(q, default_lang, fallback_pivot)

    default_out = gateway.complete(build_default_request(backbone, q, seed))
    contrast_out = gateway.complete(build_contrast_request(surface, q, contrast_lang, seed))

    default_traj = _to_trajectory(default_out.raw_text, default_out.truncated_by_guard)
    contrast_traj = _to_trajectory(contrast_out.raw_text, contrast_out.truncated_by_guard)
    if contrast_traj.thinking_language != contrast_lang:
        raise MalformedTrajectory(
            f"{q.id}: contrast response lacks the {contrast_lang.name} marker"
        )
    return TrajectoryPair(
        question=q,
        default_traj=default_traj,
        contrast_traj=contrast_traj,
        default_lang=default_lang,
        contrast_lang=contrast_lang,
    )


# --- answer scoring -------------------------------------------------------

# Digits from scripts that show up in multilingual math answers.
_DIGIT_TRANSLATION = {}
for _zero in (0x0660, 0x06F0, 0x0966, 0x09E6, 0x0E50):  # Arabic-Indic (+ext), Devanagari, Bengali, Thai
    for _d in range(10):
        _DIGIT_TRANSLATION[_zero + _d] = str(_d)

_GROUP_SEPS = ",،٬ "  # comma, Arabic comma, Arabic thousands sep, space
_NUMBER_RE = re.compile(
    rf"-?\d{{1,3}}(?:[{_GROUP_SEPS}]\d{{3}})+(?:\.\d+)?|-?\d+(?:\.\d+)?"
)


def extract_numeric_answer(text: str) -> Decimal:
    """The last standalone number in the text, grouping separators removed."""
    normalized = text.translate(_DIGIT_TRANSLATION)
    matches = list(_NUMBER_RE.finditer(normalized))
    if not matches:
        raise NoNumberFound(f"no number in {text!r}")
    token = matches[-1].group(0)
    for sep in _GROUP_SEPS:
        token = token.replace(sep, "")
    return Decimal(token)


_REL_TOLERANCE = Decimal("1e-9")


def _numbers_match(pred: Decimal, gold: Decimal) -> bool:
    if pred == gold:
        return True
    denom = max(abs(gold), Decimal(1))
    return abs(pred - gold) / denom <= _REL_TOLERANCE


def score_math(pred_answer_text: str, gold: GoldAnswer) -> Judgment:
    """Exact-match scoring: 10 when the extracted number matches, else 0."""
    if gold.kind != "numeric" or gold.numeric_value is None:
        raise ValueError("score_math needs a numeric gold answer")
    try:
        pred = extract_numeric_answer(pred_answer_text)
    except NoNumberFound:
        return Judgment(score=Decimal(0), method="math-exact", rationale="no extractable number")
    matched = _numbers_match(pred, gold.numeric_value)
    return Judgment(score=Decimal(10) if matched else Decimal(0), method="math-exact")


_DENOMINATOR_RE = re.compile(r"(?:out\s+of|/)\s*10\b", re.IGNORECASE)


def parse_judge_score(reply: str) -> Decimal:
    """Lenient numeric extraction from a judge reply, clamped to [0, 10].

    "x/10" and "x out of 10" denominators are stripped first; the first
    remaining number is the score.
    """
    cleaned = _DENOMINATOR_RE.sub(" ", reply)
    m = re.search(r"-?\d+(?:\.\d+)?", cleaned)
    if not m:
        raise JudgeUnparseable(f"no score in judge reply: {reply!r}")
    try:
        value = Decimal(m.group(0))
    except InvalidOperation as exc:  # pragma: no cover - regex guarantees a number
        raise JudgeUnparseable(str(exc)) from exc
    return min(max(value, Decimal(0)), Decimal(10))


def build_judge_request(
    judge: ModelEndpoint, q: Question, response: str, seed: int = 0, nudge: bool = False
) -> ChatRequest:
    prompt = CULTURE_JUDGE_PROMPT.format(
        question=q.text, knowledge=q.culture_knowledge or "", response=response
    )
    return ChatRequest(
        endpoint=judge,
        user=prompt,
        system=JUDGE_RETRY_NUDGE if nudge else None,
        sampling={"temperature": 0.0},
        seed=seed,
    )


def score_culture(
    judge: ModelEndpoint,
    q: Question,
    response: str,
    gateway: Gateway | None = None,
    seed: int = 0,
) -> Judgment:
    """LLM-judged entailment of the cultural knowledge, one reprompt retry."""
    if q.culture_knowledge is None:
        raise ValueError("score_culture needs culture_knowledge on the question")
    gateway = gateway or Gateway()
    reply = gateway.complete(build_judge_request(judge, q, response, seed)).raw_text
    try:
        score = parse_judge_score(reply)
    except JudgeUnparseable:
        reply = gateway.complete(build_judge_request(judge, q, response, seed, nudge=True)).raw_text
        score = parse_judge_score(reply)
    return Judgment(score=score, method="culture-judge", judge_model=judge.model_name)


def pick_winner(default_score: Decimal, contrast_score: Decimal) -> str:
    """Strict comparison, no epsilon band: only exact equality is a tie."""
    if default_score > contrast_score:
        return DEFAULT_WINNER
    if contrast_score > default_score:
        return CONTRAST_WINNER
    return TIE


def identify_advantageous(
    pair: TrajectoryPair,
    scoring: str,
    judge: ModelEndpoint | None = None,
    gateway: Gateway | None = None,
    seed: int = 0,
) -> Verdict:
    """Score both sides and name the strictly higher one; equal scores tie."""
    if scoring == "math":
        gold = pair.question.gold
        if gold is None:
            raise ValueError(f"{pair.question.id}: math scoring needs a gold answer")
        default_score = score_math(pair.default_traj.answer, gold)
        contrast_score = score_math(pair.contrast_traj.answer, gold)
    elif scoring == "culture":
        if judge is None:
            raise ValueError("culture scoring needs a judge endpoint")
        default_score = score_culture(judge, pair.question, pair.default_traj.answer, gateway, seed)
        contrast_score = score_culture(judge, pair.question, pair.contrast_traj.answer, gateway, seed)
    else:
        raise ValueError(f"unknown scoring mode: {scoring!r}")

    return Verdict(
        pair=pair,
        default_score=default_score,
        contrast_score=contrast_score,
        winner=pick_winner(default_score.score, contrast_score.score),
    )


# --- emission ---------------------------------------------------------------


def emit_step2_datasets(
    verdicts: list[Verdict],
    out_dir: str | Path,
    run_id: str | None = None,
    awareness_ratio: float = 1.0,
) -> DatasetSummary:
    """Drop ties; write step2_sft/awareness/dpo JSONL plus a summary JSON."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    summary = DatasetSummary()
    tie_count = 0
    per_language_ties: dict[str, int] = {}

    sft_rows: list[SftRecord] = []
    awareness_rows: list[SftRecord] = []
    dpo_rows: list[DpoRecord] = []
    win_index = 0
    for verdict in verdicts:
        pair = verdict.pair
        if verdict.winner == TIE:
            tie_count += 1
            key = pair.contrast_lang.name if pair.default_lang == ENGLISH else pair.default_lang.name
            per_language_ties[key] = per_language_ties.get(key, 0) + 1
            continue

        win_lang = verdict.winning_language
        assert win_lang is not None
        loser_side = CONTRAST_WINNER if verdict.winner == DEFAULT_WINNER else DEFAULT_WINNER
        winner_traj = pair.trajectory_of(verdict.winner)
        loser_traj = pair.trajectory_of(loser_side)
        loser_lang = pair.language_of(loser_side)

        chosen = render_think_response(win_lang, winner_traj.trace, winner_traj.answer)
        rejected = render_think_response(loser_lang, loser_traj.trace, loser_traj.answer)
        meta: dict[str, Any] = {
            "question_id": pair.question.id,
            "thinking_language": win_lang.name,
            "scenario": pair.question.scenario,
            "stage": "step2",
            **({"run_id": run_id} if run_id else {}),
        }
        winner_judgment = verdict.default_score if verdict.winner == DEFAULT_WINNER else verdict.contrast_score
        loser_judgment = verdict.contrast_score if verdict.winner == DEFAULT_WINNER else verdict.default_score

        sft_rows.append(SftRecord(input=pair.question.text, output=chosen, meta=meta))
        if int((win_index + 1) * awareness_ratio) > int(win_index * awareness_ratio):
            awareness = render_awareness_record(pair.question, win_lang)
            if run_id:
                awareness.meta["run_id"] = run_id
            awareness_rows.append(awareness)
        dpo_rows.append(DpoRecord(
            prompt=pair.question.text,
            chosen=chosen,
            rejected=rejected,
            meta={**meta, "chosen_score": str(winner_judgment.score), "rejected_score": str(loser_judgment.score)},
        ))
        summary.add(win_lang)
        win_index += 1

    _write_jsonl(out_dir / "step2_sft.jsonl", (r.to_json() for r in sft_rows))
    _write_jsonl(out_dir / "step2_awareness.jsonl", (r.to_json() for r in awareness_rows))
    _write_jsonl(out_dir / "step2_dpo.jsonl", (r.to_json() for r in dpo_rows))

    summary.discarded = tie_count
    summary_json = {
        "wins": summary.total,
        "ties": tie_count,
        "per_language_wins": dict(sorted(summary.per_language.items())),
        "per_language_ties": dict(sorted(per_language_ties.items())),
        **({"run_id": run_id} if run_id else {}),
    }
    with open(out_dir / "step2_summary.json", "w", encoding="utf-8", newline="\n") as fh:
        json.dump(summary_json, fh, ensure_ascii=False, indent=2, sort_keys=True)
        fh.write("\n")
    return summary


def _write_jsonl(path: Path, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for row in rows:
            fh.write(json.dumps(row, ensure_ascii=False) + "\n")


# --- verdict (de)serialization for the CLI pipeline -------------------------


def _trajectory_to_json(traj: Trajectory) -> dict[str, Any]:
    return {
        "thinking_language": traj.thinking_language.name if traj.thinking_language else None,
        "trace": traj.trace,
        "answer": traj.answer,
        "raw": traj.raw,
        "truncated_by_guard": traj.truncated_by_guard,
    }


def _trajectory_from_json(data: dict[str, Any]) -> Trajectory:
    name = data.get("thinking_language")
    return Trajectory(
        thinking_language=canonical_language(name) if name else None,
        trace=data["trace"],
        answer=data["answer"],
        raw=data["raw"],
        truncated_by_guard=bool(data.get("truncated_by_guard", False)),
    )


def _judgment_to_json(j: Judgment) -> dict[str, Any]:
    return {"score": str(j.score), "method": j.method, "judge_model": j.judge_model, "rationale": j.rationale}


def _judgment_from_json(data: dict[str, Any]) -> Judgment:
    return Judgment(
        score=Decimal(data["score"]),
        method=data["method"],
        judge_model=data.get("judge_model"),
        rationale=data.get("rationale"),
    )


def pair_to_json(pair: TrajectoryPair) -> dict[str, Any]:
    from .datasets import question_to_json

    return {
        "question": question_to_json(pair.question),
        "default_traj": _trajectory_to_json(pair.default_traj),
        "contrast_traj": _trajectory_to_json(pair.contrast_traj),
        "default_lang": pair.default_lang.name,
        "contrast_lang": pair.contrast_lang.name,
    }


def pair_from_json(data: dict[str, Any]) -> TrajectoryPair:
    from .datasets import question_from_json

    return TrajectoryPair(
        question=question_from_json(data["question"]),
        default_traj=_trajectory_from_json(data["default_traj"]),
        contrast_traj=_trajectory_from_json(data["contrast_traj"]),
        default_lang=canonical_language(data["default_lang"]),
        contrast_lang=canonical_language(data["contrast_lang"]),
    )


def verdict_to_json(v: Verdict) -> dict[str, Any]:
    return {
        "pair": pair_to_json(v.pair),
        "default_score": _judgment_to_json(v.default_score),
        "contrast_score": _judgment_to_json(v.contrast_score),
        "winner": v.winner,
    }


def verdict_from_json(data: dict[str, Any]) -> Verdict:
    return Verdict(
        pair=pair_from_json(data["pair"]),
        default_score=_judgment_from_json(data["default_score"]),
        contrast_score=_judgment_from_json(data["contrast_score"]),
        winner=data["winner"],
    )
