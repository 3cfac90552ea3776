"""Benchmark execution and the cultural-recall judge calls.

run_benchmark queries every item `runs` times with derived seeds and turns
each outcome into a SampleResult carrying correctness, compliance flags,
the chosen thinking language, and the sentence-level mixing rate. Failures
count as incorrect with an error tag instead of aborting the run.
"""

from __future__ import annotations

import ast
import csv
import logging
import re
from pathlib import Path
from typing import Any, Sequence

from .datasets import load_dataset, read_jsonl, write_jsonl
from .domain import DatasetSource, ModelEndpoint, Question, Trajectory
from .errors import JudgeUnparseable
from .gateway import ChatRequest, Gateway
from .langid import compliance_flags, mixing_profile
from .metrics import (
    AccuracyTable,
    SampleResult,
    compliance_rates,
    cross_language_std,
    mean_at_k,
    native_thinking_rate,
    think_language_frequency,
)
from .step2 import score_math
from .template import parse_response

log = logging.getLogger(__name__)

_OPTION_RE = re.compile(r"\b([A-D])\b")

RECALL_IDENTIFY_PROMPT = (
    "Given the following QA pair, I will provide you with my reasoning process.\n"
    "Your task is to determine whether my reasoning includes any recall of "
    "cultural norms that directly support or justify the Golden Answer.\n"
    "If such culturally relevant recall exists, extract only the portions that "
    "are directly tied to the Golden Answer and return them in a Python list.\n\n"
    "Question: {question}\n\n"
    "Golden Answer: {answer}\n\n"
    "Reasoning Process: {reasoning}"
)

RECALL_VERIFY_PROMPT = (
    "Given the following QA pair, I will provide you with a cultural statement.\n"
    "Your task is to determine whether this statement provides a decisive and "
    "indispensable contribution to arriving at the Golden Answer.\n"
    "Mere relevance or weak association does not count.\n"
    "Return only True or False.\n\n"
    "Question: {question}\n\n"
    "Golden Answer: {answer}\n\n"
    "Cultural Statement: {norm}"
)

RETRY_NUDGE = "Answer in exactly the requested format, nothing else."


def extract_option_label(answer_text: str) -> str | None:
    """First standalone A-D token in the answer segment."""
    m = _OPTION_RE.search(answer_text)
    return m.group(1) if m else None


def _is_correct(q: Question, traj: Trajectory) -> tuple[bool, float]:
    if q.gold is None:
        return False, 0.0
    if q.gold.kind == "numeric":
        judgment = score_math(traj.answer, q.gold)
        return judgment.score == 10, float(judgment.score)
    label = extract_option_label(traj.answer)
    ok = label is not None and q.gold.label is not None and label.upper() == q.gold.label.upper()
    return ok, 10.0 if ok else 0.0


def result_for_outcome(
    endpoint: ModelEndpoint, q: Question, raw_text: str, truncated: bool, run_index: int
) -> SampleResult:
    """Parse one response into a SampleResult."""
    parsed = parse_response(raw_text)
    traj = Trajectory(
        thinking_language=parsed.marker_language,
        trace=parsed.trace,
        answer=parsed.answer,
        raw=raw_text,
        truncated_by_guard=truncated,
    )
    correct, raw_score = _is_correct(q, traj)
    chosen = parsed.marker_language
    required_think = chosen or endpoint.default_think_language
    flags = compliance_flags(traj, required_think=required_think, prompt_lang=q.prompt_language)
    primary = chosen or endpoint.default_think_language
    mixing = mixing_profile(parsed.trace, primary).mixing_rate if parsed.trace else 0.0
    return SampleResult(
        question_id=q.id,
        run_index=run_index,
        correct=correct,
        raw_score=raw_score,
        chosen_think_language=chosen,
        switched=chosen is not None and chosen != endpoint.default_think_language,
        compliance_thinking=flags.thinking,
        compliance_answer=flags.answer,
        mixing_rate=mixing,
        truncated=truncated,
    )


def build_benchmark_request(endpoint: ModelEndpoint, q: Question, seed: int) -> ChatRequest:
    return ChatRequest(endpoint=endpoint, user=q.text, seed=seed)


def run_benchmark(
    endpoint: ModelEndpoint,
    source: DatasetSource,
    runs: int = 3,
    gateway: Gateway | None = None,
    base_seed: int = 0,
    parallelism: int = 4,
) -> list[SampleResult]:
    """Query every item `runs` times; run r uses seed base_seed + r."""
    if runs < 1:
        raise ValueError("runs must be >= 1")
    gateway = gateway or Gateway()
    questions = load_dataset(source)
    results: list[SampleResult] = []
    for run_index in range(runs):
        seed = base_seed + run_index
        reqs = [build_benchmark_request(endpoint, q, seed) for q in questions]
        for q, outcome in zip(questions, gateway.iter_complete(reqs, parallelism)):
            if isinstance(outcome, Exception):
                log.warning("run %d %s failed: %s", run_index, q.id, outcome)
                results.append(SampleResult(
                    question_id=q.id,
                    run_index=run_index,
                    correct=False,
                    error=str(outcome),
                ))
                continue
            results.append(result_for_outcome(
                endpoint, q, outcome.raw_text, outcome.truncated_by_guard, run_index
            ))
    return results


# --- cultural recall ---------------------------------------------------------


def _parse_recall_list(reply: str) -> list[str]:
    start, end = reply.find("["), reply.rfind("]")
    if start == -1 or end <= start:
        if not reply.strip() or reply.strip().lower() in ("none", "no", "[]"):
            return []
        raise JudgeUnparseable(f"no list in reply: {reply!r}")
    try:
        value = ast.literal_eval(reply[start : end + 1])
    except (ValueError, SyntaxError) as exc:
        raise JudgeUnparseable(f"bad list literal: {exc}") from exc
    if not isinstance(value, list):
        raise JudgeUnparseable("reply is not a list")
    return [str(item) for item in value]


def _parse_bool(reply: str) -> bool:
    m = re.search(r"\b(true|false)\b", reply, re.IGNORECASE)
    if not m:
        raise JudgeUnparseable(f"no True/False in reply: {reply!r}")
    return m.group(1).lower() == "true"


def recall_analysis(
    judge: ModelEndpoint,
    q: Question,
    gold_answer: str,
    reasoning: str,
    gateway: Gateway | None = None,
    seed: int = 0,
) -> tuple[list[str], list[bool]]:
    """Identify recalled cultural norms in `reasoning`, then verify each one."""
    gateway = gateway or Gateway()

    def ask(prompt: str, parser, base_seed: int):
        req = ChatRequest(endpoint=judge, user=prompt, sampling={"temperature": 0.0}, seed=base_seed)
        try:
            return parser(gateway.complete(req).raw_text)
        except JudgeUnparseable:
            retry = ChatRequest(
                endpoint=judge, user=prompt, system=RETRY_NUDGE,
                sampling={"temperature": 0.0}, seed=base_seed,
            )
            return parser(gateway.complete(retry).raw_text)

    identify = RECALL_IDENTIFY_PROMPT.format(question=q.text, answer=gold_answer, reasoning=reasoning)
    recalls = ask(identify, _parse_recall_list, seed)
    verified: list[bool] = []
    for norm in recalls:
        verify = RECALL_VERIFY_PROMPT.format(question=q.text, answer=gold_answer, norm=norm)
        verified.append(ask(verify, _parse_bool, seed))
    return recalls, verified


# --- results store -------------------------------------------------------------


def write_samples(results: Sequence[SampleResult], path: str | Path) -> int:
    return write_jsonl(path, (r.to_json() for r in results))


def read_samples(path: str | Path) -> list[SampleResult]:
    return [SampleResult.from_json(row) for row in read_jsonl(path)]


def aggregate_metrics(results: Sequence[SampleResult]) -> dict[str, Any]:
    """All single-run-set statistics as one JSON-ready mapping."""
    table: AccuracyTable = mean_at_k(results)
    by_language: dict[str, list[SampleResult]] = {}
    for r in results:
        lang = r.language
        by_language.setdefault(lang.name if lang else "unknown", []).append(r)
    compliance = {
        name: vars(compliance_rates(rs)) for name, rs in sorted(by_language.items())
    }
    metrics: dict[str, Any] = {
        "mean_at_k": {
            "per_language": table.per_language,
            "average": table.average,
            "runs": table.runs,
        },
        "compliance": compliance,
        "think_language_frequency": think_language_frequency(results),
        "native_thinking_rate": native_thinking_rate(results),
        "truncation_rate": 100.0 * sum(r.truncated for r in results) / len(results),
        "switch_rate": 100.0 * sum(r.switched for r in results) / len(results),
    }
    if len(table.per_language) >= 2:
        metrics["cross_language_std"] = cross_language_std(table.per_language)
    return metrics


def write_metric_tables(metrics: dict[str, Any], tables_dir: str | Path) -> None:
    """CSV projections with fixed column orders for diffability."""
    tables_dir = Path(tables_dir)
    tables_dir.mkdir(parents=True, exist_ok=True)

    with open(tables_dir / "accuracy.csv", "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["language", "accuracy"])
        for lang, acc in sorted(metrics["mean_at_k"]["per_language"].items()):
            writer.writerow([lang, f"{acc:.4f}"])
        writer.writerow(["average", f"{metrics['mean_at_k']['average']:.4f}"])

    with open(tables_dir / "compliance.csv", "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["language", "thinking", "answer", "both"])
        for lang, rates in sorted(metrics["compliance"].items()):
            writer.writerow([
                lang, f"{rates['thinking']:.4f}", f"{rates['answer']:.4f}", f"{rates['both']:.4f}",
            ])

    with open(tables_dir / "frequency.csv", "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["language", "share"])
        for lang, share in sorted(metrics["think_language_frequency"].items()):
            writer.writerow([lang, f"{share:.4f}"])
