"""Step-1 dataset builder: seed traces, self-translation, quality gate, emission.

The backbone model answers seed questions in its default thinking language;
it then translates its own reasoning traces into the 30 target languages
(no external translator anywhere in the loop). Translations below the
quality threshold are dropped but kept in an audit stream, and survivors
are emitted as language-marked SFT rows. Answers are never translated: the
final response must stay in the prompt language.
"""

from __future__ import annotations

import json
import logging
import subprocess
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Iterable, Protocol

from .domain import DatasetSummary, ModelEndpoint, Question
from .errors import JoinFailure, ScorerFailure
from .gateway import ChatOutcome, ChatRequest, Gateway
from .langid import language_by_script_share
from .languages import Language
from .template import parse_response, render_think_response

log = logging.getLogger(__name__)

DEFAULT_QUALITY_THRESHOLD = 0.4

# Versioned so the manifest can pin the exact wording of a run.
TRANSLATION_PROMPT_V1 = (
    "Translate the following reasoning text into {language}. Preserve the "
    "meaning, the step-by-step structure, and every number, equation, and "
    "name exactly as written. Output only the translated text, nothing else."
    "\n\n{text}"
)


@dataclass(frozen=True)
class SeedTrace:
    """A backbone response to one seed question, split into trace and answer."""

    question: Question
    trace: str
    answer: str

    @property
    def seed_id(self) -> str:
        return self.question.id


@dataclass(frozen=True)
class TranslatedTrace:
    """One candidate translation of a seed trace into a target language."""

    seed_id: str
    target: Language
    text: str
    quality: float | None = None
    kept: bool = False


class QualityScorer(Protocol):
    """Reference-free translation quality in [0, 1]."""

    def score(self, source: str, translated: str, target: Language) -> float: ...


# Scripts each language is expected to be written in, for the heuristic gate.
_EXPECTED_SCRIPTS: dict[str, tuple[str, ...]] = {
    "ru": ("cyrillic",), "bg": ("cyrillic",), "uk": ("cyrillic",),
    "el": ("greek",), "he": ("hebrew",), "ar": ("arabic",), "ur": ("arabic",),
    "hi": ("devanagari",), "bn": ("bengali",), "th": ("thai",),
    "ko": ("hangul",), "ja": ("kana", "han"), "zh": ("han",),
}


class HeuristicScorer:
    """Deterministic offline gate: length ratio times expected-script share."""

    def score(self, source: str, translated: str, target: Language) -> float:
        if not source.strip() or not translated.strip():
            return 0.0
        ratio = min(len(source), len(translated)) / max(len(source), len(translated))
        shares = language_by_script_share(translated)
        expected = _EXPECTED_SCRIPTS.get(target.code, ("latin",))
        script = sum(shares.get(s, 0.0) for s in expected)
        return ratio * script


class PluginScorer:
    """External QE model over stdio: {"text", "source", "language"} -> {"score"}."""

    def __init__(self, command: list[str]):
        self._proc = subprocess.Popen(
            command, stdin=subprocess.PIPE, stdout=subprocess.PIPE, text=True, bufsize=1
        )

    def score(self, source: str, translated: str, target: Language) -> float:
        assert self._proc.stdin and self._proc.stdout
        request = {"text": translated, "source": source, "language": target.name}
        try:
            self._proc.stdin.write(json.dumps(request, ensure_ascii=False) + "\n")
            self._proc.stdin.flush()
            line = self._proc.stdout.readline()
            value = float(json.loads(line)["score"])
        except Exception as exc:
            raise ScorerFailure(f"plugin scorer failed: {exc}") from exc
        if not 0.0 <= value <= 1.0:
            raise ScorerFailure(f"plugin score out of [0,1]: {value}")
        return value

    def close(self) -> None:
        if self._proc.stdin:
            self._proc.stdin.close()
        self._proc.terminate()
        self._proc.wait(timeout=5)

    def __enter__(self) -> "PluginScorer":
        return self

    def __exit__(self, *exc) -> None:
        self.close()


def build_seed_request(backbone: ModelEndpoint, q: Question, seed: int = 0) -> ChatRequest:
    return ChatRequest(endpoint=backbone, user=q.text, seed=seed)


def build_translation_request(
    backbone: ModelEndpoint, trace: str, target: Language, seed: int = 0
) -> ChatRequest:
    prompt = TRANSLATION_PROMPT_V1.format(language=target.name, text=trace)
    return ChatRequest(endpoint=backbone, user=prompt, seed=seed)


def collect_seed_traces(
    backbone: ModelEndpoint,
    questions: list[Question],
    gateway: Gateway | None = None,
    parallelism: int = 4,
    seed: int = 0,
) -> list[SeedTrace]:
    """One trace per question; items with an empty trace are logged and dropped."""
    if not questions:
        return []
    gateway = gateway or Gateway()
    reqs = [build_seed_request(backbone, q, seed) for q in questions]
    seeds: list[SeedTrace] = []
    for q, outcome in zip(questions, gateway.iter_complete(reqs, parallelism)):
        if isinstance(outcome, Exception):
            log.warning("seed collection failed for %s: %s", q.id, outcome)
            continue
        parsed = parse_response(outcome.raw_text)
        if not parsed.trace.strip():
            log.warning("empty trace for %s; excluded", q.id)
            continue
        seeds.append(SeedTrace(question=q, trace=parsed.trace, answer=parsed.answer))
    return seeds


def _translation_text(outcome: ChatOutcome) -> str:
    """Reasoning models may wrap the translation in a think block; take the answer."""
    parsed = parse_response(outcome.raw_text)
    if parsed.well_formed and parsed.answer.strip():
        return parsed.answer
    return outcome.raw_text


def translate_traces(
    backbone: ModelEndpoint,
    seeds: list[SeedTrace],
    targets: list[Language],
    gateway: Gateway | None = None,
    parallelism: int = 4,
    seed: int = 0,
) -> list[TranslatedTrace]:
    """Self-translate every seed trace into every target language."""
    gateway = gateway or Gateway()
    jobs: list[tuple[SeedTrace, Language]] = [
        (s, target) for s in seeds for target in targets
        if target != s.question.prompt_language
    ]
    reqs = [build_translation_request(backbone, s.trace, target, seed) for s, target in jobs]
    out: list[TranslatedTrace] = []
    for (s, target), outcome in zip(jobs, gateway.iter_complete(reqs, parallelism)):
        if isinstance(outcome, Exception):
            log.warning("translation %s -> %s failed: %s", s.seed_id, target.code, outcome)
            continue
        out.append(TranslatedTrace(seed_id=s.seed_id, target=target, text=_translation_text(outcome)))
    return out


def filter_quality(
    cands: list[TranslatedTrace],
    scorer: QualityScorer,
    threshold: float = DEFAULT_QUALITY_THRESHOLD,
    seeds: Iterable[SeedTrace] = (),
) -> list[TranslatedTrace]:
    """Score every candidate; kept = score >= threshold (boundary survives).

    Any scorer error aborts the whole batch: a quality gate that silently
    passes is worse than no gate.
    """
    by_id = {s.seed_id: s for s in seeds}
    scored: list[TranslatedTrace] = []
    for cand in cands:
        source = by_id[cand.seed_id].trace if cand.seed_id in by_id else ""
        try:
            quality = float(scorer.score(source, cand.text, cand.target))
        except ScorerFailure:
            raise
        except Exception as exc:
            raise ScorerFailure(f"scorer raised on {cand.seed_id}: {exc}") from exc
        scored.append(replace(cand, quality=quality, kept=quality >= threshold))
    return scored


def emit_step1_dataset(
    translations: list[TranslatedTrace],
    seeds: list[SeedTrace],
    out: str | Path,
    run_id: str | None = None,
    audit: str | Path | None = None,
) -> DatasetSummary:
    """Write one SFT row per kept translation; discards go to the audit file."""
    by_id = {s.seed_id: s for s in seeds}
    summary = DatasetSummary()
    out = Path(out)
    out.parent.mkdir(parents=True, exist_ok=True)
    audit_fh = open(audit, "w", encoding="utf-8", newline="\n") if audit else None
    try:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            for cand in translations:
                if cand.seed_id not in by_id:
                    raise JoinFailure(f"no seed trace for {cand.seed_id}")
                if not cand.kept:
                    if audit_fh is not None:
                        audit_fh.write(json.dumps({
                            "seed_id": cand.seed_id,
                            "target": cand.target.name,
                            "quality": cand.quality,
                            "text": cand.text,
                        }, ensure_ascii=False) + "\n")
                    summary.discarded += 1
                    continue
                s = by_id[cand.seed_id]
                record = {
                    "input": s.question.text,
                    "output": render_think_response(cand.target, cand.text, s.answer),
                    "meta": {
                        "question_id": s.seed_id,
                        "thinking_language": cand.target.name,
                        "scenario": s.question.scenario,
                        "stage": "step1",
                        **({"run_id": run_id} if run_id else {}),
                    },
                }
                fh.write(json.dumps(record, ensure_ascii=False) + "\n")
                summary.add(cand.target)
    finally:
        if audit_fh is not None:
            audit_fh.close()
    return summary


def prompt_mentions_external_tools() -> bool:
    """Audit hook: the translation prompt must not appeal to outside systems."""
    lowered = TRANSLATION_PROMPT_V1.lower()
    return any(word in lowered for word in ("google", "external", "tool", "api", "dictionary"))
