"""Language identification, sentence segmentation, mixing, and compliance flags.

Detection is deterministic and two-layered: scripts that belong to a single
language in the closed set decide immediately; scripts shared by several
languages (Latin, Cyrillic, Arabic) fall through to distinctive-character
rules and then to built-in character-trigram profiles. An external detector
process can override the built-in heuristic via a line-delimited JSON
protocol on stdio.
"""

from __future__ import annotations

import json
import math
import re
import subprocess
from dataclasses import dataclass
from functools import lru_cache

from .domain import Trajectory
from .errors import IndeterminateLanguage, X1Error
from .languages import LANGUAGES, Language, canonical_language, language_order
from .langseeds import SEED_TEXTS

# Script ranges, letters only. Order fixes tie-breaks between equal counts.
_SCRIPT_RANGES: tuple[tuple[str, tuple[tuple[int, int], ...]], ...] = (
    ("latin", ((0x0041, 0x005A), (0x0061, 0x007A), (0x00C0, 0x024F), (0x1E00, 0x1EFF))),
    ("cyrillic", ((0x0400, 0x04FF),)),
    ("greek", ((0x0370, 0x03FF),)),
    ("hebrew", ((0x0590, 0x05FF),)),
    ("arabic", ((0x0600, 0x06FF), (0x0750, 0x077F), (0xFB50, 0xFDFF), (0xFE70, 0xFEFF))),
    ("devanagari", ((0x0900, 0x097F),)),
    ("bengali", ((0x0980, 0x09FF),)),
    ("thai", ((0x0E00, 0x0E7F),)),
    ("hangul", ((0xAC00, 0xD7AF), (0x1100, 0x11FF), (0x3130, 0x318F))),
    ("kana", ((0x3040, 0x309F), (0x30A0, 0x30FF), (0x31F0, 0x31FF))),
    ("han", ((0x4E00, 0x9FFF), (0x3400, 0x4DBF), (0xF900, 0xFAFF))),
)

_SINGLE_LANGUAGE_SCRIPTS = {
    "greek": "el",
    "hebrew": "he",
    "devanagari": "hi",
    "bengali": "bn",
    "thai": "th",
    "hangul": "ko",
}

# Characters that pin a language within a shared script. The hard/er sign
# is a vowel in Bulgarian (frequent) but only a rare separator in Russian,
# so two or more occurrences without Russian-only letters decide Bulgarian.
_UKRAINIAN_CHARS = set("іїєґІЇЄҐ")
_RUSSIAN_CHARS = set("ыэёЫЭЁ")
_BULGARIAN_CHAR = "ъ"
_URDU_CHARS = set("ٹڈڑںےپچگژکہھی")

_LATIN_LANGS = (
    "English", "German", "Dutch", "Spanish", "Portuguese", "French", "Italian",
    "Romanian", "Polish", "Finnish", "Hungarian", "Swedish", "Danish",
    "Norwegian", "Indonesian", "Malay", "Tagalog", "Swahili", "Turkish",
    "Vietnamese", "Irish", "Scottish Gaelic", "Maori",
)
_CYRILLIC_LANGS = ("Russian", "Bulgarian", "Ukrainian")

# Near-identical pairs get a word-level override: whichever side has strictly
# more of its exclusive everyday words wins; ties fall back to the profiles.
_NEAR_PAIR_WORDS: dict[frozenset[str], dict[str, frozenset[str]]] = {
    frozenset(("Indonesian", "Malay")): {
        "Indonesian": frozenset(
            "bisa karena apakah kenapa bahwa jawaban berbeda besok uang "
            "butuh kantor senin rapat".split()
        ),
        "Malay": frozenset(
            "boleh kerana adakah awak encik bahawa jawapan berbeza esok "
            "wang pejabat isnin mesyuarat sahaja elok bertolak".split()
        ),
    },
}

_SENTENCE_TERMINALS = set(".!?。！？؟।")


@dataclass(frozen=True)
class LangGuess:
    """A detector verdict with a confidence in [0, 1]."""

    language: Language
    confidence: float
    method: str  # "script-heuristic" | "external"


@dataclass(frozen=True)
class MixingProfile:
    """Sentence-level language mixing of one reasoning trace."""

    sentence_count: int
    primary_language: Language
    mixed_sentences: int

    @property
    def mixing_rate(self) -> float:
        if self.sentence_count == 0:
            return 0.0
        return self.mixed_sentences / self.sentence_count


@dataclass(frozen=True)
class ComplianceFlags:
    """Thinking-phase / answer-phase / both-phase language adherence."""

    thinking: bool
    answer: bool

    @property
    def both(self) -> bool:
        return self.thinking and self.answer


def _script_counts(text: str) -> dict[str, int]:
    counts: dict[str, int] = {}
    for ch in text:
        cp = ord(ch)
        for name, ranges in _SCRIPT_RANGES:
            if any(lo <= cp <= hi for lo, hi in ranges):
                counts[name] = counts.get(name, 0) + 1
                break
    return counts


_GRAM_SIZES = (2, 3)
_SMOOTHING = 0.3


def _char_grams(text: str) -> dict[str, int]:
    """Character 2- and 3-gram counts over lowercased letters plus spaces."""
    letters = re.sub(r"[^\w\s']", " ", text)
    letters = re.sub(r"[\d_]+", " ", letters)
    letters = re.sub(r"\s+", " ", letters).strip().lower()
    padded = f" {letters} "
    counts: dict[str, int] = {}
    for n in _GRAM_SIZES:
        for i in range(len(padded) - n + 1):
            gram = padded[i : i + n]
            counts[gram] = counts.get(gram, 0) + 1
    return counts


class _NgramModel:
    """Smoothed per-language gram log-probabilities within one script group."""

    def __init__(self, counts: dict[str, int], vocab_size: int):
        total = sum(counts.values())
        self._denom = math.log(total + _SMOOTHING * vocab_size)
        self._logp = {g: math.log(c + _SMOOTHING) for g, c in counts.items()}
        self._unseen = math.log(_SMOOTHING)

    def mean_log_prob(self, grams: dict[str, int]) -> float:
        total = sum(grams.values())
        if total == 0:
            return float("-inf")
        s = sum(c * (self._logp.get(g, self._unseen) - self._denom) for g, c in grams.items())
        return s / total


@lru_cache(maxsize=1)
def _profiles() -> dict[str, dict[str, _NgramModel]]:
    groups = {}
    for group, names in (("latin", _LATIN_LANGS), ("cyrillic", _CYRILLIC_LANGS)):
        counts = {name: _char_grams(SEED_TEXTS[name]) for name in names}
        vocab = set().union(*(c.keys() for c in counts.values()))
        groups[group] = {name: _NgramModel(c, len(vocab)) for name, c in counts.items()}
    return groups


def _near_pair_override(text: str, best: Language) -> Language:
    for pair, words_by_lang in _NEAR_PAIR_WORDS.items():
        if best.name not in pair:
            continue
        tokens = set(re.findall(r"[^\W\d_]+", text.lower()))
        hits = {name: len(tokens & words) for name, words in words_by_lang.items()}
        ranked = sorted(hits.items(), key=lambda kv: -kv[1])
        if ranked[0][1] > ranked[1][1]:
            return canonical_language(ranked[0][0])
    return best


def _best_profile_match(text: str, candidates: dict[str, _NgramModel]) -> tuple[Language, float]:
    grams = _char_grams(text)
    scores: list[tuple[float, Language]] = []
    # Canonical-order iteration makes equal-score ties deterministic.
    for name in sorted(candidates, key=lambda n: language_order(canonical_language(n))):
        scores.append((candidates[name].mean_log_prob(grams), canonical_language(name)))
    best_score, best_lang = max(scores, key=lambda item: item[0])
    # Posterior over total log-likelihoods under equal priors: sharper with
    # more evidence, so confidence is monotone in text length and margin.
    n_grams = sum(grams.values())
    posterior = 1.0 / sum(min(math.exp((s - best_score) * n_grams), 1.0) for s, _ in scores)
    return _near_pair_override(text, best_lang), posterior


def _detect_builtin(text: str) -> LangGuess | None:
    counts = _script_counts(text)
    total = sum(counts.values())
    if total == 0:
        return None

    # Han and kana belong to one writing system; any kana makes it Japanese.
    cjk = counts.get("han", 0) + counts.get("kana", 0)
    merged = {k: v for k, v in counts.items() if k not in ("han", "kana")}
    if cjk:
        merged["cjk"] = cjk
    script = max(merged, key=lambda k: (merged[k], k))
    share = merged[script] / total

    if script == "cjk":
        code = "ja" if counts.get("kana", 0) > 0 else "zh"
        return LangGuess(canonical_language(code), share, "script-heuristic")
    if script in _SINGLE_LANGUAGE_SCRIPTS:
        return LangGuess(canonical_language(_SINGLE_LANGUAGE_SCRIPTS[script]), share, "script-heuristic")
    if script == "arabic":
        code = "ur" if any(ch in _URDU_CHARS for ch in text) else "ar"
        return LangGuess(canonical_language(code), share, "script-heuristic")
    if script == "cyrillic":
        if any(ch in _UKRAINIAN_CHARS for ch in text):
            return LangGuess(canonical_language("uk"), share, "script-heuristic")
        if any(ch in _RUSSIAN_CHARS for ch in text):
            return LangGuess(canonical_language("ru"), share, "script-heuristic")
        if text.lower().count(_BULGARIAN_CHAR) >= 2:
            return LangGuess(canonical_language("bg"), share, "script-heuristic")
        lang, sim = _best_profile_match(text, _profiles()["cyrillic"])
        return LangGuess(lang, share * sim, "script-heuristic")
    lang, sim = _best_profile_match(text, _profiles()["latin"])
    return LangGuess(lang, share * sim, "script-heuristic")


def detect_language(text: str, detector: "ExternalDetector | None" = None) -> LangGuess:
    """Deterministic language guess; raises IndeterminateLanguage on empty input."""
    if detector is not None:
        guess = detector.detect(text)
        if guess is not None:
            return guess
    guess = _detect_builtin(text)
    if guess is None:
        raise IndeterminateLanguage("no letters to classify")
    return guess


def try_detect_language(text: str, detector: "ExternalDetector | None" = None) -> Language | None:
    """detect_language, with indeterminate inputs mapped to None."""
    try:
        return detect_language(text, detector).language
    except IndeterminateLanguage:
        return None


def segment_sentences(text: str) -> list[str]:
    """Split on terminal punctuation and newlines; trimmed, no empty sentences.

    Cut points tile the whole string, so the untrimmed spans concatenate back
    to the original text.
    """
    return [text[s:e].strip() for s, e in _segment_spans(text) if text[s:e].strip()]


def _segment_spans(text: str) -> list[tuple[int, int]]:
    spans: list[tuple[int, int]] = []
    start = 0
    n = len(text)
    for i, ch in enumerate(text):
        if ch == "\n":
            spans.append((start, i + 1))
            start = i + 1
        elif ch in _SENTENCE_TERMINALS:
            nxt = text[i + 1] if i + 1 < n else ""
            if nxt in _SENTENCE_TERMINALS:
                continue  # keep ?! together
            if ch == "." and i > 0 and text[i - 1].isdigit() and nxt.isdigit():
                continue  # decimal point
            spans.append((start, i + 1))
            start = i + 1
    if start < n:
        spans.append((start, n))
    return spans


def mixing_profile(
    trace: str, primary: Language, detector: "ExternalDetector | None" = None
) -> MixingProfile:
    """Classify each sentence; count those confidently different from `primary`."""
    sentences = segment_sentences(trace)
    mixed = 0
    for sentence in sentences:
        guess = try_detect_language(sentence, detector)
        if guess is not None and guess != primary:
            mixed += 1
    return MixingProfile(len(sentences), primary, mixed)


def compliance_flags(
    traj: Trajectory,
    required_think: Language,
    prompt_lang: Language,
    detector: "ExternalDetector | None" = None,
) -> ComplianceFlags:
    """Thinking-phase and answer-phase adherence for one trajectory."""
    thinking = try_detect_language(traj.trace, detector) == required_think
    answer = try_detect_language(traj.answer, detector) == prompt_lang
    return ComplianceFlags(thinking=thinking, answer=answer)


class ExternalDetector:
    """Optional out-of-process detector: {"text": ...} in, {"language", "confidence"} out.

    One JSON object per line over the child's stdio. Not shared across
    threads without external request serialization.
    """

    def __init__(self, command: list[str]):
        self._proc = subprocess.Popen(
            command,
            stdin=subprocess.PIPE,
            stdout=subprocess.PIPE,
            text=True,
            bufsize=1,
        )

    def detect(self, text: str) -> LangGuess | None:
        if not text.strip():
            return None
        assert self._proc.stdin and self._proc.stdout
        self._proc.stdin.write(json.dumps({"text": text}, ensure_ascii=False) + "\n")
        self._proc.stdin.flush()
        line = self._proc.stdout.readline()
        if not line:
            raise X1Error("external detector closed its stdout")
        reply = json.loads(line)
        if reply.get("language") is None:
            return None
        return LangGuess(
            language=canonical_language(reply["language"]),
            confidence=float(reply.get("confidence", 1.0)),
            method="external",
        )

    def close(self) -> None:
        if self._proc.stdin:
            self._proc.stdin.close()
        self._proc.terminate()
        self._proc.wait(timeout=5)

    def __enter__(self) -> "ExternalDetector":
        return self

    def __exit__(self, *exc) -> None:
        self.close()


def language_by_script_share(text: str) -> dict[str, float]:
    """Share of letters per script bucket; diagnostic helper for reports."""
    counts = _script_counts(text)
    total = sum(counts.values())
    if total == 0:
        return {}
    return {k: v / total for k, v in sorted(counts.items())}


def all_profile_languages() -> list[Language]:
    """Languages with built-in trigram profiles (shared-script sets)."""
    return [canonical_language(n) for n in (*_LATIN_LANGS, *_CYRILLIC_LANGS)]


__all__ = [
    "LANGUAGES",
    "ComplianceFlags",
    "ExternalDetector",
    "LangGuess",
    "MixingProfile",
    "compliance_flags",
    "detect_language",
    "mixing_profile",
    "segment_sentences",
    "try_detect_language",
]
