"""Rendering and parsing of the templated think-response formats.

Three grammars are recognized, all exact on LF whitespace:

  marked     <think>\n<{X}_start>\n\n{trace}\n\n<{X}_end>\n</think>\n\n{answer}
  unmarked   <think>\n{trace}\n</think>\n\n{answer}
  bare       anything else: the whole text is the answer

Markers are plain text, never tokenizer specials; parsing is pure string work.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Any

from .domain import Question, SftRecord
from .errors import ReservedMarkerInPayload
from .languages import Language, canonical_language, is_known_language_name

THINK_OPEN = "<think>"
THINK_CLOSE = "</think>"

_MARKED_RE = re.compile(
    r"\A<think>\n<(?P<name>[^<>\n]+)_start>\n\n(?P<trace>.*?)\n\n"
    r"<(?P=name)_end>\n</think>\n\n(?P<answer>.*)\Z",
    re.DOTALL,
)
_UNMARKED_RE = re.compile(
    r"\A<think>\n(?P<trace>.*?)\n</think>\n\n(?P<answer>.*)\Z",
    re.DOTALL,
)

# Wording around the question is an artifact convention; the tail from
# "for question" onward is the fixed part of the format.
AWARENESS_INPUT_TEMPLATE = (
    "Before you start solving, decide in which language you should internally "
    "think to answer most reliably, for question {question}\n\nThinking Language:"
)


@dataclass(frozen=True)
class ParsedResponse:
    """Outcome of parsing a raw response against the recognized grammars."""

    marker_language: Language | None
    trace: str
    answer: str
    well_formed: bool


def start_marker(lang: Language) -> str:
    return f"<{lang.name}_start>"


def end_marker(lang: Language) -> str:
    return f"<{lang.name}_end>"


def reserved_markers(lang: Language) -> tuple[str, ...]:
    return (THINK_OPEN, THINK_CLOSE, start_marker(lang), end_marker(lang))


def build_think_prefix(lang: Language) -> str:
    """Forced decoding prefix that pins the thinking language."""
    return f"{THINK_OPEN}\n{start_marker(lang)}"


def render_think_response(lang: Language, trace: str, answer: str) -> str:
    """Render the marked format; payloads must not contain reserved markers."""
    for payload in (trace, answer):
        for marker in reserved_markers(lang):
            if marker in payload:
                raise ReservedMarkerInPayload(f"payload contains {marker!r}")
    return (
        f"{THINK_OPEN}\n{start_marker(lang)}\n\n{trace}\n\n"
        f"{end_marker(lang)}\n{THINK_CLOSE}\n\n{answer}"
    )


def parse_response(raw: str) -> ParsedResponse:
    """Parse arbitrary text; never raises, degraded parses set well_formed=False.

    CRLF is normalized to LF first. well_formed requires an exact grammar match
    and exactly one think block.
    """
    text = raw.replace("\r\n", "\n")
    single_block = text.count(THINK_OPEN) == 1 and text.count(THINK_CLOSE) == 1

    m = _MARKED_RE.match(text)
    if m and is_known_language_name(m.group("name")) and single_block:
        return ParsedResponse(
            marker_language=canonical_language(m.group("name")),
            trace=m.group("trace"),
            answer=m.group("answer"),
            well_formed=True,
        )

    m = _UNMARKED_RE.match(text)
    if m and single_block:
        return ParsedResponse(None, m.group("trace"), m.group("answer"), True)

    if text.startswith(THINK_OPEN):
        return _parse_degraded(text)
    return ParsedResponse(None, "", text, False)


def _parse_degraded(text: str) -> ParsedResponse:
    """Best-effort extraction of the first think block; always well_formed=False."""
    body = text[len(THINK_OPEN):]
    close = body.find(THINK_CLOSE)
    if close >= 0:
        inner, rest = body[:close], body[close + len(THINK_CLOSE):]
    else:
        inner, rest = body, ""  # truncated generation: no answer yet

    lang = None
    inner = inner.strip("\n")
    m = re.match(r"<(?P<name>[^<>\n]+)_start>\n*(?P<body>.*)\Z", inner, re.DOTALL)
    if m and is_known_language_name(m.group("name")):
        lang = canonical_language(m.group("name"))
        inner = m.group("body")
        end = inner.rfind(end_marker(lang))
        if end >= 0:
            inner = inner[:end]
        inner = inner.strip("\n")

    return ParsedResponse(lang, inner, rest.lstrip("\n"), False)


def render_awareness_record(q: Question, chosen: Language) -> SftRecord:
    """Self-awareness row: predict the advantageous thinking language for a question."""
    meta: dict[str, Any] = {
        "question_id": q.id,
        "thinking_language": chosen.name,
        "scenario": q.scenario,
        "stage": "step2",
    }
    return SftRecord(
        input=AWARENESS_INPUT_TEMPLATE.format(question=q.text),
        output=f"{THINK_OPEN}\n\n{THINK_CLOSE}\n\n{chosen.name}",
        meta=meta,
    )
