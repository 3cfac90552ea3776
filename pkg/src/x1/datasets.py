"""Dataset loading, JSONL helpers, and quota checks.

Rows are one JSON object per line, UTF-8, LF. A math row needs `question`,
`answer` (numeric or choice label), and `language`; a culture row needs
`question`, `knowledge`, and `country`. `id` is optional and defaults to
`{source}:{language-code}:{index}` so joins stay stable across runs.
"""

from __future__ import annotations

import hashlib
import json
import logging
import random
from decimal import Decimal, InvalidOperation
from pathlib import Path
from typing import Any, Iterable, Iterator

from .domain import DatasetSource, GoldAnswer, Question
from .errors import SchemaError, UnknownCountry, UnknownLanguage
from .languages import Language, canonical_language, culture_language_for

log = logging.getLogger(__name__)

_CHOICE_LABELS = {"A", "B", "C", "D"}


def read_jsonl(path: str | Path) -> Iterator[dict[str, Any]]:
    with open(path, encoding="utf-8") as fh:
        for i, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                yield json.loads(line)
            except json.JSONDecodeError as exc:
                raise SchemaError(f"invalid JSON: {exc}", line=i) from exc


def write_jsonl(path: str | Path, rows: Iterable[dict[str, Any]]) -> int:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    n = 0
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for row in rows:
            fh.write(json.dumps(row, ensure_ascii=False) + "\n")
            n += 1
    return n


def file_sha256(path: str | Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            digest.update(chunk)
    return digest.hexdigest()


def _parse_gold(raw: Any, line: int) -> GoldAnswer:
    text = str(raw).strip()
    if text.upper() in _CHOICE_LABELS:
        return GoldAnswer.choice(text.upper())
    try:
        return GoldAnswer.numeric(Decimal(text.replace(",", "")))
    except InvalidOperation as exc:
        raise SchemaError(f"answer is neither numeric nor a choice label: {raw!r}", line) from exc


def _row_to_question(row: dict[str, Any], source: DatasetSource, line: int) -> Question:
    """Build a Question; rows without an id get an empty one for the loader to fill."""
    if "question" not in row or not str(row["question"]).strip():
        raise SchemaError("missing question text", line)

    country = row.get("country")
    knowledge = row.get("knowledge") or row.get("culture_knowledge")
    scenario = source.scenario or ("culture" if (country or knowledge) else "math")

    if scenario == "culture":
        if country is None:
            raise SchemaError("culture row missing country", line)
        if knowledge is None and row.get("answer") is None:
            raise SchemaError("culture row needs knowledge or an answer", line)
        try:
            lang = (
                canonical_language(row["language"])
                if row.get("language")
                else culture_language_for(str(country))
            )
        except (UnknownLanguage, UnknownCountry) as exc:
            raise SchemaError(str(exc), line) from exc
        gold = _parse_gold(row["answer"], line) if row.get("answer") is not None else None
    else:
        if row.get("answer") is None:
            raise SchemaError("math row missing gold answer", line)
        if row.get("language") is None:
            raise SchemaError("math row missing language", line)
        try:
            lang = canonical_language(str(row["language"]))
        except UnknownLanguage as exc:
            raise SchemaError(str(exc), line) from exc
        gold = _parse_gold(row["answer"], line)

    return Question(
        id=str(row.get("id") or ""),
        text=str(row["question"]),
        prompt_language=lang,
        source=source.name,
        gold=gold,
        culture_knowledge=str(knowledge) if knowledge is not None else None,
        country=str(country) if country is not None else None,
    )


def load_dataset(source: DatasetSource) -> list[Question]:
    """Load and validate a question file; built-ins get quota warnings."""
    from dataclasses import replace

    questions: list[Question] = []
    per_key: dict[str, int] = {}
    per_language_index: dict[str, int] = {}
    for line, row in enumerate(read_jsonl(source.path), start=1):
        q = _row_to_question(row, source, line)
        if not q.id:
            # index per resolved language so generated ids never collide
            idx = per_language_index.get(q.prompt_language.code, 0)
            per_language_index[q.prompt_language.code] = idx + 1
            q = replace(q, id=f"{source.name}:{q.prompt_language.code}:{idx:04d}")
        questions.append(q)
        group = _quota_group(q)
        per_key[group] = per_key.get(group, 0) + 1

    ids = [q.id for q in questions]
    if len(set(ids)) != len(ids):
        dupes = sorted({i for i in ids if ids.count(i) > 1})
        raise SchemaError(f"duplicate question ids: {dupes[:5]}")

    expected = source.expected_quota()
    if expected:
        for group, want in expected.items():
            got = per_key.get(group, 0)
            if got != want:
                log.warning("quota mismatch for %s: expected %d, got %d", group, want, got)
    return questions


def _quota_group(q: Question) -> str:
    if q.country is not None:
        try:
            return culture_language_for(q.country).name
        except UnknownCountry:
            return q.country
    return q.prompt_language.name


def sample_by_quota(
    questions: list[Question], quota: dict[str, int], seed: int
) -> list[Question]:
    """Deterministically sample `quota[group]` questions per language group."""
    rng = random.Random(seed)
    by_group: dict[str, list[Question]] = {}
    for q in questions:
        by_group.setdefault(_quota_group(q), []).append(q)
    sampled: list[Question] = []
    for group in sorted(quota):
        pool = sorted(by_group.get(group, []), key=lambda q: q.id)
        take = min(quota[group], len(pool))
        if take < quota[group]:
            log.warning("group %s has only %d of %d requested items", group, len(pool), quota[group])
        sampled.extend(rng.sample(pool, take))
    return sampled


# --- question (de)serialization ---------------------------------------------


def question_to_json(q: Question) -> dict[str, Any]:
    gold: dict[str, Any] | None = None
    if q.gold is not None:
        gold = {"kind": q.gold.kind}
        if q.gold.kind == "numeric":
            gold["value"] = str(q.gold.numeric_value)
        else:
            gold["label"] = q.gold.label
    return {
        "id": q.id,
        "text": q.text,
        "language": q.prompt_language.name,
        "source": q.source,
        "gold": gold,
        "culture_knowledge": q.culture_knowledge,
        "country": q.country,
    }


def question_from_json(data: dict[str, Any]) -> Question:
    gold = None
    if data.get("gold"):
        g = data["gold"]
        gold = GoldAnswer.numeric(g["value"]) if g["kind"] == "numeric" else GoldAnswer.choice(g["label"])
    return Question(
        id=data["id"],
        text=data["text"],
        prompt_language=canonical_language(data["language"]),
        source=data.get("source", "custom"),
        gold=gold,
        culture_knowledge=data.get("culture_knowledge"),
        country=data.get("country"),
    )


def language_of_question_id(question_id: str) -> Language | None:
    """Recover the language code from a `{source}:{code}:{index}` id."""
    parts = question_id.split(":")
    if len(parts) >= 3:
        try:
            return canonical_language(parts[1])
        except UnknownLanguage:
            return None
    return None
