"""Shared fixture builders: a fully scripted mock Step-2 workspace."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import pytest

from x1.datasets import write_jsonl
from x1.domain import ModelEndpoint
from x1.gateway import FixtureStore
from x1.languages import canonical_language, culture_language_for
from x1.manifest import endpoint_to_json
from x1.step2 import build_contrast_request, build_default_request, build_judge_request
from x1.template import render_think_response

EN = canonical_language("en")

# Outcome plan: 40 math + 20 culture questions, 14 ties total (9 math, 5 culture).
MATH_PLAN = (
    ["tie-correct"] * 5 + ["tie-wrong"] * 4 + ["default"] * 16 + ["contrast"] * 15
)
CULTURE_PLAN = ["tie"] * 5 + ["contrast"] * 8 + ["default"] * 7

MATH_LANGS = ["fr", "th", "zh", "bn"]
CULTURE_COUNTRIES = ["Japan", "Brazil", "Germany", "Korea", "Italy"]

_TRACES = {
    "en": "First add four and fourteen, then double-check the total carefully.",
    "fr": "On additionne quatre et quatorze, puis on vérifie le total avec soin.",
    "th": "บวกสี่กับสิบสี่ แล้วตรวจสอบผลรวมอีกครั้งอย่างระมัดระวัง",
    "zh": "先把四和十四相加，然后再仔细核对一遍总数。",
    "bn": "প্রথমে চার এবং চৌদ্দ যোগ করুন, তারপর মোটটি আবার যাচাই করুন।",
    "ja": "まず靴を脱ぐ習慣について考え、それから答えを確認します。",
    "pt": "Primeiro pensamos no costume local e depois confirmamos a resposta.",
    "de": "Zuerst denken wir über den Brauch nach und prüfen dann die Antwort.",
    "ko": "먼저 그 관습에 대해 생각한 다음 답을 확인합니다.",
    "it": "Prima riflettiamo sull'usanza e poi confermiamo la risposta.",
}

_GOOD = 18
_BAD = 7


@dataclass
class Step2Workspace:
    root: Path
    questions_path: Path
    endpoints_path: Path
    backbone: ModelEndpoint
    surface: ModelEndpoint
    judge: ModelEndpoint
    expected_ties: int
    expected_wins: int
    n_questions: int


def _math_answer(value: int, code: str) -> str:
    openers = {
        "fr": "La réponse est",
        "th": "คำตอบคือ",
        "zh": "答案是",
        "bn": "উত্তর হল",
    }
    return f"{openers[code]} {value}."


def _culture_answer(flavor: str) -> str:
    return f"Guests are expected to follow the custom ({flavor})."


def build_step2_workspace(root: Path, seed: int = 0) -> Step2Workspace:
    root.mkdir(parents=True, exist_ok=True)
    backbone = ModelEndpoint(
        model_name="mock-backbone", role="mock",
        fixture_path=str(root / "fixtures_backbone.jsonl"),
        default_think_language=EN,
    )
    surface = ModelEndpoint(
        model_name="mock-surface", role="mock",
        fixture_path=str(root / "fixtures_surface.jsonl"),
        default_think_language=EN,
    )
    judge = ModelEndpoint(
        model_name="mock-judge", role="mock",
        fixture_path=str(root / "fixtures_judge.jsonl"),
    )

    from x1.datasets import load_dataset
    from x1.domain import DatasetSource

    rows = []
    for i in range(len(MATH_PLAN)):
        rows.append({
            "question": f"Math problem {i}: four plus fourteen?",
            "answer": str(_GOOD),
            "language": MATH_LANGS[i % len(MATH_LANGS)],
        })
    for i in range(len(CULTURE_PLAN)):
        country = CULTURE_COUNTRIES[i % len(CULTURE_COUNTRIES)]
        rows.append({
            "question": f"Culture question {i}: what should a guest do in {country}?",
            "knowledge": f"Custom {i} of {country} must be honored.",
            "country": country,
        })
    questions_path = root / "questions.jsonl"
    write_jsonl(questions_path, rows)

    questions = load_dataset(DatasetSource(name="custom", path=str(questions_path)))
    math_qs = [q for q in questions if q.scenario == "math"]
    culture_qs = [q for q in questions if q.scenario == "culture"]

    bb_store = FixtureStore(backbone.fixture_path)
    sf_store = FixtureStore(surface.fixture_path)
    judge_store = FixtureStore(judge.fixture_path)

    for q, outcome in zip(math_qs, MATH_PLAN):
        code = q.prompt_language.code
        contrast_lang = q.prompt_language  # backbone default is English
        default_ok = outcome in ("tie-correct", "default")
        contrast_ok = outcome in ("tie-correct", "contrast")
        bb_store.record_text(
            build_default_request(backbone, q, seed),
            f"<think>\n{_TRACES['en']}\n</think>\n\n"
            + _math_answer(_GOOD if default_ok else _BAD, code),
        )
        sf_store.record_text(
            build_contrast_request(surface, q, contrast_lang, seed),
            render_think_response(
                contrast_lang, _TRACES[code], _math_answer(_GOOD if contrast_ok else _BAD, code)
            ),
        )

    for q, outcome in zip(culture_qs, CULTURE_PLAN):
        group = culture_language_for(q.country)
        default_answer = _culture_answer(f"default view {q.id}")
        contrast_answer = _culture_answer(f"native view {q.id}")
        bb_store.record_text(
            build_default_request(backbone, q, seed),
            f"<think>\n{_TRACES['en']}\n</think>\n\n{default_answer}",
        )
        sf_store.record_text(
            build_contrast_request(surface, q, group, seed),
            render_think_response(group, _TRACES[group.code], contrast_answer),
        )
        if outcome == "tie":
            scores = ("7.0", "7.0")
        elif outcome == "contrast":
            scores = ("6.0", "8.5")
        else:
            scores = ("9.0", "3.5")
        judge_store.record_text(build_judge_request(judge, q, default_answer, seed), scores[0])
        judge_store.record_text(build_judge_request(judge, q, contrast_answer, seed), scores[1])

    endpoints_path = root / "endpoints.json"
    endpoints_path.write_text(json.dumps({
        "endpoints": {
            "backbone": endpoint_to_json(backbone),
            "surface": endpoint_to_json(surface),
            "judge": endpoint_to_json(judge),
        }
    }, indent=2))

    ties = MATH_PLAN.count("tie-correct") + MATH_PLAN.count("tie-wrong") + CULTURE_PLAN.count("tie")
    return Step2Workspace(
        root=root,
        questions_path=questions_path,
        endpoints_path=endpoints_path,
        backbone=backbone,
        surface=surface,
        judge=judge,
        expected_ties=ties,
        expected_wins=len(rows) - ties,
        n_questions=len(rows),
    )


@pytest.fixture()
def step2_workspace(tmp_path) -> Step2Workspace:
    return build_step2_workspace(tmp_path / "ws")
