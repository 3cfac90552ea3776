from __future__ import annotations

import pytest

from x1.datasets import write_jsonl
from x1.domain import DatasetSource, GoldAnswer, ModelEndpoint, Question
from x1.gateway import ChatRequest, FixtureStore, Gateway
from x1.harness import (
    aggregate_metrics,
    build_benchmark_request,
    extract_option_label,
    read_samples,
    recall_analysis,
    result_for_outcome,
    run_benchmark,
    write_metric_tables,
    write_samples,
    RECALL_IDENTIFY_PROMPT,
    RECALL_VERIFY_PROMPT,
    RETRY_NUDGE,
)
from x1.languages import canonical_language
from x1.template import render_think_response

EN = canonical_language("en")
FR = canonical_language("fr")
ZH = canonical_language("zh")

# Option-label extraction: first standalone uppercase A-D token; comparison to
# the gold label is case-insensitive.
LABEL_CASES = [
    ("B) Paris", "B"),
    ("The answer is B.", "B"),
    ("(C)", "C"),
    ("Option D", "D"),
    ("A", "A"),
    ("I think it's A because of the custom.", "A"),
    ("Answer: C", "C"),
    ("The correct answer is (B).", "B"),
    ("D.", "D"),
    ("B and C are both plausible, but B more so", "B"),
    ("A) 東京", "A"),
    ("**D**", "D"),
    ("[A]", "A"),
    ("C: chopsticks upright is taboo", "C"),
    ("My final choice: D", "D"),
    ("it must be C, not D", "C"),
    ("choice A it is", "A"),
    ("B\n", "B"),
    ("\nA", "A"),
    ("The answer: B, since guests bow.", "B"),
    ("Respuesta: C", "C"),
    ("答案是 B", "B"),
    ("La réponse est D.", "D"),
    ("B。", "B"),
    ("'C'", "C"),
    ('"D"', "D"),
    ("A or B? I will go with A", "A"),
    ("After weighing everything, D seems right.", "D"),
    ("final answer = C", "C"),
    ("Answer - B", "B"),
    # no extractable label
    ("b", None),
    ("abcd", None),
    ("ABCD", None),
    ("", None),
    ("The answer is 42", None),
    ("everyone agrees", None),
    ("エビデンスなし", None),
    ("answer unclear", None),
    ("не знаю", None),
    ("maybe option e", None),
]


def test_label_cases_cover_40():
    assert len(LABEL_CASES) == 40


@pytest.mark.parametrize("text,expected", LABEL_CASES)
def test_extract_option_label(text, expected):
    assert extract_option_label(text) == expected


def math_q(i, lang=FR, gold=18):
    return Question(id=f"mgsm:{lang.code}:{i:04d}", text=f"Question {i} ?", prompt_language=lang,
                    source="mgsm", gold=GoldAnswer.numeric(gold))


def mc_q(i, label="B"):
    return Question(id=f"fork:en:{i:04d}", text=f"Q{i}: pick one", prompt_language=EN,
                    source="fork", gold=GoldAnswer.choice(label))


def endpoint(tmp_path, default=EN):
    return ModelEndpoint(model_name="m", role="mock",
                         fixture_path=str(tmp_path / "fx.jsonl"), default_think_language=default)


def test_result_for_outcome_math_correct(tmp_path):
    ep = endpoint(tmp_path)
    raw = render_think_response(FR, "quatre plus quatorze font dix-huit au total ici", "La réponse est 18.")
    r = result_for_outcome(ep, math_q(0), raw, truncated=False, run_index=1)
    assert r.correct
    assert r.raw_score == 10.0
    assert r.chosen_think_language == FR
    assert r.switched  # endpoint default is English
    assert r.run_index == 1


def test_result_for_outcome_mc(tmp_path):
    ep = endpoint(tmp_path)
    raw = "<think>\nconsidering the options carefully here\n</think>\n\nB) upright chopsticks"
    r = result_for_outcome(ep, mc_q(0, "B"), raw, truncated=False, run_index=0)
    assert r.correct
    assert not r.switched  # no marker: model stayed on its default pathway


def test_result_for_outcome_gold_label_case_insensitive(tmp_path):
    ep = endpoint(tmp_path)
    r = result_for_outcome(ep, mc_q(0, "b"), "The answer is B.", truncated=False, run_index=0)
    assert r.correct


def test_run_benchmark_counts_and_errors(tmp_path):
    ep = endpoint(tmp_path)
    questions = [math_q(i) for i in range(5)]
    rows = [
        {"id": q.id, "question": q.text, "answer": "18", "language": "fr"}
        for q in questions
    ]
    src_path = tmp_path / "mgsm_fr.jsonl"
    write_jsonl(src_path, rows)
    store = FixtureStore(ep.fixture_path)
    for run in range(3):
        for i, q in enumerate(questions):
            if i == 4 and run == 2:
                continue  # missing fixture -> per-item error
            store.record_text(
                build_benchmark_request(ep, q, seed=run),
                f"<think>\nrun {run} reasoning\n</think>\n\nThe answer is {18 if i % 2 == 0 else 7}.",
            )
    results = run_benchmark(ep, DatasetSource(name="custom", path=str(src_path)), runs=3)
    assert len(results) == 15
    errored = [r for r in results if r.error]
    assert len(errored) == 1
    assert not errored[0].correct
    correct = [r for r in results if r.correct]
    # items 0, 2, 4 carry the right answer (3 x 3 runs), minus the errored run of item 4
    assert len(correct) == 8
    assert {r.question_id for r in errored} == {questions[4].id}


def test_run_benchmark_truncation_still_scores(tmp_path):
    ep = endpoint(tmp_path)
    q = math_q(0)
    src_path = tmp_path / "one.jsonl"
    write_jsonl(src_path, [{"id": q.id, "question": q.text, "answer": "18", "language": "fr"}])
    looping = "<think>\nbref\n</think>\n\nLa réponse est 18. " + "encore et encore " * 50
    FixtureStore(ep.fixture_path).record_text(build_benchmark_request(ep, q, seed=0), looping)
    results = run_benchmark(
        ep, DatasetSource(name="custom", path=str(src_path)), runs=1,
        gateway=Gateway(guard_block=18),
    )
    assert results[0].truncated
    assert results[0].correct  # the partial answer still contains 18


# --- recall analysis ---------------------------------------------------------


def judge(tmp_path):
    return ModelEndpoint(model_name="gpt-judge", role="mock", fixture_path=str(tmp_path / "judge.jsonl"))


def culture_q():
    return Question(
        id="culturebank:ja:0000", text="What about shoes?", prompt_language=EN,
        source="culturebank", culture_knowledge="Shoes come off indoors.", country="Japan",
    )


def _recall_req(ep, prompt, nudge=False):
    return ChatRequest(endpoint=ep, user=prompt, system=RETRY_NUDGE if nudge else None,
                       sampling={"temperature": 0.0}, seed=0)


def test_recall_analysis_two_norms(tmp_path):
    ep = judge(tmp_path)
    q = culture_q()
    store = FixtureStore(ep.fixture_path)
    identify = RECALL_IDENTIFY_PROMPT.format(question=q.text, answer="Remove them", reasoning="the reasoning")
    store.record_text(_recall_req(ep, identify), '["norm A", "norm B"]')
    for norm, reply in (("norm A", "True"), ("norm B", "False")):
        verify = RECALL_VERIFY_PROMPT.format(question=q.text, answer="Remove them", norm=norm)
        store.record_text(_recall_req(ep, verify), reply)
    recalls, verified = recall_analysis(ep, q, "Remove them", "the reasoning")
    assert recalls == ["norm A", "norm B"]
    assert verified == [True, False]
    from x1.metrics import aggregate_recall

    stats = aggregate_recall([(len(recalls), sum(verified))])
    assert stats.avg_recall_count_per_thought == 2.0
    assert stats.recall_accuracy_pct == 50.0


def test_recall_analysis_empty(tmp_path):
    ep = judge(tmp_path)
    q = culture_q()
    identify = RECALL_IDENTIFY_PROMPT.format(question=q.text, answer="x", reasoning="无相关内容")
    FixtureStore(ep.fixture_path).record_text(_recall_req(ep, identify), "[]")
    recalls, verified = recall_analysis(ep, q, "x", "无相关内容")
    assert recalls == [] and verified == []


def test_recall_analysis_retry_on_unparseable(tmp_path):
    ep = judge(tmp_path)
    q = culture_q()
    store = FixtureStore(ep.fixture_path)
    identify = RECALL_IDENTIFY_PROMPT.format(question=q.text, answer="x", reasoning="r")
    store.record_text(_recall_req(ep, identify), "I found some norms!")
    store.record_text(_recall_req(ep, identify, nudge=True), "['only norm']")
    verify = RECALL_VERIFY_PROMPT.format(question=q.text, answer="x", norm="only norm")
    store.record_text(_recall_req(ep, verify), "definitely")
    store.record_text(_recall_req(ep, verify, nudge=True), "True")
    recalls, verified = recall_analysis(ep, q, "x", "r")
    assert recalls == ["only norm"]
    assert verified == [True]


# --- results store and aggregation ------------------------------------------------


def test_samples_round_trip(tmp_path):
    ep = endpoint(tmp_path)
    raw = render_think_response(FR, "pensée en français ici même", "La réponse est 18.")
    results = [result_for_outcome(ep, math_q(i), raw, False, run) for i in range(3) for run in range(2)]
    path = tmp_path / "samples.jsonl"
    write_samples(results, path)
    assert read_samples(path) == results


def test_aggregate_metrics_and_tables(tmp_path):
    ep = endpoint(tmp_path)
    results = []
    for run in range(2):
        for i in range(4):
            raw = render_think_response(
                FR, "raisonnement long et détaillé pour le calcul", f"La réponse est {18 if i < 2 else 7}."
            )
            results.append(result_for_outcome(ep, math_q(i), raw, False, run))
    metrics = aggregate_metrics(results)
    assert metrics["mean_at_k"]["per_language"] == {"French": 50.0}
    assert metrics["mean_at_k"]["average"] == 50.0
    assert metrics["switch_rate"] == 100.0
    assert metrics["think_language_frequency"] == {"French": 100.0}

    write_metric_tables(metrics, tmp_path / "tables")
    acc = (tmp_path / "tables" / "accuracy.csv").read_text().splitlines()
    assert acc[0] == "language,accuracy"
    assert acc[1].startswith("French,")
    assert (tmp_path / "tables" / "compliance.csv").exists()
    assert (tmp_path / "tables" / "frequency.csv").exists()
