from __future__ import annotations

import json
from decimal import Decimal

import pytest
from hypothesis import given, strategies as st

from x1.datasets import read_jsonl
from x1.domain import GoldAnswer, Judgment, ModelEndpoint, Question, Trajectory
from x1.errors import (
    JudgeUnparseable,
    MalformedTrajectory,
    NoNumberFound,
    NoPivotAvailable,
)
from x1.gateway import FixtureStore, Gateway
from x1.languages import ENGLISH, canonical_language
from x1.step2 import (
    CONTRAST_WINNER,
    DEFAULT_WINNER,
    TIE,
    TrajectoryPair,
    Verdict,
    build_contrast_request,
    build_default_request,
    build_judge_request,
    contrast_language_for,
    emit_step2_datasets,
    extract_numeric_answer,
    generate_pair,
    identify_advantageous,
    parse_judge_score,
    pick_winner,
    score_culture,
    score_math,
    verdict_from_json,
    verdict_to_json,
)
from x1.template import parse_response, render_think_response

EN = ENGLISH
FR = canonical_language("fr")
TH = canonical_language("th")
ZH = canonical_language("zh")
JA = canonical_language("ja")


def math_q(lang, i=0, text="Combien de pommes ?", gold=18):
    return Question(
        id=f"mgsm:{lang.code}:{i:04d}", text=text, prompt_language=lang,
        source="mgsm", gold=GoldAnswer.numeric(gold),
    )


def culture_q(country="Japan", i=0):
    return Question(
        id=f"culturebank:{canonical_language('ja').code}:{i:04d}",
        text="What do guests do with shoes indoors?",
        prompt_language=EN,
        source="culturebank",
        culture_knowledge="Shoes are removed before entering a home.",
        country=country,
    )


# --- contrast language ------------------------------------------------------


def test_contrast_english_default_math_uses_prompt_language():
    assert contrast_language_for(math_q(TH), EN) == TH


def test_contrast_non_english_default_goes_english():
    assert contrast_language_for(math_q(ZH), ZH) == EN


def test_contrast_culture_uses_country_group():
    assert contrast_language_for(culture_q("Japan"), EN) == JA


def test_contrast_english_prompt_needs_pivot():
    q = math_q(EN)
    with pytest.raises(NoPivotAvailable):
        contrast_language_for(q, EN)
    assert contrast_language_for(q, EN, fallback_pivot=FR) == FR


# --- numeric extraction: rule oracle, 50 hand cases --------------------------

EXTRACTION_CASES = [
    ("So, 4 + 14 = 18 apples.", "18"),
    ("The answer is 18.", "18"),
    ("18.5", "18.5"),
    ("3,600", "3600"),
    ("1,234,567", "1234567"),
    ("3 600", "3600"),
    ("٣٦", "36"),
    ("٣٦٠٠", "3600"),
    ("۴۲", "42"),
    ("৩৬", "36"),
    ("৪২০", "420"),
    ("१०८", "108"),
    ("३.५", "3.5"),
    ("๓.๕", "3.5"),
    ("มี ๑๐๐ บาท", "100"),
    ("٢٠٠ دينار", "200"),
    ("answer is ١٢٣٤", "1234"),
    ("١٢٬٣٤٥", "12345"),
    ("answer: -7", "-7"),
    ("-0.5", "-0.5"),
    ("x = 2.5, y = 3.75", "3.75"),
    ("50%", "50"),
    ("The probability is 12.5%.", "12.5"),
    ("First 10 then 20 then 30", "30"),
    ("价格是 3,600 元", "3600"),
    ("18.", "18"),
    ("0.001", "0.001"),
    ("1,23", "23"),
    ("The year 2,024 has 366 days", "366"),
    ("Answer: 100,000", "100000"),
    ("3.14159", "3.14159"),
    ("٠", "0"),
    ("۹۹", "99"),
    ("5 000 000", "5000000"),
    ("It's about 1,000.75 dollars", "1000.75"),
    ("25 km in 2 h", "2"),
    ("Final answer: 42", "42"),
    ("42 is the final answer", "42"),
    ("In total we get eighteen (18)", "18"),
    ("1 + 1", "1"),
    ("He bought 12, 15, and 19 apples", "19"),
    ("Thus 7/2 = 3.5", "3.5"),
    ("the answer\nis\n42", "42"),
    ("total: 1,000,000.5", "1000000.5"),
    ("10.0", "10.0"),
    ("= 18 apples (2 baskets)", "2"),
    ("उत्तर १८ है।", "18"),
    ("উত্তর হল ৩৬।", "36"),
    ("คำตอบคือ ๑๘", "18"),
    ("الإجابة هي ١٨", "18"),
]


def test_hand_cases_cover_50():
    assert len(EXTRACTION_CASES) == 50


@pytest.mark.parametrize("text,expected", EXTRACTION_CASES)
def test_extract_numeric_answer(text, expected):
    assert extract_numeric_answer(text) == Decimal(expected)


@pytest.mark.parametrize("text", ["no digits here", "", "zero", "Seven plus eleven"])
def test_extract_no_number(text):
    with pytest.raises(NoNumberFound):
        extract_numeric_answer(text)


# --- math scoring -------------------------------------------------------------


def test_score_math_exact_match():
    assert score_math("The answer is 18.", GoldAnswer.numeric(18)).score == 10


def test_score_math_mismatch():
    assert score_math("18.5", GoldAnswer.numeric(18)).score == 0


def test_score_math_grouping_normalized():
    assert score_math("3,600", GoldAnswer.numeric(3600)).score == 10


def test_score_math_bengali_digits():
    assert score_math("৩৬", GoldAnswer.numeric(36)).score == 10


def test_score_math_no_number_is_zero_with_rationale():
    j = score_math("no digits here", GoldAnswer.numeric(18))
    assert j.score == 0
    assert j.rationale == "no extractable number"


def test_score_math_relative_tolerance():
    gold = GoldAnswer.numeric("0.3333333333")
    assert score_math("0.3333333333", gold).score == 10
    assert score_math("0.3334", gold).score == 0


# --- judge scoring --------------------------------------------------------------

JUDGE_PARSE_CASES = [
    ("8.5", "8.5"),
    ("7", "7"),
    ("Score: 7", "7"),
    ("score: 6.5", "6.5"),
    ("Total rating: 9.0", "9.0"),
    ("10", "10"),
    ("0", "0"),
    ("rating=4.25", "4.25"),
    ("The score is 3.", "3"),
    ("  5  ", "5"),
    ("12", "10"),        # clamped high
    ("-3", "0"),         # clamped low
    ("8.5/10", "8.5"),
    ("7/10", "7"),
    ("6 out of 10", "6"),
    ("9.5 out of 10.", "9.5"),
    ("Rating: 7.8 because the response is thorough", "7.8"),
    ("I give it an 8", "8"),
    ("I would rate this 6.5 given the evidence", "6.5"),
    ("**9**", "9"),
    ("9.99", "9.99"),
    ("Answer: 2", "2"),
    ("The response merits 4 points", "4"),
    ("0.5", "0.5"),
    ("10.0", "10.0"),
    ("score could be 1 or so", "1"),
    ("Final: 3.3", "3.3"),
    ("total rating 9", "9"),
    ("a 7, roughly", "7"),
    ("grade: 5.75/10", "5.75"),
]


def test_judge_parse_cases_cover_30():
    assert len(JUDGE_PARSE_CASES) == 30


@pytest.mark.parametrize("reply,expected", JUDGE_PARSE_CASES)
def test_parse_judge_score(reply, expected):
    assert parse_judge_score(reply) == Decimal(expected)


def test_parse_judge_score_unparseable():
    with pytest.raises(JudgeUnparseable):
        parse_judge_score("excellent response, very helpful")


def test_judge_prompt_contains_required_phrase():
    q = culture_q()
    req = build_judge_request(
        ModelEndpoint(model_name="j", role="judge", base_url="http://x"), q, "resp"
    )
    assert "Total rating (a float on a scale of 0 to 10):" in req.user
    assert q.text in req.user
    assert q.culture_knowledge in req.user
    assert "resp" in req.user


def judge_endpoint(tmp_path):
    return ModelEndpoint(model_name="judge", role="mock", fixture_path=str(tmp_path / "judge.jsonl"))


def test_score_culture_direct_parse(tmp_path):
    judge = judge_endpoint(tmp_path)
    q = culture_q()
    FixtureStore(judge.fixture_path).record_text(build_judge_request(judge, q, "resp"), "8.5")
    j = score_culture(judge, q, "resp")
    assert j.score == Decimal("8.5")
    assert j.method == "culture-judge"
    assert j.judge_model == "judge"


def test_score_culture_retry_then_parse(tmp_path):
    judge = judge_endpoint(tmp_path)
    q = culture_q()
    store = FixtureStore(judge.fixture_path)
    store.record_text(build_judge_request(judge, q, "resp"), "the response is lovely")
    store.record_text(build_judge_request(judge, q, "resp", nudge=True), "Score: 7")
    assert score_culture(judge, q, "resp").score == Decimal(7)


def test_score_culture_unparseable_after_retry(tmp_path):
    judge = judge_endpoint(tmp_path)
    q = culture_q()
    store = FixtureStore(judge.fixture_path)
    store.record_text(build_judge_request(judge, q, "resp"), "no numbers")
    store.record_text(build_judge_request(judge, q, "resp", nudge=True), "still wordy")
    with pytest.raises(JudgeUnparseable):
        score_culture(judge, q, "resp")


# --- pairing ----------------------------------------------------------------------


def endpoints(tmp_path):
    backbone = ModelEndpoint(
        model_name="backbone", role="mock", fixture_path=str(tmp_path / "bb.jsonl"),
        default_think_language=EN,
    )
    surface = ModelEndpoint(
        model_name="surface", role="mock", fixture_path=str(tmp_path / "sf.jsonl"),
        default_think_language=EN,
    )
    return backbone, surface


def test_generate_pair_french_item(tmp_path):
    backbone, surface = endpoints(tmp_path)
    q = math_q(FR, text="Il y a 4 pommes et 14 poires, combien de fruits ?")
    FixtureStore(backbone.fixture_path).record_text(
        build_default_request(backbone, q),
        "<think>\nAdd four and fourteen to get eighteen.\n</think>\n\nLa réponse est 18.",
    )
    FixtureStore(surface.fixture_path).record_text(
        build_contrast_request(surface, q, FR),
        render_think_response(FR, "On additionne quatre et quatorze pour obtenir dix-huit.", "La réponse est 18."),
    )
    pair = generate_pair(backbone, surface, q)
    assert pair.contrast_lang == FR
    assert pair.contrast_traj.thinking_language == FR
    assert pair.default_lang == EN
    assert pair.default_traj.thinking_language is None  # unmarked backbone format
    assert pair.default_traj.answer == "La réponse est 18."


def test_generate_pair_answers_stay_in_prompt_language(tmp_path):
    from x1.langid import compliance_flags

    backbone, surface = endpoints(tmp_path)
    q = math_q(FR, text="Combien font quatre plus quatorze ?")
    FixtureStore(backbone.fixture_path).record_text(
        build_default_request(backbone, q),
        "<think>\nfour plus fourteen is eighteen\n</think>\n\nLa réponse finale est donc dix-huit, soit 18 fruits.",
    )
    FixtureStore(surface.fixture_path).record_text(
        build_contrast_request(surface, q, FR),
        render_think_response(FR, "quatre plus quatorze font dix-huit", "La réponse finale est donc dix-huit, soit 18 fruits."),
    )
    pair = generate_pair(backbone, surface, q)
    for traj in (pair.default_traj, pair.contrast_traj):
        flags = compliance_flags(traj, required_think=FR, prompt_lang=FR)
        assert flags.answer


def test_generate_pair_malformed_contrast(tmp_path):
    backbone, surface = endpoints(tmp_path)
    q = math_q(FR)
    FixtureStore(backbone.fixture_path).record_text(
        build_default_request(backbone, q), "<think>\nt\n</think>\n\n18"
    )
    # The forced continuation immediately closes the think block: no marker pair.
    FixtureStore(surface.fixture_path).record_text(
        build_contrast_request(surface, q, FR), "\n</think>\n\n18"
    )
    with pytest.raises(MalformedTrajectory):
        generate_pair(backbone, surface, q)


def test_generate_pair_replay_identical(tmp_path):
    backbone, surface = endpoints(tmp_path)
    q = math_q(FR)
    FixtureStore(backbone.fixture_path).record_text(
        build_default_request(backbone, q), "<think>\nt\n</think>\n\n18"
    )
    FixtureStore(surface.fixture_path).record_text(
        build_contrast_request(surface, q, FR), render_think_response(FR, "tr", "18")
    )
    gw = Gateway()
    assert generate_pair(backbone, surface, q, gw) == generate_pair(backbone, surface, q, gw)


def test_pair_requires_exactly_one_english_side():
    q = math_q(FR)
    traj = Trajectory(None, "t", "18", raw="x")
    with pytest.raises(ValueError):
        TrajectoryPair(q, traj, traj, default_lang=FR, contrast_lang=TH)
    with pytest.raises(ValueError):
        TrajectoryPair(q, traj, traj, default_lang=EN, contrast_lang=EN)


# --- verdicts ---------------------------------------------------------------------


def make_pair(q=None, default_answer="18", contrast_answer="18"):
    q = q or math_q(FR)
    default = Trajectory(None, "default trace", default_answer, raw="d")
    contrast = Trajectory(FR, "contrast trace", contrast_answer, raw="c")
    return TrajectoryPair(q, default, contrast, default_lang=EN, contrast_lang=FR)


def test_identify_strict_dominance():
    pair = make_pair(default_answer="The answer is 18.", contrast_answer="The answer is 7.")
    verdict = identify_advantageous(pair, "math")
    assert verdict.winner == DEFAULT_WINNER
    assert verdict.winning_language == EN


def test_identify_tie_both_correct():
    pair = make_pair(default_answer="18", contrast_answer="answer: 18")
    assert identify_advantageous(pair, "math").winner == TIE


def test_identify_tie_both_wrong():
    pair = make_pair(default_answer="7", contrast_answer="9")
    assert identify_advantageous(pair, "math").winner == TIE


def test_identify_culture_margin(tmp_path):
    judge = judge_endpoint(tmp_path)
    q = culture_q()
    pair = TrajectoryPair(
        q,
        Trajectory(None, "dt", "default response", raw="d"),
        Trajectory(JA, "ct", "contrast response", raw="c"),
        default_lang=EN,
        contrast_lang=JA,
    )
    store = FixtureStore(judge.fixture_path)
    store.record_text(build_judge_request(judge, q, "default response"), "7.4")
    store.record_text(build_judge_request(judge, q, "contrast response"), "7.5")
    verdict = identify_advantageous(pair, "culture", judge=judge)
    assert verdict.winner == CONTRAST_WINNER  # 0.1 margin, no epsilon band
    assert verdict.winning_language == JA


@given(
    ds=st.decimals(min_value=0, max_value=10, places=3, allow_nan=False, allow_infinity=False),
    cs=st.decimals(min_value=0, max_value=10, places=3, allow_nan=False, allow_infinity=False),
    scale=st.decimals(min_value="0.001", max_value=1000, places=3, allow_nan=False, allow_infinity=False),
)
def test_winner_invariant_under_rescaling(ds, cs, scale):
    assert pick_winner(ds * scale, cs * scale) == pick_winner(ds, cs)


def test_math_verdict_symmetry():
    # Swapping sides swaps the winner label but not the winning language.
    q = math_q(FR)
    d = Trajectory(None, "dt", "18", raw="d")
    c = Trajectory(FR, "ct", "7", raw="c")
    pair = TrajectoryPair(q, d, c, default_lang=EN, contrast_lang=FR)
    swapped = TrajectoryPair(q, c, d, default_lang=FR, contrast_lang=EN)
    v1 = identify_advantageous(pair, "math")
    v2 = identify_advantageous(swapped, "math")
    assert v1.winner == DEFAULT_WINNER and v2.winner == CONTRAST_WINNER
    assert v1.winning_language == v2.winning_language == EN


# --- emission -----------------------------------------------------------------------


def make_verdicts(n_wins_default=4, n_wins_contrast=3, n_ties=3):
    verdicts = []
    i = 0

    def judgment(score):
        return Judgment(score=Decimal(score), method="math-exact")

    for _ in range(n_wins_default):
        pair = make_pair(math_q(FR, i), default_answer="18", contrast_answer="7")
        verdicts.append(Verdict(pair, judgment(10), judgment(0), DEFAULT_WINNER))
        i += 1
    for _ in range(n_wins_contrast):
        pair = make_pair(math_q(FR, i), default_answer="7", contrast_answer="18")
        verdicts.append(Verdict(pair, judgment(0), judgment(10), CONTRAST_WINNER))
        i += 1
    for _ in range(n_ties):
        pair = make_pair(math_q(FR, i))
        verdicts.append(Verdict(pair, judgment(10), judgment(10), TIE))
        i += 1
    return verdicts


def test_emit_tie_discard_arithmetic(tmp_path):
    verdicts = make_verdicts(4, 3, 3)
    summary = emit_step2_datasets(verdicts, tmp_path)
    assert summary.total == 7
    assert summary.discarded == 3
    sft = list(read_jsonl(tmp_path / "step2_sft.jsonl"))
    awareness = list(read_jsonl(tmp_path / "step2_awareness.jsonl"))
    dpo = list(read_jsonl(tmp_path / "step2_dpo.jsonl"))
    assert len(sft) == len(awareness) == len(dpo) == 7


def test_emit_dpo_scores_strictly_ordered(tmp_path):
    emit_step2_datasets(make_verdicts(), tmp_path)
    for row in read_jsonl(tmp_path / "step2_dpo.jsonl"):
        assert Decimal(row["meta"]["chosen_score"]) > Decimal(row["meta"]["rejected_score"])
        assert row["chosen"] != row["rejected"]
        assert parse_response(row["chosen"]).well_formed
        assert parse_response(row["rejected"]).well_formed


def test_emit_sft_reparses_with_winner_marker(tmp_path):
    emit_step2_datasets(make_verdicts(), tmp_path)
    for row in read_jsonl(tmp_path / "step2_sft.jsonl"):
        parsed = parse_response(row["output"])
        assert parsed.well_formed
        assert parsed.marker_language.name == row["meta"]["thinking_language"]


def test_emit_awareness_outputs(tmp_path):
    emit_step2_datasets(make_verdicts(2, 1, 0), tmp_path)
    for row in read_jsonl(tmp_path / "step2_awareness.jsonl"):
        parsed = parse_response(row["output"])
        assert parsed.trace == ""
        assert parsed.answer in ("English", "French")
        assert row["input"].endswith("Thinking Language:")


def test_emit_awareness_ratio(tmp_path):
    emit_step2_datasets(make_verdicts(4, 4, 0), tmp_path, awareness_ratio=0.5)
    awareness = list(read_jsonl(tmp_path / "step2_awareness.jsonl"))
    dpo = list(read_jsonl(tmp_path / "step2_dpo.jsonl"))
    assert len(dpo) == 8
    assert len(awareness) == 4


def test_emit_summary_counts(tmp_path):
    emit_step2_datasets(make_verdicts(4, 3, 3), tmp_path, run_id="rid")
    summary = json.loads((tmp_path / "step2_summary.json").read_text())
    assert summary["wins"] == 7
    assert summary["ties"] == 3
    assert summary["run_id"] == "rid"
    assert sum(summary["per_language_wins"].values()) == 7


def test_verdict_json_round_trip():
    verdict = make_verdicts(1, 0, 0)[0]
    back = verdict_from_json(json.loads(json.dumps(verdict_to_json(verdict))))
    assert back == verdict
