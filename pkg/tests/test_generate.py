import random
from collections import Counter

import pytest

import corpusgen
from codeqa.javatok import END, FUNCODE, START, build_record, detokenize
from codeqa.qagen import (
    MissingSummary,
    NoNegativeAvailable,
    QuestionType,
    SkipLog,
    generate_corpus,
    generate_tuples,
    method_rng,
    render_answer,
    render_params,
    render_question,
    sample_negative_summary,
    task_phrase,
)
from codeqa.evalkit import score_answer


def _rec(src, summary="", rid="m1", project="p1"):
    return build_record(rid, project, src, summary)


VERTEX = _rec(
    "public Vertex nextVertex(Vertex v) { return v; }",
    summary="returns the next vertex of a polygon",
)
SETTER = _rec(
    "public void setDomainName(String n) { this.n = n; }",
    summary="sets the domain name",
    rid="m2",
)
NOARG = _rec("void run() { }", rid="m3")


def test_render_question_q1_shape(templates):
    rng = random.Random(5)
    q, tid = render_question(templates, QuestionType.Q1, VERTEX, rng)
    assert 0 <= tid < len(templates.question_layouts[QuestionType.Q1])
    text = detokenize(q)
    assert "return" in text or "type" in text or "give" in text


def test_render_question_deterministic(templates):
    a, ta = render_question(templates, QuestionType.Q2, VERTEX, random.Random(9))
    b, tb = render_question(templates, QuestionType.Q2, VERTEX, random.Random(9))
    assert a == b and ta == tb


def test_render_question_q6_uses_task(templates):
    rng = random.Random(1)
    q, _ = render_question(templates, QuestionType.Q6, SETTER, rng)
    assert "set" in q and "domain" in q and "name" in q
    assert "sets" not in q  # de-conjugated


def test_render_question_missing_summary(templates):
    rng = random.Random(0)
    with pytest.raises(MissingSummary):
        render_question(templates, QuestionType.Q5, NOARG, rng)
    with pytest.raises(MissingSummary):
        render_question(templates, QuestionType.Q6, NOARG, rng)


def test_render_answer_q1(templates):
    ans = render_answer(templates, QuestionType.Q1, VERTEX, random.Random(0))
    assert ans[0] == START and ans[-1] == END
    assert "vertex" in ans


def test_render_answer_q1_paper_layout(templates):
    # Layout 0 is the paper's exact phrasing.
    class FixedRng:
        def randrange(self, n):
            return 0

    ans = render_answer(templates, QuestionType.Q1, VERTEX, FixedRng())
    assert detokenize(ans) == "<st> the return type for this method is vertex </s>"


def test_render_answer_q5_paper_layout(templates):
    class FixedRng:
        def randrange(self, n):
            return 0

    ans = render_answer(templates, QuestionType.Q5, SETTER, FixedRng())
    assert detokenize(ans) == "<st> this method sets the domain name </s>"


def test_render_answer_q2_empty_params(templates):
    ans = render_answer(templates, QuestionType.Q2, NOARG, random.Random(0))
    assert "no" in ans and "parameters" in ans


def test_render_answer_q3_single_funcode(templates):
    for seed in range(10):
        ans = render_answer(templates, QuestionType.Q3, VERTEX, random.Random(seed))
        assert ans.count(FUNCODE) == 1


def test_render_answer_q6_yes_no(templates):
    rng = random.Random(0)
    assert detokenize(render_answer(templates, QuestionType.Q6, SETTER, rng, negative=False)) == "<st> yes </s>"
    assert detokenize(render_answer(templates, QuestionType.Q6, SETTER, rng, negative=True)) == "<st> no </s>"


def test_render_answer_constructor(templates):
    ctor = _rec("public Foo(int x) { this.x = x; }", summary="builds a foo", rid="m4")
    for seed in range(6):
        ans = render_answer(templates, QuestionType.Q1, ctor, random.Random(seed))
        assert "constructor" in ans
        assert "foo" in ans  # the slot rule still holds for constructors


def test_render_params_pairs():
    assert render_params([(["vertex"], "v")]) == "vertex v"
    assert render_params([(["int"], "a"), (["string"], "b")]) == "int a , string b"


def test_task_phrase_deconjugation():
    assert task_phrase(["sets", "the", "domain", "name"]) == ["set", "the", "domain", "name"]
    assert task_phrase(["returns", "the", "count"]) == ["return", "the", "count"]
    assert task_phrase(["copies", "the", "buffer"]) == ["copy", "the", "buffer"]
    assert task_phrase(["pushes", "the", "item"]) == ["push", "the", "item"]
    assert task_phrase(["is", "the", "owner"]) == ["be", "the", "owner"]
    assert task_phrase(["has", "a", "flag"]) == ["have", "a", "flag"]


def test_task_phrase_stops_at_sentence_end():
    assert task_phrase(["sorts", "items", ".", "also", "logs"]) == ["sort", "items"]


def test_sample_negative_forced_choice():
    rng = random.Random(0)
    got = sample_negative_summary(VERTEX, [VERTEX, SETTER], rng)
    assert got == SETTER.features.summary


def test_sample_negative_unavailable():
    twin = _rec(
        "public Vertex nextVertex(int k) { return null; }",
        summary="walks the polygon ring",
        rid="m9",
    )  # same name as VERTEX
    with pytest.raises(NoNegativeAvailable):
        sample_negative_summary(VERTEX, [VERTEX, twin], random.Random(0))


def test_generate_tuples_full_seven(templates):
    skips = SkipLog()
    out = generate_tuples(VERTEX, templates, [VERTEX, SETTER], method_rng(0, VERTEX.id), skips)
    assert len(out) == 7
    counts = Counter(t.qtype for t in out)
    assert counts[QuestionType.Q6] == 2
    assert {t.is_negative for t in out if t.qtype is QuestionType.Q6} == {True, False}
    assert all(t.context == VERTEX.context_tokens for t in out)
    assert skips.total() == 0


def test_generate_tuples_no_summary_gives_four(templates):
    skips = SkipLog()
    out = generate_tuples(NOARG, templates, [NOARG, VERTEX], method_rng(0, NOARG.id), skips)
    assert [t.qtype for t in out] == [
        QuestionType.Q1, QuestionType.Q2, QuestionType.Q3, QuestionType.Q4,
    ]
    assert skips.total() == 2  # Q5 and Q6 skipped


def test_generate_tuples_negative_unavailable_drops_pair(templates):
    lone = _rec("int solo() { return 1; }", summary="computes the lone value", rid="m8")
    skips = SkipLog()
    out = generate_tuples(lone, templates, [lone], method_rng(0, lone.id), skips)
    assert Counter(t.qtype for t in out)[QuestionType.Q6] == 0
    assert skips.counts.get("Q6:no_negative_available") == 1


def test_generate_tuples_negatives_off(templates):
    out = generate_tuples(
        VERTEX, templates, [VERTEX, SETTER], method_rng(0, VERTEX.id), negatives=False
    )
    q6 = [t for t in out if t.qtype is QuestionType.Q6]
    assert len(q6) == 1 and not q6[0].is_negative


def test_answer_sentinels_invariant(small_tuples):
    for t in small_tuples:
        assert t.answer[0] == START and t.answer[-1] == END
        if t.qtype is QuestionType.Q3:
            assert t.answer.count(FUNCODE) == 1
        if t.qtype is QuestionType.Q6:
            assert detokenize(t.answer[1:-1]) in ("yes", "no")


def test_q6_exact_balance(small_tuples):
    q6 = [t for t in small_tuples if t.qtype is QuestionType.Q6]
    yes = sum(1 for t in q6 if not t.is_negative)
    assert yes * 2 == len(q6)


def test_slot_soundness_generated_answers_score_correct(small_tuples, records_by_id):
    # Oracle consistency: every gold answer passes the scorer.
    for t in small_tuples:
        produced = t.answer[1:-1]
        assert score_answer(t.qtype, produced, records_by_id[t.method_id], t), (
            t.qtype, detokenize(produced),
        )


def test_generation_deterministic_and_order_independent(small_records, templates):
    a, _ = generate_corpus(small_records, templates, seed=3)
    b, _ = generate_corpus(small_records, templates, seed=3)
    assert [t.to_json() for t in a] == [t.to_json() for t in b]
    shuffled = list(small_records)
    random.Random(0).shuffle(shuffled)
    c, _ = generate_corpus(shuffled, templates, seed=3)
    assert sorted(t.to_json() for t in c) == sorted(t.to_json() for t in a)
    d, _ = generate_corpus(small_records, templates, seed=4)
    assert [t.to_json() for t in d] != [t.to_json() for t in a]


def test_template_coverage_over_bulk(templates):
    rows = corpusgen.make_corpus(1500, 30, seed=12)
    recs = [build_record(r["id"], r["project"], r["source"], r["summary"]) for r in rows]
    tuples, _ = generate_corpus(recs, templates, seed=12)
    seen = {(t.qtype, t.template_id) for t in tuples}
    for qt in QuestionType:
        expected = len(templates.question_layouts[qt])
        got = len({tid for q, tid in seen if q is qt})
        assert got == expected, "%s: %d of %d layouts used" % (qt.value, got, expected)


def test_negative_constraints_hold_corpus_wide(small_tuples, records_by_id, small_records):
    by_project = {}
    for rec in small_records:
        by_project.setdefault(rec.project, []).append(rec)
    for t in small_tuples:
        if t.qtype is QuestionType.Q6 and t.is_negative:
            rec = records_by_id[t.method_id]
            # The question's task must come from a different-name method
            # with a different summary in the same project.
            own_task = task_phrase(rec.features.summary)
            q_text = detokenize(t.question)
            assert detokenize(own_task) not in q_text
