import json

import pytest

from codeqa.javatok import NEWLINE, START, MalformedMethod, build_record, read_corpus, tokenize


def test_context_layout_with_summary():
    src = "/** returns the next vertex of a polygon */\npublic Vertex nextVertex(Vertex v) { return v; }"
    rec = build_record("m1", "p1", src)
    assert rec.context_tokens[0] == START
    nl = rec.context_tokens.index(NEWLINE)
    assert rec.context_tokens[1:nl] == ["returns", "the", "next", "vertex", "of", "a", "polygon"]
    assert rec.context_tokens[nl + 1 :][:3] == ["public", "vertex", "nextvertex"]


def test_context_layout_without_summary():
    rec = build_record("m2", "p1", "void run() {}")
    assert rec.context_tokens[:2] == [START, NEWLINE]
    assert rec.context_tokens[2:] == ["void", "run", "(", ")", "{", "}"]


def test_explicit_summary_wins_over_doc():
    src = "/** doc text here */ void f() {}"
    rec = build_record("m3", "p1", src, summary="explicit summary text")
    assert rec.summary_raw == "explicit summary text"
    assert "doc" not in rec.context_tokens


def test_signature_prefix_invariant_after_normalization():
    src = "@Override\npublic int getCount() { /* inline */ return count; }"
    rec = build_record("m4", "p1", src)
    toks = tokenize(rec.raw_source)
    sig = rec.features.signature_tokens
    assert toks[: len(sig)] == sig
    assert sig[0] == "public"  # annotation gone


def test_context_equals_tokenized_source():
    src = "/** sets the name */ public void setName(String n) { this.n = n; }"
    rec = build_record("m5", "p1", src)
    nl = rec.context_tokens.index(NEWLINE)
    assert rec.context_tokens[nl + 1 :] == tokenize(rec.raw_source)


def test_read_corpus_counts_malformed(tmp_path):
    path = tmp_path / "corpus.jsonl"
    rows = [
        json.dumps({"id": "a", "project": "p", "source": "void f() {}", "summary": ""}),
        "not json at all {{{",
        json.dumps({"id": "b", "project": "p", "source": "int x = 1;", "summary": ""}),
        json.dumps({"project": "p", "source": "void g() {}"}),
        json.dumps({"id": "c", "project": "p", "source": "int get() { return 1; }", "summary": "gets it"}),
    ]
    path.write_text("\n".join(rows) + "\n")
    records, stats = read_corpus(path)
    assert [r.id for r in records] == ["a", "c"]
    assert stats["read"] == 5
    assert stats["kept"] == 2
    assert stats["bad_json"] == 1
    assert stats["malformed_method"] == 1
    assert stats["missing_field"] == 1


def test_build_record_propagates_malformed():
    with pytest.raises(MalformedMethod):
        build_record("x", "p", "int a = 1;")
