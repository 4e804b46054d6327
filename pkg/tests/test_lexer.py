import random

import corpusgen
from codeqa.javatok import (
    CHRLIT,
    FUNCODE,
    STRLIT,
    detokenize,
    split_leading_doc,
    strip_comments,
    strip_leading_annotations,
    tokenize,
)


def test_example1_signature():
    assert tokenize("public Vertex nextVertex(Vertex v)") == [
        "public", "vertex", "nextvertex", "(", "vertex", "v", ")",
    ]


def test_example1_statement():
    assert tokenize("int ind = vertices.indexOf(v);") == [
        "int", "ind", "=", "vertices", ".", "indexof", "(", "v", ")", ";",
    ]


def test_empty_string():
    assert tokenize("") == []


def test_whitespace_collapse():
    assert tokenize("int   a\n\t=  1 ;") == ["int", "a", "=", "1", ";"]


def test_camelcase_not_split():
    assert tokenize("convertWavToMp3") == ["convertwavtomp3"]


def test_punctuation_single_char_tokens():
    assert tokenize("a==b") == ["a", "=", "=", "b"]
    assert tokenize("x->y") == ["x", "-", ">", "y"]
    assert tokenize("i++") == ["i", "+", "+"]


def test_string_literal_single_token():
    assert tokenize('log.warn("hello world { } ;");') == [
        "log", ".", "warn", "(", STRLIT, ")", ";",
    ]


def test_char_literal_single_token():
    assert tokenize("char c = 'x';") == ["char", "c", "=", CHRLIT, ";"]


def test_unclosed_string_lexes_remainder():
    toks = tokenize('a = "unclosed rest of text')
    assert toks == ["a", "=", STRLIT]


def test_escaped_quote_inside_literal():
    assert tokenize(r'x = "a \" b";') == ["x", "=", STRLIT, ";"]


def test_varargs_single_token():
    assert tokenize("int... xs") == ["int", "...", "xs"]


def test_special_tokens_atomic():
    assert tokenize("the answer is <funcode> ok") == ["the", "answer", "is", FUNCODE, "ok"]
    assert tokenize("<st> hi </s>") == ["<st>", "hi", "</s>"]


def test_generic_angle_brackets_split():
    assert tokenize("List<String> xs") == ["list", "<", "string", ">", "xs"]


def test_comments_stripped():
    src = "int a = 1; // trailing\n/* block */ int b = 2;"
    assert tokenize(src) == ["int", "a", "=", "1", ";", "int", "b", "=", "2", ";"]


def test_comment_markers_inside_string_kept():
    assert tokenize('s = "// not a comment";') == ["s", "=", STRLIT, ";"]


def test_detokenize_example():
    toks = ["the", "return", "type", "for", "this", "method", "is", "vertex"]
    assert detokenize(toks) == "the return type for this method is vertex"
    assert detokenize([]) == ""


def test_roundtrip_on_corpus_methods():
    rows = corpusgen.make_corpus(1000, 40, seed=9)
    for row in rows:
        toks = tokenize(row["source"])
        assert tokenize(detokenize(toks)) == toks


def test_tokenize_idempotent_on_random_text():
    rng = random.Random(4)
    alphabet = "ab C{}();.<>=+-*/\"'\\ \n\t_09"
    for _ in range(300):
        s = "".join(rng.choice(alphabet) for _ in range(rng.randrange(0, 60)))
        toks = tokenize(s)
        assert tokenize(detokenize(toks)) == toks
        assert all(" " not in t for t in toks)
        assert all(t == t.lower() for t in toks)


def test_determinism():
    src = "public int getCount() { return count; }"
    assert tokenize(src) == tokenize(src)


def test_strip_comments_preserves_code():
    assert strip_comments("a /* x */ b") == "a   b"
    assert strip_comments("a // x") == "a "


def test_split_leading_doc_javadoc():
    src = "/** Returns the count.\n * @param x ignored\n */\nint getCount() {}"
    summary, rest = split_leading_doc(src)
    assert summary == "Returns the count."
    assert rest.startswith("int getCount")


def test_split_leading_doc_line_comments():
    summary, rest = split_leading_doc("// counts things\n// quickly\nvoid f() {}")
    assert summary == "counts things quickly"
    assert rest.startswith("void f")


def test_split_leading_doc_absent():
    summary, rest = split_leading_doc("void f() {}")
    assert summary == ""
    assert rest == "void f() {}"


def test_strip_leading_annotations():
    src = '@Override @SuppressWarnings("unchecked")\npublic void f() {}'
    assert strip_leading_annotations(src).startswith("public void f")
    assert strip_leading_annotations("public void f() {}").startswith("public void f")
