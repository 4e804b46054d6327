import pytest

from codeqa.qagen import QuestionType, TemplateError, load_templates, parse_templates
from codeqa.qagen.templates import MAX_QUESTION_LAYOUTS, MIN_QUESTION_LAYOUTS


def test_packaged_templates_validate(templates):
    for qt in QuestionType:
        n = len(templates.question_layouts[qt])
        assert MIN_QUESTION_LAYOUTS <= n <= MAX_QUESTION_LAYOUTS
        assert templates.answer_layouts[qt]
    assert templates.constructor_answer_layouts
    assert templates.empty_params_answer_layouts
    assert len(templates.checksum) == 64


def test_checksum_tracks_content(tmp_path, templates):
    import importlib.resources as resources

    data = resources.files("codeqa.qagen.data").joinpath("templates.txt").read_bytes()
    p = tmp_path / "t.txt"
    p.write_bytes(data)
    assert load_templates(p).checksum == templates.checksum
    p.write_bytes(data + b"\n# trailing comment\n")
    assert load_templates(p).checksum != templates.checksum


def _minimal_text(q1_questions=15):
    blocks = []
    for qt in QuestionType:
        blocks.append("[%s.question]" % qt.value)
        n = q1_questions if qt is QuestionType.Q1 else 15
        for i in range(n):
            blocks.append("question %s number %d about {method} ?" % (qt.value, i))
        blocks.append("[%s.answer]" % qt.value)
        if qt is QuestionType.Q3:
            blocks.append("definition : <funcode>")
        elif qt is QuestionType.Q6:
            blocks.append("{yesno}")
        else:
            slot = {"Q1": "rtype", "Q2": "params", "Q4": "signature", "Q5": "summary"}[qt.value]
            blocks.append("answer is {%s}" % slot)
    blocks.append("[Q1.answer_constructor]")
    blocks.append("a constructor named {method}")
    blocks.append("[Q2.answer_empty]")
    blocks.append("no parameters")
    return "\n".join(blocks)


def test_parse_minimal_valid():
    ts = parse_templates(_minimal_text())
    assert len(ts.question_layouts[QuestionType.Q1]) == 15


def test_too_few_layouts_rejected():
    with pytest.raises(TemplateError):
        parse_templates(_minimal_text(q1_questions=14))


def test_too_many_layouts_rejected():
    with pytest.raises(TemplateError):
        parse_templates(_minimal_text(q1_questions=26))


def test_unknown_slot_rejected():
    text = _minimal_text().replace("answer is {rtype}", "answer is {rtype} {signature}")
    with pytest.raises(TemplateError):
        parse_templates(text)


def test_q3_requires_single_funcode():
    text = _minimal_text().replace("definition : <funcode>", "definition : <funcode> <funcode>")
    with pytest.raises(TemplateError):
        parse_templates(text)
    text = _minimal_text().replace("definition : <funcode>", "definition missing")
    with pytest.raises(TemplateError):
        parse_templates(text)


def test_layout_before_section_rejected():
    with pytest.raises(TemplateError):
        parse_templates("stray line\n" + _minimal_text())


def test_comments_and_blanks_ignored():
    ts = parse_templates("# a comment\n\n" + _minimal_text())
    assert len(ts.question_layouts[QuestionType.Q2]) == 15
