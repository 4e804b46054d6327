"""Paraphrase template sets: parsing, validation, and checksums."""

import hashlib
import re
from dataclasses import dataclass, field
from importlib import resources

from .qtypes import QuestionType

MIN_QUESTION_LAYOUTS = 15
MAX_QUESTION_LAYOUTS = 25

QUESTION_SLOTS = {
    QuestionType.Q1: {"method"},
    QuestionType.Q2: {"method"},
    QuestionType.Q3: {"method"},
    QuestionType.Q4: {"method"},
    QuestionType.Q5: {"method"},
    QuestionType.Q6: {"method", "task"},
}

ANSWER_SLOTS = {
    QuestionType.Q1: {"method", "rtype"},
    QuestionType.Q2: {"method", "params"},
    QuestionType.Q3: {"method"},  # plus the literal <funcode> token
    QuestionType.Q4: {"method", "signature"},
    QuestionType.Q5: {"method", "summary"},
    QuestionType.Q6: {"yesno"},
}

_SLOT_RE = re.compile(r"\{(\w+)\}")
_SECTION_RE = re.compile(r"^\[(Q[1-6])\.(question|answer|answer_constructor|answer_empty)\]$")


class TemplateError(ValueError):
    """Template file fails validation."""


@dataclass
class TemplateSet:
    question_layouts: dict  # QuestionType -> [str]
    answer_layouts: dict  # QuestionType -> [str]
    constructor_answer_layouts: list = field(default_factory=list)  # Q1 only
    empty_params_answer_layouts: list = field(default_factory=list)  # Q2 only
    checksum: str = ""

    def validate(self):
        for qt in QuestionType:
            qs = self.question_layouts.get(qt, [])
            if not MIN_QUESTION_LAYOUTS <= len(qs) <= MAX_QUESTION_LAYOUTS:
                raise TemplateError(
                    "%s has %d question layouts, need %d-%d"
                    % (qt.value, len(qs), MIN_QUESTION_LAYOUTS, MAX_QUESTION_LAYOUTS)
                )
            for layout in qs:
                _check_slots(layout, QUESTION_SLOTS[qt], qt, "question")
            ans = self.answer_layouts.get(qt, [])
            if not ans:
                raise TemplateError("%s has no answer layouts" % qt.value)
            for layout in ans:
                _check_slots(layout, ANSWER_SLOTS[qt], qt, "answer")
        if not self.constructor_answer_layouts:
            raise TemplateError("Q1 has no constructor answer layouts")
        for layout in self.constructor_answer_layouts:
            _check_slots(layout, {"method"}, QuestionType.Q1, "constructor answer")
        if not self.empty_params_answer_layouts:
            raise TemplateError("Q2 has no empty-params answer layouts")
        for layout in self.empty_params_answer_layouts:
            _check_slots(layout, {"method"}, QuestionType.Q2, "empty-params answer")
        for layout in self.answer_layouts[QuestionType.Q3]:
            if layout.split().count("<funcode>") != 1:
                raise TemplateError("Q3 answer layout must contain exactly one <funcode>: %r" % layout)
        return self


def _check_slots(layout, allowed, qt, kind):
    used = set(_SLOT_RE.findall(layout))
    extra = used - allowed
    if extra:
        raise TemplateError("%s %s layout uses slots %s: %r" % (qt.value, kind, sorted(extra), layout))


def parse_templates(text, checksum=""):
    qlayouts = {qt: [] for qt in QuestionType}
    alayouts = {qt: [] for qt in QuestionType}
    ctor, empty = [], []
    section = None
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        m = _SECTION_RE.match(line)
        if m:
            section = (QuestionType(m.group(1)), m.group(2))
            continue
        if section is None:
            raise TemplateError("layout before any section header: %r" % line)
        qt, kind = section
        if kind == "question":
            qlayouts[qt].append(line)
        elif kind == "answer":
            alayouts[qt].append(line)
        elif kind == "answer_constructor":
            if qt is not QuestionType.Q1:
                raise TemplateError("answer_constructor only valid for Q1")
            ctor.append(line)
        else:
            if qt is not QuestionType.Q2:
                raise TemplateError("answer_empty only valid for Q2")
            empty.append(line)
    return TemplateSet(
        question_layouts=qlayouts,
        answer_layouts=alayouts,
        constructor_answer_layouts=ctor,
        empty_params_answer_layouts=empty,
        checksum=checksum,
    ).validate()


def load_templates(path=None):
    """Load a template file (the packaged default when path is None)."""
    if path is None:
        data = resources.files("codeqa.qagen.data").joinpath("templates.txt").read_bytes()
    else:
        with open(path, "rb") as fh:
            data = fh.read()
    checksum = hashlib.sha256(data).hexdigest()
    return parse_templates(data.decode("utf-8"), checksum=checksum)
