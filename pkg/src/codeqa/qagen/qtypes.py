"""Question taxonomy and the (question, answer, context) training tuple."""

import json
from dataclasses import dataclass, field
from enum import Enum


class QuestionType(Enum):
    """The six question types about a known method."""

    Q1 = "Q1"  # return type
    Q2 = "Q2"  # parameters
    Q3 = "Q3"  # definition
    Q4 = "Q4"  # signature
    Q5 = "Q5"  # description
    Q6 = "Q6"  # capability yes/no


class MissingSummary(ValueError):
    """Record has no summary; Q5/Q6 are skipped for it."""


class NoNegativeAvailable(ValueError):
    """No qualifying other-method summary exists for a Q6 negative."""


@dataclass
class QATuple:
    question: list
    answer: list
    context: list
    qtype: QuestionType
    method_id: str
    template_id: int
    is_negative: bool = False

    def to_json(self):
        return json.dumps(
            {
                "qtype": self.qtype.value,
                "question": self.question,
                "answer": self.answer,
                "context": self.context,
                "method_id": self.method_id,
                "template_id": self.template_id,
                "is_negative": self.is_negative,
            },
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, line):
        obj = json.loads(line)
        return cls(
            question=obj["question"],
            answer=obj["answer"],
            context=obj["context"],
            qtype=QuestionType(obj["qtype"]),
            method_id=obj["method_id"],
            template_id=obj["template_id"],
            is_negative=obj.get("is_negative", False),
        )


def read_tuples(path):
    with open(path, "r", encoding="utf-8") as fh:
        return [QATuple.from_json(line) for line in fh if line.strip()]


def write_tuples(path, tuples):
    with open(path, "w", encoding="utf-8") as fh:
        for t in tuples:
            fh.write(t.to_json() + "\n")


@dataclass
class SkipLog:
    """Per-type skip reasons accumulated over a generation run."""

    counts: dict = field(default_factory=dict)

    def add(self, method_id, qtype, reason):
        key = "%s:%s" % (qtype.value, reason)
        self.counts[key] = self.counts.get(key, 0) + 1

    def total(self):
        return sum(self.counts.values())
