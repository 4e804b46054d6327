"""Slot-exact answer scoring: the automated analog of rated correctness."""

from collections import Counter

from ..javatok import END, FUNCODE, START
from ..qagen import QuestionType

Q5_F1_THRESHOLD = 0.5

NO_PARAMS_PHRASE = ["no", "parameters"]


def contains_sublist(haystack, needle):
    if not needle:
        return True
    n = len(needle)
    return any(haystack[i : i + n] == needle for i in range(len(haystack) - n + 1))


def token_f1(produced, gold):
    """Multiset token overlap F1."""
    if not produced or not gold:
        return 0.0
    overlap = sum((Counter(produced) & Counter(gold)).values())
    if overlap == 0:
        return 0.0
    precision = overlap / len(produced)
    recall = overlap / len(gold)
    return 2.0 * precision * recall / (precision + recall)


def slot_tokens(qtype, rec):
    """The oracle tokens an answer must carry for each question type."""
    f = rec.features
    if qtype is QuestionType.Q1:
        return list(f.return_type)
    if qtype is QuestionType.Q2:
        if not f.params:
            return list(NO_PARAMS_PHRASE)
        out = []
        for type_toks, ident in f.params:
            out.extend(type_toks)
            out.append(ident)
        return out
    if qtype is QuestionType.Q3:
        return [FUNCODE]
    if qtype is QuestionType.Q4:
        return list(f.signature_tokens)
    if qtype is QuestionType.Q5:
        return list(f.summary)
    raise ValueError("slot_tokens undefined for %s" % qtype)


def score_answer(qtype, produced, rec, gold):
    """True when the sentinel-free produced answer is slot-correct.

    Q1/Q4 demand the oracle tokens contiguously, Q2 each parameter's
    type+identifier pair (or the no-parameters phrasing), Q3 the
    <funcode> token, Q5 token F1 >= 0.5 against the gold summary, and
    Q6 exact equality with the gold yes/no.
    """
    f = rec.features
    if qtype is QuestionType.Q1:
        return contains_sublist(produced, list(f.return_type))
    if qtype is QuestionType.Q2:
        if not f.params:
            return contains_sublist(produced, NO_PARAMS_PHRASE)
        return all(
            contains_sublist(produced, list(type_toks) + [ident])
            for type_toks, ident in f.params
        )
    if qtype is QuestionType.Q3:
        return FUNCODE in produced
    if qtype is QuestionType.Q4:
        return contains_sublist(produced, list(f.signature_tokens))
    if qtype is QuestionType.Q5:
        return token_f1(produced, f.summary) >= Q5_F1_THRESHOLD
    if qtype is QuestionType.Q6:
        expected = [t for t in gold.answer if t not in (START, END)]
        return produced == expected
    raise ValueError("unknown question type %r" % qtype)
