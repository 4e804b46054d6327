"""Attention-trace analysis: oracle spans, focus checks, heatmap export."""

import json

import numpy as np

from ..qagen import QuestionType
from ..seqmodel import infer


def code_start(rec):
    """Index of the first code token in the record's context."""
    return 1 + len(rec.features.summary) + 1  # <st> + summary + nl


def return_type_span(rec):
    """Half-open context-token span of the return type (name for constructors)."""
    start = code_start(rec) + len(rec.features.modifiers)
    if rec.features.is_constructor:
        return (start, start + 1)
    return (start, start + len(rec.features.return_type))


def signature_span(rec):
    start = code_start(rec)
    return (start, start + len(rec.features.signature_tokens))


def attention_focus(trace, span, step=None):
    """True iff the code-attention argmax at the chosen step is in the span.

    Defaults to the final emitted step. Argmax ties break toward the
    lowest index.
    """
    rows = trace.code_attn
    if rows.shape[0] == 0:
        return False
    idx = rows.shape[0] - 1 if step is None else step
    if not 0 <= idx < rows.shape[0]:
        return False
    arg = int(np.argmax(rows[idx]))
    return span[0] <= arg < span[1]


def focus_step(produced_tokens, slots):
    """Step index of the first produced slot token, or None."""
    if not slots:
        return None
    for i, tok in enumerate(produced_tokens):
        if tok == slots[0]:
            return i
    return None


def q1_focus_rate(model, tuples, records_by_id):
    """Fraction of Q1 tuples whose code attention lands in the return-type span.

    The checked step is the one that emitted the first return-type token,
    falling back to the final emitted step. Tuples whose span was truncated
    away are skipped. Returns (rate, n_checked).
    """
    n = hits = 0
    for tup in tuples:
        if tup.qtype is not QuestionType.Q1:
            continue
        rec = records_by_id[tup.method_id]
        span = return_type_span(rec)
        if span[1] > model.hyper.max_c_len:
            continue
        produced, trace, _ = infer(model, tup.question, tup.context)
        if not produced:
            continue
        step = focus_step(produced, list(rec.features.return_type))
        n += 1
        hits += int(attention_focus(trace, span, step=step))
    return (hits / n if n else 0.0), n


def export_heatmap(trace, tup, rec, path, produced_tokens, context_len=None):
    """Write a heatmap export: tokens, trimmed attention matrix, oracle spans."""
    c_len = context_len if context_len is not None else len(tup.context)
    matrix = trace.code_attn[:, :c_len]
    if matrix.shape[0] != len(produced_tokens):
        raise ValueError(
            "attention rows (%d) != produced tokens (%d)" % (matrix.shape[0], len(produced_tokens))
        )
    payload = {
        "method_id": tup.method_id,
        "qtype": tup.qtype.value,
        "question_tokens": list(tup.question),
        "answer_tokens": list(produced_tokens),
        "context_tokens": list(tup.context)[:c_len],
        "code_attn": [[float(x) for x in row] for row in matrix],
        "annotations": {
            "return_type_span": list(return_type_span(rec)),
            "signature_span": list(signature_span(rec)),
        },
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, sort_keys=True, indent=2)
        fh.write("\n")
    return payload
