"""Rendering questions/answers through templates and corpus-scale generation."""

import random

from ..javatok import END, START, detokenize, tokenize
from .qtypes import MissingSummary, NoNegativeAvailable, QATuple, QuestionType, SkipLog

# Verb de-conjugation for capability questions: "sets the domain name"
# becomes "set the domain name" so it reads naturally after "can it ...".
_IRREGULAR = {"is": "be", "has": "have", "does": "do", "was": "be", "goes": "go"}
_ES_STEMS = ("ches", "shes", "sses", "xes", "zes", "oes")

MAX_TASK_TOKENS = 12


def task_phrase(summary_tokens):
    """Turn a third-person summary into an infinitive task phrase."""
    toks = []
    for tok in summary_tokens:
        if tok in (".", ";"):
            break
        toks.append(tok)
        if len(toks) >= MAX_TASK_TOKENS:
            break
    if not toks:
        return []
    head = toks[0]
    if head in _IRREGULAR:
        head = _IRREGULAR[head]
    elif head.endswith("ies") and len(head) > 3:
        head = head[:-3] + "y"
    elif head.endswith(_ES_STEMS):
        head = head[:-2]
    elif head.endswith("s") and not head.endswith("ss") and len(head) > 2:
        head = head[:-1]
    return [head] + toks[1:]


def _fill(layout, values):
    out = layout
    for key, val in values.items():
        out = out.replace("{%s}" % key, val)
    return out


def render_question(templates, qtype, rec, rng, task_tokens=None):
    """Render one question for a record; returns (token list, template_id).

    For Q6, task_tokens overrides the record's own summary task (used for
    negative examples phrased from another method's summary).
    """
    if qtype in (QuestionType.Q5, QuestionType.Q6) and task_tokens is None and not rec.features.summary:
        raise MissingSummary(rec.id)
    layouts = templates.question_layouts[qtype]
    template_id = rng.randrange(len(layouts))
    layout = layouts[template_id]
    values = {"method": rec.features.name}
    if qtype is QuestionType.Q6:
        if task_tokens is None:
            task_tokens = task_phrase(rec.features.summary)
        values["task"] = detokenize(task_tokens)
    return tokenize(_fill(layout, values)), template_id


def render_answer(templates, qtype, rec, rng, negative=False):
    """Render the gold answer token sequence, wrapped in <st> ... </s>."""
    f = rec.features
    if qtype is QuestionType.Q5 and not f.summary:
        raise MissingSummary(rec.id)
    if qtype is QuestionType.Q1 and f.is_constructor:
        layouts = templates.constructor_answer_layouts
    elif qtype is QuestionType.Q2 and not f.params:
        layouts = templates.empty_params_answer_layouts
    else:
        layouts = templates.answer_layouts[qtype]
    layout = layouts[rng.randrange(len(layouts))]
    values = {
        "method": f.name,
        "rtype": detokenize(f.return_type),
        "signature": detokenize(f.signature_tokens),
        "summary": detokenize(f.summary),
        "yesno": "no" if negative else "yes",
        "params": render_params(f.params),
    }
    return [START] + tokenize(_fill(layout, values)) + [END]


def render_params(params):
    """Render parameter pairs as "type ident , type ident"."""
    return " , ".join(detokenize(t + [ident]) for t, ident in params)


def sample_negative_summary(rec, project_pool, rng):
    """Pick another same-project method's summary for a Q6 negative.

    The donor must have a different name and a different, nonempty summary.
    Raises NoNegativeAvailable when no method qualifies.
    """
    own = rec.features.summary
    candidates = [
        other
        for other in project_pool
        if other.id != rec.id
        and other.project == rec.project
        and other.features.name != rec.features.name
        and other.features.summary
        and other.features.summary != own
    ]
    if not candidates:
        raise NoNegativeAvailable(rec.id)
    candidates.sort(key=lambda r: r.id)  # pool-order independence
    return candidates[rng.randrange(len(candidates))].features.summary


def method_rng(seed, method_id):
    """Per-method RNG stream so generation is order-independent."""
    return random.Random("%s|%s" % (seed, method_id))


def generate_tuples(rec, templates, pool, rng, skip_log=None, negatives=True):
    """Generate up to 7 tuples for one record (Q1-Q5 once, Q6 yes+no).

    Skipped types are recorded in skip_log and never abort the run. With
    negatives=False only the Q6 positive is emitted (6 tuples).
    """
    out = []
    for qtype in (QuestionType.Q1, QuestionType.Q2, QuestionType.Q3, QuestionType.Q4, QuestionType.Q5):
        try:
            question, template_id = render_question(templates, qtype, rec, rng)
            answer = render_answer(templates, qtype, rec, rng)
        except MissingSummary:
            if skip_log is not None:
                skip_log.add(rec.id, qtype, "missing_summary")
            continue
        out.append(
            QATuple(
                question=question,
                answer=answer,
                context=rec.context_tokens,
                qtype=qtype,
                method_id=rec.id,
                template_id=template_id,
            )
        )
    # Q6: one positive and one negative, both only when a summary exists.
    if not rec.features.summary:
        if skip_log is not None:
            skip_log.add(rec.id, QuestionType.Q6, "missing_summary")
        return out
    question, template_id = render_question(templates, QuestionType.Q6, rec, rng)
    answer = render_answer(templates, QuestionType.Q6, rec, rng, negative=False)
    out.append(
        QATuple(
            question=question,
            answer=answer,
            context=rec.context_tokens,
            qtype=QuestionType.Q6,
            method_id=rec.id,
            template_id=template_id,
        )
    )
    if not negatives:
        return out
    try:
        neg_summary = sample_negative_summary(rec, pool, rng)
    except NoNegativeAvailable:
        if skip_log is not None:
            skip_log.add(rec.id, QuestionType.Q6, "no_negative_available")
        # Drop the positive too, keeping yes/no exactly balanced.
        out.pop()
        return out
    neg_question, neg_template_id = render_question(
        templates, QuestionType.Q6, rec, rng, task_tokens=task_phrase(neg_summary)
    )
    out.append(
        QATuple(
            question=neg_question,
            answer=render_answer(templates, QuestionType.Q6, rec, rng, negative=True),
            context=rec.context_tokens,
            qtype=QuestionType.Q6,
            method_id=rec.id,
            template_id=neg_template_id,
            is_negative=True,
        )
    )
    return out


def generate_corpus(records, templates, seed, skip_log=None, negatives=True):
    """Generate tuples for every record with per-method RNG streams.

    Deterministic in (records, templates, seed) and independent of record
    order within the output of each method.
    """
    if skip_log is None:
        skip_log = SkipLog()
    by_project = {}
    for rec in records:
        by_project.setdefault(rec.project, []).append(rec)
    tuples = []
    for rec in records:
        rng = method_rng(seed, rec.id)
        tuples.extend(
            generate_tuples(
                rec, templates, by_project[rec.project], rng, skip_log, negatives=negatives
            )
        )
    return tuples, skip_log
