"""Corpus filtering: duplicate and non-descriptive summaries."""

MIN_SUMMARY_TOKENS = 3

# Normalized summary texts that mark auto-generated or placeholder comments.
STUB_PHRASES = {
    "todo",
    "todo autoic",
    "auto generated",
    "auto-generated",
    "not implemented",
    "fixme",
}


def is_non_descriptive(summary_tokens):
    """True for nonempty summaries that carry no real description."""
    if not summary_tokens:
        return False  # empty summaries are kept; Q5/Q6 skip them downstream
    text = " ".join(summary_tokens)
    if text in STUB_PHRASES:
        return True
    if "auto-generated" in text or "auto generated" in text or text.startswith("todo"):
        return True
    return len(summary_tokens) < MIN_SUMMARY_TOKENS


def filter_corpus(records, stats=None):
    """Drop records with duplicate or non-descriptive (nonempty) summaries.

    Keeps the first record of each duplicate group. Drop reasons are
    counted into stats when given.
    """
    if stats is None:
        stats = {}
    stats.setdefault("dropped_duplicate_summary", 0)
    stats.setdefault("dropped_non_descriptive", 0)
    seen = set()
    kept = []
    for rec in records:
        summary = tuple(rec.features.summary)
        if is_non_descriptive(rec.features.summary):
            stats["dropped_non_descriptive"] += 1
            continue
        if summary:
            if summary in seen:
                stats["dropped_duplicate_summary"] += 1
                continue
            seen.add(summary)
        kept.append(rec)
    stats["kept"] = len(kept)
    return kept
