"""Method records and corpus ingestion (line-delimited JSON)."""

import json
from dataclasses import dataclass

from .features import MalformedMethod, MethodFeatures, extract_features
from .lexer import (
    NEWLINE,
    START,
    split_leading_doc,
    strip_comments,
    strip_leading_annotations,
    tokenize,
)


@dataclass
class MethodRecord:
    id: str
    project: str
    raw_source: str  # normalized: leading doc comment/annotations and inline comments removed
    summary_raw: str
    features: MethodFeatures
    context_tokens: list


def build_record(rec_id, project, source, summary=""):
    """Build a MethodRecord from raw method text. Raises MalformedMethod."""
    doc, rest = split_leading_doc(source)
    summary_raw = (summary or "").strip() or doc
    clean = strip_leading_annotations(strip_comments(rest)).strip()
    features = extract_features(clean, summary_text=summary_raw)
    summary_tokens = features.summary
    context = [START] + summary_tokens + [NEWLINE] + tokenize(clean)
    return MethodRecord(
        id=str(rec_id),
        project=str(project),
        raw_source=clean,
        summary_raw=summary_raw,
        features=features,
        context_tokens=context,
    )


def read_corpus(path):
    """Read a JSONL corpus of {id, project, source, summary} objects.

    Malformed lines (bad JSON, missing fields, unparseable methods) are
    counted and skipped. Returns (records, stats dict).
    """
    records = []
    stats = {"read": 0, "kept": 0, "bad_json": 0, "missing_field": 0, "malformed_method": 0}
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            stats["read"] += 1
            try:
                obj = json.loads(line)
            except json.JSONDecodeError:
                stats["bad_json"] += 1
                continue
            if not isinstance(obj, dict) or "id" not in obj or "source" not in obj:
                stats["missing_field"] += 1
                continue
            try:
                rec = build_record(
                    obj["id"], obj.get("project", ""), obj["source"], obj.get("summary", "")
                )
            except MalformedMethod:
                stats["malformed_method"] += 1
                continue
            records.append(rec)
            stats["kept"] += 1
    return records, stats


def write_corpus(path, rows):
    """Write {id, project, source, summary} rows as JSONL."""
    with open(path, "w", encoding="utf-8") as fh:
        for row in rows:
            fh.write(json.dumps(row, sort_keys=True) + "\n")
