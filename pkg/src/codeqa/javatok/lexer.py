"""Lexing of Java method source into the flat lowercase token convention.

Code is rendered as space-separated lowercase tokens: punctuation characters
become standalone tokens, identifiers stay whole (camelCase is lowercased,
never subword-split), and string/char literals collapse to the placeholders
``<strlit>`` / ``<chrlit>`` to keep the vocabulary bounded.
"""

import re

# Placeholder and sentinel tokens. These lex atomically so rendered text
# (answers, contexts) survives a tokenize/detokenize round trip.
STRLIT = "<strlit>"
CHRLIT = "<chrlit>"
START = "<st>"
END = "</s>"
FUNCODE = "<funcode>"
NEWLINE = "nl"
PAD_TOKEN = "<pad>"
UNK_TOKEN = "<unk>"

SPECIAL_TOKENS = (PAD_TOKEN, UNK_TOKEN, START, END, FUNCODE, STRLIT, CHRLIT)

# Each of these is a standalone single-character token; varargs "..." is the
# one multi-character exception.
PUNCT = set("(){}[];,.=<>+-*/?:!&|%^~@")

ELLIPSIS = "..."

_SPECIAL_RE = re.compile("|".join(re.escape(t) for t in SPECIAL_TOKENS))


def strip_comments(text):
    """Remove // and /* */ comments, leaving string/char literals intact."""
    out = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == '"' or ch == "'":
            j = _scan_literal(text, i)
            out.append(text[i:j])
            i = j
        elif ch == "/" and i + 1 < n and text[i + 1] == "/":
            while i < n and text[i] != "\n":
                i += 1
        elif ch == "/" and i + 1 < n and text[i + 1] == "*":
            end = text.find("*/", i + 2)
            i = n if end == -1 else end + 2
            out.append(" ")
        else:
            out.append(ch)
            i += 1
    return "".join(out)


def _scan_literal(text, i):
    """Return the index one past the literal starting at text[i] (a quote).

    An unclosed literal swallows the rest of the text, by design.
    """
    quote = text[i]
    j = i + 1
    n = len(text)
    while j < n:
        if text[j] == "\\":
            j += 2
        elif text[j] == quote:
            return j + 1
        else:
            j += 1
    return n


def _lex(text):
    """Yield (token, start, end) spans over comment-stripped text."""
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        m = _SPECIAL_RE.match(text, i)
        if m:
            yield m.group(0), i, m.end()
            i = m.end()
            continue
        if ch == '"':
            j = _scan_literal(text, i)
            yield STRLIT, i, j
            i = j
            continue
        if ch == "'":
            j = _scan_literal(text, i)
            yield CHRLIT, i, j
            i = j
            continue
        if text.startswith(ELLIPSIS, i):
            yield ELLIPSIS, i, i + 3
            i += 3
            continue
        if ch in PUNCT:
            yield ch, i, i + 1
            i += 1
            continue
        j = i
        while j < n and not text[j].isspace() and text[j] not in PUNCT and text[j] not in "\"'":
            j += 1
        yield text[i:j].lower(), i, j
        i = j


def tokenize(text):
    """Lex arbitrary text to the flat token list. Never raises."""
    return [tok for tok, _, _ in _lex(strip_comments(text))]


def detokenize(tokens):
    """Render a token list back to display text (single spaces)."""
    return " ".join(tokens)


_DOC_TAG_RE = re.compile(r"@\w+")


def split_leading_doc(text):
    """Split a leading doc comment off method source.

    Returns (summary_text, rest). The summary is the comment's prose with
    comment markers removed and javadoc @tags (and everything after the
    first one) dropped; empty string when there is no leading comment.
    """
    rest = text.lstrip()
    lines = []
    if rest.startswith("/*"):
        end = rest.find("*/", 2)
        if end == -1:
            body, rest = rest[2:], ""
        else:
            body, rest = rest[2:end], rest[end + 2:]
        for line in body.splitlines():
            lines.append(line.strip().lstrip("*").strip())
    else:
        while rest.startswith("//"):
            eol = rest.find("\n")
            if eol == -1:
                lines.append(rest[2:].strip())
                rest = ""
            else:
                lines.append(rest[2:eol].strip())
                rest = rest[eol + 1:]
    summary = " ".join(l for l in lines if l).strip()
    m = _DOC_TAG_RE.search(summary)
    if m:
        summary = summary[: m.start()].strip()
    return summary, rest.lstrip()


def strip_leading_annotations(text):
    """Drop @Annotation(...) groups that precede a method declaration."""
    clean = strip_comments(text)
    spans = list(_lex(clean))
    i = 0
    while i < len(spans) and spans[i][0] == "@":
        i += 1  # the @ itself
        if i >= len(spans):
            return ""
        i += 1  # the annotation name
        if i < len(spans) and spans[i][0] == "(":
            depth = 0
            while i < len(spans):
                if spans[i][0] == "(":
                    depth += 1
                elif spans[i][0] == ")":
                    depth -= 1
                    if depth == 0:
                        i += 1
                        break
                i += 1
    if i == 0:
        return clean.strip()
    if i >= len(spans):
        return ""
    return clean[spans[i][1]:].strip()
