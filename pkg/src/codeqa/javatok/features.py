"""Rule-based extraction of method signature features from raw Java source."""

import re
from dataclasses import dataclass, field

from .lexer import split_leading_doc, strip_leading_annotations, tokenize

MODIFIERS = {
    "public", "private", "protected", "static", "final", "abstract",
    "native", "synchronized", "transient", "volatile", "strictfp", "default",
}

JAVA_KEYWORDS = MODIFIERS | {
    "assert", "boolean", "break", "byte", "case", "catch", "char", "class",
    "const", "continue", "do", "double", "else", "enum", "extends", "finally",
    "float", "for", "goto", "if", "implements", "import", "instanceof", "int",
    "interface", "long", "new", "package", "return", "short", "super",
    "switch", "this", "throw", "throws", "try", "void", "while",
}

_IDENT_RE = re.compile(r"^[a-z_$][a-z0-9_$]*$")


class MalformedMethod(ValueError):
    """Source does not parse as a method declaration; drop the record."""


@dataclass
class MethodFeatures:
    modifiers: list
    return_type: list
    name: str
    params: list  # (type token list, identifier) pairs
    signature_tokens: list
    body_tokens: list
    summary: list = field(default_factory=list)
    is_constructor: bool = False


def _skip_annotations(toks, i):
    while i < len(toks) and toks[i] == "@":
        i += 2  # @ and the annotation name
        if i < len(toks) and toks[i] == "(":
            depth = 0
            while i < len(toks):
                depth += {"(": 1, ")": -1}.get(toks[i], 0)
                i += 1
                if depth == 0:
                    break
    return i


def _split_params(toks):
    """Split parameter-list tokens on top-level commas."""
    groups, cur, depth = [], [], 0
    for tok in toks:
        if tok in "(<[":
            depth += 1
        elif tok in ")>]":
            depth -= 1
        if tok == "," and depth == 0:
            groups.append(cur)
            cur = []
        else:
            cur.append(tok)
    if cur:
        groups.append(cur)
    return groups


def _parse_param(toks):
    toks = [t for t in toks if t != "final"]
    toks = toks[_skip_annotations(toks, 0):]
    ident_pos = None
    for k in range(len(toks) - 1, -1, -1):
        if _IDENT_RE.match(toks[k]) and toks[k] not in JAVA_KEYWORDS:
            ident_pos = k
            break
    if ident_pos is None or ident_pos == 0:
        raise MalformedMethod("parameter without identifier: %s" % " ".join(toks))
    type_toks = toks[:ident_pos] + toks[ident_pos + 1:]
    return type_toks, toks[ident_pos]


def extract_features(raw_source, summary_text=None):
    """Parse the declaration prefix of a Java method into MethodFeatures.

    Raises MalformedMethod when there is no parameter list, the name token
    is missing or is a keyword, or braces are unbalanced.
    """
    if summary_text is None:
        summary_text, _ = split_leading_doc(raw_source)
    toks = tokenize(strip_leading_annotations(raw_source))
    if not toks:
        raise MalformedMethod("empty source")

    depth = 0
    for tok in toks:
        depth += {"{": 1, "}": -1}.get(tok, 0)
        if depth < 0:
            raise MalformedMethod("unbalanced braces")
    if depth != 0:
        raise MalformedMethod("unbalanced braces")

    i = 0
    modifiers = []
    while i < len(toks) and toks[i] in MODIFIERS:
        modifiers.append(toks[i])
        i += 1

    # First top-level '(' (angle-bracket aware) ends the name.
    popen = None
    angle = 0
    for j in range(i, len(toks)):
        tok = toks[j]
        if tok == "<":
            angle += 1
        elif tok == ">":
            angle -= 1
        elif tok == "(" and angle <= 0:
            popen = j
            break
        elif tok == "{":
            break
    if popen is None:
        raise MalformedMethod("no parameter list")
    if popen == i:
        raise MalformedMethod("name token missing")
    name = toks[popen - 1]
    if not _IDENT_RE.match(name) or name in JAVA_KEYWORDS:
        raise MalformedMethod("bad method name: %s" % name)

    return_type = toks[i:popen - 1]
    is_constructor = not return_type
    if is_constructor:
        return_type = [name]

    depth = 0
    pclose = None
    for j in range(popen, len(toks)):
        depth += {"(": 1, ")": -1}.get(toks[j], 0)
        if depth == 0:
            pclose = j
            break
    if pclose is None:
        raise MalformedMethod("unclosed parameter list")

    inner = toks[popen + 1:pclose]
    params = [_parse_param(g) for g in _split_params(inner)] if inner else []

    body_tokens = []
    for j in range(pclose + 1, len(toks)):
        if toks[j] == "{":
            body_tokens = toks[j:]
            break

    return MethodFeatures(
        modifiers=modifiers,
        return_type=return_type,
        name=name,
        params=params,
        signature_tokens=toks[:pclose + 1],
        body_tokens=body_tokens,
        summary=tokenize(summary_text or ""),
        is_constructor=is_constructor,
    )
