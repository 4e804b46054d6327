"""Java method lexing, signature feature extraction, and corpus ingestion."""

from .features import JAVA_KEYWORDS, MODIFIERS, MalformedMethod, MethodFeatures, extract_features
from .lexer import (
    CHRLIT,
    END,
    FUNCODE,
    NEWLINE,
    PAD_TOKEN,
    SPECIAL_TOKENS,
    START,
    STRLIT,
    UNK_TOKEN,
    detokenize,
    split_leading_doc,
    strip_comments,
    strip_leading_annotations,
    tokenize,
)
from .records import MethodRecord, build_record, read_corpus, write_corpus

__all__ = [
    "CHRLIT", "END", "FUNCODE", "JAVA_KEYWORDS", "MODIFIERS", "MalformedMethod",
    "MethodFeatures", "MethodRecord", "NEWLINE", "PAD_TOKEN", "SPECIAL_TOKENS",
    "START", "STRLIT", "UNK_TOKEN", "build_record", "detokenize",
    "extract_features", "read_corpus", "split_leading_doc", "strip_comments",
    "strip_leading_annotations", "tokenize", "write_corpus",
]
