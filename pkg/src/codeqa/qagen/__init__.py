"""Question/answer tuple synthesis: templates, rendering, filtering, splits."""

from .filters import filter_corpus, is_non_descriptive
from .generate import (
    generate_corpus,
    generate_tuples,
    method_rng,
    render_answer,
    render_params,
    render_question,
    sample_negative_summary,
    task_phrase,
)
from .qtypes import (
    MissingSummary,
    NoNegativeAvailable,
    QATuple,
    QuestionType,
    SkipLog,
    read_tuples,
    write_tuples,
)
from .splits import DEFAULT_RATIOS, TooFewProjects, read_split, split_corpus, write_split
from .templates import TemplateError, TemplateSet, load_templates, parse_templates

__all__ = [
    "DEFAULT_RATIOS", "MissingSummary", "NoNegativeAvailable", "QATuple",
    "QuestionType", "SkipLog", "TemplateError", "TemplateSet", "TooFewProjects",
    "filter_corpus", "generate_corpus", "generate_tuples", "is_non_descriptive",
    "load_templates", "method_rng", "parse_templates", "read_split",
    "read_tuples", "render_answer", "render_params", "render_question",
    "sample_negative_summary", "split_corpus", "task_phrase", "write_split",
    "write_tuples",
]
