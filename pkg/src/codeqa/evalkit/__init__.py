"""Automated correctness scoring and attention analysis."""

from .attention import (
    attention_focus,
    code_start,
    export_heatmap,
    focus_step,
    q1_focus_rate,
    return_type_span,
    signature_span,
)
from .evaluate import (
    MAX_FAILURE_SAMPLES,
    CorrectnessReport,
    TypeStats,
    evaluate_split,
    qualitative_ordering_ok,
)
from .scoring import (
    NO_PARAMS_PHRASE,
    Q5_F1_THRESHOLD,
    contains_sublist,
    score_answer,
    slot_tokens,
    token_f1,
)

__all__ = [
    "CorrectnessReport", "MAX_FAILURE_SAMPLES", "NO_PARAMS_PHRASE",
    "Q5_F1_THRESHOLD", "TypeStats", "attention_focus", "code_start",
    "contains_sublist", "evaluate_split", "export_heatmap", "focus_step",
    "q1_focus_rate", "qualitative_ordering_ok", "return_type_span", "score_answer",
    "signature_span", "slot_tokens", "token_f1",
]
