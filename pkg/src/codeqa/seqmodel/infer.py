"""Greedy decoding with attention traces."""

from dataclasses import dataclass

import numpy as np

from ..javatok import END, START
from .model import QAModel

# Questions with more than this fraction of unknown tokens get flagged.
UNK_CONFIDENCE_THRESHOLD = 0.3


@dataclass
class AttentionTrace:
    """Per emitted token: attention rows over question and context positions."""

    q_attn: np.ndarray  # (steps, question length)
    code_attn: np.ndarray  # (steps, context length)

    def trimmed(self, q_len, c_len):
        return AttentionTrace(self.q_attn[:, :q_len], self.code_attn[:, :c_len])


def infer(model: QAModel, question_tokens, context_tokens, max_a_len=None):
    """Greedy argmax decode from <st> until </s> or the length cap.

    Returns (answer tokens without sentinels, AttentionTrace, meta) where
    meta reports question UNK statistics. UNK may appear in the answer.
    """
    h = model.hyper
    cap = h.max_a_len if max_a_len is None else max_a_len
    q_ids = model.encode_question(question_tokens).reshape(1, -1)
    c_ids = model.encode_context(context_tokens).reshape(1, -1)
    enc = model.encode_batch(q_ids, c_ids)
    end_id = model.output_vocab.token_to_id[END]
    start_id = model.output_vocab.token_to_id[START]

    s = enc["s0"]
    y = np.array([start_id], dtype=np.int64)
    tokens = []
    q_rows, c_rows = [], []
    for _ in range(cap):
        logits, s, alpha_q, alpha_c, _ = model.decode_step(enc, s, y)
        next_id = int(np.argmax(logits[0]))
        if next_id == end_id:
            break
        tokens.append(model.output_vocab.id_to_token[next_id])
        q_rows.append(alpha_q[0])
        c_rows.append(alpha_c[0])
        y = np.array([next_id], dtype=np.int64)

    Lq, Lc = q_ids.shape[1], c_ids.shape[1]
    trace = AttentionTrace(
        q_attn=np.stack(q_rows) if q_rows else np.zeros((0, Lq), dtype=model.dtype),
        code_attn=np.stack(c_rows) if c_rows else np.zeros((0, Lc), dtype=model.dtype),
    )
    unk_fraction = model.input_vocab.unk_fraction(list(question_tokens))
    meta = {
        "question_unk_fraction": unk_fraction,
        "low_confidence": unk_fraction > UNK_CONFIDENCE_THRESHOLD,
        "question_len": min(len(question_tokens), h.max_q_len),
        "context_len": min(max(len(context_tokens), 1), h.max_c_len),
    }
    return tokens, trace, meta
