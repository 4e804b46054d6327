"""The 3-input attentional encoder-decoder.

Question and context are encoded by separate GRUs; a GRU decoder attends
to both encodings (projected dot-product attention) and predicts answer
tokens from the concatenation [state; question context; code context].
"""

from dataclasses import asdict, dataclass

import numpy as np

from ..javatok import START
from .kernels import (
    attention,
    attention_backward,
    gru_step,
    gru_step_backward,
    run_gru,
    run_gru_backward,
    softmax_cross_entropy,
)
from .vocab import PAD, Vocabulary


class ShapeMismatch(ValueError):
    """Input ids do not match the model's declared sequence shapes."""


@dataclass
class Hyper:
    d_emb: int = 128
    d_hid: int = 256
    max_q_len: int = 20
    max_c_len: int = 200
    max_a_len: int = 30
    dtype: str = "float32"

    def to_dict(self):
        return asdict(self)


# Canonical parameter order; the checkpoint format serializes tensors in
# exactly this order.
PARAM_ORDER = (
    "emb_q", "emb_c", "emb_a",
    "enc_q_Wx", "enc_q_Wh", "enc_q_b",
    "enc_c_Wx", "enc_c_Wh", "enc_c_b",
    "dec_Wx", "dec_Wh", "dec_b",
    "attn_q_W", "attn_c_W",
    "out_W", "out_b",
)


class QAModel:
    def __init__(self, input_vocab: Vocabulary, output_vocab: Vocabulary, hyper: Hyper, seed=0):
        self.input_vocab = input_vocab
        self.output_vocab = output_vocab
        self.hyper = hyper
        self.dtype = np.dtype(hyper.dtype)
        self.params = self._init_params(seed)

    def _init_params(self, seed):
        rng = np.random.Generator(np.random.PCG64(seed))
        E, H = self.hyper.d_emb, self.hyper.d_hid
        Vi, Vo = len(self.input_vocab), len(self.output_vocab)

        def glorot(shape):
            limit = np.sqrt(6.0 / (shape[0] + shape[1]))
            return rng.uniform(-limit, limit, size=shape).astype(self.dtype)

        def emb(shape):
            return rng.uniform(-0.08, 0.08, size=shape).astype(self.dtype)

        return {
            "emb_q": emb((Vi, E)),
            "emb_c": emb((Vi, E)),
            "emb_a": emb((Vo, E)),
            "enc_q_Wx": glorot((E, 3 * H)),
            "enc_q_Wh": glorot((H, 3 * H)),
            "enc_q_b": np.zeros(3 * H, dtype=self.dtype),
            "enc_c_Wx": glorot((E, 3 * H)),
            "enc_c_Wh": glorot((H, 3 * H)),
            "enc_c_b": np.zeros(3 * H, dtype=self.dtype),
            "dec_Wx": glorot((E, 3 * H)),
            "dec_Wh": glorot((H, 3 * H)),
            "dec_b": np.zeros(3 * H, dtype=self.dtype),
            "attn_q_W": glorot((H, H)),
            "attn_c_W": glorot((H, H)),
            "out_W": glorot((3 * H, Vo)),
            "out_b": np.zeros(Vo, dtype=self.dtype),
        }

    def zero_grads(self):
        return {k: np.zeros_like(v) for k, v in self.params.items()}

    def check_finite(self):
        for name, p in self.params.items():
            if not np.isfinite(p).all():
                raise FloatingPointError("non-finite values in parameter %s" % name)

    # ---- encoding helpers -------------------------------------------------

    def encode_question(self, tokens):
        return np.array(self.input_vocab.encode(tokens, self.hyper.max_q_len), dtype=np.int64)

    def encode_context(self, tokens):
        toks = list(tokens) if tokens else [START]
        return np.array(self.input_vocab.encode(toks, self.hyper.max_c_len), dtype=np.int64)

    def encode_answer(self, tokens):
        return np.array(self.output_vocab.encode(tokens, self.hyper.max_a_len + 1), dtype=np.int64)

    # ---- forward ----------------------------------------------------------

    def encode_batch(self, q_ids, c_ids):
        p = self.params
        q_mask = q_ids != PAD
        c_mask = c_ids != PAD
        if not c_mask[:, 0].all():
            # The context convention guarantees <st> at position 0; a fully
            # padded row would leave attention with nothing to look at.
            raise ShapeMismatch("context row without a leading non-pad token")
        Xq = p["emb_q"][q_ids]
        Xc = p["emb_c"][c_ids]
        Hq, hq, cache_q = run_gru(Xq, q_mask, p["enc_q_Wx"], p["enc_q_Wh"], p["enc_q_b"], None)
        Hc, hc, cache_c = run_gru(Xc, c_mask, p["enc_c_Wx"], p["enc_c_Wh"], p["enc_c_b"], None)
        s0 = hq + hc
        return {
            "q_ids": q_ids, "c_ids": c_ids, "q_mask": q_mask, "c_mask": c_mask,
            "Xq": Xq, "Xc": Xc, "Hq": Hq, "Hc": Hc, "hq": hq, "hc": hc, "s0": s0,
            "cache_q": cache_q, "cache_c": cache_c,
        }

    def decode_step(self, enc, s_prev, y_ids):
        p = self.params
        x = p["emb_a"][y_ids]
        s_new, gru_cache = gru_step(x, s_prev, p["dec_Wx"], p["dec_Wh"], p["dec_b"])
        ctx_q, alpha_q, att_q_cache = attention(enc["Hq"], enc["q_mask"], s_new, p["attn_q_W"])
        ctx_c, alpha_c, att_c_cache = attention(enc["Hc"], enc["c_mask"], s_new, p["attn_c_W"])
        u = np.concatenate([s_new, ctx_q, ctx_c], axis=1)
        logits = u @ p["out_W"] + p["out_b"]
        cache = (y_ids, s_prev, gru_cache, att_q_cache, att_c_cache, s_new, u)
        return logits, s_new, alpha_q, alpha_c, cache

    def teacher_forced(self, q_ids, c_ids, a_in, a_tgt, want_trace=False):
        """Teacher-forced pass over a batch.

        a_in rows are the gold answer prefixes (starting at <st>); a_tgt
        the next-token targets. Returns (mean loss, token accuracy, tape)
        where tape feeds backward().
        """
        self._check_batch(q_ids, c_ids, a_in)
        enc = self.encode_batch(q_ids, c_ids)
        B, T = a_in.shape
        s = enc["s0"]
        weights_all = (a_tgt != PAD).astype(self.dtype)
        total_weight = float(weights_all.sum())
        if total_weight == 0:
            raise ShapeMismatch("batch contains no target tokens")
        loss_sum = 0.0
        n_correct = 0
        steps = []
        traces = ([], []) if want_trace else None
        for t in range(T):
            logits, s, alpha_q, alpha_c, cache = self.decode_step(enc, s, a_in[:, t])
            w = weights_all[:, t]
            step_loss, dlogits, correct = softmax_cross_entropy(logits, a_tgt[:, t], w)
            loss_sum += float(step_loss)
            n_correct += int((correct * (w > 0)).sum())
            steps.append((cache, dlogits))
            if want_trace:
                traces[0].append(alpha_q)
                traces[1].append(alpha_c)
        tape = {"enc": enc, "steps": steps, "total_weight": total_weight}
        loss = loss_sum / total_weight
        acc = n_correct / total_weight
        if want_trace:
            tape["traces"] = (np.stack(traces[0], axis=1), np.stack(traces[1], axis=1))
        return loss, acc, tape

    # ---- backward ---------------------------------------------------------

    def backward(self, tape):
        """Gradients of the mean teacher-forced loss w.r.t. every parameter."""
        p = self.params
        enc = tape["enc"]
        inv_w = 1.0 / tape["total_weight"]
        grads = self.zero_grads()
        dHq = np.zeros_like(enc["Hq"])
        dHc = np.zeros_like(enc["Hc"])
        ds = np.zeros_like(enc["s0"])
        for cache, dlogits in reversed(tape["steps"]):
            y_ids, s_prev, gru_cache, att_q_cache, att_c_cache, s_new, u = cache
            dlogits = dlogits * inv_w
            grads["out_W"] += u.T @ dlogits
            grads["out_b"] += dlogits.sum(axis=0)
            du = dlogits @ p["out_W"].T
            H = s_new.shape[1]
            ds_new = ds + du[:, :H]
            dctx_q = du[:, H:2 * H]
            dctx_c = du[:, 2 * H:]
            ds_new += attention_backward(
                dctx_q, att_q_cache, enc["Hq"], s_new, p["attn_q_W"], dHq, grads, "attn_q_W"
            )
            ds_new += attention_backward(
                dctx_c, att_c_cache, enc["Hc"], s_new, p["attn_c_W"], dHc, grads, "attn_c_W"
            )
            x = p["emb_a"][y_ids]
            dx, ds = gru_step_backward(ds_new, gru_cache, x, p["dec_Wx"], p["dec_Wh"], grads, "dec")
            np.add.at(grads["emb_a"], y_ids, dx)
        # ds is now the gradient w.r.t. s0 = hq + hc.
        dXq, _ = run_gru_backward(
            dHq, ds, enc["q_mask"], enc["Xq"], enc["cache_q"], p["enc_q_Wx"], p["enc_q_Wh"], grads, "enc_q"
        )
        dXc, _ = run_gru_backward(
            dHc, ds, enc["c_mask"], enc["Xc"], enc["cache_c"], p["enc_c_Wx"], p["enc_c_Wh"], grads, "enc_c"
        )
        np.add.at(grads["emb_q"], enc["q_ids"].reshape(-1), dXq.reshape(-1, dXq.shape[-1]))
        np.add.at(grads["emb_c"], enc["c_ids"].reshape(-1), dXc.reshape(-1, dXc.shape[-1]))
        return grads

    # ---- single-example API ----------------------------------------------

    def forward(self, question_ids, context_ids, prefix_ids):
        """Next-token logits and attention rows for one example.

        prefix_ids must begin with <st>. Returns (logits over the output
        vocabulary, question-attention row, code-attention row).
        """
        q = np.asarray(question_ids, dtype=np.int64).reshape(1, -1)
        c = np.asarray(context_ids, dtype=np.int64).reshape(1, -1)
        prefix = np.asarray(prefix_ids, dtype=np.int64)
        if prefix.ndim != 1 or prefix.size == 0:
            raise ShapeMismatch("prefix must be a nonempty 1-d id sequence")
        self._check_batch(q, c, prefix.reshape(1, -1))
        enc = self.encode_batch(q, c)
        s = enc["s0"]
        for t in range(prefix.size):
            logits, s, alpha_q, alpha_c, _ = self.decode_step(enc, s, prefix[t:t + 1])
        return logits[0], alpha_q[0], alpha_c[0]

    def _check_batch(self, q_ids, c_ids, a_in):
        h = self.hyper
        if q_ids.ndim != 2 or c_ids.ndim != 2 or a_in.ndim != 2:
            raise ShapeMismatch("expected 2-d id arrays")
        if not (q_ids.shape[0] == c_ids.shape[0] == a_in.shape[0]):
            raise ShapeMismatch("batch sizes disagree")
        if q_ids.shape[1] > h.max_q_len:
            raise ShapeMismatch("question length %d > max %d" % (q_ids.shape[1], h.max_q_len))
        if c_ids.shape[1] > h.max_c_len:
            raise ShapeMismatch("context length %d > max %d" % (c_ids.shape[1], h.max_c_len))
        if a_in.shape[1] > h.max_a_len + 1:
            raise ShapeMismatch("answer length %d > max %d" % (a_in.shape[1], h.max_a_len + 1))
