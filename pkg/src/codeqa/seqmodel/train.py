"""Teacher-forcing training: Adam, length-bucketed batching, epoch loop."""

import numpy as np

from .kernels import clip_gradients
from .model import QAModel
from .vocab import PAD


class NonFiniteLoss(RuntimeError):
    """Loss or gradients went NaN/Inf; aborts with diagnostics."""


class Adam:
    """Adaptive first-order optimizer with global-norm gradient clipping."""

    def __init__(self, lr=1e-3, beta1=0.9, beta2=0.999, eps=1e-8, clip_norm=5.0):
        self.lr = lr
        self.beta1 = beta1
        self.beta2 = beta2
        self.eps = eps
        self.clip_norm = clip_norm
        self.t = 0
        self.m = None
        self.v = None

    def step(self, params, grads):
        if self.m is None:
            self.m = {k: np.zeros_like(p) for k, p in params.items()}
            self.v = {k: np.zeros_like(p) for k, p in params.items()}
        norm = clip_gradients(grads, self.clip_norm)
        if not np.isfinite(norm):
            raise NonFiniteLoss("gradient norm is %r at step %d" % (norm, self.t))
        self.t += 1
        b1t = 1.0 - self.beta1 ** self.t
        b2t = 1.0 - self.beta2 ** self.t
        for k, p in params.items():
            g = grads[k]
            self.m[k] = self.beta1 * self.m[k] + (1.0 - self.beta1) * g
            self.v[k] = self.beta2 * self.v[k] + (1.0 - self.beta2) * (g * g)
            mhat = self.m[k] / b1t
            vhat = self.v[k] / b2t
            p -= (self.lr * mhat / (np.sqrt(vhat) + self.eps)).astype(p.dtype)
        return norm


def prepare_tuples(model: QAModel, tuples):
    """Encode tuples to ragged id lists once, ahead of the epoch loop."""
    h = model.hyper
    prepared = []
    for t in tuples:
        q = model.input_vocab.encode(t.question[: h.max_q_len])
        c = model.input_vocab.encode(t.context[: h.max_c_len])
        a = model.output_vocab.encode(t.answer[: h.max_a_len + 1])
        prepared.append((q, c, a))
    return prepared


def _pad(rows, width):
    out = np.full((len(rows), width), PAD, dtype=np.int64)
    for i, row in enumerate(rows):
        out[i, : len(row)] = row
    return out


def make_batch(prepared, indices):
    qs = [prepared[i][0] for i in indices]
    cs = [prepared[i][1] for i in indices]
    ans = [prepared[i][2] for i in indices]
    q_ids = _pad(qs, max(len(q) for q in qs))
    c_ids = _pad(cs, max(len(c) for c in cs))
    a_ids = _pad(ans, max(len(a) for a in ans))
    return q_ids, c_ids, a_ids[:, :-1], a_ids[:, 1:]


def iter_batches(prepared, batch_size, rng, bucket_factor=16):
    """Yield index batches: shuffled, then length-sorted within buckets.

    Sorting within buckets of bucket_factor*batch_size keeps padding waste
    low without destroying shuffle quality; batch order is reshuffled.
    """
    n = len(prepared)
    order = rng.permutation(n)
    lengths = np.array([len(prepared[i][1]) for i in range(n)])
    batches = []
    span = batch_size * bucket_factor
    for start in range(0, n, span):
        chunk = order[start : start + span]
        chunk = chunk[np.argsort(lengths[chunk], kind="stable")]
        for b in range(0, len(chunk), batch_size):
            batches.append(chunk[b : b + batch_size])
    rng.shuffle(batches)
    return batches


def train_epoch(model: QAModel, prepared, optimizer: Adam, rng, batch_size=64):
    """One teacher-forced epoch; returns {loss, token_acc, batches, grad_norm}.

    The decoder input is always the gold prefix; model predictions are
    never fed back during training.
    """
    total_loss = 0.0
    total_acc = 0.0
    total_weight = 0.0
    last_norm = 0.0
    batches = iter_batches(prepared, batch_size, rng)
    for bi, batch in enumerate(batches):
        q_ids, c_ids, a_in, a_tgt = make_batch(prepared, batch)
        loss, acc, tape = model.teacher_forced(q_ids, c_ids, a_in, a_tgt)
        if not np.isfinite(loss):
            raise NonFiniteLoss("loss=%r at batch %d/%d" % (loss, bi, len(batches)))
        grads = model.backward(tape)
        last_norm = optimizer.step(model.params, grads)
        w = tape["total_weight"]
        total_loss += loss * w
        total_acc += acc * w
        total_weight += w
    model.check_finite()
    return {
        "loss": total_loss / total_weight,
        "token_acc": total_acc / total_weight,
        "batches": len(batches),
        "grad_norm": last_norm,
    }
