"""Finite-difference verification of the hand-written backward pass."""

import numpy as np

from .model import Hyper, QAModel
from .vocab import RESERVED, Vocabulary


def grad_check(model: QAModel, q_ids, c_ids, a_in, a_tgt, epsilon=1e-5, floor=1e-6):
    """Max relative error between analytic and central-difference gradients.

    Sweeps every entry of every parameter; the model must be float64 and
    tiny for this to be fast. The denominator floor keeps entries whose
    true gradient sits below the fp64 finite-difference noise level
    (~ulp(loss)/2eps) from registering as disagreement: at that scale the
    numeric side is pure roundoff, and a genuine backward bug shows up as
    errors orders of magnitude above the floor on whole tensors anyway.
    """
    if model.dtype != np.float64:
        raise ValueError("grad_check requires a float64 model")

    def loss_fn():
        loss, _, _ = model.teacher_forced(q_ids, c_ids, a_in, a_tgt)
        return loss

    _, _, tape = model.teacher_forced(q_ids, c_ids, a_in, a_tgt)
    analytic = model.backward(tape)

    worst = 0.0
    for name, p in model.params.items():
        ga = analytic[name]
        flat = p.reshape(-1)
        gflat = ga.reshape(-1)
        for i in range(flat.size):
            orig = flat[i]
            flat[i] = orig + epsilon
            lp = loss_fn()
            flat[i] = orig - epsilon
            lm = loss_fn()
            flat[i] = orig
            numeric = (lp - lm) / (2.0 * epsilon)
            denom = max(abs(gflat[i]), abs(numeric), floor)
            worst = max(worst, abs(gflat[i] - numeric) / denom)
    return worst


def make_tiny_setup(seed=0, d_emb=4, d_hid=6, vocab_extra=8, B=2, Lq=4, Lc=7, La=5):
    """A tiny random model plus one consistent batch, for grad checking."""
    rng = np.random.Generator(np.random.PCG64(seed))
    extra = ["tok%d" % i for i in range(vocab_extra)]
    vin = Vocabulary(list(RESERVED) + extra)
    vout = Vocabulary(list(RESERVED) + extra[: vocab_extra // 2])
    hyper = Hyper(d_emb=d_emb, d_hid=d_hid, max_q_len=Lq, max_c_len=Lc, max_a_len=La, dtype="float64")
    model = QAModel(vin, vout, hyper, seed=seed)

    q_ids = rng.integers(2, len(vin), size=(B, Lq))
    c_ids = rng.integers(2, len(vin), size=(B, Lc))
    a_ids = rng.integers(2, len(vout), size=(B, La + 1))
    # Real sequence shape: context starts at <st>, answers span <st> .. </s>,
    # and one row gets tail padding to exercise the masks.
    c_ids[:, 0] = vin.token_to_id["<st>"]
    a_ids[:, 0] = vout.token_to_id["<st>"]
    a_ids[:, -1] = vout.token_to_id["</s>"]
    q_ids[0, -1] = 0
    c_ids[0, -2:] = 0
    a_ids[0, -2] = vout.token_to_id["</s>"]
    a_ids[0, -1] = 0
    return model, q_ids, c_ids, a_ids[:, :-1], a_ids[:, 1:]
