"""Dense neural kernels: gated recurrent cells, attention, losses.

All forward passes return the caches their hand-written backward passes
need; gradients accumulate into a caller-owned dict keyed like the
parameter dict. Gate layout in the fused matrices is [update | reset |
candidate].
"""

import numpy as np


def sigmoid(x):
    out = np.empty_like(x)
    pos = x >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-x[pos]))
    ex = np.exp(x[~pos])
    out[~pos] = ex / (1.0 + ex)
    return out


def masked_softmax(scores, mask):
    """Row-wise softmax over positions where mask is True.

    Rows with no valid position fall back to position 0 (the mandatory
    start-of-context token), never a uniform row over nothing.
    """
    safe = np.array(mask, dtype=bool, copy=True)
    dead = ~safe.any(axis=-1)
    if dead.any():
        safe[dead, 0] = True
    x = np.where(safe, scores, -np.inf)
    x = x - x.max(axis=-1, keepdims=True)
    e = np.exp(x) * safe
    return e / e.sum(axis=-1, keepdims=True)


def gru_step(x, h, Wx, Wh, b):
    """One GRU step: returns (h_new, cache).

    Candidate uses the reset gate on the hidden-side projection:
    n = tanh(x Wx_n + b_n + r * (h Wh_n)).
    """
    H = h.shape[1]
    gx = x @ Wx + b
    gh = h @ Wh
    z = sigmoid(gx[:, :H] + gh[:, :H])
    r = sigmoid(gx[:, H:2 * H] + gh[:, H:2 * H])
    ghn = gh[:, 2 * H:]
    n = np.tanh(gx[:, 2 * H:] + r * ghn)
    h_new = (1.0 - z) * n + z * h
    return h_new, (h, z, r, n, ghn)


def gru_step_backward(dh_new, cache, x, Wx, Wh, grads, prefix):
    """Backward through one GRU step; returns (dx, dh_prev)."""
    h, z, r, n, ghn = cache
    H = h.shape[1]
    dz = dh_new * (h - n)
    dn = dh_new * (1.0 - z)
    dh_prev = dh_new * z

    dpre_n = dn * (1.0 - n * n)
    dr = dpre_n * ghn
    dpre_z = dz * z * (1.0 - z)
    dpre_r = dr * r * (1.0 - r)

    dgx = np.concatenate([dpre_z, dpre_r, dpre_n], axis=1)
    dgh = np.concatenate([dpre_z, dpre_r, dpre_n * r], axis=1)

    grads[prefix + "_Wx"] += x.T @ dgx
    grads[prefix + "_Wh"] += h.T @ dgh
    grads[prefix + "_b"] += dgx.sum(axis=0)
    dx = dgx @ Wx.T
    dh_prev = dh_prev + dgh @ Wh.T
    return dx, dh_prev


def run_gru(X, mask, Wx, Wh, b, h0):
    """Run a GRU over (B, L, E) inputs with a (B, L) validity mask.

    Padded steps carry the previous state through unchanged. Returns
    (states (B, L, H), final state, caches list).
    """
    B, L, _ = X.shape
    H = Wh.shape[0]
    h = h0 if h0 is not None else np.zeros((B, H), dtype=X.dtype)
    states = np.zeros((B, L, H), dtype=X.dtype)
    caches = []
    for t in range(L):
        h_step, cache = gru_step(X[:, t], h, Wx, Wh, b)
        m = mask[:, t:t + 1].astype(X.dtype)
        h = m * h_step + (1.0 - m) * h
        caches.append(cache)
        states[:, t] = h
    return states, h, caches


def run_gru_backward(dstates, dh_final, mask, X, caches, Wx, Wh, grads, prefix):
    """Backward through run_gru; returns (dX, dh0)."""
    B, L, _ = X.shape
    dh = dh_final.copy() if dh_final is not None else np.zeros_like(caches[-1][0])
    dX = np.zeros_like(X)
    for t in range(L - 1, -1, -1):
        if dstates is not None:
            dh = dh + dstates[:, t]
        m = mask[:, t:t + 1].astype(X.dtype)
        dh_step = m * dh
        dh_carry = (1.0 - m) * dh
        dx, dh_prev = gru_step_backward(dh_step, caches[t], X[:, t], Wx, Wh, grads, prefix)
        dX[:, t] = dx
        dh = dh_carry + dh_prev
    return dX, dh


def attention(H_enc, mask, s, W):
    """Projected dot-product attention of decoder state s over H_enc.

    Returns (context (B, H), weights (B, L), cache).
    """
    p = s @ W
    scores = np.einsum("blh,bh->bl", H_enc, p)
    alpha = masked_softmax(scores, mask)
    ctx = np.einsum("bl,blh->bh", alpha, H_enc)
    return ctx, alpha, (p, alpha)


def attention_backward(dctx, cache, H_enc, s, W, dH_enc, grads, name):
    """Backward through attention; accumulates dH_enc in place, returns ds."""
    p, alpha = cache
    dalpha = np.einsum("bh,blh->bl", dctx, H_enc)
    dH_enc += alpha[:, :, None] * dctx[:, None, :]
    dscores = alpha * (dalpha - (dalpha * alpha).sum(axis=-1, keepdims=True))
    dp = np.einsum("bl,blh->bh", dscores, H_enc)
    dH_enc += dscores[:, :, None] * p[:, None, :]
    grads[name] += s.T @ dp
    return dp @ W.T


def softmax_cross_entropy(logits, targets, weights):
    """Weighted softmax cross-entropy over one step.

    Returns (sum of weighted losses, dlogits w.r.t. the SUM, per-row
    correctness of the argmax). The caller normalizes by total weight.
    """
    B = logits.shape[0]
    m = logits.max(axis=-1, keepdims=True)
    shifted = logits - m
    logsumexp = np.log(np.exp(shifted).sum(axis=-1, keepdims=True))
    logp = shifted - logsumexp
    rows = np.arange(B)
    loss_sum = -(weights * logp[rows, targets]).sum()
    dlogits = np.exp(logp)
    dlogits[rows, targets] -= 1.0
    dlogits *= weights[:, None]
    correct = (logits.argmax(axis=-1) == targets)
    return loss_sum, dlogits, correct


def clip_gradients(grads, max_norm):
    """Scale all gradients so their global L2 norm is at most max_norm."""
    total = 0.0
    for g in grads.values():
        total += float((g * g).sum())
    norm = total ** 0.5
    if max_norm and norm > max_norm:
        scale = max_norm / norm
        for g in grads.values():
            g *= scale
    return norm
