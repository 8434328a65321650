"""Pure numpy versions of the hot kernels.

Ring elements of Z[w] (w = e^{i pi/4}) are int64 arrays of 4 coefficients over
1, w, w^2, w^3 with w^4 = -1. A batch of exact 2x2 matrices is an array of
shape (N, 2, 2, 4) plus a per-matrix power k of 1/sqrt(2).
"""

import numpy as np

NAME = "python"


def ring_mul(a, b):
    """Negacyclic product of coefficient arrays, broadcast over leading axes."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    out = np.zeros(np.broadcast_shapes(a.shape, b.shape), dtype=np.int64)
    for i in range(4):
        for j in range(4):
            t = a[..., i] * b[..., j]
            if i + j < 4:
                out[..., i + j] += t
            else:
                out[..., i + j - 4] -= t
    return out


def _sqrt2_divisible(x):
    # x divisible by sqrt(2) in Z[w] iff a0 = a2 and a1 = a3 mod 2
    return ((x[..., 0] - x[..., 2]) % 2 == 0) & ((x[..., 1] - x[..., 3]) % 2 == 0)


def _div_sqrt2(x):
    # x / sqrt2 = x (w - w^3) / 2
    y = np.empty_like(x)
    y[..., 0] = x[..., 1] - x[..., 3]
    y[..., 1] = x[..., 0] + x[..., 2]
    y[..., 2] = x[..., 1] + x[..., 3]
    y[..., 3] = x[..., 2] - x[..., 0]
    return y // 2


def reduce_batch(m, k):
    """Divide out common sqrt(2) factors in place; returns (m, k)."""
    while True:
        div = _sqrt2_divisible(m).reshape(m.shape[0], -1).all(axis=1)
        if not div.any():
            return m, k
        m[div] = _div_sqrt2(m[div])
        k[div] -= 1


def ring_matmul_fixed(m, k, g, kg):
    """Right-multiply every exact matrix in the batch by one fixed exact matrix."""
    m = np.asarray(m, dtype=np.int64)
    g = np.asarray(g, dtype=np.int64)
    out = np.zeros_like(m)
    for r in range(2):
        for c in range(2):
            out[:, r, c] = ring_mul(m[:, r, 0], g[0, c]) + ring_mul(m[:, r, 1], g[1, c])
    return reduce_batch(out, np.asarray(k, dtype=np.int64) + kg)


def apply_1q(psi, n, q, u):
    """Apply 2x2 ``u`` to qubit ``q`` (qubit 0 most significant), in place."""
    v = psi.reshape(1 << q, 2, 1 << (n - 1 - q))
    a0 = v[:, 0, :].copy()
    a1 = v[:, 1, :]
    v[:, 0, :] = u[0, 0] * a0 + u[0, 1] * a1
    v[:, 1, :] = u[1, 0] * a0 + u[1, 1] * a1
    return psi


def apply_cx(psi, n, c, t):
    """CNOT with control ``c`` and target ``t``, in place."""
    v = psi.reshape([2] * n)
    idx1 = [slice(None)] * n
    idx1[c] = 1
    sub = v[tuple(idx1)]
    tt = t if t < c else t - 1
    sub_view = np.moveaxis(sub, tt, 0)
    tmp = sub_view[0].copy()
    sub_view[0] = sub_view[1]
    sub_view[1] = tmp
    return psi
