"""Exact 2x2 matrices over Z[w]/sqrt(2)^k, w = e^{i pi/4}.

A matrix is stored as an int64 array of shape (2, 2, 4) (coefficients of
1, w, w^2, w^3 for each entry) plus the power k of 1/sqrt(2). Batches add a
leading axis. Products go through :mod:`qpe_surgery.kernels`.
"""

from __future__ import annotations

import numpy as np

from .. import kernels

OMEGA_POWERS = np.exp(1j * np.pi / 4 * np.arange(4))


def _entry(*coeffs):
    return list(coeffs)


ONE = [1, 0, 0, 0]
ZERO = [0, 0, 0, 0]
W = [0, 1, 0, 0]
W2 = [0, 0, 1, 0]

# generators, exact; H carries one power of 1/sqrt(2)
GATES = {
    "i": (np.array([[ONE, ZERO], [ZERO, ONE]], dtype=np.int64), 0),
    "h": (np.array([[ONE, ONE], [ONE, [-1, 0, 0, 0]]], dtype=np.int64), 1),
    "t": (np.array([[ONE, ZERO], [ZERO, W]], dtype=np.int64), 0),
    "s": (np.array([[ONE, ZERO], [ZERO, W2]], dtype=np.int64), 0),
    "sdg": (np.array([[ONE, ZERO], [ZERO, [0, 0, -1, 0]]], dtype=np.int64), 0),
    "tdg": (np.array([[ONE, ZERO], [ZERO, [0, 0, 0, -1]]], dtype=np.int64), 0),
    "z": (np.array([[ONE, ZERO], [ZERO, [-1, 0, 0, 0]]], dtype=np.int64), 0),
    "x": (np.array([[ZERO, ONE], [ONE, ZERO]], dtype=np.int64), 0),
}


def product(a, b):
    """Exact product of two single exact matrices ``(m, k)``."""
    m, k = kernels.ring_matmul_fixed(a[0][None], np.array([a[1]]), b[0], b[1])
    return m[0], int(k[0])


def from_ops(ops) -> tuple[np.ndarray, int]:
    """Exact matrix of an operator-order product ``ops[0] @ ops[1] @ ...``."""
    acc = GATES["i"]
    for g in ops:
        acc = product(acc, GATES[g])
    return acc


def to_complex(m, k) -> np.ndarray:
    """Float values of a single matrix or a batch."""
    m = np.asarray(m)
    k = np.asarray(k, dtype=float)
    vals = m @ OMEGA_POWERS
    return vals / np.sqrt(2.0) ** k.reshape(k.shape + (1,) * (vals.ndim - k.ndim))


def to_quaternion(u: np.ndarray) -> np.ndarray:
    """Unit quaternion (a, b, c, d) of ``u / sqrt(det u)`` with ``u = a - i(bX + cY + dZ)``.

    Works on a single 2x2 matrix or a batch (..., 2, 2). Sign is arbitrary.
    """
    det = u[..., 0, 0] * u[..., 1, 1] - u[..., 0, 1] * u[..., 1, 0]
    v = u / np.sqrt(det)[..., None, None]
    q = np.stack([
        np.real(v[..., 0, 0] + v[..., 1, 1]) / 2,
        -np.imag(v[..., 0, 1] + v[..., 1, 0]) / 2,
        np.real(v[..., 1, 0] - v[..., 0, 1]) / 2,
        np.imag(v[..., 1, 1] - v[..., 0, 0]) / 2,
    ], axis=-1)
    return q


def quat_mul(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Hamilton product, broadcast over leading axes."""
    a1, b1, c1, d1 = np.moveaxis(p, -1, 0)
    a2, b2, c2, d2 = np.moveaxis(q, -1, 0)
    return np.stack([
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    ], axis=-1)


def quat_conj(q: np.ndarray) -> np.ndarray:
    return q * np.array([1.0, -1.0, -1.0, -1.0])


def canonical_key(m, k) -> bytes:
    """Hashable key equal for two exact matrices iff they agree up to a power of w."""
    m = np.asarray(m, dtype=np.int64)
    best = None
    cur = m
    for _ in range(8):
        b = cur.tobytes()
        if best is None or b < best:
            best = b
        # multiply every entry by w: (a0,a1,a2,a3) -> (-a3,a0,a1,a2)
        cur = np.concatenate([-cur[..., 3:], cur[..., :3]], axis=-1)
    return int(k).to_bytes(2, "little", signed=True) + best
