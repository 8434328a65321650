"""Meet-in-the-middle search over Clifford+T normal forms.

Every single-qubit Clifford+T operator has a unique normal form
``(T | 1) (HT | SHT)^* C`` with C one of 24 Cliffords, and its T-count is the
number of T letters. Splitting the syllable string gives ``A . B`` where ``A``
is ``(T | 1)`` followed by syllables and ``B`` is syllables followed by a
Clifford. For a target ``R`` we look for ``B`` close to ``A^dagger R``; the
distance is invariant under left multiplication, so this is exact.

Unitaries are compared as unit quaternions (SU(2) up to sign). The
phase-invariant distance ``sqrt(1 - |<q, q'>|)`` equals the Euclidean
distance between ``q`` and ``+-q'`` divided by sqrt(2).
"""

from __future__ import annotations

import math
import threading

import numpy as np
from scipy.spatial import cKDTree

from .. import kernels
from .clifford import clifford_table
from .ring import from_ops, quat_conj, quat_mul, to_complex, to_quaternion
from .sequence import sequence_matrix, simplify, t_count

MAX_B_LEVEL = 16
MAX_A_LEVEL = 20
# exact ring products up to this level, float quaternion products beyond it
EXACT_LEVEL = 16

_SYLLABLES = (("h", "t"), ("s", "h", "t"))  # operator order
_SYL_EXACT = [from_ops(s) for s in _SYLLABLES]
_T_QUAT = to_quaternion(to_complex(*from_ops(["t"])))
_SYL_QUATS = [to_quaternion(to_complex(*e)) for e in _SYL_EXACT]


class _Tables:
    """Lazily grown, then read-only, tables of syllable words."""

    def __init__(self):
        self._lock = threading.Lock()
        m0, k0 = from_ops([])
        self._exact = (m0[None].copy(), np.zeros(1, dtype=np.int64))
        self.quats = [np.array([[1.0, 0.0, 0.0, 0.0]])]
        # codes[n][w] has bit s set when syllable s of word w is SHT
        self.codes = [np.zeros(1, dtype=np.int64)]
        self._trees: dict[int, tuple[cKDTree, np.ndarray]] = {}
        self._cliff_q = np.array([to_quaternion(to_complex(m, k)) for _, m, k in clifford_table()])

    def _grow(self, n: int) -> None:
        while len(self.quats) <= n:
            lvl = len(self.quats) - 1
            if lvl < EXACT_LEVEL:
                m, k = self._exact
                parts = [kernels.ring_matmul_fixed(m, k, sm, sk) for sm, sk in _SYL_EXACT]
                m2 = np.concatenate([p[0] for p in parts])
                k2 = np.concatenate([p[1] for p in parts])
                self._exact = (m2, k2) if lvl + 1 < EXACT_LEVEL else None
                self.quats.append(to_quaternion(to_complex(m2, k2)))
            else:
                q = self.quats[lvl]
                self.quats.append(np.concatenate([quat_mul(q, sq) for sq in _SYL_QUATS]))
            c = self.codes[lvl]
            self.codes.append(np.concatenate([c, c | (1 << lvl)]))

    def syllable_level(self, n: int):
        with self._lock:
            self._grow(n)
        return self.quats[n], self.codes[n]

    def a_level(self, i: int):
        """Quaternions and (has_t, code) for prefixes with T-count i."""
        if i == 0:
            q, c = self.syllable_level(0)
            return q, np.zeros(1, dtype=bool), c
        qs, cs = self.syllable_level(i)
        qt, ct = self.syllable_level(i - 1)
        q = np.concatenate([quat_mul(_T_QUAT, qt), qs])
        has_t = np.concatenate([np.ones(len(qt), bool), np.zeros(len(qs), bool)])
        return q, has_t, np.concatenate([ct, cs])

    def b_tree(self, j: int):
        with self._lock:
            if j not in self._trees:
                self._grow(j)
                q = quat_mul(self.quats[j][:, None, :], self._cliff_q[None, :, :]).reshape(-1, 4)
                self._trees[j] = (cKDTree(q), q)
            return self._trees[j]


TABLES = _Tables()


def _spell(has_t: bool, code_a: int, n_a: int, code_b: int, n_b: int, cliff: int) -> tuple[str, ...]:
    ops: list[str] = ["t"] if has_t else []
    for s in range(n_a):
        ops.extend(_SYLLABLES[(code_a >> s) & 1])
    for s in range(n_b):
        ops.extend(_SYLLABLES[(code_b >> s) & 1])
    # operator order -> circuit order, Clifford comes first in time
    return simplify(clifford_table()[cliff][0] + tuple(reversed(ops)))


def split_levels(n: int) -> tuple[int, int]:
    j = min(n // 2, MAX_B_LEVEL)
    return n - j, j


def max_reachable_t() -> int:
    return MAX_A_LEVEL + MAX_B_LEVEL


def search(target: np.ndarray, eps: float, max_t: int):
    """Lowest-T-count sequence within ``eps`` of ``target``.

    Returns ``(gates, distance)`` or None when nothing up to ``max_t`` is found.
    Among equal T-count hits the closest wins, then the shortest, then lexicographic order.
    """
    r = to_quaternion(target)
    radius = math.sqrt(2.0) * eps
    for n in range(0, min(max_t, max_reachable_t()) + 1):
        i, j = split_levels(n)
        a_q, a_t, a_c = TABLES.a_level(i)
        n_syl_a = np.where(a_t, i - 1, i)
        tree, _ = TABLES.b_tree(j)
        _, b_codes = TABLES.syllable_level(j)
        pts = quat_mul(quat_conj(a_q), r)
        hits = []
        for sign in (1.0, -1.0):
            d, idx = tree.query(sign * pts, k=1, distance_upper_bound=radius)
            for ai in np.nonzero(np.isfinite(d))[0]:
                for bi in tree.query_ball_point(sign * pts[ai], radius):
                    w, cl = divmod(int(bi), 24)
                    hits.append((bool(a_t[ai]), int(a_c[ai]), int(n_syl_a[ai]), int(b_codes[w]), j, cl))
        best = None
        for h in set(hits):
            gates = _spell(*h)
            dist = distance_to(gates, target)
            if dist > eps:
                continue
            key = (t_count(gates), round(dist, 12), len(gates), gates)
            if best is None or key < best[0]:
                best = (key, dist)
        if best is not None:
            return best[0][-1], best[1]
    return None


def distance_to(gates, target) -> float:
    u = sequence_matrix(gates)
    return math.sqrt(max(0.0, 1.0 - abs(np.trace(u.conj().T @ target)) / 2))
