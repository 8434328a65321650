"""The 24 single-qubit Cliffords modulo phase, with short spellings."""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .ring import GATES, canonical_key, product, to_complex

# generator order fixes the tie-break between equally short spellings
_GENERATORS = ("h", "s", "sdg", "x", "z")


@lru_cache(maxsize=None)
def clifford_table() -> tuple[tuple[tuple[str, ...], np.ndarray, int], ...]:
    """Breadth-first list of ``(circuit-order spelling, exact matrix, k)``."""
    start = ((), GATES["i"][0], 0)
    seen = {canonical_key(start[1], start[2])}
    out = [start]
    frontier = [start]
    while frontier:
        nxt = []
        for spell, m, k in frontier:
            for g in _GENERATORS:
                # appending g in circuit order left-multiplies the operator
                m2, k2 = product(GATES[g], (m, k))
                key = canonical_key(m2, k2)
                if key not in seen:
                    seen.add(key)
                    item = (spell + (g,), m2, k2)
                    out.append(item)
                    nxt.append(item)
        frontier = nxt
    assert len(out) == 24, len(out)
    return tuple(out)


def clifford_matrices() -> np.ndarray:
    return np.array([to_complex(m, k) for _, m, k in clifford_table()])
