"""Gate-sequence helpers: diagonal phase arithmetic and peephole simplification."""

from __future__ import annotations

from functools import reduce

import numpy as np

from ..circuit import DIAGONAL_K, FIXED_1Q

# exponent k of diag(1, w^k) -> shortest spelling
DIAG_SPELLING = {
    0: (), 1: ("t",), 2: ("s",), 3: ("s", "t"),
    4: ("z",), 5: ("z", "t"), 6: ("sdg",), 7: ("tdg",),
}

# Z^a S^b T^c block form used for T-like blocks
def block_form(k: int) -> tuple[int, int, int]:
    k %= 8
    return (k >> 2) & 1, (k >> 1) & 1, k & 1


def sequence_matrix(gates) -> np.ndarray:
    """Unitary of a circuit-order gate list (first gate applied first)."""
    return reduce(lambda acc, g: FIXED_1Q[g] @ acc, gates, np.eye(2, dtype=complex))


def t_count(gates) -> int:
    return sum(1 for g in gates if g in ("t", "tdg"))


def simplify(gates) -> tuple[str, ...]:
    """Merge diagonal runs mod 8 and cancel adjacent H-H and X-X pairs until stable."""
    gates = list(gates)
    while True:
        out: list[str] = []
        i = 0
        while i < len(gates):
            g = gates[i]
            if g in DIAGONAL_K:
                k = 0
                while i < len(gates) and gates[i] in DIAGONAL_K:
                    k += DIAGONAL_K[gates[i]]
                    i += 1
                out.extend(DIAG_SPELLING[k % 8])
                continue
            if out and g in ("h", "x") and out[-1] == g:
                out.pop()
            else:
                out.append(g)
            i += 1
        if out == gates:
            return tuple(out)
        gates = out
