"""Round costs of lattice-surgery operations, per stage.

Stage lengths are exact ``Fraction`` values so odd distances keep their
half-round terms until a total is taken.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

METHODS = ("direct", "moved")

# operations legal under each method
DIRECT_OPS = ("x", "z", "cx", "h", "s", "tlike", "tlike_plain", "measure", "yprep")
MOVED_OPS = ("rotation", "pauli_measure", "yprep")


class IllegalOperation(ValueError):
    """The operation has no cost under the given method."""


def _check(d: int, method: str) -> None:
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")
    if int(d) != d or d < 1:
        raise ValueError(f"distance must be a positive integer, got {d}")


def op_stages(op: str, d: int, method: str = "direct", expected: bool = False) -> list[tuple[str, Fraction]]:
    """Named stages of one operation with their (possibly half-integer) round counts.

    ``expected`` charges the S correction of a T-like gate with probability one
    half instead of always.
    """
    return list(_stages(op, d, method, expected))


@lru_cache(maxsize=1024)
def _stages(op: str, d: int, method: str, expected: bool) -> tuple[tuple[str, Fraction], ...]:
    _check(d, method)
    d = Fraction(d)
    half = d / 2
    if method == "direct":
        s = [("prepare Y state", half + 2), ("merge ZZ", d), ("measure X", Fraction(1))]
        table = {
            "x": [("transversal", Fraction(0))],
            "z": [("transversal", Fraction(0))],
            "cx": [("split off |+>", Fraction(1)), ("merge ZZ", d + 1), ("merge XX", d + 1),
                   ("split", d), ("measure", Fraction(1))],
            "h": [("transversal H", Fraction(0)), ("extend", d), ("deform", d), ("shrink", Fraction(1)),
                  ("move", d), ("swap back", Fraction(3))],
            "s": s,
            "tlike_plain": [("merge ZZ", d), ("measure X", Fraction(1))],
            "measure": [("measure Z", Fraction(1))],
            "yprep": [("prepare Y state", half + 2)],
        }
        if expected:
            table["tlike"] = table["tlike_plain"] + [("S correction (expected)", (3 * half + 3) / 2)]
        else:
            table["tlike"] = table["tlike_plain"] + [("S correction: " + n, r) for n, r in s]
    else:
        table = {
            "rotation": [("joint measurement", d), ("measure X", Fraction(1))],
            "pauli_measure": [("joint measurement", d)],
            "yprep": [("prepare Y state", half + 2)],
        }
    if op not in table:
        raise IllegalOperation(f"operation {op!r} is not available under the {method} method")
    return tuple(table[op])


@lru_cache(maxsize=1024)
def exact_rounds(op: str, d: int, method: str = "direct", expected: bool = False) -> Fraction:
    return sum((r for _, r in _stages(op, d, method, expected)), Fraction(0))


def op_rounds(op: str, d: int, method: str = "direct", expected: bool = False) -> int:
    """Rounds for one isolated operation, rounding half-integers up."""
    return math.ceil(exact_rounds(op, d, method, expected))
