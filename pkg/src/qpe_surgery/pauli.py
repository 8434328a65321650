"""Phased multi-qubit Pauli operators, rotation angles and Pauli rotations.

Phases are powers of ``i`` stored as integers mod 4, so products are exact and
hashable. Angles that are multiples of pi/4 are kept as an integer ``k`` mod 8.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce

import numpy as np

LETTERS = "IXYZ"

# (a, b) -> (power of i, letter) for the single-qubit product a*b.
_PRODUCT = {
    ("I", "I"): (0, "I"), ("I", "X"): (0, "X"), ("I", "Y"): (0, "Y"), ("I", "Z"): (0, "Z"),
    ("X", "I"): (0, "X"), ("X", "X"): (0, "I"), ("X", "Y"): (1, "Z"), ("X", "Z"): (3, "Y"),
    ("Y", "I"): (0, "Y"), ("Y", "X"): (3, "Z"), ("Y", "Y"): (0, "I"), ("Y", "Z"): (1, "X"),
    ("Z", "I"): (0, "Z"), ("Z", "X"): (1, "Y"), ("Z", "Y"): (3, "X"), ("Z", "Z"): (0, "I"),
}

_PHASE_TEXT = {0: "+", 1: "+i", 2: "-", 3: "-i"}

SINGLE_MATRICES = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


@dataclass(frozen=True)
class PhasedPauli:
    """An n-qubit Pauli string times i**phase.

    ``letters[j]`` acts on qubit ``j``; qubit 0 is the most significant tensor
    factor in :meth:`matrix`.
    """

    phase: int
    letters: str

    def __post_init__(self):
        if any(c not in LETTERS for c in self.letters):
            raise ValueError(f"invalid Pauli letters {self.letters!r}")
        object.__setattr__(self, "phase", self.phase % 4)

    @classmethod
    def parse(cls, text: str) -> PhasedPauli:
        """Parse the textual form ``[+|-][i]XYZI...``."""
        s = text.strip()
        phase = 0
        if s[:1] in "+-":
            phase = 2 if s[0] == "-" else 0
            s = s[1:]
        if s[:1] == "i":
            phase += 1
            s = s[1:]
        if not s:
            raise ValueError(f"empty Pauli string in {text!r}")
        return cls(phase, s)

    @classmethod
    def single(cls, n: int, qubit: int, letter: str) -> PhasedPauli:
        letters = ["I"] * n
        letters[qubit] = letter
        return cls(0, "".join(letters))

    @classmethod
    def identity(cls, n: int) -> PhasedPauli:
        return cls(0, "I" * n)

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return _PHASE_TEXT[self.phase] + self.letters

    def __mul__(self, other: PhasedPauli) -> PhasedPauli:
        return multiply(self, other)

    def __neg__(self) -> PhasedPauli:
        return PhasedPauli(self.phase + 2, self.letters)

    @property
    def is_hermitian(self) -> bool:
        return self.phase % 2 == 0

    @property
    def sign(self) -> int:
        """+1 or -1 for Hermitian operators."""
        if not self.is_hermitian:
            raise ValueError(f"{self} is not Hermitian")
        return 1 if self.phase == 0 else -1

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(j for j, c in enumerate(self.letters) if c != "I")

    def unsigned(self) -> PhasedPauli:
        return PhasedPauli(0, self.letters)

    def times_i(self, power: int = 1) -> PhasedPauli:
        return PhasedPauli(self.phase + power, self.letters)

    def matrix(self) -> np.ndarray:
        mats = [SINGLE_MATRICES[c] for c in self.letters]
        return (1j ** self.phase) * reduce(np.kron, mats, np.eye(1, dtype=complex))


def _check_lengths(a: PhasedPauli, b: PhasedPauli) -> None:
    if len(a.letters) != len(b.letters):
        raise ValueError(f"length mismatch: {len(a.letters)} vs {len(b.letters)}")


def multiply(a: PhasedPauli, b: PhasedPauli) -> PhasedPauli:
    """Return the operator product ``a @ b`` with its accumulated phase."""
    _check_lengths(a, b)
    phase = a.phase + b.phase
    out = []
    for x, y in zip(a.letters, b.letters):
        p, c = _PRODUCT[x, y]
        phase += p
        out.append(c)
    return PhasedPauli(phase, "".join(out))


def commutes(a: PhasedPauli, b: PhasedPauli) -> bool:
    _check_lengths(a, b)
    clashes = sum(1 for x, y in zip(a.letters, b.letters) if x != "I" and y != "I" and x != y)
    return clashes % 2 == 0


@dataclass(frozen=True)
class Angle:
    """Either an exact multiple ``k*pi/4`` (k mod 8) or a free angle in radians."""

    k: int | None = None
    rad: float | None = None

    def __post_init__(self):
        if (self.k is None) == (self.rad is None):
            raise ValueError("exactly one of k or rad must be given")
        if self.k is not None:
            object.__setattr__(self, "k", self.k % 8)

    @classmethod
    def dyadic(cls, k: int) -> Angle:
        return cls(k=k)

    @classmethod
    def free(cls, rad: float) -> Angle:
        return cls(rad=float(rad))

    @property
    def is_exact(self) -> bool:
        return self.k is not None

    @property
    def radians(self) -> float:
        if self.k is not None:
            # k in [0, 8) maps to (-pi, pi]
            k = self.k - 8 if self.k > 4 else self.k
            return k * math.pi / 4
        return self.rad

    def __neg__(self) -> Angle:
        return Angle(k=-self.k) if self.k is not None else Angle(rad=-self.rad)

    def __add__(self, other: Angle) -> Angle:
        if self.k is not None and other.k is not None:
            return Angle(k=self.k + other.k)
        return Angle(rad=self.radians + other.radians)

    def __str__(self) -> str:
        if self.k is None:
            return repr(self.rad)
        k = self.k - 8 if self.k > 4 else self.k
        return {0: "0", 1: "pi/4", 2: "pi/2", 3: "3pi/4", 4: "pi",
                -1: "-pi/4", -2: "-pi/2", -3: "-3pi/4"}[k]

    @classmethod
    def parse(cls, text: str) -> Angle:
        table = {"0": 0, "pi/4": 1, "pi/2": 2, "3pi/4": 3, "pi": 4,
                 "-pi/4": -1, "-pi/2": -2, "-3pi/4": -3, "-pi": 4,
                 "+pi/4": 1, "+pi/2": 2, "+pi": 4}
        t = text.strip()
        if t in table:
            return cls(k=table[t])
        return cls(rad=float(t))


@dataclass(frozen=True)
class PauliRotation:
    """``R_P(theta) = exp(-i P theta / 2)`` with a phase-free basis P."""

    basis: PhasedPauli
    angle: Angle

    def __post_init__(self):
        if self.basis.phase == 2:
            object.__setattr__(self, "basis", self.basis.unsigned())
            object.__setattr__(self, "angle", -self.angle)
        elif self.basis.phase != 0:
            raise ValueError(f"rotation basis must be Hermitian, got {self.basis}")

    @classmethod
    def of(cls, basis: str | PhasedPauli, k: int) -> PauliRotation:
        if isinstance(basis, str):
            basis = PhasedPauli.parse(basis)
        return cls(basis, Angle.dyadic(k))

    def matrix(self) -> np.ndarray:
        theta = self.angle.radians
        p = self.basis.matrix()
        return math.cos(theta / 2) * np.eye(p.shape[0]) - 1j * math.sin(theta / 2) * p

    def __str__(self) -> str:
        return f"R[{self.basis}]({self.angle})"
