"""Logical circuit IR shared by the builder, synthesis, simulator and scheduler."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field, replace

import numpy as np

from .pauli import PhasedPauli, PauliRotation, Angle

OMEGA = np.exp(1j * math.pi / 4)

FIXED_1Q = {
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
    "h": np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2),
    "s": np.diag([1, 1j]).astype(complex),
    "sdg": np.diag([1, -1j]).astype(complex),
    "t": np.diag([1, OMEGA]).astype(complex),
    "tdg": np.diag([1, np.conj(OMEGA)]).astype(complex),
}

DIAGONAL_K = {"z": 4, "s": 2, "sdg": 6, "t": 1, "tdg": 7}

CLIFFORD_T = frozenset(["x", "y", "z", "h", "s", "sdg", "t", "tdg", "cx", "tlike"])
FREE_ANGLE = frozenset(["rz", "phase", "prot", "cphase"])
ALL_GATES = CLIFFORD_T | FREE_ANGLE | {"measure"}


@dataclass(frozen=True)
class Instr:
    """One circuit instruction.

    ``cond`` names a classical bit; the instruction runs only when that bit is 1.
    ``prot`` is a multi-qubit Pauli rotation whose letters (``pauli``) line up with
    ``qubits``. ``tlike`` is the diagonal block ``diag(1, w**k)``, ``w = e^{i pi/4}``.
    """

    name: str
    qubits: tuple[int, ...]
    angle: float | None = None
    pauli: str | None = None
    k: int | None = None
    bit: int | None = None
    cond: int | None = None

    def __post_init__(self):
        if self.name not in ALL_GATES:
            raise ValueError(f"unknown instruction {self.name!r}")
        if self.name == "tlike":
            object.__setattr__(self, "k", self.k % 8)

    @property
    def is_unitary(self) -> bool:
        return self.name != "measure"

    def with_cond(self, cond: int | None) -> Instr:
        return replace(self, cond=cond)

    def matrix(self) -> np.ndarray:
        """Unitary on ``self.qubits`` (first qubit most significant)."""
        n = self.name
        if n in FIXED_1Q:
            return FIXED_1Q[n]
        if n == "tlike":
            return np.diag([1, OMEGA ** self.k]).astype(complex)
        if n == "rz":
            return np.diag([np.exp(-0.5j * self.angle), np.exp(0.5j * self.angle)])
        if n == "phase":
            return np.diag([1, np.exp(1j * self.angle)])
        if n == "cx":
            m = np.eye(4, dtype=complex)
            m[[2, 3]] = m[[3, 2]]
            return m
        if n == "cphase":
            return np.diag([1, 1, 1, np.exp(1j * self.angle)])
        if n == "prot":
            return PauliRotation(PhasedPauli(0, self.pauli), Angle.free(self.angle)).matrix()
        raise ValueError(f"{n} has no matrix")

    def __str__(self) -> str:
        s = self.name
        if self.name == "prot":
            s += f"[{self.pauli}]"
        if self.angle is not None:
            s += f"({self.angle:.6g})"
        if self.k is not None:
            s += f"(k={self.k})"
        s += " " + ",".join(f"q{q}" for q in self.qubits)
        if self.bit is not None:
            s += f" -> c{self.bit}"
        if self.cond is not None:
            s += f" if c{self.cond}"
        return s


@dataclass
class LogicalCircuit:
    n_qubits: int
    n_bits: int = 0
    instrs: list[Instr] = field(default_factory=list)

    def append(self, name: str, *qubits: int, **kw) -> LogicalCircuit:
        self.instrs.append(Instr(name, tuple(qubits), **kw))
        return self

    def extend(self, instrs) -> LogicalCircuit:
        self.instrs.extend(instrs)
        return self

    def copy_empty(self) -> LogicalCircuit:
        return LogicalCircuit(self.n_qubits, self.n_bits)

    def __len__(self) -> int:
        return len(self.instrs)

    def __iter__(self):
        return iter(self.instrs)

    def validate(self) -> None:
        written = set()
        for i, ins in enumerate(self.instrs):
            for q in ins.qubits:
                if not 0 <= q < self.n_qubits:
                    raise ValueError(f"instruction {i} ({ins}): qubit {q} out of range")
            if len(set(ins.qubits)) != len(ins.qubits):
                raise ValueError(f"instruction {i} ({ins}): repeated qubit")
            if ins.cond is not None and ins.cond not in written:
                raise ValueError(f"instruction {i} ({ins}): condition on unwritten bit c{ins.cond}")
            if ins.name == "measure":
                if ins.bit is None or not 0 <= ins.bit < self.n_bits:
                    raise ValueError(f"instruction {i} ({ins}): bad measurement bit")
                written.add(ins.bit)

    def counts(self) -> Counter:
        """Instruction counts keyed by name (``tlike`` blocks keyed by kind)."""
        c = Counter()
        for ins in self.instrs:
            c[ins.name] += 1
        return c

    def category_counts(self) -> dict[str, int]:
        """Counts in the categories used for reporting lowered circuits."""
        out = {"x": 0, "z": 0, "cx": 0, "h": 0, "s": 0, "t": 0, "measure": 0, "other": 0}
        for ins in self.instrs:
            n = ins.name
            if n in ("x", "z", "cx", "h", "measure"):
                out[n] += 1
            elif n in ("s", "sdg"):
                out["s"] += 1
            elif n in ("t", "tdg"):
                out["t"] += 1
            elif n == "tlike":
                k = ins.k
                out["t"] += k % 2
                out["s"] += (k >> 1) % 2
                out["z"] += (k >> 2) % 2
            else:
                out["other"] += 1
        out["total"] = sum(v for key, v in out.items())
        return out

    def t_count(self) -> int:
        return self.category_counts()["t"]


def pauli_string(n: int, qubits: tuple[int, ...], letters: str) -> PhasedPauli:
    """Embed ``letters`` on ``qubits`` into an n-qubit Pauli."""
    out = ["I"] * n
    for q, c in zip(qubits, letters):
        out[q] = c
    return PhasedPauli(0, "".join(out))
