"""QPE circuit construction: Hamiltonians, Trotter rotation lists, iterative and textbook QPE."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from importlib import resources

from .circuit import Instr, LogicalCircuit
from .pauli import PhasedPauli

ANGLE_TOL = 1e-12


class FinePhaseError(ValueError):
    """A classically controlled phase correction is finer than pi/4."""


@dataclass(frozen=True)
class Hamiltonian:
    """Sum of real-weighted Pauli strings over ``n`` qubits."""

    n: int
    terms: tuple[tuple[float, PhasedPauli], ...]

    def __post_init__(self):
        seen = set()
        for c, p in self.terms:
            if c == 0:
                raise ValueError("zero coefficient in Hamiltonian")
            if p.phase != 0 or len(p) != self.n:
                raise ValueError(f"bad term basis {p}")
            if p.letters in seen:
                raise ValueError(f"duplicate term {p.letters}")
            seen.add(p.letters)

    @classmethod
    def from_terms(cls, terms) -> Hamiltonian:
        """Build from ``[(coeff, "ZX..."), ...]``."""
        ts = tuple((float(c), PhasedPauli.parse(p) if isinstance(p, str) else p) for c, p in terms)
        if not ts:
            raise ValueError("empty Hamiltonian")
        return cls(len(ts[0][1]), ts)

    @classmethod
    def from_json(cls, doc: dict | str) -> Hamiltonian:
        if isinstance(doc, str):
            doc = json.loads(doc)
        h = cls.from_terms([(t["coeff"], t["pauli"]) for t in doc["terms"]])
        if "n" in doc and doc["n"] != h.n:
            raise ValueError(f"declared n={doc['n']} but terms act on {h.n} qubits")
        return h

    def to_json(self) -> dict:
        return {"n": self.n, "terms": [{"coeff": c, "pauli": p.letters} for c, p in self.terms]}

    def matrix(self):
        return sum(c * p.matrix() for c, p in self.terms)

    @property
    def norm1(self) -> float:
        return sum(abs(c) for c, _ in self.terms)


def load_bundled(name: str = "h2") -> tuple[Hamiltonian, list[str]]:
    """Bundled Hamiltonian plus its data-register preparation gates."""
    doc = json.loads(resources.files("qpe_surgery.data").joinpath(f"{name}.json").read_text())
    return Hamiltonian.from_json(doc), list(doc.get("prep", []))


def h2_hamiltonian() -> Hamiltonian:
    return load_bundled("h2")[0]


@dataclass(frozen=True)
class QPESpec:
    mode: str = "iterative"
    bits: int = 3
    steps: int = 1
    convention: str = "pi-over-sum"
    # gate names applied to data qubits before QPE, e.g. ["x 0"]
    prep: tuple[str, ...] = ("x 0",)
    allow_fine_phases: bool = False

    def __post_init__(self):
        if self.mode not in ("iterative", "textbook"):
            raise ValueError(f"unknown QPE mode {self.mode!r}")
        if self.bits < 1 or self.steps < 1:
            raise ValueError("bits and steps must be >= 1")
        if self.convention not in ("pi-over-sum", "inverse-two-sum"):
            raise ValueError(f"unknown time convention {self.convention!r}")


def scale_time(h: Hamiltonian, convention: str = "pi-over-sum") -> float:
    if not h.terms:
        raise ValueError("empty Hamiltonian")
    if convention == "pi-over-sum":
        return math.pi / h.norm1
    if convention == "inverse-two-sum":
        return 1.0 / (2 * h.norm1)
    raise ValueError(f"unknown time convention {convention!r}")


def _merge(rots: list[tuple[str, float]]) -> list[tuple[str, float]]:
    out: list[tuple[str, float]] = []
    for basis, ang in rots:
        if out and out[-1][0] == basis:
            merged = out[-1][1] + ang
            out.pop()
            if abs(merged) > ANGLE_TOL:
                out.append((basis, merged))
        else:
            out.append((basis, ang))
    return out


def trotter_rotation_list(h: Hamiltonian, t: float, steps: int = 1, reps: int = 1) -> list[tuple[str, float]]:
    """Directionally controlled second-order Trotter step as ``(basis, angle)`` pairs.

    Bases are ``"Z" + term letters``; the leading Z acts on the control ancilla.
    ``reps`` concatenates the full evolution that many times before merging,
    which is how controlled powers are built.
    """
    if t <= 0:
        raise ValueError("time step must be positive")
    dt = t / steps
    # exp(-i Z(x)c P dt/4) is a rotation by c*dt/2; forward then reversed pass
    one_step = [("Z" + p.letters, c * dt / 2) for c, p in h.terms]
    one_step += one_step[::-1]
    return _merge(one_step * (steps * reps))


def _rotation_instr(basis: str, angle: float, control: int, data: list[int]) -> Instr:
    qubits = [control]
    letters = ["Z"]
    for q, c in zip(data, basis[1:]):
        if c != "I":
            qubits.append(q)
            letters.append(c)
    return Instr("prot", tuple(qubits), angle=angle, pauli="".join(letters))


def _prep_instrs(prep, data: list[int]) -> list[Instr]:
    out = []
    for g in prep:
        name, q = g.split()
        out.append(Instr(name, (data[int(q)],)))
    return out


def _correction_gates(j: int) -> tuple[str, float]:
    """Conditioned phase for bit offset j: angle -pi/2**j."""
    if j == 1:
        return "sdg", -math.pi / 2
    if j == 2:
        return "tdg", -math.pi / 4
    return "phase", -math.pi / 2 ** j


def build_iterative_qpe(h: Hamiltonian, spec: QPESpec) -> LogicalCircuit:
    """Iterative QPE: ancilla is qubit 0, data qubits follow.

    Iteration k (from ``bits`` down to 1) writes classical bit ``bits - k``, so
    bit 0 holds the least significant phase bit.
    """
    if spec.mode != "iterative":
        raise ValueError("spec.mode must be 'iterative'")
    m = spec.bits
    if m >= 4 and not spec.allow_fine_phases:
        raise FinePhaseError(
            f"bits={m} needs conditioned phases finer than pi/4; pass allow_fine_phases to emit them for synthesis")
    t = scale_time(h, spec.convention)
    anc, data = 0, list(range(1, h.n + 1))
    c = LogicalCircuit(h.n + 1, m)
    c.extend(_prep_instrs(spec.prep, data))
    for k in range(m, 0, -1):
        bit = m - k
        c.append("h", anc)
        for basis, ang in trotter_rotation_list(h, t, spec.steps, reps=2 ** (k - 1)):
            c.instrs.append(_rotation_instr(basis, ang, anc, data))
        # omega_k = -pi * 0.x_{k+1}...x_m; x_{k+j} lives in bit (m - k - j)
        for j in range(m - k, 0, -1):
            name, ang = _correction_gates(j)
            kw = {"angle": ang} if name == "phase" else {}
            c.append(name, anc, cond=m - k - j, **kw)
        c.append("h", anc)
        c.append("measure", anc, bit=bit)
        if k > 1:
            c.append("x", anc, cond=bit)
    return c


def build_textbook_qpe(h: Hamiltonian, spec: QPESpec) -> LogicalCircuit:
    """Textbook QPE with ancillas 0..m-1 then data; ancilla j controls U**(2**(m-1-j)).

    Ancilla j is measured into bit j, which is again the least significant bit first.
    """
    if spec.mode != "textbook":
        raise ValueError("spec.mode must be 'textbook'")
    m = spec.bits
    t = scale_time(h, spec.convention)
    data = list(range(m, m + h.n))
    c = LogicalCircuit(m + h.n, m)
    for a in range(m):
        c.append("h", a)
    c.extend(_prep_instrs(spec.prep, data))
    for a in range(m - 1, -1, -1):
        for basis, ang in trotter_rotation_list(h, t, spec.steps, reps=2 ** (m - 1 - a)):
            c.instrs.append(_rotation_instr(basis, ang, a, data))
    # inverse QFT, least significant ancilla first
    for a in range(m):
        for b in range(a):
            c.append("cphase", b, a, angle=-math.pi / 2 ** (a - b))
        c.append("h", a)
    for a in range(m):
        c.append("measure", a, bit=a)
    return c


def build_qpe(h: Hamiltonian, spec: QPESpec) -> LogicalCircuit:
    if spec.mode == "iterative":
        return build_iterative_qpe(h, spec)
    return build_textbook_qpe(h, spec)


_BASIS_IN = {"X": ["h"], "Y": ["sdg", "h"], "Z": []}
_BASIS_OUT = {"X": ["h"], "Y": ["h", "s"], "Z": []}


def lower_pauli_rotation(ins: Instr) -> list[Instr]:
    """Basis change, CNOT ladder onto the last qubit, RZ, then undo."""
    qs, letters = ins.qubits, ins.pauli
    out = []
    for q, p in zip(qs, letters):
        out += [Instr(g, (q,), cond=ins.cond) for g in _BASIS_IN[p]]
    ladder = [Instr("cx", (qs[i], qs[i + 1]), cond=ins.cond) for i in range(len(qs) - 1)]
    out += ladder
    out.append(Instr("rz", (qs[-1],), angle=ins.angle, cond=ins.cond))
    out += ladder[::-1]
    for q, p in zip(qs, letters):
        out += [Instr(g, (q,), cond=ins.cond) for g in _BASIS_OUT[p]]
    return out


def lower_cphase(ins: Instr) -> list[Instr]:
    a, b = ins.qubits
    th = ins.angle
    return [
        Instr("phase", (a,), angle=th / 2, cond=ins.cond),
        Instr("phase", (b,), angle=th / 2, cond=ins.cond),
        Instr("cx", (a, b), cond=ins.cond),
        Instr("phase", (b,), angle=-th / 2, cond=ins.cond),
        Instr("cx", (a, b), cond=ins.cond),
    ]


def lower_two_qubit_rotations(c: LogicalCircuit) -> LogicalCircuit:
    """Replace Pauli rotations and controlled phases by CNOTs and one-qubit gates."""
    out = c.copy_empty()
    for ins in c:
        if ins.name == "prot":
            out.extend(lower_pauli_rotation(ins))
        elif ins.name == "cphase":
            out.extend(lower_cphase(ins))
        else:
            out.instrs.append(ins)
    return out
