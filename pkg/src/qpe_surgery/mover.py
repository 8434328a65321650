"""Moved-Clifford compilation: pi/4 Pauli rotations and Pauli measurements only.

Every Clifford is written as pi/2 and pi Pauli rotations and swept to the end
of the circuit. A pi/4 rotation or a measurement that a Clifford passes gets
its basis conjugated by that Clifford. The Cliffords that were swept through
are kept as a conjugation tableau (``Frame``) while compiling.

Classically conditioned Cliffords cannot be folded into a static frame, so they
are emitted as conditioned frame entries tagged with the number of events
that precede them. The executor applies them online to a per-branch dynamic
frame, together with the pi/2 corrections of magic-state injection.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .circuit import Instr, LogicalCircuit
from .pauli import Angle, PauliRotation, PhasedPauli, commutes, multiply
from .synthesis import collapse_tlike
from .sim import BranchLimitExceeded, MAX_BITS, PRUNE, initial_state


class NotCliffordT(ValueError):
    pass


def _rot(n: int, qubits, letters: str, k: int) -> PauliRotation:
    out = ["I"] * n
    for q, c in zip(qubits, letters):
        out[q] = c
    return PauliRotation(PhasedPauli(0, "".join(out)), Angle.dyadic(k))


_ONE_QUBIT = {
    "x": [("X", 4)], "y": [("Y", 4)], "z": [("Z", 4)],
    "s": [("Z", 2)], "sdg": [("Z", 6)], "t": [("Z", 1)], "tdg": [("Z", 7)],
    "h": [("Z", 2), ("X", 2), ("Z", 2)],
}


def split_tlike(k: int) -> tuple[int, int]:
    """``k = sign + residual`` with sign = +-1 for odd k, residual a multiple of 2."""
    k %= 8
    if k % 2 == 0:
        return 0, k
    sign = -1 if k == 7 else 1
    return sign, (k - sign) % 8


def gate_to_rotations(ins: Instr, n: int | None = None) -> list[PauliRotation]:
    """Pauli rotations (circuit order) implementing a Clifford+T gate up to global phase."""
    n = n if n is not None else max(ins.qubits) + 1
    if ins.name in _ONE_QUBIT:
        return [_rot(n, ins.qubits, p, k) for p, k in _ONE_QUBIT[ins.name]]
    if ins.name == "tlike":
        sign, rest = split_tlike(ins.k)
        out = [_rot(n, ins.qubits, "Z", sign)] if sign else []
        if rest:
            out.append(_rot(n, ins.qubits, "Z", rest))
        return out
    if ins.name == "cx":
        c, t = ins.qubits
        return [_rot(n, (c, t), "ZX", 2), _rot(n, (c,), "Z", 6), _rot(n, (t,), "X", 6)]
    raise NotCliffordT(f"{ins.name} is not a Clifford+T gate")


def conjugate_by_rotation(basis: PhasedPauli, rot: PauliRotation) -> PhasedPauli:
    """``R^dagger P R`` for a Clifford rotation R (angle a multiple of pi/2)."""
    k = rot.angle.k
    if k is None or k % 2:
        raise ValueError(f"{rot} is not a Clifford rotation")
    if k == 0 or commutes(basis, rot.basis):
        return basis
    if k == 4:
        return -basis
    q = rot.basis if k == 2 else -rot.basis
    return multiply(q, basis).times_i()


def move_past_rotation(c: PauliRotation, r: PauliRotation) -> PauliRotation:
    """Circuit ``[c, r]`` equals ``[r', c]``; returns r'."""
    return PauliRotation(conjugate_by_rotation(r.basis, c), r.angle)


@dataclass(frozen=True)
class Measurement:
    basis: PhasedPauli  # Hermitian, sign allowed
    bit: int

    @property
    def inverted(self) -> bool:
        return self.basis.sign < 0


def move_past_measurement(c: PauliRotation, m: Measurement) -> Measurement:
    """Circuit ``[c, M]`` equals ``[M', c]``; a -1 sign means the outcome is read inverted."""
    return Measurement(conjugate_by_rotation(m.basis, c), m.bit)


class Frame:
    """A Clifford D stored through its conjugation map P -> D^dagger P D."""

    def __init__(self, n: int, images: list[PhasedPauli] | None = None):
        self.n = n
        if images is None:
            images = [PhasedPauli.single(n, q, "X") for q in range(n)] + \
                     [PhasedPauli.single(n, q, "Z") for q in range(n)]
        self.images = images

    def copy(self) -> Frame:
        return Frame(self.n, list(self.images))

    def conjugate(self, p: PhasedPauli) -> PhasedPauli:
        acc = PhasedPauli(p.phase, "I" * self.n)
        for q, c in enumerate(p.letters):
            if c == "X":
                acc = multiply(acc, self.images[q])
            elif c == "Z":
                acc = multiply(acc, self.images[self.n + q])
            elif c == "Y":
                acc = multiply(acc, multiply(self.images[q], self.images[self.n + q]).times_i())
        return acc

    def _generators(self):
        return [PhasedPauli.single(self.n, q, "X") for q in range(self.n)] + \
               [PhasedPauli.single(self.n, q, "Z") for q in range(self.n)]

    def then(self, rot: PauliRotation) -> None:
        """D <- R D (R applied after D in time)."""
        self.images = [self.conjugate(conjugate_by_rotation(g, rot)) for g in self._generators()]

    def before(self, rot: PauliRotation) -> None:
        """D <- D R (R applied before D in time)."""
        self.images = [conjugate_by_rotation(img, rot) for img in self.images]

    def is_identity(self) -> bool:
        return self.images == self._generators()


@dataclass(frozen=True)
class RotationEvent:
    rotation: PauliRotation
    cond: int | None = None


@dataclass(frozen=True)
class CondFrameEntry:
    at: int  # number of events executed before this entry
    cond: int
    rotation: PauliRotation


@dataclass
class PauliRotationProgram:
    n_qubits: int
    n_bits: int
    events: list = field(default_factory=list)
    frame: list[PauliRotation] = field(default_factory=list)
    cond_frame: list[CondFrameEntry] = field(default_factory=list)

    @property
    def rotations(self) -> list[RotationEvent]:
        return [e for e in self.events if isinstance(e, RotationEvent)]

    @property
    def measurements(self) -> list[Measurement]:
        return [e for e in self.events if isinstance(e, Measurement)]

    @property
    def inversion_mask(self) -> list[bool]:
        """Per measurement event (in order): read the outcome inverted?"""
        return [m.inverted for m in self.measurements]

    def to_json(self) -> dict:
        ev = []
        for e in self.events:
            if isinstance(e, RotationEvent):
                d = {"kind": "rot", "basis": str(e.rotation.basis), "angle": str(e.rotation.angle)}
                if e.cond is not None:
                    d["cond"] = e.cond
            else:
                d = {"kind": "meas", "basis": str(e.basis), "bit": e.bit}
            ev.append(d)
        return {
            "n_qubits": self.n_qubits,
            "n_bits": self.n_bits,
            "events": ev,
            "frame": [{"basis": str(r.basis), "angle": str(r.angle)} for r in self.frame],
            "cond_frame": [{"at": c.at, "cond": c.cond, "basis": str(c.rotation.basis),
                            "angle": str(c.rotation.angle)} for c in self.cond_frame],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1)

    @classmethod
    def from_json(cls, doc: dict) -> PauliRotationProgram:
        def rot(d):
            return PauliRotation(PhasedPauli.parse(d["basis"]), Angle.parse(d["angle"]))

        events = []
        for e in doc["events"]:
            if e["kind"] == "rot":
                events.append(RotationEvent(rot(e), e.get("cond")))
            elif e["kind"] == "meas":
                events.append(Measurement(PhasedPauli.parse(e["basis"]), e["bit"]))
            else:
                raise ValueError(f"unknown event kind {e['kind']!r}")
        return cls(doc["n_qubits"], doc["n_bits"], events,
                   [rot(r) for r in doc.get("frame", [])],
                   [CondFrameEntry(c["at"], c["cond"], rot(c)) for c in doc.get("cond_frame", [])])


def _push_frame(frame: list[PauliRotation], r: PauliRotation) -> None:
    # compose adjacent rotations about the same basis
    if frame and frame[-1].basis == r.basis:
        merged = frame.pop().angle + r.angle
        if merged.k != 0:
            frame.append(PauliRotation(r.basis, merged))
    else:
        frame.append(r)


def compile(c: LogicalCircuit) -> PauliRotationProgram:  # noqa: A001 - public name
    """Sweep every Clifford to the end; keep pi/4 rotations and measurements."""
    n = c.n_qubits
    c = collapse_tlike(c)
    prog = PauliRotationProgram(n, c.n_bits)
    static = Frame(n)
    for ins in c:
        if ins.name == "measure":
            basis = static.conjugate(PhasedPauli.single(n, ins.qubits[0], "Z"))
            prog.events.append(Measurement(basis, ins.bit))
            continue
        for r in gate_to_rotations(ins, n):
            k = r.angle.k
            if k % 2:
                moved = PauliRotation(static.conjugate(r.basis), r.angle)
                prog.events.append(RotationEvent(moved, ins.cond))
            elif ins.cond is None:
                static.then(r)
                _push_frame(prog.frame, r)
            else:
                moved = PauliRotation(static.conjugate(r.basis), r.angle)
                prog.cond_frame.append(CondFrameEntry(len(prog.events), ins.cond, moved))
    return prog


def _apply_pauli(psi: np.ndarray, n: int, p: PhasedPauli) -> np.ndarray:
    out = psi.copy()
    for q, ch in enumerate(p.letters):
        if ch != "I":
            kernels.apply_1q(out, n, q, PhasedPauli(0, ch).matrix())
    return out * (1j ** p.phase)


def _apply_rotation(psi: np.ndarray, n: int, basis: PhasedPauli, theta: float) -> np.ndarray:
    return math.cos(theta / 2) * psi - 1j * math.sin(theta / 2) * _apply_pauli(psi, n, basis)


def execute(prog: PauliRotationProgram, magic_seed: int | None = None) -> dict[str, float]:
    """Exact outcome distribution of a compiled program with online frame tracking.

    With ``magic_seed`` set, each pi/4 rotation is injected as a magic-state
    rotation whose outcome is drawn at random: on the unlucky outcome the
    opposite rotation happens and the pi/2 fix-up goes into the frame instead
    of being executed. The distribution must not depend on those draws.
    """
    if prog.n_bits > MAX_BITS:
        raise BranchLimitExceeded(f"{prog.n_bits} classical bits exceeds the limit of {MAX_BITS}")
    n = prog.n_qubits
    rng = np.random.default_rng(magic_seed) if magic_seed is not None else None
    pending: dict[int, list[CondFrameEntry]] = {}
    for entry in prog.cond_frame:
        pending.setdefault(entry.at, []).append(entry)

    branches = [(initial_state(n), (0,) * prog.n_bits, Frame(n))]
    for idx, ev in enumerate(prog.events + [None]):
        for entry in pending.get(idx, []):
            for _, bits, dyn in branches:
                if bits[entry.cond]:
                    dyn.then(entry.rotation)
        if ev is None:
            break
        if isinstance(ev, RotationEvent):
            sign = 1
            if rng is not None:
                sign = 1 if rng.random() < 0.5 else -1
            nxt = []
            for psi, bits, dyn in branches:
                if ev.cond is not None and not bits[ev.cond]:
                    nxt.append((psi, bits, dyn))
                    continue
                q = dyn.conjugate(ev.rotation.basis)
                theta = ev.rotation.angle.radians
                psi = _apply_rotation(psi, n, q, sign * theta)
                if sign < 0:
                    # R(theta) = R(2 theta) R(-theta); the 2 theta = pi/2 part joins the frame
                    fix = PauliRotation(q, Angle.dyadic(2 * ev.rotation.angle.k))
                    dyn = dyn.copy()
                    dyn.before(fix)
                nxt.append((psi, bits, dyn))
            branches = nxt
            continue
        # measurement of the unsigned basis; the mask reinterprets the outcome
        nxt = []
        unsigned = ev.basis.unsigned()
        for psi, bits, dyn in branches:
            q = dyn.conjugate(unsigned)
            qpsi = _apply_pauli(psi, n, q)
            for raw in (0, 1):
                proj = 0.5 * (psi + (1 - 2 * raw) * qpsi)
                if np.vdot(proj, proj).real > PRUNE:
                    nb = list(bits)
                    nb[ev.bit] = raw ^ int(ev.inverted)
                    nxt.append((proj, tuple(nb), dyn.copy()))
        branches = nxt
    out: dict[str, float] = {}
    for psi, bits, _ in branches:
        key = "".join(map(str, bits))
        out[key] = out.get(key, 0.0) + float(np.vdot(psi, psi).real)
    return dict(sorted(out.items()))


def program_unitary(prog: PauliRotationProgram, include_frame: bool = True) -> np.ndarray:
    """Events (unconditioned rotations only) followed by the trailing frame, as a matrix."""
    if prog.measurements or prog.cond_frame or any(e.cond is not None for e in prog.rotations):
        raise ValueError("program_unitary needs a measurement-free, unconditioned program")
    dim = 1 << prog.n_qubits
    u = np.eye(dim, dtype=complex)
    seq = [e.rotation for e in prog.rotations] + (prog.frame if include_frame else [])
    for r in seq:
        u = r.matrix() @ u
    return u
