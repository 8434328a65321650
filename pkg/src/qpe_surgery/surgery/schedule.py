"""Sequential lattice-surgery timelines and their round totals."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from ..circuit import LogicalCircuit
from ..mover import Measurement, PauliRotationProgram, RotationEvent
from ..synthesis import collapse_tlike
from .cost import _stages, exact_rounds
from .layout import LayoutSpec

# direct-method cost class of each Clifford+T instruction
_DIRECT_OP = {"x": "x", "y": "x", "z": "z", "h": "h", "cx": "cx", "s": "s", "sdg": "s",
              "t": "tlike", "tdg": "tlike", "measure": "measure"}


@dataclass(frozen=True)
class GateCounts:
    """Cost-relevant gate counts of a collapsed Clifford+T circuit."""

    h: int = 0
    cx: int = 0
    tlike: int = 0
    s: int = 0
    measure: int = 0
    x: int = 0
    z: int = 0

    def __post_init__(self):
        for k, v in self.__dict__.items():
            if v < 0:
                raise ValueError(f"negative count for {k}")

    @classmethod
    def h2_reference(cls) -> GateCounts:
        """Reference counts of a 10-bit H2 iterative circuit."""
        return cls(h=411, cx=34, tlike=386, s=12, measure=3, x=13, z=169)

    @classmethod
    def from_circuit(cls, c: LogicalCircuit) -> GateCounts:
        tally = dict.fromkeys(("h", "cx", "tlike", "s", "measure", "x", "z"), 0)
        for op in _direct_ops(collapse_tlike(c)):
            tally[op[0]] += 1
        return cls(**tally)


@dataclass(frozen=True)
class Step:
    op: str
    patches: tuple[str, ...]
    start: Fraction
    stages: tuple[tuple[str, Fraction], ...]
    label: str = ""
    # (patch, Pauli letter) pairs read out by a joint measurement
    observables: tuple[tuple[str, str], ...] = ()

    @cached_property
    def rounds(self) -> Fraction:
        return sum((r for _, r in self.stages), Fraction(0))


@dataclass
class SurgerySchedule:
    layout: LayoutSpec
    steps: list[Step] = field(default_factory=list)

    @property
    def exact_total(self) -> Fraction:
        return sum((s.rounds for s in self.steps), Fraction(0))

    @property
    def total_rounds(self) -> int:
        """Whole rounds; half-round stages pair up before rounding."""
        return math.ceil(self.exact_total)

    @property
    def peak_patches(self) -> int:
        return max((len(s.patches) for s in self.steps), default=0)

    def op_totals(self) -> dict[str, Fraction]:
        out: dict[str, Fraction] = {}
        for s in self.steps:
            out[s.op] = out.get(s.op, Fraction(0)) + s.rounds
        return out

    def to_json(self) -> dict:
        return {
            "method": self.layout.method,
            "distance": self.layout.d,
            "total_rounds": self.total_rounds,
            "exact_total": _num(self.exact_total),
            "peak_patches": self.peak_patches,
            "steps": [
                {"index": i, "op": s.op, "label": s.label, "patches": list(s.patches),
                 "observables": [list(o) for o in s.observables],
                 "start": _num(s.start), "rounds": _num(s.rounds),
                 "stages": [{"name": n, "rounds": _num(r)} for n, r in s.stages]}
                for i, s in enumerate(self.steps)
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1, sort_keys=True)


def _num(f: Fraction):
    return int(f) if f.denominator == 1 else float(f)


def _direct_ops(c: LogicalCircuit):
    """Yield (cost class, qubits, label) for each instruction of a collapsed circuit."""
    for ins in c:
        n = ins.name
        if n == "tlike":
            k = ins.k
            op = "tlike" if k % 2 else ("z" if k == 4 else "s")
        elif n in _DIRECT_OP:
            op = _DIRECT_OP[n]
        else:
            raise ValueError(f"{n} is not a Clifford+T gate; synthesize the circuit first")
        yield op, ins.qubits, str(ins)


def _append(sched: SurgerySchedule, op: str, patches, label: str, method: str, expected: bool,
            observables=()) -> None:
    d = sched.layout.d
    last = sched.steps[-1] if sched.steps else None
    start = last.start + last.rounds if last else Fraction(0)
    stages = _stages(op, d, method, expected)
    sched.steps.append(Step(op, tuple(patches), start, stages, label, tuple(observables)))


def _direct_patches(op: str, qubits) -> list[str]:
    names = [f"q{q}" for q in qubits]
    if op in ("x", "z", "measure"):
        return names
    if op == "cx":
        return names + ["route0", "route1"]
    return names + [f"route{qubits[0]}"]


def schedule_circuit(c: LogicalCircuit, layout: LayoutSpec, expected: bool = False) -> SurgerySchedule:
    """Direct-method timeline of a Clifford+T circuit (T-like runs collapsed first)."""
    if layout.method != "direct":
        raise ValueError("circuits are scheduled on the direct layout; compile to a program for 'moved'")
    if c.n_qubits > layout.data_slots:
        raise ValueError(f"layout hosts {layout.data_slots} data patches, circuit has {c.n_qubits} qubits")
    sched = SurgerySchedule(layout)
    for op, qubits, label in _direct_ops(collapse_tlike(c)):
        _append(sched, op, _direct_patches(op, qubits), label, "direct", expected)
    return sched


def schedule_counts(counts: GateCounts, layout: LayoutSpec, expected: bool = False) -> SurgerySchedule:
    """Timeline built from counts alone, in a fixed canonical order."""
    if layout.method != "direct":
        raise ValueError("gate counts are scheduled on the direct layout")
    sched = SurgerySchedule(layout)
    order = [("x", counts.x, (1,)), ("z", counts.z, (1,)), ("cx", counts.cx, (0, 1)), ("h", counts.h, (1,)),
             ("s", counts.s, (1,)), ("tlike", counts.tlike, (1,)), ("measure", counts.measure, (0,))]
    for op, n, qubits in order:
        patches = _direct_patches(op, qubits)
        for _ in range(n):
            _append(sched, op, patches, op, "direct", expected)
    return sched


def _observables(basis) -> list[tuple[str, str]]:
    return [(f"q{q}", basis.letters[q]) for q in basis.support]


def schedule_program(prog: PauliRotationProgram, layout: LayoutSpec) -> SurgerySchedule:
    """Moved-method timeline: one joint measurement per pi/4 rotation or final measurement."""
    if layout.method != "moved":
        raise ValueError("rotation programs are scheduled on the moved layout")
    if prog.n_qubits > layout.data_slots:
        raise ValueError(f"layout hosts {layout.data_slots} data patches, program has {prog.n_qubits} qubits")
    sched = SurgerySchedule(layout)
    for ev in prog.events:
        if isinstance(ev, RotationEvent):
            obs = _observables(ev.rotation.basis) + [("magic", "Z")]
            patches = [p for p, _ in obs] + ["route0", "route1"]
            _append(sched, "rotation", patches, str(ev.rotation), "moved", False, obs)
        elif isinstance(ev, Measurement):
            obs = _observables(ev.basis)
            patches = [p for p, _ in obs] + ["route0"]
            _append(sched, "pauli_measure", patches, f"M[{ev.basis}] -> c{ev.bit}", "moved", False, obs)
        else:
            raise TypeError(f"unexpected program event {ev!r}")
    return sched


def schedule_rotation_counts(rotations: int, measurements: int, layout: LayoutSpec) -> SurgerySchedule:
    if layout.method != "moved":
        raise ValueError("rotation counts are scheduled on the moved layout")
    sched = SurgerySchedule(layout)
    for _ in range(rotations):
        _append(sched, "rotation", ("q0", "q1", "magic"), "rotation", "moved", False)
    for _ in range(measurements):
        _append(sched, "pauli_measure", ("q0",), "pauli_measure", "moved", False)
    return sched


def schedule(obj, layout: LayoutSpec, expected: bool = False) -> SurgerySchedule:
    """Dispatch on a circuit, a rotation program, or gate counts."""
    if isinstance(obj, PauliRotationProgram):
        return schedule_program(obj, layout)
    if isinstance(obj, GateCounts):
        return schedule_counts(obj, layout, expected)
    if isinstance(obj, LogicalCircuit):
        return schedule_circuit(obj, layout, expected)
    raise TypeError(f"cannot schedule {type(obj).__name__}")


def direct_closed_form(counts: GateCounts, d: int, expected: bool = False) -> int:
    """Sum of per-class costs without building a timeline."""
    total = (counts.h * exact_rounds("h", d) + counts.cx * exact_rounds("cx", d)
             + counts.s * exact_rounds("s", d) + counts.tlike * exact_rounds("tlike", d, expected=expected)
             + counts.measure * exact_rounds("measure", d))
    return math.ceil(total)
