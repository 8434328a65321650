"""Single-qubit Clifford+T synthesis, circuit lowering and T-like collapse."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

import numpy as np

from ..circuit import DIAGONAL_K, Instr, LogicalCircuit
from . import search as _search
from .sequence import DIAG_SPELLING, block_form, sequence_matrix, simplify, t_count

DEFAULT_MAX_T = 40
DYADIC_TOL = 1e-12


class SynthesisBudgetExceeded(RuntimeError):
    """No sequence within the T-count budget reaches the requested accuracy."""


@dataclass(frozen=True)
class CliffordTSequence:
    gates: tuple[str, ...]  # circuit order
    error: float
    t_count: int

    def matrix(self) -> np.ndarray:
        return sequence_matrix(self.gates)

    def __str__(self) -> str:
        return " ".join(g.upper().replace("DG", "†") for g in self.gates) or "I"


def _check_unitary(u: np.ndarray) -> None:
    u = np.asarray(u)
    if u.shape != (2, 2) or not np.allclose(u.conj().T @ u, np.eye(2), atol=1e-10):
        raise ValueError("phase_invariant_distance needs 2x2 unitaries")


def phase_invariant_distance(u, v) -> float:
    """``sqrt(1 - |tr(u^dagger v)| / 2)``; zero iff u and v differ by a global phase."""
    _check_unitary(u)
    _check_unitary(v)
    return math.sqrt(max(0.0, 1.0 - abs(np.trace(np.conj(np.transpose(u)) @ v)) / 2))


def rz_matrix(theta: float) -> np.ndarray:
    return np.diag([np.exp(-0.5j * theta), np.exp(0.5j * theta)])


def dyadic_k(theta: float) -> int | None:
    """k with theta = k*pi/4 (mod 2*pi), or None."""
    x = theta / (math.pi / 4)
    k = round(x)
    if abs(x - k) * math.pi / 4 <= DYADIC_TOL:
        return k % 8
    return None


def angle_key(theta: float) -> str:
    return f"{theta:.12f}"


def load_import_file(path) -> dict[str, tuple[str, ...]]:
    """Read ``{"<angle>": "h t s ..."}``; gate names are case-insensitive."""
    doc = json.loads(Path(path).read_text())
    out = {}
    for key, text in doc.items():
        gates = tuple(g.lower().replace("†", "dg") for g in text.replace(",", " ").split())
        bad = [g for g in gates if g not in ("h", "s", "sdg", "t", "tdg", "x", "z")]
        if bad:
            raise ValueError(f"import file {path}: unsupported gates {bad} for angle {key}")
        out[angle_key(float(key))] = gates
    return out


@lru_cache(maxsize=4096)
def _synth_cached(theta: float, bits: int, max_t: int) -> CliffordTSequence:
    eps = 2.0 ** -bits
    target = rz_matrix(theta)
    k = dyadic_k(theta)
    if k is not None:
        gates = DIAG_SPELLING[k]
        return CliffordTSequence(gates, 0.0, t_count(gates))
    found = _search.search(target, eps, max_t)
    if found is None:
        raise SynthesisBudgetExceeded(
            f"no sequence with T-count <= {min(max_t, _search.max_reachable_t())} "
            f"reaches eps=2^-{bits} for theta={theta!r}; raise max_t or supply an import file")
    gates, dist = found
    return CliffordTSequence(gates, dist, t_count(gates))


def synthesize_rz(theta: float, bits: int, max_t: int = DEFAULT_MAX_T, imports: dict | None = None) -> CliffordTSequence:
    """Clifford+T sequence within 2**-bits of RZ(theta), up to global phase.

    ``imports`` maps :func:`angle_key` strings to externally synthesized
    sequences; an entry is used only if it meets the accuracy target.
    """
    if bits < 1:
        raise ValueError("bits must be >= 1")
    if imports:
        gates = imports.get(angle_key(theta))
        if gates is not None:
            dist = phase_invariant_distance(sequence_matrix(gates), rz_matrix(theta))
            if dist <= 2.0 ** -bits:
                return CliffordTSequence(tuple(gates), dist, t_count(gates))
    return _synth_cached(float(theta), int(bits), int(max_t))


def lower_circuit(c: LogicalCircuit, bits: int, max_t: int = DEFAULT_MAX_T, imports: dict | None = None) -> LogicalCircuit:
    """Replace rz/phase gates by Clifford+T sequences.

    Two-qubit rotations and controlled phases must already be lowered.
    """
    out = c.copy_empty()
    for ins in c:
        if ins.name in ("rz", "phase"):
            seq = synthesize_rz(ins.angle, bits, max_t, imports)
            out.extend(Instr(g, ins.qubits, cond=ins.cond) for g in seq.gates)
        elif ins.name in ("prot", "cphase"):
            raise ValueError(f"lower two-qubit rotations before synthesis: {ins}")
        else:
            out.instrs.append(ins)
    return out


def _diag_k(ins: Instr) -> int | None:
    if ins.cond is not None:
        return None
    if ins.name in DIAGONAL_K:
        return DIAGONAL_K[ins.name]
    if ins.name == "tlike":
        return ins.k
    return None


def collapse_tlike(c: LogicalCircuit) -> LogicalCircuit:
    """Rewrite maximal same-qubit runs of unconditioned Z/S/S^dagger/T/T^dagger.

    A run with an odd exponent becomes one ``tlike`` block; an even one becomes
    a pure Clifford ``tlike`` block (Z^a S^b); an identity run disappears.
    Runs end at any other gate touching the qubit.
    """
    pending: dict[int, int] = {}
    out = c.copy_empty()

    def flush(q):
        k = pending.pop(q, None)
        if k is not None and k % 8:
            out.instrs.append(Instr("tlike", (q,), k=k))

    for ins in c:
        k = _diag_k(ins)
        if k is not None:
            q = ins.qubits[0]
            pending[q] = pending.get(q, 0) + k
            continue
        for q in ins.qubits:
            flush(q)
        out.instrs.append(ins)
    for q in sorted(pending):
        flush(q)
    return out


def expand_tlike(c: LogicalCircuit) -> LogicalCircuit:
    """Spell every ``tlike`` block back into named gates."""
    out = c.copy_empty()
    for ins in c:
        if ins.name == "tlike":
            out.extend(Instr(g, ins.qubits, cond=ins.cond) for g in DIAG_SPELLING[ins.k])
        else:
            out.instrs.append(ins)
    return out


__all__ = [
    "CliffordTSequence", "SynthesisBudgetExceeded", "phase_invariant_distance", "synthesize_rz",
    "lower_circuit", "collapse_tlike", "expand_tlike", "load_import_file", "rz_matrix", "dyadic_k",
    "block_form", "simplify",
]
