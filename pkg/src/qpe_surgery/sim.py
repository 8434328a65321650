"""Dense statevector simulation with mid-circuit measurement and classical control.

Distributions are computed exactly by following every measurement branch.
Qubit 0 is the most significant bit of the state index; outcome strings put
classical bit i at string position i.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .circuit import Instr, LogicalCircuit

PRUNE = 1e-14
MAX_BITS = 20


class BranchLimitExceeded(ValueError):
    pass


def apply_instr(psi: np.ndarray, n: int, ins: Instr) -> np.ndarray:
    """Apply a unitary instruction in place (ignores its condition)."""
    if ins.name == "cx":
        return kernels.apply_cx(psi, n, ins.qubits[0], ins.qubits[1])
    if len(ins.qubits) == 1:
        return kernels.apply_1q(psi, n, ins.qubits[0], ins.matrix())
    u = ins.matrix()
    qs = list(ins.qubits)
    r = len(qs)
    t = psi.reshape([2] * n)
    t = np.tensordot(u.reshape([2] * (2 * r)), t, axes=(list(range(r, 2 * r)), qs))
    t = np.moveaxis(t, list(range(r)), qs)
    psi[:] = t.reshape(-1)
    return psi


def initial_state(n: int) -> np.ndarray:
    psi = np.zeros(1 << n, dtype=complex)
    psi[0] = 1.0
    return psi


def _project(psi: np.ndarray, n: int, q: int, outcome: int) -> np.ndarray:
    v = psi.reshape(1 << q, 2, 1 << (n - 1 - q)).copy()
    v[:, 1 - outcome, :] = 0
    return v.reshape(-1)


def _run_branches(c: LogicalCircuit, psi0: np.ndarray | None = None):
    if c.n_bits > MAX_BITS:
        raise BranchLimitExceeded(f"{c.n_bits} classical bits exceeds the limit of {MAX_BITS}")
    n = c.n_qubits
    psi = initial_state(n) if psi0 is None else np.array(psi0, dtype=complex)
    branches = [(psi, (0,) * c.n_bits)]
    for ins in c:
        if ins.name == "measure":
            q, b = ins.qubits[0], ins.bit
            nxt = []
            for st, bits in branches:
                for outcome in (0, 1):
                    proj = _project(st, n, q, outcome)
                    if np.vdot(proj, proj).real > PRUNE:
                        nb = list(bits)
                        nb[b] = outcome
                        nxt.append((proj, tuple(nb)))
            branches = nxt
            continue
        for st, bits in branches:
            if ins.cond is None or bits[ins.cond]:
                apply_instr(st, n, ins)
    return branches


def exact_distribution(c: LogicalCircuit, psi0: np.ndarray | None = None) -> dict[str, float]:
    """Exact probability of every classical bit string."""
    out: dict[str, float] = {}
    for st, bits in _run_branches(c, psi0):
        key = "".join(map(str, bits))
        out[key] = out.get(key, 0.0) + float(np.vdot(st, st).real)
    return dict(sorted(out.items()))


def tvd(a: dict[str, float], b: dict[str, float]) -> float:
    widths = {len(k) for k in a} | {len(k) for k in b}
    if len(widths) > 1:
        raise ValueError(f"bit-width mismatch: {sorted(widths)}")
    keys = set(a) | set(b)
    return 0.5 * sum(abs(a.get(k, 0.0) - b.get(k, 0.0)) for k in keys)


def segment_unitary(c: LogicalCircuit, start: int = 0, stop: int | None = None) -> np.ndarray:
    """Matrix of instructions ``start:stop``; no measurement or condition allowed."""
    instrs = c.instrs[start:stop]
    for ins in instrs:
        if ins.name == "measure":
            raise ValueError("segment contains a measurement")
        if ins.cond is not None:
            raise ValueError("segment contains a classically conditioned gate")
    n = c.n_qubits
    cols = []
    for j in range(1 << n):
        psi = np.zeros(1 << n, dtype=complex)
        psi[j] = 1.0
        for ins in instrs:
            apply_instr(psi, n, ins)
        cols.append(psi)
    return np.array(cols).T


def unitary_distance(u: np.ndarray, v: np.ndarray) -> float:
    """Phase-invariant distance ``sqrt(1 - |tr(u^dagger v)|/dim)`` for any dimension."""
    d = u.shape[0]
    return math.sqrt(max(0.0, 1.0 - abs(np.trace(u.conj().T @ v)) / d))


def sample(dist: dict[str, float], shots: int, seed: int | None = None) -> dict[str, int]:
    rng = np.random.default_rng(seed)
    keys = sorted(dist)
    p = np.array([dist[k] for k in keys])
    counts = rng.multinomial(shots, p / p.sum())
    return {k: int(v) for k, v in zip(keys, counts) if v}


def distribution_json(dist: dict[str, float]) -> str:
    return json.dumps({k: float(f"{v:.12g}") for k, v in dist.items()}, indent=1, sort_keys=True)


@dataclass
class ReferenceSpectrum:
    """Eigen-decomposition of an evolution operator with an input state's overlaps.

    ``phases[j]`` is the eigenphase of the controlled unitary in turns, in [0, 1).
    """

    energies: np.ndarray
    vectors: np.ndarray
    overlaps: np.ndarray
    phases: np.ndarray

    @property
    def weights(self) -> np.ndarray:
        return np.abs(self.overlaps) ** 2


def reference_spectrum(h_matrix: np.ndarray, psi: np.ndarray, t: float) -> ReferenceSpectrum:
    """Spectrum of ``H`` with phases of U = exp(iHt)."""
    vals, vecs = np.linalg.eigh(h_matrix)
    nu = vecs.conj().T @ psi
    phases = np.mod(vals * t / (2 * math.pi), 1.0)
    return ReferenceSpectrum(vals, vecs, nu, phases)


def unitary_spectrum(v: np.ndarray, psi: np.ndarray, power: float = 2.0) -> ReferenceSpectrum:
    """Spectrum of a unitary; phases are those of ``v**power`` (directional control doubles)."""
    vals, vecs = np.linalg.eig(v)
    # eig of a unitary with distinct eigenvalues gives orthogonal vectors; re-orthonormalize
    q, _ = np.linalg.qr(vecs)
    angles = np.angle(np.diag(q.conj().T @ v @ q))
    nu = q.conj().T @ psi
    phases = np.mod(power * angles / (2 * math.pi), 1.0)
    return ReferenceSpectrum(angles, q, nu, phases)


def bits_value(s: str) -> float:
    """Phase estimate encoded by an outcome string (bit i has weight 2**(i - m))."""
    m = len(s)
    return sum(int(b) * 2.0 ** (i - m) for i, b in enumerate(s))


def iterative_qpe_oracle(phases, weights, m: int) -> dict[str, float]:
    """Closed-form iterative QPE statistics for a mixture of eigenphases."""
    out: dict[str, float] = {}
    for idx in range(1 << m):
        bits = [(idx >> i) & 1 for i in range(m)]
        total = 0.0
        for phi, w in zip(phases, weights):
            p = w
            for k in range(m, 0, -1):
                # omega_k = -pi * 0.x_{k+1}..x_m, x_{k+j} is bit m-k-j
                omega = -math.pi * sum(bits[m - k - j] * 2.0 ** -j for j in range(1, m - k + 1))
                beta = 2 * math.pi * 2 ** (k - 1) * phi + omega
                x = bits[m - k]
                p *= math.sin(beta / 2) ** 2 if x else math.cos(beta / 2) ** 2
            total += p
        out["".join(map(str, bits))] = total
    return out


def textbook_qpe_oracle(phases, weights, m: int) -> dict[str, float]:
    out: dict[str, float] = {}
    big = 1 << m
    ys = np.arange(big)
    for idx in range(big):
        s = "".join(str((idx >> i) & 1) for i in range(m))
        p = 0.0
        for phi, w in zip(phases, weights):
            amp = np.exp(2j * math.pi * ys * (phi - idx / big)).sum() / big
            p += w * abs(amp) ** 2
        out[s] = p
    return out
