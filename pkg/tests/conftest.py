import functools
import math

import numpy as np
import pytest

from qpe_surgery.circuit import Instr, LogicalCircuit
from qpe_surgery.qpe import QPESpec, build_qpe, load_bundled, lower_two_qubit_rotations
from qpe_surgery.synthesis import lower_circuit

ONE_Q_CLIFFORD_T = ("x", "z", "h", "s", "sdg", "t", "tdg")


def phase_aligned_error(u, v) -> float:
    """Largest entry of |u - e^{i phi} v| with phi aligning the traces."""
    tr = np.trace(np.conj(u).T @ v)
    phase = tr / abs(tr) if abs(tr) > 1e-12 else 1.0
    return float(np.max(np.abs(u * phase - v)))


def random_clifford_t(rng, n_qubits: int, length: int, n_bits: int = 0, measure_every: int = 0) -> LogicalCircuit:
    """Random Clifford+T circuit, optionally with mid-circuit measurements and conditioned gates."""
    c = LogicalCircuit(n_qubits, n_bits)
    written = []
    for i in range(length):
        if measure_every and i and i % measure_every == 0 and len(written) < n_bits:
            q = int(rng.integers(n_qubits))
            c.append("measure", q, bit=len(written))
            written.append(len(written))
            continue
        cond = None
        if written and rng.random() < 0.25:
            cond = int(rng.choice(written))
        if n_qubits > 1 and rng.random() < 0.3:
            a, b = rng.choice(n_qubits, size=2, replace=False)
            c.append("cx", int(a), int(b), cond=cond)
        else:
            g = str(rng.choice(ONE_Q_CLIFFORD_T))
            c.append(g, int(rng.integers(n_qubits)), cond=cond)
    for b in range(len(written), n_bits):
        c.append("measure", b % n_qubits, bit=b)
    return c


@functools.lru_cache(maxsize=None)
def h2_circuit(qpe_bits=3, mode="iterative", allow_fine=False):
    h, prep = load_bundled()
    return build_qpe(h, QPESpec(mode, qpe_bits, prep=tuple(prep), allow_fine_phases=allow_fine))


@functools.lru_cache(maxsize=None)
def h2_lowered(synth_bits: int, qpe_bits: int = 3):
    return lower_circuit(lower_two_qubit_rotations(h2_circuit(qpe_bits)), synth_bits)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


__all__ = ["phase_aligned_error", "random_clifford_t", "h2_circuit", "h2_lowered", "math", "Instr"]


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
