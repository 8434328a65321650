"""Randomized soundness suites for every circuit rewrite (at least 200 cases each, tolerance 1e-9)."""

import math
from functools import reduce

import numpy as np
from scipy.linalg import expm

from qpe_surgery import mover
from qpe_surgery.circuit import Instr, LogicalCircuit
from qpe_surgery.qpe import lower_two_qubit_rotations
from qpe_surgery.sim import exact_distribution, segment_unitary, tvd
from qpe_surgery.synthesis import collapse_tlike, synthesize_rz

from conftest import phase_aligned_error, random_clifford_t

CASES = 240
TOL = 1e-9
PAULI = {"I": np.eye(2), "X": np.array([[0, 1], [1, 0]]), "Y": np.array([[0, -1j], [1j, 0]]),
         "Z": np.diag([1.0, -1.0])}
GATE = {"h": np.array([[1, 1], [1, -1]]) / math.sqrt(2), "s": np.diag([1, 1j]), "sdg": np.diag([1, -1j]),
        "t": np.diag([1, np.exp(1j * math.pi / 4)]), "tdg": np.diag([1, np.exp(-1j * math.pi / 4)]),
        "x": PAULI["X"], "z": PAULI["Z"]}


def pauli_string(n, placed):
    """Dense operator with ``placed[q]`` on qubit q (qubit 0 most significant)."""
    return reduce(np.kron, [PAULI[placed.get(q, "I")] for q in range(n)])


def test_rotation_lowerings_match_exponentials(rng):
    n = 3
    for case in range(CASES):
        k = int(rng.integers(1, n + 1))
        qubits = tuple(int(q) for q in rng.choice(n, size=k, replace=False))
        letters = "".join(rng.choice(list("XYZ"), size=k))
        theta = float(rng.uniform(-2 * math.pi, 2 * math.pi))
        src = LogicalCircuit(n).append("prot", *qubits, angle=theta, pauli=letters)
        low = lower_two_qubit_rotations(src)
        assert all(i.name != "prot" for i in low)
        p = pauli_string(n, dict(zip(qubits, letters)))
        assert phase_aligned_error(segment_unitary(low), expm(-0.5j * theta * p)) < TOL, (case, qubits, letters)


def test_controlled_phase_lowering(rng):
    for _ in range(CASES):
        theta = float(rng.uniform(-2 * math.pi, 2 * math.pi))
        a, b = (int(q) for q in rng.choice(2, size=2, replace=False))
        low = lower_two_qubit_rotations(LogicalCircuit(2).append("cphase", a, b, angle=theta))
        assert phase_aligned_error(segment_unitary(low), np.diag([1, 1, 1, np.exp(1j * theta)])) < TOL


def test_tlike_collapse_preserves_unitaries(rng):
    diag = ["z", "s", "sdg", "t", "tdg"]
    for _ in range(CASES):
        c = LogicalCircuit(2)
        for _ in range(int(rng.integers(5, 40))):
            r = rng.random()
            if r < 0.6:
                c.append(str(rng.choice(diag)), int(rng.integers(2)))
            elif r < 0.8:
                c.append(str(rng.choice(["h", "x"])), int(rng.integers(2)))
            else:
                c.append("cx", *(int(q) for q in rng.permutation(2)))
        out = collapse_tlike(c)
        assert phase_aligned_error(segment_unitary(out), segment_unitary(c)) < TOL
        # no two diagonal blocks stay adjacent on the same qubit
        last = {}
        for ins in out:
            for q in ins.qubits:
                assert not (ins.name == "tlike" and last.get(q) == "tlike")
                last[q] = ins.name


def test_moves_preserve_distributions(rng):
    for case in range(CASES):
        n = int(rng.integers(1, 4))
        bits = int(rng.integers(1, 4))
        c = random_clifford_t(rng, n, int(rng.integers(10, 40)), n_bits=bits, measure_every=int(rng.integers(4, 12)))
        prog = mover.compile(c)
        assert all(ev.rotation.angle.k % 2 for ev in prog.rotations)
        ref = exact_distribution(c)
        assert tvd(mover.execute(prog), ref) < TOL, case
        assert max(abs(mover.execute(prog)[k] - ref.get(k, 0)) for k in mover.execute(prog)) < TOL


def test_synthesized_sequences_meet_accuracy(rng):
    checked = 0
    for _ in range(CASES):
        bits = int(rng.integers(1, 11))
        theta = float(rng.uniform(-math.pi, math.pi))
        seq = synthesize_rz(theta, bits)
        # independent recomputation from the gate names in circuit order
        u = reduce(lambda acc, g: GATE[g] @ acc, seq.gates, np.eye(2, dtype=complex))
        target = np.diag([np.exp(-0.5j * theta), np.exp(0.5j * theta)])
        dist = math.sqrt(max(0.0, 1 - abs(np.trace(u.conj().T @ target)) / 2))
        assert dist <= 2.0 ** -bits + TOL
        assert abs(dist - seq.error) < TOL and seq.t_count == sum(g in ("t", "tdg") for g in seq.gates)
        checked += 1
    assert checked >= 200
