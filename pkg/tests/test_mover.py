import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qpe_surgery import mover
from qpe_surgery.circuit import Instr, LogicalCircuit
from qpe_surgery.mover import (Frame, Measurement, PauliRotationProgram, conjugate_by_rotation, gate_to_rotations,
                               move_past_measurement, move_past_rotation, program_unitary, split_tlike)
from qpe_surgery.pauli import PauliRotation, PhasedPauli
from qpe_surgery.sim import exact_distribution, segment_unitary, tvd

from conftest import h2_lowered, phase_aligned_error, random_clifford_t

paulis = st.text(alphabet="IXYZ", min_size=2, max_size=2).filter(lambda s: s != "II")


@given(paulis, paulis, st.sampled_from([2, 4, 6]))
def test_conjugation_rule_matches_matrices(p, r, k):
    rot = PauliRotation.of(r, k)
    got = conjugate_by_rotation(PhasedPauli.parse(p), rot)
    u = rot.matrix()
    assert np.allclose(got.matrix(), u.conj().T @ PhasedPauli.parse(p).matrix() @ u)


@given(paulis, paulis, st.sampled_from([2, 4, 6]), st.sampled_from([1, 7]))
def test_move_past_rotation_preserves_product(c, r, kc, kr):
    cr, rr = PauliRotation.of(c, kc), PauliRotation.of(r, kr)
    moved = move_past_rotation(cr, rr)
    # circuit [c, r] is the operator r @ c
    assert phase_aligned_error(rr.matrix() @ cr.matrix(), cr.matrix() @ moved.matrix()) < 1e-12


def test_move_past_measurement_flips_sign():
    m = move_past_measurement(PauliRotation.of("X", 4), Measurement(PhasedPauli.parse("Z"), 0))
    assert m.inverted and m.basis == PhasedPauli.parse("-Z")


def test_pi_half_x_past_pi_quarter_z():
    # moving a pi/2 X rotation past a pi/4 Z rotation turns it into a Y rotation
    moved = move_past_rotation(PauliRotation.of("X", 2), PauliRotation.of("Z", 1))
    assert moved.basis.letters == "Y"


@pytest.mark.parametrize("k", range(8))
def test_split_tlike(k):
    sign, rest = split_tlike(k)
    assert (sign + rest) % 8 == k and rest % 2 == 0
    assert sign in ((0,) if k % 2 == 0 else (1, -1))


@pytest.mark.parametrize("name", ["x", "z", "h", "s", "sdg", "t", "tdg"])
def test_gate_rotations_match_gate(name):
    ins = Instr(name, (0,))
    u = np.eye(2, dtype=complex)
    for r in gate_to_rotations(ins, 1):
        u = r.matrix() @ u
    assert phase_aligned_error(u, ins.matrix()) < 1e-12


def test_cx_rotations_match_gate():
    u = np.eye(4, dtype=complex)
    for r in gate_to_rotations(Instr("cx", (0, 1)), 2):
        u = r.matrix() @ u
    assert phase_aligned_error(u, Instr("cx", (0, 1)).matrix()) < 1e-12


def test_frame_then_and_before():
    f = Frame(1)
    f.then(PauliRotation.of("Z", 2))
    assert f.conjugate(PhasedPauli.parse("X")) in (PhasedPauli.parse("Y"), PhasedPauli.parse("-Y"))
    g = Frame(1)
    g.before(PauliRotation.of("Z", 2))
    assert g.conjugate(PhasedPauli.parse("X")) == f.conjugate(PhasedPauli.parse("X"))
    assert not f.is_identity() and Frame(2).is_identity()


def test_unitary_programs_match(rng):
    for _ in range(20):
        c = random_clifford_t(rng, 2, 30)
        prog = mover.compile(c)
        assert all(r.rotation.angle.k % 2 for r in prog.rotations)
        assert phase_aligned_error(program_unitary(prog), segment_unitary(c)) < 1e-9


def test_h2_program_shape():
    prog = mover.compile(h2_lowered(10))
    assert len(prog.measurements) == 3
    assert len(prog.rotations) == h2_lowered(10).category_counts()["t"]
    assert len(prog.inversion_mask) == 3


def test_h2_program_distribution():
    low = h2_lowered(5)
    prog = mover.compile(low)
    ref = exact_distribution(low)
    assert tvd(mover.execute(prog), ref) < 1e-9
    assert tvd(mover.execute(prog, magic_seed=3), ref) < 1e-9


def test_json_roundtrip(rng):
    c = random_clifford_t(rng, 2, 40, n_bits=2, measure_every=15)
    prog = mover.compile(c)
    back = PauliRotationProgram.from_json(prog.to_json())
    assert back.to_json() == prog.to_json()
    assert tvd(mover.execute(back), exact_distribution(c)) < 1e-9


def test_rejects_free_angles():
    with pytest.raises(mover.NotCliffordT):
        mover.compile(LogicalCircuit(1).append("rz", 0, angle=0.1))
