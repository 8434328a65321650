import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from qpe_surgery.pauli import Angle, PauliRotation, PhasedPauli, commutes, multiply

letters = st.text(alphabet="IXYZ", min_size=1, max_size=4)


@st.composite
def pauli_pairs(draw):
    a = draw(letters)
    b = draw(st.text(alphabet="IXYZ", min_size=len(a), max_size=len(a)))
    return PhasedPauli(draw(st.integers(0, 3)), a), PhasedPauli(draw(st.integers(0, 3)), b)


@given(pauli_pairs())
def test_product_matches_matrices(pair):
    a, b = pair
    assert np.allclose(multiply(a, b).matrix(), a.matrix() @ b.matrix())


@given(pauli_pairs())
def test_commutation_matches_matrices(pair):
    a, b = pair
    ma, mb = a.matrix(), b.matrix()
    assert commutes(a, b) == np.allclose(ma @ mb, mb @ ma)


def test_single_qubit_table():
    assert multiply(PhasedPauli.parse("X"), PhasedPauli.parse("Y")) == PhasedPauli.parse("iZ")
    assert multiply(PhasedPauli.parse("Y"), PhasedPauli.parse("X")) == PhasedPauli.parse("-iZ")
    assert multiply(PhasedPauli.parse("Z"), PhasedPauli.parse("Z")) == PhasedPauli.parse("I")


def test_parse_and_format_roundtrip():
    for text in ("+XYZ", "-iZI", "+iY", "-X"):
        assert str(PhasedPauli.parse(text)) == text


def test_length_mismatch_rejected():
    with pytest.raises(ValueError):
        multiply(PhasedPauli.parse("X"), PhasedPauli.parse("XX"))
    with pytest.raises(ValueError):
        PhasedPauli.parse("XQ")


def test_sign_of_non_hermitian_rejected():
    with pytest.raises(ValueError):
        PhasedPauli.parse("iX").sign


def test_angle_arithmetic_mod_eight():
    assert (Angle.dyadic(7) + Angle.dyadic(3)).k == 2
    assert (-Angle.dyadic(1)).k == 7
    assert Angle.dyadic(4).radians == pytest.approx(math.pi)
    assert Angle.parse("-pi/4").k == 7
    assert Angle.parse("0.25").rad == 0.25


def test_rotation_definition():
    r = PauliRotation.of("Z", 2)  # pi/2 about Z
    theta = math.pi / 2
    expect = np.diag([np.exp(-0.5j * theta), np.exp(0.5j * theta)])
    assert np.allclose(r.matrix(), expect)


def test_negative_basis_folds_into_angle():
    r = PauliRotation(PhasedPauli.parse("-X"), Angle.dyadic(1))
    assert r.basis == PhasedPauli.parse("X") and r.angle.k == 7
    with pytest.raises(ValueError):
        PauliRotation(PhasedPauli.parse("iX"), Angle.dyadic(1))


@given(letters, st.floats(-4, 4, allow_nan=False))
def test_rotation_is_unitary(word, theta):
    m = PauliRotation(PhasedPauli(0, word), Angle.free(theta)).matrix()
    assert np.allclose(m.conj().T @ m, np.eye(m.shape[0]))
