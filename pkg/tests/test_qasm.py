from importlib import resources

import pytest
from hypothesis import given, settings, strategies as st

from qpe_surgery.circuit import LogicalCircuit
from qpe_surgery.qasm import HEADER, QasmError, UnsupportedGate, emit_qasm, normalize_qasm, parse_qasm
from qpe_surgery.synthesis import collapse_tlike

from conftest import h2_lowered, random_clifford_t

BUNDLED = resources.files("qpe_surgery.data").joinpath("h2_iterative_m3_b10.qasm").read_text()


def test_two_instruction_program():
    c = parse_qasm("h q[0]; measure q[0] -> c[0];")
    assert [i.name for i in c] == ["h", "measure"] and (c.n_qubits, c.n_bits) == (1, 1)


def test_empty_circuit_is_header_only():
    assert emit_qasm(LogicalCircuit(0)) == HEADER


def test_unsupported_gate_named():
    with pytest.raises(UnsupportedGate, match="cz") as e:
        parse_qasm('OPENQASM 2.0;\nqreg q[2];\n  cz q[0], q[1];')
    assert (e.value.line, e.value.col) == (3, 3)


@pytest.mark.parametrize("text,where", [
    ("qreg q[1];\nh q[1];", (2, 1)),
    ("qreg q[1];\nh q[0]", (2, 1)),
    ("qreg q[1];\nrz(pi/) q[0];", (2, 1)),
    ("qreg q[2];\ncx q[0];", (2, 1)),
    ("qreg q[1];\ncreg c[2];\nif (c==1) x q[0];", (3, 1)),
    ("OPENQASM 3.0;", (1, 1)),
    ("qreg q[1];\nreset q[0];", (2, 1)),
])
def test_errors_carry_position(text, where):
    with pytest.raises(QasmError) as e:
        parse_qasm(text)
    assert (e.value.line, e.value.col) == where
    assert f"line {where[0]}" in str(e.value)


def test_angles_and_conditions():
    c = parse_qasm("qreg q[1];\ncreg m[1];\nrz(-3*pi/4 + 0.5) q[0];\nmeasure q[0] -> m[0];\n"
                   "reset q[0];\nif (m==1) z q[0];")
    assert c.instrs[0].angle == pytest.approx(-3 * 3.141592653589793 / 4 + 0.5)
    assert (c.instrs[2].name, c.instrs[2].cond) == ("x", 0)
    assert (c.instrs[3].name, c.instrs[3].cond) == ("z", 0)


def test_bundled_fixture_roundtrip():
    c = parse_qasm(BUNDLED)
    assert normalize_qasm(emit_qasm(c)) == normalize_qasm(BUNDLED)
    assert parse_qasm(emit_qasm(c)).instrs == c.instrs


def test_lowered_emission_counts_match():
    low = h2_lowered(10)
    back = parse_qasm(emit_qasm(low))
    assert collapse_tlike(back).category_counts() == collapse_tlike(low).category_counts()
    assert normalize_qasm(emit_qasm(low)) == normalize_qasm(BUNDLED)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2 ** 32 - 1))
def test_parse_emit_identity(seed):
    import numpy as np
    c = random_clifford_t(np.random.default_rng(seed), 2, 25, n_bits=2, measure_every=9)
    assert parse_qasm(emit_qasm(c)).instrs == c.instrs


def test_free_angles_need_lowering():
    with pytest.raises(ValueError):
        emit_qasm(LogicalCircuit(2).append("prot", 0, 1, angle=0.3, pauli="ZZ"))
