import math

import numpy as np
import pytest

from qpe_surgery.circuit import LogicalCircuit
from qpe_surgery.sim import (BranchLimitExceeded, MAX_BITS, distribution_json, exact_distribution,
                             iterative_qpe_oracle, sample, segment_unitary, textbook_qpe_oracle, tvd)


def test_bell_pair():
    c = LogicalCircuit(2, 2).append("h", 0).append("cx", 0, 1)
    c.append("measure", 0, bit=0).append("measure", 1, bit=1)
    d = exact_distribution(c)
    assert d == pytest.approx({"00": 0.5, "11": 0.5})


def test_mid_circuit_measurement_and_condition():
    # measure |+>, then flip qubit 1 when the outcome is 1: outcomes always agree
    c = LogicalCircuit(2, 2).append("h", 0).append("measure", 0, bit=0)
    c.append("x", 1, cond=0).append("measure", 1, bit=1)
    assert exact_distribution(c) == pytest.approx({"00": 0.5, "11": 0.5})


def test_bit_order_is_position():
    c = LogicalCircuit(1, 2).append("x", 0).append("measure", 0, bit=1)
    c.append("x", 0).append("measure", 0, bit=0)
    assert exact_distribution(c) == {"01": 1.0}


def test_tvd_rules():
    assert tvd({"0": 1.0}, {"1": 1.0}) == 1.0
    assert tvd({"01": 0.5, "10": 0.5}, {"01": 0.5, "10": 0.5}) == 0
    with pytest.raises(ValueError):
        tvd({"0": 1.0}, {"00": 1.0})


def test_segment_unitary_rejects_measurement():
    c = LogicalCircuit(1, 1).append("h", 0).append("measure", 0, bit=0)
    with pytest.raises(ValueError):
        segment_unitary(c)
    assert np.allclose(segment_unitary(c, 0, 1), np.array([[1, 1], [1, -1]]) / math.sqrt(2))


def test_branch_limit():
    with pytest.raises(BranchLimitExceeded):
        exact_distribution(LogicalCircuit(1, MAX_BITS + 1))


def test_sampling_is_seeded():
    d = {"0": 0.3, "1": 0.7}
    assert sample(d, 100, seed=4) == sample(d, 100, seed=4)
    assert sum(sample(d, 100, seed=4).values()) == 100


def test_oracles_are_distributions():
    for m in (1, 3, 5):
        for oracle in (iterative_qpe_oracle, textbook_qpe_oracle):
            d = oracle([0.1, 0.6], [0.25, 0.75], m)
            assert sum(d.values()) == pytest.approx(1)


def test_exact_phase_is_deterministic():
    # phase 0.101 in binary read with bit 0 least significant -> "101"
    phi = 0.5 + 0.125
    for oracle in (iterative_qpe_oracle, textbook_qpe_oracle):
        d = oracle([phi], [1.0], 3)
        assert d["101"] == pytest.approx(1)


def test_distribution_json_is_stable():
    assert distribution_json({"1": 0.5, "0": 0.5}) == distribution_json({"0": 0.5, "1": 0.5})
