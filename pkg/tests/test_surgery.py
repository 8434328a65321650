import json
import math
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from qpe_surgery.circuit import LogicalCircuit
from qpe_surgery.mover import Measurement, PauliRotationProgram, RotationEvent
from qpe_surgery.pauli import PauliRotation, PhasedPauli
from qpe_surgery.surgery import (GateCounts, IllegalOperation, LayoutSpec, consumption_interval, exact_rounds,
                                 extra_connectivity, op_rounds, op_stages, physical_qubits, render_layout,
                                 schedule, schedule_counts, schedule_rotation_counts, storage_qubits_per_factory)
from qpe_surgery.surgery.schedule import direct_closed_form

FIXTURES = Path(__file__).parent / "fixtures"
dist = st.integers(3, 40)


def yxz_step():
    prog = PauliRotationProgram(2, 0, [RotationEvent(PauliRotation.of("YX", 1))])
    lay = LayoutSpec("moved", 3)
    return lay, schedule(prog, lay)


@pytest.mark.parametrize("op,d,method,expect", [
    ("h", 12, "direct", 40),
    ("tlike", 6, "direct", 19),
    ("rotation", 11, "moved", 12),
    ("cx", 5, "direct", 19),
    ("s", 5, "direct", 11),
    ("s", 6, "direct", 12),
    ("tlike_plain", 7, "direct", 8),
    ("measure", 9, "direct", 1),
    ("x", 9, "direct", 0),
    ("yprep", 5, "direct", 5),
    ("pauli_measure", 7, "moved", 7),
])
def test_op_rounds_examples(op, d, method, expect):
    assert op_rounds(op, d, method) == expect


@given(dist)
def test_headline_formulas(d):
    assert op_rounds("cx", d) == 3 * d + 4
    assert op_rounds("h", d) == 3 * d + 4
    assert op_rounds("s", d) == math.ceil(3 * d / 2) + 3
    assert op_rounds("tlike", d) == math.ceil(5 * d / 2) + 4
    assert op_rounds("tlike_plain", d) == d + 1
    assert op_rounds("yprep", d) == math.ceil(d / 2) + 2
    assert op_rounds("rotation", d, "moved") == d + 1
    assert op_rounds("pauli_measure", d, "moved") == d


@given(dist)
def test_stage_breakdowns(d):
    assert [v for _, v in op_stages("cx", d)] == [1, d + 1, d + 1, d, 1]
    assert [v for _, v in op_stages("h", d)] == [0, d, d, 1, d, 3]
    s = [v for _, v in op_stages("s", d)]
    assert s == [Fraction(d, 2) + 2, d, 1] and sum(s) == Fraction(3 * d, 2) + 3
    t = [v for _, v in op_stages("tlike", d)]
    assert t[:2] == [d, 1] and sum(t) == Fraction(5 * d, 2) + 4
    assert exact_rounds("tlike", d, expected=True) == d + 1 + (Fraction(3 * d, 2) + 3) / 2


def test_illegal_pairs():
    with pytest.raises(IllegalOperation):
        op_rounds("rotation", 5, "direct")
    with pytest.raises(IllegalOperation):
        op_rounds("cx", 5, "moved")
    with pytest.raises(IllegalOperation):
        op_rounds("teleport", 5)


@pytest.mark.parametrize("method,d,expect", [("direct", 12, 1352), ("moved", 11, 1776), ("moved", 5, 456),
                                             ("direct", 6, 392)])
def test_physical_qubits(method, d, expect):
    assert physical_qubits(LayoutSpec(method, d)) == expect


@given(dist)
def test_layout_geometry(d):
    direct, moved = LayoutSpec("direct", d), LayoutSpec("moved", d)
    assert (direct.width, direct.height) == (2 * d + 2, 2 * d + 2)
    assert (moved.width, moved.height) == (3 * d + 4, 2 * d + 2)
    assert direct.patch_count == 4 and moved.patch_count == 6
    for lay in (direct, moved):
        cells = lay.cells()
        assert sum(c.w * c.h for c in cells) == lay.width * lay.height
        assert len({c.name for c in cells}) == len(cells)
    assert storage_qubits_per_factory(d) == 2 * d * d


@pytest.mark.parametrize("method,d,expect", [("direct", 12, 53), ("direct", 6, 29), ("moved", 11, 12),
                                             ("moved", 5, 6)])
def test_consumption_interval(method, d, expect):
    assert consumption_interval(LayoutSpec(method, d)) == expect


@pytest.mark.parametrize("d,expect", [(11, 44), (5, 20), (3, 12)])
def test_extra_connectivity(d, expect):
    assert extra_connectivity(LayoutSpec("moved", d)) == expect


def test_extra_connectivity_direct_errors():
    with pytest.raises(ValueError):
        extra_connectivity(LayoutSpec("direct", 5))


def test_bad_layouts():
    with pytest.raises(ValueError):
        LayoutSpec("direct", 2)
    with pytest.raises(ValueError):
        LayoutSpec("sideways", 5)


@pytest.mark.parametrize("d,expect", [(12, 31179), (6, 17271), (5, 2318 * 5 + 3363)])
def test_direct_reference_rounds(d, expect):
    assert schedule_counts(GateCounts.h2_reference(), LayoutSpec("direct", d)).total_rounds == expect


def test_moved_reference_rounds():
    assert schedule_rotation_counts(386, 3, LayoutSpec("moved", 5)).total_rounds == 2331
    assert schedule_rotation_counts(386, 3, LayoutSpec("moved", 11)).total_rounds == 4665


@given(st.integers(3, 25))
def test_closed_forms(d):
    g = GateCounts.h2_reference()
    assert schedule_counts(g, LayoutSpec("direct", d)).total_rounds == 2318 * d + 3363
    assert direct_closed_form(g, d) == 2318 * d + 3363
    assert schedule_rotation_counts(386, 3, LayoutSpec("moved", d)).total_rounds == 389 * d + 386


def test_schedule_step_invariants():
    s = schedule_counts(GateCounts(h=2, cx=1, s=1, tlike=1, measure=1, x=1), LayoutSpec("direct", 7))
    for step in s.steps:
        assert sum(v for _, v in step.stages) == step.rounds
    starts = [st.start for st in s.steps]
    assert starts == sorted(starts) and s.exact_total == sum(st.rounds for st in s.steps)
    assert s.peak_patches == 4


def test_circuit_schedule_folds_diagonals():
    c = LogicalCircuit(2, 1)
    c.append("h", 0).append("s", 0).append("t", 0).append("cx", 0, 1).append("x", 1).append("z", 1)
    c.append("s", 1).append("measure", 1, bit=0)
    s = schedule(c, LayoutSpec("direct", 4))
    ops = [st.op for st in s.steps]
    # S then T on one qubit collapse into a single T-like block; Z then S collapse into one S-type block
    assert ops == ["h", "tlike", "cx", "x", "s", "measure"]
    assert s.total_rounds == 16 + 14 + 16 + 0 + 9 + 1


def test_schedule_mismatches():
    with pytest.raises(ValueError):
        schedule(LogicalCircuit(1).append("h", 0), LayoutSpec("moved", 3))
    with pytest.raises(ValueError):
        schedule(PauliRotationProgram(1, 0, []), LayoutSpec("direct", 3))
    with pytest.raises(ValueError):
        schedule(LogicalCircuit(1).append("rz", 0, angle=0.3), LayoutSpec("direct", 3))


def test_program_schedule_and_json():
    prog = PauliRotationProgram(2, 1, [RotationEvent(PauliRotation.of("YX", 1)),
                                       RotationEvent(PauliRotation.of("IZ", -1)),
                                       Measurement(PhasedPauli.parse("ZI"), 0)])
    s = schedule(prog, LayoutSpec("moved", 5))
    assert s.total_rounds == 2 * 6 + 5
    assert dict(s.steps[0].observables) == {"q0": "Y", "q1": "X", "magic": "Z"}
    doc = json.loads(s.dumps())
    assert doc["total_rounds"] == 17 and len(doc["steps"]) == 3
    assert s.dumps() == schedule(prog, LayoutSpec("moved", 5)).dumps()


def test_render_fixtures_byte_identical():
    assert render_layout(LayoutSpec("direct", 3)) == (FIXTURES / "layout_direct_d3.svg").read_text()
    lay, s = yxz_step()
    assert render_layout(lay, s, 0) == (FIXTURES / "layout_moved_d3_yxz.svg").read_text()


def test_render_contents():
    svg = render_layout(LayoutSpec("direct", 3))
    assert svg.count(">q0<") == 1 and svg.count(">q1<") == 1 and "#5b8bd9" in svg and "#a0a0a0" in svg
    lay, s = yxz_step()
    step_svg = render_layout(lay, s, 0)
    assert "#f2d024" in step_svg and "#2ca02c" in step_svg
    assert step_svg.count('marker-end="url(#arrow)"') == extra_connectivity(lay)


def test_render_empty_schedule_and_factories():
    lay = LayoutSpec("moved", 3)
    empty = schedule(PauliRotationProgram(2, 0, []), lay)
    assert render_layout(lay, empty) == render_layout(lay)
    with pytest.raises(IndexError):
        render_layout(lay, empty, 0)
    svg = render_layout(LayoutSpec("direct", 5), factories=4)
    assert svg.count("#ffe680") == 4 and svg.count("#bde8b0") == 4
    with pytest.raises(ValueError):
        LayoutSpec("direct", 5).factory_cells(5)
