"""Lattice-surgery costing, scheduling and layout rendering."""

from .cost import IllegalOperation, exact_rounds, op_rounds, op_stages
from .layout import (LayoutSpec, consumption_interval, extra_connectivity, physical_qubits,
                     storage_qubits_per_factory)
from .render import render_layout
from .schedule import (GateCounts, Step, SurgerySchedule, schedule, schedule_circuit, schedule_counts,
                       schedule_program, schedule_rotation_counts)

__all__ = [
    "IllegalOperation", "exact_rounds", "op_rounds", "op_stages", "LayoutSpec", "consumption_interval",
    "extra_connectivity", "physical_qubits", "storage_qubits_per_factory", "render_layout", "GateCounts",
    "Step", "SurgerySchedule", "schedule", "schedule_circuit", "schedule_counts", "schedule_program",
    "schedule_rotation_counts",
]
