"""Code-distance, factory and qubit-count estimates for a scheduled circuit."""

from __future__ import annotations

import csv
import io
import json
import math
import os
from dataclasses import asdict, dataclass
from importlib import resources

from .surgery.layout import (MAX_FACTORIES, LayoutSpec, consumption_interval, physical_qubits,
                             storage_qubits_per_factory)
from .surgery.cost import exact_rounds
from .surgery.schedule import GateCounts, direct_closed_form

CATALOG_ENV = "QPE_SURGERY_CATALOG"
DEFAULT_MAX_DISTANCE = 99
DEFAULT_SECONDS_PER_ROUND = 1e-6
# logical data patches per method; the rest of the layout is routing
DATA_PATCHES = 2


class InfeasibleEstimate(RuntimeError):
    """No admissible configuration exists for the requested inputs."""


class FactoryTooNoisy(InfeasibleEstimate):
    pass


class PlacementLimit(InfeasibleEstimate):
    pass


class NoFactory(InfeasibleEstimate):
    pass


def logical_error_rate(p: float, d: int) -> float:
    """Per-patch, per-round logical error rate of a distance-d surface code."""
    return 0.1 * (100 * p) ** ((d + 1) / 2)


def circuit_failure(p: float, d: int, n_data: int, n_route: int, n_storage: int, n_meas: int) -> float:
    return (n_data + n_route + n_storage) * n_meas * logical_error_rate(p, d)


def distill_15_to_1(p: float) -> float:
    return 35 * p ** 3


def distill_concatenated(p: float) -> float:
    """Two levels of 15-to-1: 35 * (35 p^3)^3."""
    return 1_500_625 * p ** 9


@dataclass(frozen=True)
class FactorySpec:
    name: str
    p_in: float
    qubits: int
    rounds: float
    error: float

    def __post_init__(self):
        if min(self.p_in, self.qubits, self.rounds, self.error) <= 0:
            raise ValueError(f"factory {self.name!r}: all fields must be positive")
        if self.error >= self.p_in:
            raise ValueError(f"factory {self.name!r}: output error must be below the input error")


@dataclass(frozen=True)
class Budget:
    total: float = 0.01
    split: float = 0.5  # fraction of the total spent on logical errors

    def __post_init__(self):
        if not 0 < self.total < 1 or not 0 < self.split < 1:
            raise ValueError("budget total and split must lie in (0, 1)")

    @property
    def logical(self) -> float:
        return self.total * self.split

    @property
    def t_states(self) -> float:
        return self.total * (1 - self.split)


def load_catalog(path=None) -> list[FactorySpec]:
    """Read a factory catalog; defaults to $QPE_SURGERY_CATALOG, then the bundled one."""
    path = path or os.environ.get(CATALOG_ENV)
    if path:
        with open(path) as fh:
            doc = json.load(fh)
    else:
        doc = json.loads(resources.files("qpe_surgery.data").joinpath("factories.json").read_text())
    entries = doc["factories"] if isinstance(doc, dict) and "factories" in doc else doc
    if not isinstance(entries, list):
        raise ValueError(f"catalog {path or 'bundled'}: expected a list of factories")
    return [FactorySpec(**f) for f in entries]


def pick_factory(catalog: list[FactorySpec], p: float) -> FactorySpec:
    """The factory rated for the smallest input error rate that still covers ``p``."""
    ok = [f for f in catalog if f.p_in >= p * (1 - 1e-12)]
    if not ok:
        raise NoFactory(f"no factory in the catalog is rated for p={p:g}")
    return min(ok, key=lambda f: f.p_in)


def select_factories(f: FactorySpec, interval: float, t_count: int, t_budget: float) -> tuple[int, int]:
    """Fewest parallel factories that keep up with one T state per ``interval`` rounds.

    Returns ``(factories, storage patches)``; each factory gets one storage patch.
    """
    if t_count > 0 and f.error * t_count > t_budget:
        raise FactoryTooNoisy(
            f"{f.name}: {t_count} states at {f.error:g} exceed the T-state budget {t_budget:g}")
    count = math.ceil(f.rounds / interval - 1e-12)
    count = max(count, 1)
    if count > MAX_FACTORIES:
        raise PlacementLimit(f"{count} factories needed, at most {MAX_FACTORIES} can be placed")
    return count, count


@dataclass(frozen=True)
class EstimateReport:
    method: str
    p: float
    distance: int
    circuit_qubits: int
    logical_error: float
    interval: int
    factories: int
    factory_qubits: int
    storage_qubits: int
    t_error: float
    total_qubits: int
    total_rounds: int
    total_error: float
    factory: str = ""
    seconds_per_round: float = DEFAULT_SECONDS_PER_ROUND

    @property
    def seconds(self) -> float:
        return self.total_rounds * self.seconds_per_round

    def to_json(self) -> dict:
        out = asdict(self)
        out["seconds"] = self.seconds
        return out


def _rounds(method: str, counts: GateCounts, d: int) -> int:
    # per-class sums; the same exact total a full timeline would carry
    if method == "direct":
        return direct_closed_form(counts, d)
    return math.ceil(counts.tlike * exact_rounds("rotation", d, "moved")
                     + counts.measure * exact_rounds("pauli_measure", d, "moved"))


def evaluate(method: str, p: float, counts: GateCounts, d: int, factory: FactorySpec,
             budget: Budget = Budget(), seconds_per_round: float = DEFAULT_SECONDS_PER_ROUND) -> EstimateReport:
    """Full report at a fixed distance (no check against the logical budget)."""
    layout = LayoutSpec(method, d)
    rounds = _rounds(method, counts, d)
    interval = consumption_interval(layout)
    n_fact, n_store = select_factories(factory, interval, counts.tlike, budget.t_states)
    logical = circuit_failure(p, d, DATA_PATCHES, layout.patch_count - DATA_PATCHES, n_store, rounds)
    t_err = counts.tlike * factory.error
    circ = physical_qubits(layout)
    fq = n_fact * factory.qubits
    sq = n_store * storage_qubits_per_factory(d)
    return EstimateReport(method, p, d, circ, logical, interval, n_fact, fq, sq, t_err, circ + fq + sq,
                          rounds, logical + t_err, factory.name, seconds_per_round)


def solve_distance(method: str, p: float, counts: GateCounts, budget: Budget = Budget(),
                   catalog: list[FactorySpec] | None = None, max_distance: int = DEFAULT_MAX_DISTANCE,
                   seconds_per_round: float = DEFAULT_SECONDS_PER_ROUND) -> EstimateReport:
    """Smallest distance >= 3 whose logical failure fits the logical half of the budget."""
    if method not in ("direct", "moved"):
        raise ValueError(f"unknown method {method!r}")
    if not 0 < p < 1e-2:
        raise ValueError(f"physical error rate {p:g} outside (0, 1e-2)")
    factory = pick_factory(catalog if catalog is not None else load_catalog(), p)
    if counts.tlike and factory.error * counts.tlike > budget.t_states:
        raise FactoryTooNoisy(
            f"{factory.name}: {counts.tlike} states at {factory.error:g} exceed the T-state budget "
            f"{budget.t_states:g}")
    last = None
    for d in range(3, max_distance + 1):
        try:
            rep = evaluate(method, p, counts, d, factory, budget, seconds_per_round)
        except PlacementLimit as e:
            last = e  # slower operations at larger d may need fewer factories
            continue
        if rep.logical_error <= budget.logical:
            return rep
    raise InfeasibleEstimate(f"no distance up to {max_distance} meets the logical budget {budget.logical:g}"
                             + (f" ({last})" if last else ""))


@dataclass(frozen=True)
class SweepPoint:
    p: float
    report: EstimateReport | None
    error: str | None = None


def sweep(method: str, ps, counts: GateCounts, budget: Budget = Budget(),
          catalog: list[FactorySpec] | None = None, **kw) -> list[SweepPoint]:
    """One solve per error rate; infeasible points carry their error message."""
    catalog = catalog if catalog is not None else load_catalog()
    out = []
    for p in ps:
        try:
            out.append(SweepPoint(p, solve_distance(method, p, counts, budget, catalog, **kw)))
        except (InfeasibleEstimate, ValueError) as e:
            out.append(SweepPoint(p, None, str(e)))
    return out


def fmt(v) -> str:
    """Fixed 12-significant-digit formatting for floats."""
    if isinstance(v, float):
        return f"{v:.12g}"
    return str(v)


TABLE_ROWS = [
    ("Method", "method"),
    ("Physical error rate", "p"),
    ("Code distance", "distance"),
    ("Circuit qubits", "circuit_qubits"),
    ("Logical error probability", "logical_error"),
    ("Rounds between T states", "interval"),
    ("Factories", "factories"),
    ("Factory qubits", "factory_qubits"),
    ("Storage qubits", "storage_qubits"),
    ("T-state error probability", "t_error"),
    ("Total physical qubits", "total_qubits"),
    ("Total QEC rounds", "total_rounds"),
    ("Total error probability", "total_error"),
]


def format_table(reports: list[EstimateReport]) -> str:
    """Aligned text table, one column per report."""
    rows = [[label] + [fmt(getattr(r, key)) for r in reports] for label, key in TABLE_ROWS]
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    lines = []
    for row in rows:
        cells = [row[0].ljust(widths[0])] + [c.rjust(w) for c, w in zip(row[1:], widths[1:])]
        lines.append("  ".join(cells).rstrip())
    return "\n".join(lines) + "\n"


def reports_json(reports: list[EstimateReport]) -> str:
    return json.dumps([{k: (fmt(v) if isinstance(v, float) else v) for k, v in r.to_json().items()}
                       for r in reports], indent=1, sort_keys=True)


def sweep_csv(points: list[SweepPoint]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["p", "qubits", "rounds", "seconds", "error"])
    for pt in points:
        r = pt.report
        if r is None:
            w.writerow([fmt(pt.p), "", "", "", pt.error])
        else:
            w.writerow([fmt(pt.p), r.total_qubits, r.total_rounds, fmt(r.seconds), ""])
    return buf.getvalue()
