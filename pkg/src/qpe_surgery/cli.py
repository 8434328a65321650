"""Command-line interface: ``qpe-surgery <subcommand>``.

Exit status is 0 on success, 1 on user error and 2 when the request is
infeasible (no code distance fits, a factory is too noisy, synthesis runs out
of T budget).
"""

from __future__ import annotations

import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

import click

from . import estimate as est
from . import mover, qasm, sim
from .circuit import LogicalCircuit
from .qpe import FinePhaseError, Hamiltonian, QPESpec, build_qpe, load_bundled, lower_two_qubit_rotations
from .synthesis import SynthesisBudgetExceeded, load_import_file, lower_circuit
from .surgery import GateCounts, LayoutSpec, render_layout, schedule, schedule_rotation_counts
from .surgery.layout import physical_qubits

DEFAULT_PS = (1e-4, 2e-4, 5e-4, 1e-3, 2e-3)


class UserError(Exception):
    pass


# ---- shared helpers -------------------------------------------------------

def _hamiltonian(spec: str) -> tuple[Hamiltonian, list[str]]:
    if spec == "h2":
        return load_bundled("h2")
    path = Path(spec)
    if not path.exists():
        raise UserError(f"Hamiltonian file not found: {spec}")
    doc = json.loads(path.read_text())
    return Hamiltonian.from_json(doc), list(doc.get("prep", []))


def _build(hamiltonian: str, mode: str, qpe_bits: int, steps: int, convention: str,
           allow_fine: bool) -> LogicalCircuit:
    h, prep = _hamiltonian(hamiltonian)
    spec = QPESpec(mode, qpe_bits, steps, convention, tuple(prep), allow_fine)
    return build_qpe(h, spec)


def _read_circuit(path: str) -> LogicalCircuit:
    p = Path(path)
    if not p.exists():
        raise UserError(f"circuit file not found: {path}")
    return qasm.parse_qasm(p.read_text())


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        click.echo(text, nl=False)
    else:
        Path(path).write_text(text)


def _catalog(path: str | None):
    path = path or os.environ.get(est.CATALOG_ENV)
    if path and not Path(path).exists():
        raise UserError(f"factory catalog not found: {path}")
    return est.load_catalog(path)


def _counts(spec: str) -> GateCounts:
    """``reference`` for the reference H2 counts, or a QASM / JSON file."""
    if spec == "reference":
        return GateCounts.h2_reference()
    p = Path(spec)
    if not p.exists():
        raise UserError(f"counts file not found: {spec}")
    if p.suffix == ".json":
        return GateCounts(**json.loads(p.read_text()))
    return GateCounts.from_circuit(qasm.parse_qasm(p.read_text()))


def _synthesize(c: LogicalCircuit, bits: int, imports: str | None) -> LogicalCircuit:
    table = None
    if imports:
        if not Path(imports).exists():
            raise UserError(f"import file not found: {imports}")
        table = load_import_file(imports)
    return lower_circuit(lower_two_qubit_rotations(c), bits, imports=table)


def _counts_line(c: LogicalCircuit) -> str:
    cc = c.category_counts()
    return " ".join(f"{k}={cc[k]}" for k in ("x", "z", "cx", "h", "s", "t", "measure", "total"))


build_options = [
    click.option("--hamiltonian", default="h2", show_default=True, help="'h2' or a Hamiltonian JSON file."),
    click.option("--mode", type=click.Choice(["iterative", "textbook"]), default="iterative", show_default=True),
    click.option("--qpe-bits", type=click.IntRange(1), default=3, show_default=True),
    click.option("--steps", type=click.IntRange(1), default=1, show_default=True),
    click.option("--convention", type=click.Choice(["pi-over-sum", "inverse-two-sum"]), default="pi-over-sum"),
    click.option("--allow-fine-phases", is_flag=True, help="Emit conditioned phases finer than pi/4."),
]


def with_build_options(f):
    for opt in reversed(build_options):
        f = opt(f)
    return f


seed_option = click.option("--seed", type=int, default=None, help="Only used when sampling.")


# ---- commands -------------------------------------------------------------

@click.group()
@click.version_option(package_name="qpe-surgery")
def cli():
    """Phase-estimation circuits, Clifford+T synthesis and lattice-surgery cost estimates."""


@cli.command()
@with_build_options
@click.option("-o", "--output", default=None, help="QASM output path (default stdout).")
def build(hamiltonian, mode, qpe_bits, steps, convention, allow_fine_phases, output):
    """Build a QPE circuit and write it as QASM with free rz angles."""
    c = _build(hamiltonian, mode, qpe_bits, steps, convention, allow_fine_phases)
    _write(output, qasm.emit_qasm(lower_two_qubit_rotations(c)))


@cli.command()
@with_build_options
@click.option("--input", "input_path", default=None, help="QASM circuit to synthesize instead of building one.")
@click.option("--bits", type=click.IntRange(1), default=10, show_default=True, help="Synthesis precision.")
@click.option("--imports", default=None, help="File of externally synthesized sequences.")
@click.option("-o", "--output", default=None)
def synth(hamiltonian, mode, qpe_bits, steps, convention, allow_fine_phases, input_path, bits, imports, output):
    """Lower every rotation to Clifford+T and report gate counts."""
    c = _read_circuit(input_path) if input_path else _build(
        hamiltonian, mode, qpe_bits, steps, convention, allow_fine_phases)
    low = _synthesize(c, bits, imports)
    _write(output, qasm.emit_qasm(low))
    click.echo(_counts_line(low), err=output in (None, "-"))


@cli.command()
@with_build_options
@click.option("--bits", type=click.IntRange(1), default=5, show_default=True, help="Synthesis precision.")
@click.option("--shots", type=click.IntRange(0), default=0, help="Also sample this many shots.")
@click.option("--json", "json_path", default=None, help="Write both distributions as JSON.")
@seed_option
def simulate(hamiltonian, mode, qpe_bits, steps, convention, allow_fine_phases, bits, shots, json_path, seed):
    """Exact output distributions of the ideal and synthesized circuits, and their TVD."""
    c = _build(hamiltonian, mode, qpe_bits, steps, convention, allow_fine_phases)
    ideal = sim.exact_distribution(c)
    low = sim.exact_distribution(_synthesize(c, bits, None))
    click.echo(f"tvd {sim.tvd(ideal, low):.12g}")
    if shots:
        counts = sim.sample(low, shots, seed)
        click.echo("samples " + json.dumps(counts, sort_keys=True))
    if json_path:
        Path(json_path).write_text(json.dumps({"ideal": ideal, "synthesized": low}, indent=1, sort_keys=True))


@cli.command()
@click.option("--input", "input_path", required=True, help="Clifford+T QASM circuit.")
@click.option("-o", "--output", default=None, help="Program JSON path (default stdout).")
def move(input_path, output):
    """Move Clifford gates to the end, leaving pi/4 rotations and measurements."""
    prog = mover.compile(_read_circuit(input_path))
    _write(output, prog.dumps() + "\n")
    click.echo(f"rotations={len(prog.rotations)} measurements={len(prog.measurements)}", err=output in (None, "-"))


def _schedule_for(method: str, d: int, input_path: str | None, counts: str | None, expected: bool = False):
    layout = LayoutSpec(method, d)
    if input_path is None:
        g = _counts(counts or "reference")
        if method == "direct":
            return schedule(g, layout, expected)
        return schedule_rotation_counts(g.tlike, g.measure, layout)
    p = Path(input_path)
    if not p.exists():
        raise UserError(f"input file not found: {input_path}")
    if method == "moved":
        if p.suffix == ".json":
            prog = mover.PauliRotationProgram.from_json(json.loads(p.read_text()))
        else:
            prog = mover.compile(qasm.parse_qasm(p.read_text()))
        return schedule(prog, layout)
    return schedule(qasm.parse_qasm(p.read_text()), layout, expected)


@cli.command("schedule")
@click.option("--method", type=click.Choice(["direct", "moved"]), default="direct", show_default=True)
@click.option("-d", "--distance", type=click.IntRange(3), required=True)
@click.option("--input", "input_path", default=None, help="QASM (direct or moved) or program JSON (moved).")
@click.option("--counts", default=None, help="'reference', a counts JSON, or a QASM file.")
@click.option("--expected", is_flag=True, help="Charge T-like S corrections at 50%.")
@click.option("-o", "--output", default=None, help="Timeline JSON path.")
def schedule_cmd(method, distance, input_path, counts, expected, output):
    """Sequential lattice-surgery timeline and total QEC rounds."""
    s = _schedule_for(method, distance, input_path, counts, expected)
    if output:
        Path(output).write_text(s.dumps() + "\n")
    click.echo(f"total_rounds={s.total_rounds} steps={len(s.steps)} "
               f"physical_qubits={physical_qubits(s.layout)}")


budget_options = [
    click.option("--method", type=click.Choice(["direct", "moved"]), default="direct", show_default=True),
    click.option("--counts", default="reference", show_default=True,
                 help="'reference', a counts JSON, or a Clifford+T QASM file."),
    click.option("--catalog", default=None, help=f"Factory catalog JSON (default ${est.CATALOG_ENV} or bundled)."),
    click.option("--budget", type=float, default=0.01, show_default=True),
    click.option("--split", type=float, default=0.5, show_default=True, help="Share of budget for logical errors."),
    click.option("--seconds-per-round", type=float, default=est.DEFAULT_SECONDS_PER_ROUND, show_default=True),
]


def with_budget_options(f):
    for opt in reversed(budget_options):
        f = opt(f)
    return f


def _budget(total, split) -> est.Budget:
    try:
        return est.Budget(total, split)
    except ValueError as e:
        raise UserError(str(e)) from None


@cli.command("estimate")
@with_budget_options
@click.option("-p", "ps", type=float, multiple=True, required=True, help="Physical error rate (repeatable).")
@click.option("--json", "json_path", default=None)
def estimate_cmd(method, counts, catalog, budget, split, seconds_per_round, ps, json_path):
    """Solve for code distance, factories and qubit totals."""
    g, cat, b = _counts(counts), _catalog(catalog), _budget(budget, split)
    reports = [est.solve_distance(method, p, g, b, cat, seconds_per_round=seconds_per_round) for p in ps]
    click.echo(est.format_table(reports), nl=False)
    if json_path:
        Path(json_path).write_text(est.reports_json(reports) + "\n")


@cli.command("sweep")
@with_budget_options
@click.option("-p", "ps", type=float, multiple=True, help="Error rates (default 1e-4 ... 2e-3).")
@click.option("-o", "--output", default=None, help="CSV path (default stdout).")
def sweep_cmd(method, counts, catalog, budget, split, seconds_per_round, ps, output):
    """Estimates over a range of physical error rates, as CSV."""
    g, cat, b = _counts(counts), _catalog(catalog), _budget(budget, split)
    pts = est.sweep(method, ps or DEFAULT_PS, g, b, cat, seconds_per_round=seconds_per_round)
    _write(output, est.sweep_csv(pts))
    for pt in pts:
        if pt.error:
            click.echo(f"p={pt.p:g}: {pt.error}", err=True)
    if all(pt.report is None for pt in pts):
        raise est.InfeasibleEstimate("no feasible point in the sweep")


@cli.command()
@click.option("--method", type=click.Choice(["direct", "moved"]), default="direct", show_default=True)
@click.option("-d", "--distance", type=click.IntRange(3), default=3, show_default=True)
@click.option("--input", "input_path", default=None, help="Circuit or program to take a step from.")
@click.option("--step", type=int, default=None, help="Schedule step to draw.")
@click.option("--factories", type=click.IntRange(0, 4), default=0)
@click.option("-o", "--output", default=None, help="SVG path (default stdout).")
def render(method, distance, input_path, step, factories, output):
    """Draw the patch layout, optionally during one schedule step."""
    layout = LayoutSpec(method, distance)
    sched = None
    if step is not None:
        if input_path is None:
            raise UserError("--step needs --input")
        sched = _schedule_for(method, distance, input_path, None)
    try:
        svg = render_layout(layout, sched, step, factories)
    except IndexError as e:
        raise UserError(str(e)) from None
    _write(output, svg)


# ---- pipeline -------------------------------------------------------------

@dataclass
class PipelineConfig:
    hamiltonian: str = "h2"
    mode: str = "iterative"
    qpe_bits: int = 3
    steps: int = 1
    convention: str = "pi-over-sum"
    allow_fine_phases: bool = False
    synth_bits: int = 10
    imports: str | None = None
    methods: tuple[str, ...] = ("direct", "moved")
    ps: tuple[float, ...] = DEFAULT_PS
    budget: float = 0.01
    split: float = 0.5
    catalog: str | None = None
    distance: int = 3  # for the rendered layouts
    out: str = "artifacts"

    def validate(self) -> None:
        if self.synth_bits < 1 or self.qpe_bits < 1:
            raise UserError("bits must be >= 1")
        for p in self.ps:
            if not 0 < p < 1e-2:
                raise UserError(f"error rate {p:g} outside (0, 1e-2)")
        for m in self.methods:
            if m not in ("direct", "moved"):
                raise UserError(f"unknown method {m!r}")
        for path in (self.catalog, self.imports):
            if path and not Path(path).exists():
                raise UserError(f"file not found: {path}")
        if self.hamiltonian != "h2" and not Path(self.hamiltonian).exists():
            raise UserError(f"Hamiltonian file not found: {self.hamiltonian}")

    @classmethod
    def from_json(cls, path: str) -> PipelineConfig:
        if not Path(path).exists():
            raise UserError(f"config file not found: {path}")
        doc = json.loads(Path(path).read_text())
        unknown = set(doc) - set(cls.__dataclass_fields__)
        if unknown:
            raise UserError(f"unknown config keys: {sorted(unknown)}")
        for k in ("methods", "ps"):
            if k in doc:
                doc[k] = tuple(doc[k])
        return cls(**doc)


def run_pipeline(cfg: PipelineConfig) -> list[str]:
    """Write every artifact into ``cfg.out``; returns the written paths."""
    cfg.validate()
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    written = []

    def put(name, text):
        (out / name).write_text(text)
        written.append(str(out / name))

    c = _build(cfg.hamiltonian, cfg.mode, cfg.qpe_bits, cfg.steps, cfg.convention, cfg.allow_fine_phases)
    low = _synthesize(c, cfg.synth_bits, cfg.imports)
    put("circuit.qasm", qasm.emit_qasm(low))
    prog = mover.compile(low)
    put("program.json", prog.dumps() + "\n")
    cat, b = _catalog(cfg.catalog), _budget(cfg.budget, cfg.split)
    reports, sweep_text = [], []
    for m in cfg.methods:
        g = GateCounts.from_circuit(low) if m == "direct" else GateCounts(
            tlike=len(prog.rotations), measure=len(prog.measurements))
        layout = LayoutSpec(m, cfg.distance)
        s = schedule(low if m == "direct" else prog, layout)
        put(f"schedule_{m}.json", s.dumps() + "\n")
        put(f"layout_{m}.svg", render_layout(layout, factories=4))
        pts = est.sweep(m, cfg.ps, g, b, cat)
        reports += [pt.report for pt in pts if pt.report is not None]
        csv_text = est.sweep_csv(pts)
        sweep_text.append(csv_text if not sweep_text else csv_text.split("\n", 1)[1])
    put("estimate.txt", est.format_table(reports) if reports else "no feasible estimate\n")
    put("sweep.csv", _merge_sweeps(cfg.methods, sweep_text))
    return written


def _merge_sweeps(methods, chunks) -> str:
    """One CSV for all methods, each row prefixed by its method."""
    lines = []
    for m, chunk in zip(methods, chunks):
        rows = chunk.strip("\n").split("\n")
        if not lines:
            lines.append("method," + rows[0])
            rows = rows[1:]
        lines += [f"{m},{r}" for r in rows]
    return "\n".join(lines) + "\n"


@cli.command()
@click.option("--config", "config_path", default=None, help="Pipeline config JSON.")
@click.option("--out", default=None, help="Output directory (overrides config).")
@click.option("--synth-bits", type=click.IntRange(1), default=None)
@seed_option
def pipeline(config_path, out, synth_bits, seed):
    """Build, synthesize, move, schedule, estimate, sweep and render in one go."""
    cfg = PipelineConfig.from_json(config_path) if config_path else PipelineConfig()
    if out:
        cfg.out = out
    if synth_bits:
        cfg.synth_bits = synth_bits
    for path in run_pipeline(cfg):
        click.echo(path)


# ---- entry point ----------------------------------------------------------

def main(argv=None) -> int:
    try:
        cli.main(args=argv, prog_name="qpe-surgery", standalone_mode=False)
    except click.exceptions.Exit as e:
        return e.exit_code
    except click.exceptions.Abort:
        click.echo("aborted", err=True)
        return 1
    except click.ClickException as e:
        click.echo(f"error: {e.format_message()}", err=True)
        return 1
    except (est.InfeasibleEstimate, SynthesisBudgetExceeded) as e:
        click.echo(f"infeasible: {e}", err=True)
        return 2
    except (UserError, FinePhaseError, qasm.QasmError, FileNotFoundError, ValueError, KeyError) as e:
        msg = str(e).replace("\n", " ")
        click.echo(f"error: {msg}", err=True)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
