"""Deterministic SVG drawings of patch layouts and single surgery steps."""

from __future__ import annotations

from .layout import Cell, LayoutSpec

SCALE = 20  # pixels per data-qubit spacing

X_FILL = "#a0a0a0"  # grey X stabilisers
Z_FILL = "#5b8bd9"  # blue Z stabilisers
ANCILLA = "#f39c34"  # orange measurement qubits
MERGE = "#2ca02c"  # green product-measurement markers
TWIST = "#f2d024"  # yellow twist defects
ROUTING = "#f4f4f4"
FACTORY = "#ffe680"
STORAGE = "#bde8b0"


def _f(v: float) -> str:
    return f"{v:.1f}"


class _Canvas:
    def __init__(self, x0: float, y0: float, w: float, h: float):
        self.x0, self.y0 = x0, y0
        self.w, self.h = w, h
        self.items: list[str] = []

    def px(self, x: float) -> str:
        return _f((x - self.x0) * SCALE)

    def py(self, y: float) -> str:
        return _f((y - self.y0) * SCALE)

    def rect(self, x, y, w, h, fill, stroke="none", extra=""):
        self.items.append(
            f'<rect x="{self.px(x)}" y="{self.py(y)}" width="{_f(w * SCALE)}" height="{_f(h * SCALE)}" '
            f'fill="{fill}" stroke="{stroke}"{extra}/>')

    def poly(self, pts, fill, stroke="none"):
        p = " ".join(f"{self.px(x)},{self.py(y)}" for x, y in pts)
        self.items.append(f'<polygon points="{p}" fill="{fill}" stroke="{stroke}"/>')

    def circle(self, x, y, r, fill):
        self.items.append(f'<circle cx="{self.px(x)}" cy="{self.py(y)}" r="{_f(r * SCALE)}" fill="{fill}"/>')

    def line(self, x1, y1, x2, y2, stroke, width=1.0, marker=False):
        m = ' marker-end="url(#arrow)"' if marker else ""
        self.items.append(
            f'<line x1="{self.px(x1)}" y1="{self.py(y1)}" x2="{self.px(x2)}" y2="{self.py(y2)}" '
            f'stroke="{stroke}" stroke-width="{_f(width)}"{m}/>')

    def text(self, x, y, s, size=12):
        s = s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
        self.items.append(
            f'<text x="{self.px(x)}" y="{self.py(y)}" font-family="monospace" font-size="{size}">{s}</text>')

    def svg(self) -> str:
        w, h = _f(self.w * SCALE), _f(self.h * SCALE)
        head = [
            '<?xml version="1.0" encoding="UTF-8"?>',
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" '
            f'viewBox="0 0 {w} {h}">',
            '<defs><marker id="arrow" markerWidth="6" markerHeight="6" refX="5" refY="3" orient="auto">'
            '<path d="M0,0 L6,3 L0,6 z" fill="#333333"/></marker></defs>',
            f'<rect x="0" y="0" width="{w}" height="{h}" fill="#ffffff"/>',
        ]
        return "\n".join(head + self.items + ["</svg>", ""])


def _draw_patch(cv: _Canvas, cell: Cell, d: int) -> None:
    """A d x d rotated surface-code patch: square plaquettes plus boundary triangles."""
    ox, oy = cell.x + 0.5, cell.y + 0.5  # first data qubit
    for i in range(d - 1):
        for j in range(d - 1):
            fill = X_FILL if (i + j) % 2 == 0 else Z_FILL
            cv.rect(ox + i, oy + j, 1, 1, fill, stroke="#ffffff")
    # X boundaries top/bottom, Z boundaries left/right
    for i in range(d - 1):
        if i % 2 == 1:
            cv.poly([(ox + i, oy), (ox + i + 1, oy), (ox + i + 0.5, oy - 0.5)], X_FILL)
        if (i + d - 2) % 2 == 0:
            cv.poly([(ox + i, oy + d - 1), (ox + i + 1, oy + d - 1), (ox + i + 0.5, oy + d - 0.5)], X_FILL)
    for j in range(d - 1):
        if j % 2 == 0:
            cv.poly([(ox, oy + j), (ox, oy + j + 1), (ox - 0.5, oy + j + 0.5)], Z_FILL)
        if (j + d - 2) % 2 == 1:
            cv.poly([(ox + d - 1, oy + j), (ox + d - 1, oy + j + 1), (ox + d - 0.5, oy + j + 0.5)], Z_FILL)
    for i in range(d - 1):
        for j in range(d - 1):
            cv.circle(ox + i + 0.5, oy + j + 0.5, 0.12, ANCILLA)
    cv.text(cell.x + 0.1, cell.y + cell.h - 0.1, cell.name, size=10)


def _draw_merge(cv: _Canvas, layout: LayoutSpec, step) -> None:
    d = layout.d
    letters = dict(step.observables)
    route = [layout.cell(p) for p in step.patches if p.startswith("route")]
    for cell in route:
        cv.rect(cell.x, cell.y, cell.w, cell.h, "#e3f5df", stroke=MERGE)
        # product-measurement outcomes come from the row of plaquettes next to the patches
        for i in range(cell.w - 1):
            cv.circle(cell.x + i + 1, cell.y + cell.h / 2, 0.15, MERGE)
    for name, letter in sorted(letters.items()):
        cell = layout.cell(name)
        if letter == "Y":
            # Y reads both boundaries: a twist at the corner and a strip of domain walls
            cv.circle(cell.x + cell.w - 0.5, cell.y + 0.5, 0.3, TWIST)
            for j in range(d - 1):
                x, y = cell.x + cell.w - 0.5, cell.y + 1 + j
                cv.rect(x - 0.25, y - 0.25, 0.25, 0.5, Z_FILL)
                cv.rect(x, y - 0.25, 0.25, 0.5, X_FILL)
        cv.text(cell.x + cell.w / 2 - 0.3, cell.y + 0.9, letter, size=14)
    if any(v == "Y" for v in letters.values()):
        # 4d extra links between four columns of neighbouring measurement qubits
        row = layout.cell("route0").y + 0.5
        for col in range(4):
            x = layout.cell("route0").x + 0.5 + col
            for k in range(d):
                cv.line(x, row + k, x + 0.8, row + k, "#333333", marker=True)


def render_layout(layout: LayoutSpec, schedule=None, step: int | None = None, factories: int = 0) -> str:
    """SVG 1.1 text of the layout, optionally with one schedule step and factory slots."""
    if step is not None:
        steps = schedule.steps if schedule is not None else []
        if not 0 <= step < len(steps):
            raise IndexError(f"step {step} out of range for a schedule of {len(steps)} steps")
    placed = layout.factory_cells(factories)
    cells = layout.cells() + [c for pair in placed for c in pair]
    x0 = min(c.x for c in cells) - 1
    y0 = min(c.y for c in cells) - 2
    x1 = max(c.x + c.w for c in cells) + 1
    y1 = max(c.y + c.h for c in cells) + 1
    cv = _Canvas(x0, y0, x1 - x0, y1 - y0)
    title = f"{layout.method} layout, d={layout.d}"
    if step is not None:
        title += f", step {step}: {schedule.steps[step].label}"
    cv.text(x0 + 0.5, y0 + 1.2, title, size=12)
    for cell in cells:
        if cell.kind in ("data", "magic"):
            _draw_patch(cv, cell, layout.d)
        elif cell.kind == "routing":
            cv.rect(cell.x, cell.y, cell.w, cell.h, ROUTING, stroke="#cccccc")
        elif cell.kind == "factory":
            cv.rect(cell.x, cell.y, cell.w, cell.h, FACTORY, stroke="#b8a000")
            cv.text(cell.x + 0.2, cell.y + 1, cell.name, size=10)
        else:
            cv.rect(cell.x, cell.y, cell.w, cell.h, STORAGE, stroke=MERGE)
            cv.text(cell.x + 0.2, cell.y + 1, cell.name, size=10)
    if step is not None:
        _draw_merge(cv, layout, schedule.steps[step])
    return cv.svg()
