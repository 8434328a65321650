"""Patch layouts for the two compilation methods.

Coordinates are in data-qubit units: a ``d x d`` patch sits inside a
``(d+1) x (d+1)`` cell, leaving one row and column of slack for merges.
"""

from __future__ import annotations

from dataclasses import dataclass

MAX_FACTORIES = 4


@dataclass(frozen=True)
class Cell:
    name: str
    kind: str  # data | routing | magic | factory | storage
    x: int
    y: int
    w: int
    h: int


@dataclass(frozen=True)
class LayoutSpec:
    method: str
    d: int

    def __post_init__(self):
        if self.method not in ("direct", "moved"):
            raise ValueError(f"unknown method {self.method!r}")
        if int(self.d) != self.d or self.d < 3:
            raise ValueError(f"distance must be an integer >= 3, got {self.d}")

    @property
    def width(self) -> int:
        """Grid width in data qubits."""
        return 2 * self.d + 2 if self.method == "direct" else 3 * self.d + 4

    @property
    def height(self) -> int:
        return 2 * self.d + 2

    @property
    def data_slots(self) -> int:
        return 2

    @property
    def patch_count(self) -> int:
        """Patches charged for logical errors: data plus routing slots."""
        return 4 if self.method == "direct" else 6

    def cells(self) -> list[Cell]:
        c = self.d + 1
        if self.method == "direct":
            return [
                Cell("q0", "data", 0, 0, c, c),
                Cell("q1", "data", c, 0, c, c),
                Cell("route0", "routing", 0, c, c, c),
                Cell("route1", "routing", c, c, c, c),
            ]
        # circuit qubits along the bottom, the T-state patch on top
        return [
            Cell("route0", "routing", 0, 0, c, c),
            Cell("magic", "magic", c, 0, c, c),
            Cell("route1", "routing", 2 * c, 0, c + 1, c),
            Cell("q0", "data", 0, c, c, c),
            Cell("q1", "data", c, c, c, c),
            Cell("route2", "routing", 2 * c, c, c + 1, c),
        ]

    def cell(self, name: str) -> Cell:
        for cell in self.cells():
            if cell.name == name:
                return cell
        raise KeyError(name)

    def factory_cells(self, count: int) -> list[tuple[Cell, Cell]]:
        """(factory, storage) placements for up to four factories, one per side."""
        if not 0 <= count <= MAX_FACTORIES:
            raise ValueError(f"at most {MAX_FACTORIES} factories can be placed, got {count}")
        c = self.d + 1
        w, h = self.width, self.height
        sides = [
            (Cell("factory0", "factory", -2 * c, 0, c, h), Cell("storage0", "storage", -c, 0, c, h)),
            (Cell("factory1", "factory", w + c, 0, c, h), Cell("storage1", "storage", w, 0, c, h)),
            (Cell("factory2", "factory", 0, -2 * c, w, c), Cell("storage2", "storage", 0, -c, w, c)),
            (Cell("factory3", "factory", 0, h + c, w, c), Cell("storage3", "storage", 0, h, w, c)),
        ]
        return sides[:count]


def physical_qubits(layout: LayoutSpec) -> int:
    """Data plus measurement qubits of the patch grid (factories excluded)."""
    return 2 * layout.width * layout.height


def consumption_interval(layout: LayoutSpec) -> int:
    """Longest run of rounds between two T-state uses."""
    d = layout.d
    return 4 * d + 5 if layout.method == "direct" else d + 1


def extra_connectivity(layout: LayoutSpec) -> int:
    """Extra measurement-qubit links needed for Y-basis joint measurements."""
    if layout.method != "moved":
        raise ValueError("extra connectivity only applies to the moved layout")
    return 4 * layout.d


def storage_qubits_per_factory(d: int) -> int:
    return 2 * d * d
