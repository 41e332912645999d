"""Hierarchical binary partitioning of [0,1]^D shared by SOO and BaMSOO.

Cells are axis-aligned boxes identified by (level h, index j) under
binary numbering: the children of (h, j) are (h+1, 2j) and (h+1, 2j+1),
obtained by halving the parent along its largest side (ties broken by
the lowest dimension index).  The tree stores a per-node payload value g
and an evaluated flag because BaMSOO assigns confidence-bound values to
nodes it never evaluates.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import PartitionExhaustedError

# Splitting stops once a side would fall below this length.
MIN_SIDE = 1e-15


@dataclass(frozen=True)
class Cell:
    """Axis-aligned box (h, j) inside the unit hypercube."""

    level: int
    index: int
    lower: tuple[float, ...]
    upper: tuple[float, ...]

    def __post_init__(self):
        if self.level < 0 or self.index < 0:
            raise ValueError("level and index must be non-negative")
        if len(self.lower) != len(self.upper):
            raise ValueError("lower/upper dimension mismatch")
        for lo, hi in zip(self.lower, self.upper):
            if not (0.0 <= lo < hi <= 1.0):
                raise ValueError(f"invalid cell bounds [{lo}, {hi}]")

    @property
    def dim(self) -> int:
        return len(self.lower)

    @property
    def center(self) -> tuple[float, ...]:
        return tuple((lo + hi) / 2.0 for lo, hi in zip(self.lower, self.upper))


def root_cell(dim: int) -> Cell:
    """The root cell (0, 0) = [0,1]^dim."""
    if dim < 1:
        raise ValueError("dim must be >= 1")
    return Cell(0, 0, (0.0,) * dim, (1.0,) * dim)


def split_cell(parent: Cell) -> tuple[Cell, Cell]:
    """Halve the parent along its largest side (lowest-index tie-break).

    Returns the (2j, 2j+1) children at level h+1; the left child keeps
    the lower half.  Raises PartitionExhaustedError on side underflow.
    """
    widths = [hi - lo for lo, hi in zip(parent.lower, parent.upper)]
    d = widths.index(max(widths))
    if widths[d] / 2.0 < MIN_SIDE:
        raise PartitionExhaustedError(
            f"cell ({parent.level},{parent.index}) side {widths[d]:g} cannot be halved"
        )
    mid = (parent.lower[d] + parent.upper[d]) / 2.0
    left_upper = tuple(mid if i == d else v for i, v in enumerate(parent.upper))
    right_lower = tuple(mid if i == d else v for i, v in enumerate(parent.lower))
    h, j = parent.level + 1, parent.index
    left = Cell(h, 2 * j, parent.lower, left_upper)
    right = Cell(h, 2 * j + 1, right_lower, parent.upper)
    return left, right


class _Node:
    __slots__ = ("cell", "g", "evaluated", "expanded", "exhausted")

    def __init__(self, cell: Cell):
        self.cell = cell
        self.g: float | None = None
        self.evaluated = False
        self.expanded = False
        # set when split_cell failed; the node can never be expanded
        self.exhausted = False


class Tree:
    """Partition tree with per-node values and leaf bookkeeping.

    Single-writer: the owning optimizer mutates the tree; snapshots for
    reporting go through ``dump_lines``.
    """

    def __init__(self, dim: int):
        self._levels: dict[int, dict[int, _Node]] = {0: {0: _Node(root_cell(dim))}}
        self._expansion_count = 0
        self.dim = dim

    # -- accessors ---------------------------------------------------------

    def node(self, level: int, index: int) -> _Node:
        return self._levels[level][index]

    def depth(self) -> int:
        return max(h for h, nodes in self._levels.items() if nodes)

    def expansion_count(self) -> int:
        return self._expansion_count

    def level_indices(self, level: int) -> list[int]:
        return sorted(self._levels.get(level, {}))

    def set_value(self, level: int, index: int, g: float, evaluated: bool) -> None:
        node = self.node(level, index)
        node.g = float(g)
        node.evaluated = evaluated

    def leaf_argmax_at_level(self, level: int) -> tuple[Cell, float] | None:
        """Best-valued leaf at a level, or None; ties keep the smallest j."""
        best: _Node | None = None
        for j in sorted(self._levels.get(level, {})):
            node = self._levels[level][j]
            if node.expanded or node.exhausted:
                continue
            assert node.g is not None, f"leaf ({level},{j}) has no value at selection time"
            if best is None or node.g > best.g:
                best = node
        if best is None:
            return None
        return best.cell, best.g

    # -- mutation ----------------------------------------------------------

    def expand(self, level: int, index: int) -> tuple[Cell, Cell]:
        """Split a leaf; inserts both children unvalued and returns them."""
        node = self.node(level, index)
        assert not node.expanded, f"node ({level},{index}) already expanded"
        children = split_cell(node.cell)
        node.expanded = True
        self._expansion_count += 1
        lvl = self._levels.setdefault(level + 1, {})
        for child in children:
            lvl[child.index] = _Node(child)
        return children

    def mark_exhausted(self, level: int, index: int) -> None:
        self.node(level, index).exhausted = True

    # -- serialization -----------------------------------------------------

    def dump_lines(self) -> list[str]:
        """Line-oriented text dump: level index lower upper g evaluated-flag."""
        lines = []
        for h in sorted(self._levels):
            for j in sorted(self._levels[h]):
                node = self._levels[h][j]
                lo = ",".join(repr(v) for v in node.cell.lower)
                hi = ",".join(repr(v) for v in node.cell.upper)
                g = "none" if node.g is None else repr(node.g)
                lines.append(f"{h} {j} {lo} {hi} {g} {int(node.evaluated)}")
        return lines
