"""Binary layers and the synchronous totalistic update.

Cells outside the layer's rectangle are permanently empty, so the frame never
grows and nothing wraps around the edges.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .rule_codec import TotalisticRule


class Layer:
    """Immutable rectangular grid of 0/1 cells, indexed ``[row, col]``.

    The backing array is a read-only boolean copy of whatever was passed in.
    Layers compare and hash by dimensions and cell contents.
    """

    __slots__ = ("_cells", "_key")

    def __init__(self, cells: np.ndarray | Sequence[Sequence[int]]):
        arr = np.asarray(cells)
        if arr.ndim != 2:
            raise ValueError(f"layer cells must be 2-D, got shape {arr.shape}")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError(f"layer must be at least 1x1, got shape {arr.shape}")
        if arr.dtype != np.bool_:
            if not np.isin(arr, (0, 1)).all():
                raise ValueError("layer cells must be 0 or 1")
            arr = arr.astype(np.bool_)
        else:
            arr = arr.copy()
        arr.flags.writeable = False
        self._cells = arr
        self._key = (arr.shape, arr.tobytes())

    @classmethod
    def empty(cls, height: int, width: int) -> "Layer":
        return cls(np.zeros((height, width), dtype=bool))

    @classmethod
    def full(cls, height: int, width: int) -> "Layer":
        return cls(np.ones((height, width), dtype=bool))

    @property
    def cells(self) -> np.ndarray:
        return self._cells

    @property
    def width(self) -> int:
        return self._cells.shape[1]

    @property
    def height(self) -> int:
        return self._cells.shape[0]

    @property
    def shape(self) -> tuple[int, int]:
        return self._cells.shape

    @property
    def population(self) -> int:
        return int(np.count_nonzero(self._cells))

    def is_empty(self) -> bool:
        return not self._cells.any()

    def bbox(self) -> tuple[int, int, int, int] | None:
        """Tight ``(row0, row1, col0, col1)`` half-open box of occupied cells."""
        rows = np.flatnonzero(self._cells.any(axis=1))
        if rows.size == 0:
            return None
        cols = np.flatnonzero(self._cells.any(axis=0))
        return int(rows[0]), int(rows[-1]) + 1, int(cols[0]), int(cols[-1]) + 1

    def to_rows(self, on: str = "#", off: str = ".") -> list[str]:
        return ["".join(on if c else off for c in row) for row in self._cells]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Layer):
            return NotImplemented
        return self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"Layer({self.height}x{self.width}, population={self.population})"


def neighborhood_totals(layer: Layer) -> np.ndarray:
    """Moore-neighborhood totals (center included) for every cell at once."""
    h, w = layer.shape
    padded = np.zeros((h + 2, w + 2), dtype=np.uint8)
    padded[1:-1, 1:-1] = layer.cells
    total = np.zeros((h, w), dtype=np.uint8)
    for dr in range(3):
        for dc in range(3):
            total += padded[dr:dr + h, dc:dc + w]
    return total


def neighborhood_total(layer: Layer, row: int, col: int) -> int:
    if not (0 <= row < layer.height and 0 <= col < layer.width):
        raise IndexError(
            f"cell ({row}, {col}) outside {layer.height}x{layer.width} layer"
        )
    r0, r1 = max(row - 1, 0), min(row + 2, layer.height)
    c0, c1 = max(col - 1, 0), min(col + 2, layer.width)
    return int(np.count_nonzero(layer.cells[r0:r1, c0:c1]))


def step_layer(layer: Layer, rule: TotalisticRule) -> Layer:
    """One synchronous update: every cell becomes ``f(total of its 3x3 block)``."""
    table = np.asarray(rule.outputs, dtype=bool)
    return Layer(table[neighborhood_totals(layer)])


def apply_mask(layer: Layer, mask: Layer) -> Layer:
    if layer.shape != mask.shape:
        raise ValueError(f"mask shape {mask.shape} does not match layer shape {layer.shape}")
    return Layer(layer.cells & mask.cells)


# Dihedral group of the square as array transforms on [row, col] grids.
DIHEDRAL_TRANSFORMS = {
    "identity": lambda a: a,
    "rot90": lambda a: np.rot90(a, 1),
    "rot180": lambda a: np.rot90(a, 2),
    "rot270": lambda a: np.rot90(a, 3),
    "flip_rows": lambda a: a[::-1, :],
    "flip_cols": lambda a: a[:, ::-1],
    "transpose": lambda a: a.T,
    "antitranspose": lambda a: np.rot90(a, 2).T,
}


def symmetry_group(layer: Layer) -> frozenset[str]:
    """Names of the dihedral transforms that leave ``layer`` unchanged.

    Rotations and diagonal reflections only apply to square layers.
    """
    a = layer.cells
    found = set()
    for name, fn in DIHEDRAL_TRANSFORMS.items():
        b = fn(a)
        if b.shape == a.shape and np.array_equal(a, b):
            found.add(name)
    return frozenset(found)


def layer_from_rows(rows: Iterable[str], on: str = "#") -> Layer:
    return Layer([[ch == on for ch in row] for row in rows])
