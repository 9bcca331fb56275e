"""Pass matrices and the incidence matrix of a point-pushing map.

Coordinates are the reduced weights ``(d, l, r, a_1, b_1, c_1, ..., a_n, b_n, c_n)``.
Entries are Python ints held in numpy object arrays, so nothing overflows.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .curve import LEFT, RIGHT, CurveDiagram, passage_sequence, surface_and_filling
from .errors import IndexOutOfRange, NotFilling

# (e,e), (e,i), (i,e), (i,i) blocks for each handedness
PASS_BLOCKS = {
    RIGHT: (
        ((1, 0, 1), (0, 0, 0), (0, 0, 0)),
        ((1, 0, 0), (0, 1, 0), (0, 0, 1)),
        ((2, 0, 1), (0, 0, 1), (0, 1, 0)),
        ((0, 0, 0), (1, 1, 0), (0, 0, 0)),
    ),
    LEFT: (
        ((1, 1, 0), (0, 0, 0), (0, 0, 0)),
        ((1, 0, 0), (0, 0, 1), (0, 1, 0)),
        ((2, 1, 0), (0, 1, 0), (0, 0, 1)),
        ((0, 0, 0), (1, 1, 0), (0, 0, 0)),
    ),
}


def int_array(rows) -> np.ndarray:
    return np.array([[int(x) for x in row] for row in rows], dtype=object)


def identity(dim: int) -> np.ndarray:
    out = np.zeros((dim, dim), dtype=object)
    for k in range(dim):
        out[k, k] = 1
    return out


@dataclass(frozen=True, eq=False)
class IncidenceMatrix:
    data: np.ndarray
    label: str = ""

    @property
    def dim(self) -> int:
        return self.data.shape[0]

    def row_sums(self) -> list[int]:
        return [int(sum(row)) for row in self.data]

    def __eq__(self, other):
        if isinstance(other, IncidenceMatrix):
            other = other.data
        other = np.asarray(other, dtype=object)
        return self.data.shape == other.shape and bool((self.data == other).all())

    __hash__ = None  # type: ignore[assignment]

    def to_json(self) -> list[list[str]]:
        return [[str(int(x)) for x in row] for row in self.data]

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def pass_matrix(n: int, i: int, orientation: str) -> IncidenceMatrix:
    """Effect on reduced weights of pushing the marked point through crossing ``i``."""
    if orientation not in PASS_BLOCKS:
        raise ValueError(f"orientation must be 'right' or 'left', got {orientation!r}")
    if not 1 <= i <= n:
        raise IndexOutOfRange(f"crossing index {i} outside 1..{n}")
    m = identity(3 * (n + 1))
    ee, ei, ie, ii = (int_array(b) for b in PASS_BLOCKS[orientation])
    e, s = slice(0, 3), slice(3 * i, 3 * i + 3)
    m[e, e], m[e, s], m[s, e], m[s, s] = ee, ei, ie, ii
    return IncidenceMatrix(m, f"A_{i}^{orientation}")


def apply_pass(m: np.ndarray, i: int, orientation: str) -> np.ndarray:
    """Left-multiply by a pass matrix touching only the six affected rows."""
    ee, ei, ie, ii = PASS_BLOCKS[orientation]
    e_rows = m[0:3, :]
    i_rows = m[3 * i : 3 * i + 3, :]
    out = m.copy()

    def combine(left, right, r):
        row = np.zeros(m.shape[1], dtype=object)
        for k in range(3):
            if left[r][k]:
                row = row + left[r][k] * e_rows[k]
            if right[r][k]:
                row = row + right[r][k] * i_rows[k]
        return row

    for r in range(3):
        out[r, :] = combine(ee, ei, r)
        out[3 * i + r, :] = combine(ie, ii, r)
    return out


def product_of_passes(n: int, passes) -> IncidenceMatrix:
    """Ordered product; the first pass in ``passes`` is the rightmost factor."""
    m = identity(3 * (n + 1))
    for i, orientation in passes:
        if not 1 <= i <= n:
            raise IndexOutOfRange(f"crossing index {i} outside 1..{n}")
        m = apply_pass(m, i, orientation)
    return IncidenceMatrix(m)


def incidence_matrix(diagram: CurveDiagram) -> IncidenceMatrix:
    if not surface_and_filling(diagram).filling:
        raise NotFilling("incidence matrix requested for a non-filling curve")
    n = diagram.self_intersections
    out = product_of_passes(n, passage_sequence(diagram))
    return IncidenceMatrix(out.data, diagram.name or f"M_gamma (n={n})")
