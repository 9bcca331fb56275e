"""Primitivity tests and certified Perron-Frobenius eigenvalue brackets.

The bracket is the Collatz-Wielandt pair: for a primitive ``M`` and any
strictly positive ``x``,

    min_i (Mx)_i / x_i  <=  rho(M)  <=  max_i (Mx)_i / x_i

and both ends tighten monotonically under power iteration.  Every quantity on
this path is an exact integer or ``Fraction``.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

import numpy as np

from .errors import NotPrimitive
from .incidence import IncidenceMatrix

DEFAULT_ITER_CAP = 10_000
DEFAULT_TOL = Fraction(1, 10**9)


def _as_array(m) -> np.ndarray:
    if isinstance(m, IncidenceMatrix):
        return m.data
    return np.asarray(m, dtype=object)


def _reach(adj: list[list[int]], start: int) -> list[int | None]:
    level: list[int | None] = [None] * len(adj)
    level[start] = 0
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if level[v] is None:
                level[v] = level[u] + 1
                queue.append(v)
    return level


def is_primitive(m) -> bool:
    """Strongly connected digraph whose cycle lengths have gcd 1."""
    a = _as_array(m)
    dim = a.shape[0]
    if dim == 0 or a.shape != (dim, dim):
        return False
    if any(x < 0 for x in a.flat):
        return False
    fwd = [[j for j in range(dim) if a[i, j] > 0] for i in range(dim)]
    bwd = [[i for i in range(dim) if a[i, j] > 0] for j in range(dim)]
    level = _reach(fwd, 0)
    if any(x is None for x in level) or any(x is None for x in _reach(bwd, 0)):
        return False
    period = 0
    for u in range(dim):
        for v in fwd[u]:
            period = gcd(period, level[u] + 1 - level[v])
    return period == 1


def row_sum_bound(m) -> int:
    a = _as_array(m)
    return max(int(sum(row)) for row in a)


def min_row_sum(m) -> int:
    a = _as_array(m)
    return min(int(sum(row)) for row in a)


def iteration_cap() -> int:
    raw = os.environ.get("PUSHTRACK_ITER_CAP")
    return int(raw) if raw else DEFAULT_ITER_CAP


@dataclass(frozen=True)
class SpectralEnclosure:
    lo: Fraction
    hi: Fraction
    iterations: int
    primitive: bool
    converged: bool = True
    history: tuple[tuple[Fraction, Fraction], ...] = field(default=(), repr=False)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, value) -> bool:
        return self.lo <= value <= self.hi

    def to_json(self) -> dict:
        return {
            "lo": f"{self.lo.numerator}/{self.lo.denominator}",
            "hi": f"{self.hi.numerator}/{self.hi.denominator}",
            "lo_float": float(self.lo),
            "hi_float": float(self.hi),
            "iterations": self.iterations,
            "primitive": self.primitive,
            "converged": self.converged,
        }


def _normalize(x: list[int]) -> list[int]:
    g = 0
    for v in x:
        g = gcd(g, v)
    return [v // g for v in x] if g > 1 else x


def pf_enclosure(
    m,
    seed: Sequence | None = None,
    tol: Fraction | float | str = DEFAULT_TOL,
    max_iter: int | None = None,
) -> SpectralEnclosure:
    """Bracket the Perron-Frobenius eigenvalue of a primitive matrix to width ``tol``.

    If the iteration cap is hit, the best bracket so far is returned with
    ``converged=False``.
    """
    a = _as_array(m)
    if not is_primitive(a):
        raise NotPrimitive("Collatz-Wielandt bracketing needs a primitive matrix")
    tol = Fraction(tol) if not isinstance(tol, float) else Fraction(str(tol))
    cap = max(1, iteration_cap() if max_iter is None else max_iter)
    dim = a.shape[0]
    if seed is None:
        x = [1] * dim
    else:
        xs = [Fraction(v) for v in seed]
        if len(xs) != dim or any(v <= 0 for v in xs):
            raise ValueError("seed must be a strictly positive vector of matching length")
        den = 1
        for v in xs:
            den = den * v.denominator // gcd(den, v.denominator)
        x = _normalize([int(v * den) for v in xs])

    rows = [list(map(int, row)) for row in a]
    history = []
    it = 0
    while it < cap:
        it += 1
        y = [sum(c * v for c, v in zip(row, x) if c) for row in rows]
        ratios = [Fraction(yi, xi) for yi, xi in zip(y, x)]
        lo, hi = min(ratios), max(ratios)
        history.append((lo, hi))
        if hi - lo <= tol:
            return SpectralEnclosure(lo, hi, it, True, True, tuple(history))
        x = _normalize(y)
    return SpectralEnclosure(lo, hi, it, True, False, tuple(history))
