"""The acceptance criteria, runnable from ``pushtrack verify`` and from pytest.

Each criterion returns ``(ok, detail)``; the runner adds timing and compares
it with the criterion's budget.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from . import families
from .bounds import dilatation_bounds, least_dilatation_bounds
from .curve import LEFT, RIGHT, SurfaceSig, make_diagram
from .incidence import incidence_matrix, int_array, pass_matrix
from .pretrack import TRAIN_TRACK, PRETRACK_ONLY, build_pretrack, classify_regions
from .spectral import is_primitive, pf_enclosure, row_sum_bound

# Pass-matrix blocks as displayed, kept separate from the copy the library uses.
DISPLAYED_PASS = {
    RIGHT: {
        "ee": [[1, 0, 1], [0, 0, 0], [0, 0, 0]],
        "ei": [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
        "ie": [[2, 0, 1], [0, 0, 1], [0, 1, 0]],
        "ii": [[0, 0, 0], [1, 1, 0], [0, 0, 0]],
    },
    LEFT: {
        "ee": [[1, 1, 0], [0, 0, 0], [0, 0, 0]],
        "ei": [[1, 0, 0], [0, 0, 1], [0, 1, 0]],
        "ie": [[2, 1, 0], [0, 1, 0], [0, 0, 1]],
        "ii": [[0, 0, 0], [1, 1, 0], [0, 0, 0]],
    },
}

TOL = Fraction(1, 10**9)
REL_TOL = 1e-12


@dataclass(frozen=True)
class Criterion:
    number: int
    name: str
    tags: tuple[str, ...]
    budget: float
    check: Callable[[], tuple[bool, str]]

    def matches(self, pattern: str | None) -> bool:
        return pattern is None or pattern in self.name or pattern in self.tags


@dataclass(frozen=True)
class Outcome:
    criterion: Criterion
    ok: bool
    detail: str
    seconds: float

    @property
    def passed(self) -> bool:
        return self.ok and self.seconds <= self.criterion.budget

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = "" if self.seconds <= self.criterion.budget else f" (over {self.criterion.budget:g}s budget)"
        return f"[{status}] {self.criterion.number:>2} {self.criterion.name}: {self.detail} [{self.seconds:.2f}s{extra}]"


def _expected_pass(n: int, i: int, orientation: str) -> np.ndarray:
    m = np.zeros((3 * (n + 1), 3 * (n + 1)), dtype=object)
    for k in range(3 * (n + 1)):
        m[k, k] = 1
    blocks = DISPLAYED_PASS[orientation]
    e, s = slice(0, 3), slice(3 * i, 3 * i + 3)
    m[e, e] = int_array(blocks["ee"])
    m[e, s] = int_array(blocks["ei"])
    m[s, e] = int_array(blocks["ie"])
    m[s, s] = int_array(blocks["ii"])
    return m


def check_pass_matrices() -> tuple[bool, str]:
    count = 0
    for n in range(1, 17):
        for i in range(1, n + 1):
            for orientation in (RIGHT, LEFT):
                pm = pass_matrix(n, i, orientation)
                if not pm == _expected_pass(n, i, orientation):
                    return False, f"mismatch at n={n}, i={i}, {orientation}"
                if max(pm.row_sums()) > 3:
                    return False, f"row sum above 3 at n={n}, i={i}, {orientation}"
                count += 1
    return True, f"{count} pass matrices match the displayed blocks, row sums <= 3"


def check_genus2() -> tuple[bool, str]:
    curve = families.gamma0()
    m = incidence_matrix(curve)
    published = families.genus2_matrix()
    if not m == published:
        diff = int((m.data != published.data).sum())
        return False, f"{diff} of 144 entries differ from the published matrix"
    census = classify_regions(build_pretrack(curve))
    ok = (
        census.trigons == 5
        and census.punctured_monogons == 1
        and census.monogons == census.bigons == census.higher == 0
        and census.track_class == TRAIN_TRACK
    )
    return ok, f"144/144 entries equal; {census.trigons} trigons, {census.punctured_monogons} punctured monogon, {census.track_class}"


def _positive_first_row_and_column(m: np.ndarray) -> bool:
    cube = m.dot(m).dot(m)
    return all(x > 0 for x in cube[0, :]) and all(x > 0 for x in cube[:, 0])


def check_fixed_chain() -> tuple[bool, str]:
    for g in range(2, 9):
        m = families.fixed_family_matrix(g)
        sums = m.row_sums()
        first = sums[0]
        if first != families.fixed_first_row_formula(g):
            return False, f"g={g}: first-row sum {first} differs from the closed form"
        if first != max(sums):
            return False, f"g={g}: first row is not the largest"
        if not Fraction(first) < Fraction(2, 5) * 11**g:
            return False, f"g={g}: first-row sum {first} is not below (2/5)11^g"
        if not _positive_first_row_and_column(m.data):
            return False, f"g={g}: M^3 has a zero in its first row or column"
        if not is_primitive(m):
            return False, f"g={g}: not primitive"
    return True, "g=2..8: closed form, largest row, < (2/5)11^g, M^3 corner positivity, primitive"


def check_cross_module() -> tuple[bool, str]:
    for g in range(2, 6):
        m, curve = families.fixed_family(g)
        if not incidence_matrix(curve) == m:
            return False, f"g={g}: traced curve and block assembly disagree"
    return True, "g=2..5: pass-matrix product equals block assembly"


def check_winding_chain() -> tuple[bool, str]:
    for g in (3, 4, 5):
        for n in range(2, 11):
            m = families.winding_family(g, n)
            first = m.row_sums()[0]
            if first != families.winding_first_row_formula(g, n):
                return False, f"(g={g}, n={n}): first-row sum {first} differs from the sum expression"
            if not first < n * 11**g:
                return False, f"(g={g}, n={n}): first-row sum not below n 11^g"
            if not is_primitive(m):
                return False, f"(g={g}, n={n}): not primitive"
    return True, "g in {3,4,5}, n=2..10: sum expression, < n 11^g, primitive"


def check_enclosure() -> tuple[bool, str]:
    enc = pf_enclosure(families.genus2_matrix(), tol=TOL)
    lower_ok = enc.lo**5 >= 4  # lo >= (3+1)^(1/5), exactly
    upper_ok = enc.hi <= 41
    width_ok = enc.width <= TOL
    los = [lo for lo, _ in enc.history]
    his = [hi for _, hi in enc.history]
    mono = all(a <= b for a, b in zip(los, los[1:])) and all(a >= b for a, b in zip(his, his[1:]))
    detail = f"[{float(enc.lo):.12f}, {float(enc.hi):.12f}] after {enc.iterations} steps, width {float(enc.width):.2e}"
    return lower_ok and upper_ok and width_ok and mono and enc.converged, detail


def suite_pretracks():
    """Every pretrack the suite builds, with the surface it lives on."""
    out = [families.gamma0()]
    out += [families.fixed_family_curve(g) for g in range(2, 6)]
    out += [families.winding_curve(n) for n in range(1, 6)]
    g0 = families.gamma0()
    out.append(make_diagram(g0.word, [c.first_passage_inbound for c in g0.crossings], punctures={g0.faces[0].label: 1}, name="gamma_0 punctured"))
    g3 = families.fixed_family_curve(3)
    out.append(make_diagram(g3.word, [c.first_passage_inbound for c in g3.crossings], punctures={f.label: 1 for f in g3.faces}, name="lift g=3 punctured"))
    return out


def check_euler_index() -> tuple[bool, str]:
    curves = suite_pretracks()
    for curve in curves:
        census = classify_regions(build_pretrack(curve))
        s = curve.surface
        if census.euler_sum != 2 - 2 * s.genus - (s.punctures + 1):
            return False, f"{curve.name}: index sum {census.euler_sum} on {s}"
    return True, f"{len(curves)} pretracks: index sum = 2-2g-(n+1)"


def check_monogon() -> tuple[bool, str]:
    for n in range(1, 6):
        census = classify_regions(build_pretrack(families.winding_curve(n)))
        if census.track_class != PRETRACK_ONLY or census.monogons < 1:
            return False, f"n={n}: {census.track_class} with {census.monogons} monogons"
    return True, "winding curves n=1..5: pretrack_only with unpunctured monogons"


def brute_force_primitive(m: np.ndarray) -> bool:
    d = m.shape[0]
    a = (np.asarray(m, dtype=np.int64) > 0).astype(np.int64)
    p = a.copy()
    for _ in range((d - 1) ** 2 + 1):
        if p.all():
            return True
        p = (p.dot(a) > 0).astype(np.int64)
    return bool(p.all())


def random_matrices(count: int = 1000, seed: int = 20100):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        d = int(rng.integers(1, 9))
        density = rng.uniform(0.05, 0.6)
        vals = rng.integers(1, 4, size=(d, d))
        mask = rng.random((d, d)) < density
        yield np.where(mask, vals, 0).astype(object)


def check_primitivity() -> tuple[bool, str]:
    prim = 0
    for k, m in enumerate(random_matrices()):
        got = is_primitive(m)
        if got != brute_force_primitive(m):
            return False, f"matrix {k} disagrees: graph test says {got}"
        prim += got
    return True, f"1000 random matrices agree ({prim} primitive)"


BOUNDS_TABLE = (
    (3, SurfaceSig(2, 0), "primitive"),
    (4, SurfaceSig(2, 0), "other"),
    (7, SurfaceSig(3, 0), "primitive"),
    (12, SurfaceSig(4, 1), "other"),
    (2, SurfaceSig(0, 4), "primitive"),
    (5, SurfaceSig(0, 5), "other"),
    (30, SurfaceSig(2, 3), "primitive"),
    (100, SurfaceSig(5, 0), "other"),
    (2, SurfaceSig(0, 4), "square_S04_S12"),
    (6, SurfaceSig(0, 4), "square_S04_S12"),
    (3, SurfaceSig(1, 2), "square_S04_S12"),
    (11, SurfaceSig(1, 2), "square_S04_S12"),
    (40, SurfaceSig(0, 4), "square_S04_S12"),
    (1, SurfaceSig(1, 1), "power234_S11"),
    (3, SurfaceSig(1, 1), "power234_S11"),
    (8, SurfaceSig(1, 1), "power234_S11"),
    (15, SurfaceSig(1, 1), "power234_S11"),
    (1, SurfaceSig(1, 1), "primitive"),
    (9, SurfaceSig(1, 2), "other"),
    (1000, SurfaceSig(10, 10), "primitive"),
)


def _close(a: float, b: float) -> bool:
    return math.isclose(a, b, rel_tol=REL_TOL, abs_tol=0.0) or a == b


def check_bounds() -> tuple[bool, str]:
    r = least_dilatation_bounds(SurfaceSig(2, 0))
    if not (_close(r.log_lower, math.log(4) / 5) and _close(r.log_upper, 2 * math.log(11)) and r.upper_strict):
        return False, "S_{2,0} least-dilatation bounds"
    r = least_dilatation_bounds(SurfaceSig(3, 0), k=8)
    if not (_close(r.log_lower, math.log(9) / 5) and _close(r.log_upper, math.log(8) + 3 * math.log(11)) and r.upper_strict):
        return False, "S_{3,0}, k=8 least-dilatation bounds"
    for i, surface, cls in BOUNDS_TABLE:
        got = dilatation_bounds(i, surface, cls)
        if cls == "square_S04_S12":
            lam = i ** 0.2
        elif cls == "power234_S11":
            lam = ((i + 1) / 2) ** 0.2
        else:
            lam = (i + 1) ** 0.2
        if not (_close(got.log_lower, math.log(lam)) and _close(got.log_upper, i * math.log(9))):
            return False, f"(i={i}, {surface}, {cls}): {got.log_lower} vs {math.log(lam)}"
    return True, f"two least-dilatation checks and {len(BOUNDS_TABLE)} case-table rows within 1e-12"


CRITERIA = (
    Criterion(1, "pass_matrix_fidelity", ("incidence",), 1.0, check_pass_matrices),
    Criterion(2, "genus2_reproduction", ("incidence", "pretrack", "families"), 1.0, check_genus2),
    Criterion(3, "fixed_family_chain", ("families", "spectral"), 5.0, check_fixed_chain),
    Criterion(4, "cross_module_oracle", ("families", "incidence", "curve_model"), 5.0, check_cross_module),
    Criterion(5, "winding_family_chain", ("families", "spectral"), 10.0, check_winding_chain),
    Criterion(6, "spectral_enclosure_sandwich", ("spectral", "bounds"), 1.0, check_enclosure),
    Criterion(7, "euler_index_conservation", ("pretrack",), 1.0, check_euler_index),
    Criterion(8, "monogon_detection", ("pretrack", "families"), 1.0, check_monogon),
    Criterion(9, "primitivity_oracle", ("spectral",), 10.0, check_primitivity),
    Criterion(10, "bound_evaluators", ("bounds",), 1.0, check_bounds),
)


def run_criterion(c: Criterion) -> Outcome:
    start = time.perf_counter()
    try:
        ok, detail = c.check()
    except Exception as exc:  # a crash is a failure, not an abort of the suite
        ok, detail = False, f"raised {type(exc).__name__}: {exc}"
    return Outcome(c, ok, detail, time.perf_counter() - start)


def run(pattern: str | None = None, echo: Callable[[str], None] | None = print) -> list[Outcome]:
    outcomes = []
    for c in CRITERIA:
        if not c.matches(pattern):
            continue
        out = run_criterion(c)
        if echo:
            echo(out.line())
        outcomes.append(out)
    return outcomes
