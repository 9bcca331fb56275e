"""The two explicit curve families on closed surfaces.

``fixed_family(g)`` pushes along the lift to the genus-``g`` cyclic cover of
the three-crossing curve on the genus-2 surface; its incidence matrix has the
block form built from ``A, B, C, D`` below.  ``winding_family(g, n)`` replaces
the last copy by a curve that winds ``n`` extra times around a handle; its
invariant bigon track is not rebuilt here, only its published net blocks
``A~, B~, C~, D~`` (linear in ``n``) are used.
"""

from __future__ import annotations

import numpy as np

from .curve import LEFT, RIGHT, CurveDiagram, make_diagram
from .errors import BadGenus, BadParameters
from .incidence import IncidenceMatrix, identity, int_array

# Traced genus-2 curve: passages 1, 2, 1', 3, 2', 3'.
GAMMA0_WORD = ((1, 1), (2, 1), (1, 2), (3, 1), (2, 2), (3, 2))
GAMMA0_SIGNS = (LEFT, LEFT, RIGHT)

FIXED_A = ((11, 8, 2), (0, 1, 0), (0, 0, 1))
FIXED_B = (
    (5, 0, 5, 4, 4, 0, 1, 0, 1),
    (1, 1, 0, 0, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, 0, 0, 1, 1, 0),
)
FIXED_C = (
    (2, 2, 0),
    (2, 2, 0),
    (0, 0, 0),
    (6, 4, 2),
    (2, 2, 0),
    (0, 0, 0),
    (10, 8, 2),
    (6, 4, 2),
    (0, 0, 0),
)
FIXED_D = (
    (2, 0, 2, 2, 1, 0, 0, 0, 0),
    (1, 1, 0, 0, 1, 0, 0, 0, 0),
    (0, 0, 0, 0, 0, 1, 0, 0, 0),
    (2, 0, 2, 2, 2, 0, 2, 0, 1),
    (2, 0, 2, 1, 1, 0, 0, 0, 1),
    (0, 0, 0, 0, 0, 0, 0, 1, 0),
    (6, 0, 5, 3, 3, 0, 2, 0, 2),
    (2, 0, 3, 3, 3, 0, 1, 1, 0),
    (0, 1, 0, 0, 0, 0, 0, 0, 0),
)


def fixed_blocks() -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    return tuple(int_array(b) for b in (FIXED_A, FIXED_B, FIXED_C, FIXED_D))


def genus2_matrix() -> IncidenceMatrix:
    a, b, c, d = fixed_blocks()
    return IncidenceMatrix(np.block([[a, b], [c, d]]), "genus-2 example")


def winding_blocks(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Blocks of the winding piece; every entry is affine in ``n``."""
    at = [[6 * n + 11, 6 * n + 11, 0], [0, 0, 0], [0, 0, 0]]
    bt = [
        [6*n + 8, 3, 6*n + 5, 6*n + 4, 6*n + 3, 0, 1, 0, 1, 3, 9*n - 4, 6*n + 4, 9*n - 1, 9*n - 7],
        [0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 1, 0, 1, 1, 0, 0, 1, 2, 1, 1],
    ]
    ct = [
        [2, 2, 0],
        [2, 2, 0],
        [0, 0, 0],
        [4*n + 6, 4*n + 6, 0],
        [2, 2, 0],
        [0, 0, 0],
        [4*n + 10, 4*n + 10, 0],
        [4*n + 6, 4*n + 6, 0],
        [0, 0, 0],
        [0, 0, 1],
        [6, 5, 0],
        [2*n - 2, 2*n - 2, 0],
        [0, 0, 0],
        [2, 3, 0],
    ]
    dt = [
        [2, 0, 2, 2, 2, 0, 0, 0, 0, 1, 2*n, 2, 2*n, 2*n - 2],
        [1, 1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1],
        [4*n + 4, 2, 4*n + 2, 4*n + 2, 4*n + 2, 0, 2, 0, 1, 2, 6*n - 2, 4*n + 4, 6*n, 6*n - 4],
        [2, 0, 2, 1, 1, 0, 0, 0, 1, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0],
        [4*n + 8, 2, 4*n + 5, 4*n + 3, 4*n + 3, 0, 2, 0, 2, 2, 6*n - 2, 4*n + 4, 6*n, 6*n - 4],
        [4*n + 4, 2, 4*n + 3, 4*n + 3, 4*n + 3, 0, 1, 1, 0, 2, 6*n - 2, 4*n + 4, 6*n, 6*n - 4],
        [0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        [3, 1, 2, 2, 2, 0, 0, 0, 0, 2, 2*n, 2, 2*n, 2*n - 2],
        [2*n - 2, 0, 2*n - 2, 2*n - 2, 2*n - 2, 0, 0, 0, 0, 0, n - 1, 2*n - 1, n - 1, n - 1],
        [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, n - 1, 0, n, n - 1],
        [3, 1, 2, 2, 2, 0, 0, 0, 0, 0, n, 2, n + 1, n],
    ]
    return tuple(int_array(b) for b in (at, bt, ct, dt))


def geometric_sum(n: int) -> int:
    """q(n) = 1 + 11 + ... + 11^(n-1)."""
    return (11**n - 1) // 10


def closed_form_power(n: int) -> tuple[np.ndarray, int]:
    if n < 0:
        raise BadParameters("power must be nonnegative")
    q = geometric_sum(n)
    return int_array([[11**n, 8 * q, 2 * q], [0, 1, 0], [0, 0, 1]]), q


def _mat_power(a: np.ndarray, k: int) -> np.ndarray:
    out = identity(a.shape[0])
    for _ in range(k):
        out = out.dot(a)
    return out


def _assemble(first_row, rows) -> np.ndarray:
    return np.block([list(first_row)] + [list(r) for r in rows])


def fixed_family_matrix(g: int) -> IncidenceMatrix:
    """Block assembly: first row A^(g-1), A^(g-2)B, ..., B; block row r below
    the first is C A^(r-1), C A^(r-2) B, ..., C B, D, 0, ..., 0."""
    if g < 2:
        raise BadGenus(f"fixed family needs genus >= 2, got {g}")
    a, b, c, d = fixed_blocks()
    k = g - 1
    zero = np.zeros((9, 9), dtype=object)
    first = [_mat_power(a, k)] + [_mat_power(a, k - col).dot(b) for col in range(1, k + 1)]
    rows = []
    for r in range(1, k + 1):
        row = [c.dot(_mat_power(a, r - 1))]
        for col in range(1, k + 1):
            if col < r:
                row.append(c.dot(_mat_power(a, r - 1 - col)).dot(b))
            elif col == r:
                row.append(d)
            else:
                row.append(zero)
        rows.append(row)
    return IncidenceMatrix(_assemble(first, rows), f"fixed family g={g}")


def fixed_family_curve(g: int) -> CurveDiagram:
    """Lift of gamma_0^(g-1): one relabelled copy of the traced code per piece."""
    if g < 2:
        raise BadGenus(f"fixed family needs genus >= 2, got {g}")
    word, signs = [], []
    for piece in range(g - 1):
        off = 3 * piece
        word.extend((cid + off, p) for cid, p in GAMMA0_WORD)
        signs.extend(GAMMA0_SIGNS)
    return make_diagram(word, signs, name=f"fixed family g={g}")


def fixed_family(g: int) -> tuple[IncidenceMatrix, CurveDiagram]:
    return fixed_family_matrix(g), fixed_family_curve(g)


def gamma0() -> CurveDiagram:
    return make_diagram(GAMMA0_WORD, GAMMA0_SIGNS, name="gamma_0")


def winding_family(g: int, n: int) -> IncidenceMatrix:
    if g < 3 or n < 2:
        raise BadParameters(f"winding family needs g >= 3 and n >= 2, got g={g}, n={n}")
    a, b, c, d = fixed_blocks()
    at, bt, ct, dt = winding_blocks(n)
    k = g - 2  # copies of the fixed piece
    first = [at.dot(_mat_power(a, k))]
    first += [at.dot(_mat_power(a, k - col)).dot(b) for col in range(1, k + 1)]
    first.append(bt)
    rows = []
    for r in range(1, k + 1):
        row = [c.dot(_mat_power(a, r - 1))]
        for col in range(1, k + 1):
            if col < r:
                row.append(c.dot(_mat_power(a, r - 1 - col)).dot(b))
            elif col == r:
                row.append(d)
            else:
                row.append(np.zeros((9, 9), dtype=object))
        row.append(np.zeros((9, 14), dtype=object))
        rows.append(row)
    last = [ct.dot(_mat_power(a, k))]
    last += [ct.dot(_mat_power(a, k - col)).dot(b) for col in range(1, k + 1)]
    last.append(dt)
    rows.append(last)
    return IncidenceMatrix(_assemble(first, rows), f"winding family g={g} n={n}")


def fixed_first_row_formula(g: int) -> int:
    """11^(g-1) + 10 q(g-1) + sum_{j=1}^{g-1} 20 q(j)."""
    return 11 ** (g - 1) + 10 * geometric_sum(g - 1) + sum(20 * geometric_sum(j) for j in range(1, g))


def winding_first_row_formula(g: int, n: int) -> int:
    k = g - 2
    lead = 6 * n + 11
    return (
        lead * (11**k + 10 * geometric_sum(k) + 1)
        + (57 * n + 20)
        + sum(lead * (20 * geometric_sum(j) + 2) for j in range(1, k + 1))
    )


# Helix of extra turns inserted after passage 1; the transverse arc that
# crosses all of its turns is inserted after passage 4.
_HELIX_AT = 1
_TRANSVERSE_AT = 4
_HELIX_SIGN = LEFT


def winding_curve(n: int) -> CurveDiagram:
    """Genus-2 curve agreeing with gamma_0 except for ``n`` extra turns about a
    handle, giving ``n + 3`` crossings; its induced pretrack has monogons."""
    if n < 1:
        raise BadParameters("winding count must be >= 1")
    tokens = [(f"g{c}", p) for c, p in GAMMA0_WORD]
    signs = {f"g{i + 1}": s for i, s in enumerate(GAMMA0_SIGNS)}
    helix = [(f"h{j}", 1) for j in range(n)]
    transverse = [(f"h{j}", 2) for j in range(n)]
    tokens = tokens[:_TRANSVERSE_AT] + transverse + tokens[_TRANSVERSE_AT:]
    tokens = tokens[:_HELIX_AT] + helix + tokens[_HELIX_AT:]
    ids: dict[str, int] = {}
    for name, p in tokens:
        if p == 1:
            ids[name] = len(ids) + 1
    word = [(ids[name], p) for name, p in tokens]
    by_id = {ids[name]: signs.get(name, _HELIX_SIGN) for name in ids}
    return make_diagram(word, by_id, name=f"winding curve n={n}")
