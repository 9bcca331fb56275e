"""The pretrack induced by a based generic curve.

Local surgery at a crossing ``q`` (strand 1 = first passage, strand 2 =
second passage).  The second strand runs straight through ``q`` as branch
``a_q``; the first strand is cut and rerouted:

* switch ``N`` (just after ``q`` on strand 2): outgoing strand-2 edge on one
  side; ``a_q``, ``b_q`` and the incoming strand-1 edge on the other,
* switch ``E`` (just after ``q`` on strand 1): outgoing strand-1 edge versus
  ``b_q``, ``c_q``,
* switch ``S`` (just before ``q`` on strand 2): incoming strand-2 edge
  versus ``c_q``, ``a_q``.

``a_q, b_q, c_q`` bound a trigon at ``q`` and the inbound quadrant receives a
cusp.  The incoming strand-1 edge is fused with the arc that replaces its
last stretch, so no valence-two switches ever appear.

The eye splits the edge through the basepoint into a bigon (``Uw``/``Lw``
upper and lower halves) and adds the arc ``d`` in front of the marked point,
leaving a punctured monogon behind ``d`` and a trigon with sides ``l`` (left)
and ``r`` (right) in front of it.

Ribbon structure is recorded as the counterclockwise order of branch ends at
every switch, so complementary regions come from the same face-tracing walk
used for curve diagrams; a corner between two ends on the same side is a cusp.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .curve import (
    IN1,
    IN2,
    INBOUND_QUADRANT,
    OUT1,
    OUT2,
    OUTBOUND_QUADRANT,
    RIGHT,
    CurveDiagram,
    surface_and_filling,
)
from .errors import HypothesisViolated, InconsistentTrack, NotFilling, NotInReducedCone

SIDE_A, SIDE_B = "A", "B"

TRAIN_TRACK = "train_track"
BIGON_TRACK = "bigon_track"
PRETRACK_ONLY = "pretrack_only"

End = tuple[str, int]  # (branch id, 0 = start / 1 = finish)


@dataclass(frozen=True)
class Branch:
    id: str
    kind: str
    crossing: int | None
    ends: tuple[tuple[str, str], tuple[str, str]]  # (switch id, side) at start, finish


@dataclass(frozen=True)
class Switch:
    id: str
    rotation: tuple[End, ...]  # counterclockwise

    @property
    def valence(self) -> int:
        return len(self.rotation)


@dataclass(frozen=True)
class Region:
    corners: tuple[tuple[str, End, End], ...]  # (switch, end, next end clockwise)
    cusps: int
    punctures: int
    marked: bool
    face_label: str | None

    @property
    def euler_index(self) -> Fraction:
        # every region of a filling curve's pretrack is a disk
        return Fraction(1 - self.punctures) - Fraction(self.cusps, 2)


@dataclass(frozen=True)
class RegionCensus:
    nullgons: int
    monogons: int
    bigons: int
    trigons: int
    higher: int
    punctured_nullgons: int
    punctured_monogons: int
    punctured_higher: int
    track_class: str
    euler_sum: Fraction

    def to_json(self) -> dict:
        return {
            "nullgons": self.nullgons,
            "monogons": self.monogons,
            "bigons": self.bigons,
            "trigons": self.trigons,
            "higher": self.higher,
            "punctured_nullgons": self.punctured_nullgons,
            "punctured_monogons": self.punctured_monogons,
            "punctured_higher": self.punctured_higher,
            "track_class": self.track_class,
            "euler_sum": f"{self.euler_sum.numerator}/{self.euler_sum.denominator}",
        }


@dataclass(frozen=True, eq=False)
class Pretrack:
    diagram: CurveDiagram
    branches: dict[str, Branch]
    switches: dict[str, Switch]
    regions: tuple[Region, ...]
    track_class: str
    distinguished: tuple[str, ...]

    def side(self, end: End) -> str:
        return self.branches[end[0]].ends[end[1]][1]

    def switch_of(self, end: End) -> str:
        return self.branches[end[0]].ends[end[1]][0]


@dataclass(frozen=True)
class FullWeights:
    weights: dict[str, Fraction]

    def restrict(self, track: Pretrack) -> tuple[Fraction, ...]:
        return tuple(self.weights[b] for b in track.distinguished)

    def switch_defects(self, track: Pretrack) -> dict[str, Fraction]:
        """Side-A total minus side-B total at every switch (all zero for a weight function)."""
        out = {}
        for sw in track.switches.values():
            total = Fraction(0)
            for end in sw.rotation:
                w = self.weights[end[0]]
                total += w if track.side(end) == SIDE_A else -w
            out[sw.id] = total
        return out


class _Builder:
    def __init__(self):
        self.branches: dict[str, Branch] = {}
        self.rotations: dict[str, list[End]] = {}

    def branch(self, bid, kind, crossing, start, finish):
        self.branches[bid] = Branch(bid, kind, crossing, (start, finish))

    def rotate(self, sid, ends):
        self.rotations[sid] = list(ends)


def _edge_leaving(k: int, m: int) -> str:
    return "e_in" if k == m - 1 else f"g{k}"


def _edge_arriving(k: int, m: int) -> str:
    return "e_out" if k == 0 else f"g{k - 1}"


# Diagram quadrant seen by a track corner at a crossing switch, keyed by the
# roles of the two branch ends; missing pairs are the trigon's own corners.
_CORNER_QUADRANT = {
    frozenset({OUT2, IN1}): (OUT2, IN1),
    frozenset({IN1, "a"}): INBOUND_QUADRANT,
    frozenset({"a", IN2}): INBOUND_QUADRANT,
    frozenset({"b", OUT2}): OUTBOUND_QUADRANT,
    frozenset({OUT1, "b"}): OUTBOUND_QUADRANT,
    frozenset({"c", OUT1}): (IN2, OUT1),
    frozenset({IN2, "c"}): (IN2, OUT1),
}


def build_pretrack(diagram: CurveDiagram) -> Pretrack:
    report = surface_and_filling(diagram)
    if not report.filling:
        raise NotFilling("some complementary region carries more than one puncture")
    if not report.kra_hypothesis:
        raise HypothesisViolated(f"{report.surface} does not satisfy 3g+n>3")

    word = diagram.word
    m = len(word)
    bld = _Builder()
    role: dict[End, tuple[int, str]] = {}

    for k in range(m):
        cid, p = word[k]
        start = (f"E{cid}", SIDE_A) if p == 1 else (f"N{cid}", SIDE_A)
        if k == m - 1:
            bld.branch("e_in", "plain_arc", None, start, ("x-", SIDE_A))
            bld.branch("e_out", "plain_arc", None, ("x+", SIDE_A), None)
        else:
            bld.branch(f"g{k}", "plain_arc", None, start, None)
    for k in range(m):
        cid, p = word[k]
        arriving = _edge_arriving(k, m)
        finish = (f"N{cid}", SIDE_B) if p == 1 else (f"S{cid}", SIDE_A)
        b = bld.branches[arriving]
        bld.branches[arriving] = Branch(b.id, b.kind, b.crossing, (b.ends[0], finish))
        role[(arriving, 1)] = (cid, IN1 if p == 1 else IN2)
        role[(_edge_leaving(k, m), 0)] = (cid, OUT1 if p == 1 else OUT2)

    ends_at: dict[tuple[int, str], End] = {v: k for k, v in role.items()}
    for c in diagram.crossings:
        q = c.id
        bld.branch(f"a{q}", "cross_a", q, (f"S{q}", SIDE_B), (f"N{q}", SIDE_B))
        bld.branch(f"b{q}", "cross_b", q, (f"E{q}", SIDE_B), (f"N{q}", SIDE_B))
        bld.branch(f"c{q}", "cross_c", q, (f"E{q}", SIDE_B), (f"S{q}", SIDE_B))
        for bid, e, r in (("a", 0, "a"), ("a", 1, "a"), ("b", 0, "b"), ("b", 1, "b"), ("c", 0, "c"), ("c", 1, "c")):
            role[(f"{bid}{q}", e)] = (q, r)
        out1, out2 = ends_at[(q, OUT1)], ends_at[(q, OUT2)]
        in1, in2 = ends_at[(q, IN1)], ends_at[(q, IN2)]
        a0, a1, b0, b1, c0, c1 = (f"a{q}", 0), (f"a{q}", 1), (f"b{q}", 0), (f"b{q}", 1), (f"c{q}", 0), (f"c{q}", 1)
        if c.first_passage_inbound == RIGHT:
            bld.rotate(f"N{q}", [out2, in1, a1, b1])
            bld.rotate(f"E{q}", [out1, b0, c0])
            bld.rotate(f"S{q}", [in2, c1, a0])
        else:
            bld.rotate(f"N{q}", [out2, b1, a1, in1])
            bld.rotate(f"E{q}", [out1, c0, b0])
            bld.rotate(f"S{q}", [in2, a0, c1])

    bld.branch("Uw", "plain_arc", None, ("x-", SIDE_B), ("yU", SIDE_A))
    bld.branch("Lw", "plain_arc", None, ("x-", SIDE_B), ("yL", SIDE_A))
    bld.branch("d", "eye_d", None, ("yU", SIDE_B), ("yL", SIDE_B))
    bld.branch("l", "eye_l", None, ("yU", SIDE_B), ("x+", SIDE_B))
    bld.branch("r", "eye_r", None, ("yL", SIDE_B), ("x+", SIDE_B))
    bld.rotate("x-", [("e_in", 1), ("Lw", 0), ("Uw", 0)])
    bld.rotate("yU", [("Uw", 1), ("d", 0), ("l", 0)])
    bld.rotate("yL", [("Lw", 1), ("r", 0), ("d", 1)])
    bld.rotate("x+", [("e_out", 0), ("l", 1), ("r", 1)])

    switches = {sid: Switch(sid, tuple(rot)) for sid, rot in bld.rotations.items()}
    branches = bld.branches
    _check_incidence(branches, switches)

    regions = _trace_regions(diagram, branches, switches, role)
    expected = len(diagram.faces) + diagram.self_intersections + 2
    if len(regions) != expected:
        raise InconsistentTrack(f"traced {len(regions)} regions, expected {expected}")
    distinguished = ("d", "l", "r") + tuple(
        f"{x}{c.id}" for c in diagram.crossings for x in "abc"
    )
    return Pretrack(
        diagram=diagram,
        branches=branches,
        switches=switches,
        regions=tuple(regions),
        track_class=_classify(regions),
        distinguished=distinguished,
    )


def _check_incidence(branches, switches):
    listed = Counter(e for sw in switches.values() for e in sw.rotation)
    for b in branches.values():
        for i, (sid, _) in enumerate(b.ends):
            if (b.id, i) not in switches[sid].rotation or listed[(b.id, i)] != 1:
                raise InconsistentTrack(f"branch end {(b.id, i)} misplaced")
    for sw in switches.values():
        sides = {branches[e[0]].ends[e[1]][1] for e in sw.rotation}
        if sides != {SIDE_A, SIDE_B} or sw.valence < 3:
            raise InconsistentTrack(f"switch {sw.id} is degenerate")


def _trace_regions(diagram, branches, switches, role) -> list[Region]:
    position = {}
    for sw in switches.values():
        for idx, e in enumerate(sw.rotation):
            position[e] = (sw.id, idx)

    def side(e):
        return branches[e[0]].ends[e[1]][1]

    unused = set(position)
    regions = []
    for start in sorted(unused):
        if start not in unused:
            continue
        corners = []
        h = start
        while h in unused:
            unused.discard(h)
            sid, idx = position[h]
            rot = switches[sid].rotation
            leave = rot[(idx - 1) % len(rot)]
            corners.append((sid, leave, h))
            h = (leave[0], 1 - leave[1])
        regions.append(corners)

    out = []
    for corners in regions:
        cusps = sum(1 for _, u, v in corners if side(u) == side(v))
        faces = set()
        marked = False
        for sid, u, v in corners:
            if sid == "x-" and {u[0], v[0]} == {"Lw", "Uw"}:
                marked = True
            if u in role and v in role and role[u][0] == role[v][0] and sid[0] in "NES":
                cid = role[u][0]
                tag = _CORNER_QUADRANT.get(frozenset({role[u][1], role[v][1]}))
                if tag is None:
                    continue
                quad = tag if isinstance(tag, int) else diagram.quadrant_between(cid, *tag)
                faces.add(diagram.face_of(cid, quad).label)
        if len(faces) > 1:
            raise InconsistentTrack(f"region meets several diagram faces: {sorted(faces)}")
        label = faces.pop() if faces else None
        punct = 1 if marked else 0
        if label is not None:
            punct += next(f.punctures for f in diagram.faces if f.label == label)
        out.append(Region(tuple(corners), cusps, punct, marked, label))
    return out


def _classify(regions: Sequence[Region]) -> str:
    bad = [r for r in regions if r.euler_index >= 0]
    if not bad:
        return TRAIN_TRACK
    if all(r.punctures == 0 and r.cusps == 2 for r in bad):
        return BIGON_TRACK
    return PRETRACK_ONLY


def classify_regions(track: Pretrack) -> RegionCensus:
    cnt = Counter()
    for r in track.regions:
        if r.punctures == 0:
            key = {0: "nullgons", 1: "monogons", 2: "bigons", 3: "trigons"}.get(r.cusps, "higher")
        else:
            key = {0: "punctured_nullgons", 1: "punctured_monogons"}.get(r.cusps, "punctured_higher")
        cnt[key] += 1
    return RegionCensus(
        nullgons=cnt["nullgons"],
        monogons=cnt["monogons"],
        bigons=cnt["bigons"],
        trigons=cnt["trigons"],
        higher=cnt["higher"],
        punctured_nullgons=cnt["punctured_nullgons"],
        punctured_monogons=cnt["punctured_monogons"],
        punctured_higher=cnt["punctured_higher"],
        track_class=track.track_class,
        euler_sum=sum((r.euler_index for r in track.regions), Fraction(0)),
    )


def _rref_solve(rows: list[list[Fraction]], rhs: list[Fraction], nvars: int):
    """Exact Gauss-Jordan.  Returns (solution or None if inconsistent, rank)."""
    aug = [row[:] + [b] for row, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for col in range(nvars):
        piv = next((i for i in range(r, len(aug)) if aug[i][col] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][col]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(col)
        r += 1
    if any(row[-1] != 0 for row in aug[r:]):
        return None, r
    sol = [Fraction(0)] * nvars
    for i, col in enumerate(pivots):
        sol[col] = aug[i][-1]
    return sol, r


def reduced_to_full(track: Pretrack, w: Sequence) -> FullWeights:
    """Extend weights on the distinguished branches through the switch equations."""
    if len(w) != len(track.distinguished):
        raise ValueError(f"expected {len(track.distinguished)} reduced weights, got {len(w)}")
    known = {b: Fraction(x) for b, x in zip(track.distinguished, w)}
    if any(x < 0 for x in known.values()):
        raise NotInReducedCone("negative reduced weight")
    unknown = sorted(b for b in track.branches if b not in known)
    col = {b: i for i, b in enumerate(unknown)}
    rows, rhs = [], []
    for sw in track.switches.values():
        row = [Fraction(0)] * len(unknown)
        b_val = Fraction(0)
        for end in sw.rotation:
            sign = 1 if track.side(end) == SIDE_A else -1
            if end[0] in known:
                b_val -= sign * known[end[0]]
            else:
                row[col[end[0]]] += sign
        rows.append(row)
        rhs.append(b_val)
    sol, rank = _rref_solve(rows, rhs, len(unknown))
    if rank < len(unknown):
        raise InconsistentTrack("switch equations do not determine every branch")
    if sol is None:
        raise NotInReducedCone("vector violates the switch equations")
    full = dict(known)
    full.update(zip(unknown, sol))
    negative = sorted(b for b, x in full.items() if x < 0)
    if negative:
        raise NotInReducedCone(f"forced negative weight on {negative}")
    return FullWeights(full)


def carried_curve_path(track: Pretrack) -> list[tuple[str, bool]]:
    """Closed train path of the essential curve built from the subloop at the
    last-reached crossing, joined to a loop around the marked point along two
    parallel copies of the final arc.  Entries are (branch, forward)."""
    word = track.diagram.word
    m = len(word)
    qn = track.diagram.self_intersections
    k1, k2 = word.index((qn, 1)), word.index((qn, 2))

    loop = []
    for j in range(k1, k2):
        loop.append((_edge_leaving(j, m), True))
        if j + 1 < k2:
            loop.append((f"a{word[j + 1][0]}", True))
    tail = []
    for j in range(k2, m):
        tail.append((_edge_leaving(j, m), True))
        if j + 1 < m:
            tail.append((f"a{word[j + 1][0]}", True))
    around = [("Uw", True), ("d", True), ("Lw", False)]
    back = [(b, not fwd) for b, fwd in reversed(tail)]
    return loop + [(f"a{qn}", True)] + tail + around + back + [(f"b{qn}", False)]


def is_closed_train_path(track: Pretrack, path: Sequence[tuple[str, bool]]) -> bool:
    """Consecutive branches meet at a common switch from opposite sides."""
    for (b1, f1), (b2, f2) in zip(path, list(path[1:]) + [path[0]]):
        arrive = track.branches[b1].ends[1 if f1 else 0]
        leave = track.branches[b2].ends[0 if f2 else 1]
        if arrive[0] != leave[0] or arrive[1] == leave[1]:
            return False
    return True


def path_weights(track: Pretrack, path: Sequence[tuple[str, bool]]) -> FullWeights:
    cnt = Counter(b for b, _ in path)
    return FullWeights({b: Fraction(cnt[b]) for b in track.branches})


def carried_curve_weights(source: CurveDiagram | Pretrack) -> tuple[int, ...]:
    track = source if isinstance(source, Pretrack) else build_pretrack(source)
    full = path_weights(track, carried_curve_path(track))
    return tuple(int(x) for x in full.restrict(track))
