"""Based generic closed curves encoded as signed Gauss codes.

A curve with ``n`` transverse double points is stored as the ordered list of
its ``2n`` passages, read from the basepoint, together with one handedness per
crossing: the side of the direction of travel on which the inbound quadrant
lies at the *first* passage.  At a transverse crossing the inbound quadrant is
on opposite sides of the two strands, so the second passage has the opposite
handedness.

Each crossing has four half-edge ends ``out1, out2, in1, in2`` (outgoing and
incoming strand of the first and second passage).  Handedness ``right`` means
the counterclockwise order is ``out1, out2, in1, in2``; ``left`` is the mirror
image.  Quadrant ``k`` is the sector between the ``k``-th end and the next one
counterclockwise, so quadrant 0 is always the outbound quadrant and quadrant 2
the inbound one.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .errors import BadSurface, MalformedCode, UnknownCrossing, UnknownFaceLabel

RIGHT = "right"
LEFT = "left"
OUT1, OUT2, IN1, IN2 = "out1", "out2", "in1", "in2"

OUTBOUND_QUADRANT = 0
INBOUND_QUADRANT = 2

_ROTATIONS = {
    RIGHT: (OUT1, OUT2, IN1, IN2),
    LEFT: (OUT2, OUT1, IN2, IN1),
}


def opposite(side: str) -> str:
    return LEFT if side == RIGHT else RIGHT


@dataclass(frozen=True)
class SurfaceSig:
    genus: int
    punctures: int

    @property
    def euler_characteristic(self) -> int:
        return 2 - 2 * self.genus - self.punctures

    @property
    def satisfies_kra(self) -> bool:
        return 3 * self.genus + self.punctures > 3

    def __str__(self) -> str:
        return f"S_{{{self.genus},{self.punctures}}}"


@dataclass(frozen=True)
class Crossing:
    id: int
    first_passage_inbound: str


@dataclass(frozen=True)
class Face:
    label: str
    corners: tuple[tuple[int, int], ...]
    punctures: int = 0

    @property
    def n_corners(self) -> int:
        return len(self.corners)


@dataclass(frozen=True)
class FillingReport:
    surface: SurfaceSig
    filling: bool
    euler_bound_holds: bool
    kra_hypothesis: bool


@dataclass(frozen=True, eq=False)
class CurveDiagram:
    name: str
    crossings: tuple[Crossing, ...]
    word: tuple[tuple[int, int], ...]
    rotation: Mapping[int, tuple[str, str, str, str]]
    faces: tuple[Face, ...]
    surface: SurfaceSig
    puncture_assignment: Mapping[str, int] = field(default_factory=dict)

    @property
    def self_intersections(self) -> int:
        return len(self.crossings)

    def crossing(self, cid: int) -> Crossing:
        if not 1 <= cid <= len(self.crossings):
            raise UnknownCrossing(f"no crossing with id {cid}")
        return self.crossings[cid - 1]

    def position(self, cid: int, passage: int) -> int:
        """Index in the word of the given passage token."""
        return self.word.index((cid, passage))

    def face_of(self, cid: int, quadrant: int) -> Face:
        for f in self.faces:
            if (cid, quadrant) in f.corners:
                return f
        raise UnknownCrossing(f"corner c{cid}.q{quadrant} not found")

    def quadrant_between(self, cid: int, e1: str, e2: str) -> int:
        """Quadrant bounded by two counterclockwise-adjacent ends."""
        rot = self.rotation[cid]
        for k in range(4):
            pair = (rot[k], rot[(k + 1) % 4])
            if pair in ((e1, e2), (e2, e1)):
                return k
        raise ValueError(f"{e1} and {e2} are not adjacent at crossing {cid}")

    def mirror(self) -> "CurveDiagram":
        flipped = [opposite(c.first_passage_inbound) for c in self.crossings]
        bare = make_diagram(self.word, flipped)
        # reflection sends the sector of quadrant q to quadrant -q
        punctures = {}
        for f in self.faces:
            if f.punctures:
                cid, q = f.corners[0]
                punctures[bare.face_of(cid, -q % 4).label] = f.punctures
        return make_diagram(self.word, flipped, punctures=punctures, name=self.name + " (mirror)")

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "crossings": [
                {"id": c.id, "first_passage_inbound": c.first_passage_inbound}
                for c in self.crossings
            ],
            "word": [[cid, p] for cid, p in self.word],
            "punctures": dict(sorted(self.puncture_assignment.items())),
        }

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CurveDiagram):
            return NotImplemented
        return (self.crossings, self.word, dict(self.puncture_assignment)) == (
            other.crossings,
            other.word,
            dict(other.puncture_assignment),
        )

    __hash__ = None  # type: ignore[assignment]


def _validate_word(word: Sequence[tuple[int, int]]) -> int:
    if not word:
        raise MalformedCode("empty word: a curve without crossings cannot fill")
    if len(word) % 2:
        raise MalformedCode("word length must be even")
    n = len(word) // 2
    seen_first: set[int] = set()
    seen_second: set[int] = set()
    next_id = 1
    for cid, passage in word:
        if passage not in (1, 2):
            raise MalformedCode(f"passage must be 1 or 2, got {passage!r}")
        if not 1 <= cid <= n:
            raise MalformedCode(f"crossing id {cid} outside 1..{n}")
        if passage == 1:
            if cid in seen_first:
                raise MalformedCode(f"crossing {cid} has two first passages")
            if cid != next_id:
                raise MalformedCode(
                    f"crossing ids must be numbered by first passage; expected {next_id}, got {cid}"
                )
            seen_first.add(cid)
            next_id += 1
        else:
            if cid in seen_second:
                raise MalformedCode(f"crossing {cid} has two second passages")
            if cid not in seen_first:
                raise MalformedCode(f"second passage of crossing {cid} precedes its first")
            seen_second.add(cid)
    if len(seen_first) != n or len(seen_second) != n:
        raise MalformedCode("every crossing must be passed exactly twice")
    return n


def _end_partners(word: Sequence[tuple[int, int]]) -> dict[tuple[int, str], tuple[int, str]]:
    partner = {}
    m = len(word)
    for k in range(m):
        cid, p = word[k]
        nid, np_ = word[(k + 1) % m]
        a = (cid, OUT1 if p == 1 else OUT2)
        b = (nid, IN1 if np_ == 1 else IN2)
        partner[a] = b
        partner[b] = a
    return partner


def _trace_corner_cycles(word, rotation) -> list[list[tuple[int, int]]]:
    # Arrive through end h; the face on the left leaves through the end
    # clockwise-adjacent to h, and its corner is the sector between them.
    partner = _end_partners(word)
    unused = {(cid, e) for cid in rotation for e in rotation[cid]}
    cycles = []
    for start in sorted(unused):
        if start not in unused:
            continue
        cycle = []
        h = start
        while h in unused:
            unused.discard(h)
            cid, end = h
            rot = rotation[cid]
            k = (rot.index(end) - 1) % 4
            cycle.append((cid, k))
            h = partner[(cid, rot[k])]
        cycles.append(cycle)
    return cycles


def _label(corners: Iterable[tuple[int, int]]) -> str:
    cid, q = min(corners)
    return f"f:c{cid}.q{q}"


def make_diagram(
    word: Sequence[Sequence[int]],
    first_passage_inbound: Sequence[str] | Mapping[int, str],
    punctures: Mapping[str, int] | None = None,
    name: str = "",
    surface: Mapping[str, int] | None = None,
) -> CurveDiagram:
    """Validate a signed Gauss code and derive its ribbon-graph data."""
    word_t = tuple((int(c), int(p)) for c, p in word)
    n = _validate_word(word_t)
    if isinstance(first_passage_inbound, Mapping):
        signs = [first_passage_inbound.get(i) for i in range(1, n + 1)]
    else:
        signs = list(first_passage_inbound)
    if len(signs) != n or any(s not in (RIGHT, LEFT) for s in signs):
        raise MalformedCode("need one handedness ('right' or 'left') per crossing")
    crossings = tuple(Crossing(i + 1, s) for i, s in enumerate(signs))
    rotation = {c.id: _ROTATIONS[c.first_passage_inbound] for c in crossings}

    cycles = _trace_corner_cycles(word_t, rotation)
    labels = [_label(c) for c in cycles]
    punctures = dict(punctures or {})
    for lab, cnt in punctures.items():
        if lab not in labels:
            raise UnknownFaceLabel(f"no face labelled {lab!r}; faces are {sorted(labels)}")
        if not isinstance(cnt, int) or cnt < 0:
            raise BadSurface(f"puncture count for {lab} must be a nonnegative integer")
    faces = tuple(
        Face(lab, tuple(cyc), punctures.get(lab, 0))
        for lab, cyc in sorted(zip(labels, cycles))
    )
    chi = n - 2 * n + len(faces)
    if chi % 2:
        raise MalformedCode("odd Euler characteristic; ribbon graph is inconsistent")
    sig = SurfaceSig((2 - chi) // 2, sum(punctures.values()))
    if surface is not None:
        declared = SurfaceSig(int(surface.get("genus", -1)), int(surface.get("punctures", -1)))
        if declared != sig:
            raise BadSurface(f"declared surface {declared} but the code realizes {sig}")
    return CurveDiagram(
        name=name,
        crossings=crossings,
        word=word_t,
        rotation=rotation,
        faces=faces,
        surface=sig,
        puncture_assignment={k: v for k, v in punctures.items() if v},
    )


def parse_curve(document: str | Mapping) -> CurveDiagram:
    """Build a diagram from the JSON curve-file format (text or decoded)."""
    if isinstance(document, str):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise MalformedCode(f"not valid JSON: {exc}") from None
    if not isinstance(document, Mapping):
        raise MalformedCode("curve document must be a JSON object")
    try:
        raw_crossings = document.get("crossings", [])
        signs = {}
        for c in raw_crossings:
            cid = int(c["id"])
            if cid in signs:
                raise MalformedCode(f"crossing {cid} declared twice")
            signs[cid] = c["first_passage_inbound"]
        word = [(int(t[0]), int(t[1])) for t in document.get("word", [])]
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise MalformedCode(f"bad curve document: {exc}") from None
    n = len(word) // 2
    if set(signs) != set(range(1, n + 1)):
        if word:
            raise MalformedCode(f"crossings must list ids 1..{n} exactly once")
    return make_diagram(
        word,
        signs,
        punctures=document.get("punctures") or {},
        name=str(document.get("name", "")),
        surface=document.get("surface"),
    )


def rotate_basepoint(diagram: CurveDiagram, steps: int = 1) -> CurveDiagram:
    """Move the basepoint forward past ``steps`` passages.

    Crossings are renumbered by their new first passage.  A crossing whose
    two passages trade places changes sign, since its new first passage is
    the old second one.
    """
    m = len(diagram.word)
    steps %= m
    tokens = list(diagram.word[steps:] + diagram.word[:steps])
    seen: dict[int, int] = {}
    word = []
    signs: dict[int, str] = {}
    for old, p in tokens:
        if old not in seen:
            seen[old] = len(seen) + 1
            side = diagram.crossing(old).first_passage_inbound
            signs[seen[old]] = side if p == 1 else opposite(side)
            word.append((seen[old], 1))
        else:
            word.append((seen[old], 2))
    # swapping passages and flipping the sign leaves the counterclockwise end
    # order, hence every quadrant index, unchanged
    rotated = make_diagram(word, signs, name=diagram.name)
    punctures = {}
    for f in diagram.faces:
        if f.punctures:
            cid, q = f.corners[0]
            punctures[rotated.face_of(seen[cid], q).label] = f.punctures
    return make_diagram(word, signs, punctures=punctures, name=diagram.name)


def load_curve(path: str | Path) -> CurveDiagram:
    return parse_curve(Path(path).read_text(encoding="utf-8"))


def trace_faces(diagram: CurveDiagram) -> list[Face]:
    return list(diagram.faces)


def surface_and_filling(diagram: CurveDiagram) -> FillingReport:
    """Kra's criterion on the derived surface: every region is a disk or a
    once-punctured disk.  Also checks i >= 2g+n-2, strictly when closed."""
    sig = diagram.surface
    filling = all(f.punctures <= 1 for f in diagram.faces)
    bound = 2 * sig.genus + sig.punctures - 2
    i = diagram.self_intersections
    euler_ok = i > bound if sig.punctures == 0 else i >= bound
    return FillingReport(sig, filling, euler_ok, sig.satisfies_kra)


def taut_obstruction(diagram: CurveDiagram) -> list[Face]:
    """Unpunctured monogon and bigon faces (visible non-minimality).

    A 2-corner face whose corners sit at the same crossing is not a bigon
    that a homotopy could remove, so it is not reported.
    """
    out = []
    for f in diagram.faces:
        if f.punctures:
            continue
        if f.n_corners == 1 or (f.n_corners == 2 and f.corners[0][0] != f.corners[1][0]):
            out.append(f)
    return out


def handedness_of_passage(diagram: CurveDiagram, crossing_id: int, passage: int | str) -> str:
    c = diagram.crossing(crossing_id)
    if passage in (1, "first"):
        return c.first_passage_inbound
    if passage in (2, "second"):
        return opposite(c.first_passage_inbound)
    raise MalformedCode(f"passage must be first/second, got {passage!r}")


def passage_sequence(diagram: CurveDiagram) -> list[tuple[int, str]]:
    """(crossing, handedness) for each passage in traversal order."""
    return [(cid, handedness_of_passage(diagram, cid, p)) for cid, p in diagram.word]
