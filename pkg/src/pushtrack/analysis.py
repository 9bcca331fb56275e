"""End-to-end analysis of one curve file: surface, track, matrix, enclosure, bounds."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .bounds import BoundsReport, weakest_dilatation_bounds
from .curve import CurveDiagram, SurfaceSig, surface_and_filling, taut_obstruction
from .errors import HypothesisViolated
from .incidence import incidence_matrix
from .pretrack import BIGON_TRACK, TRAIN_TRACK, RegionCensus, build_pretrack, classify_regions
from .render import fraction_text
from .spectral import DEFAULT_TOL, SpectralEnclosure, is_primitive, pf_enclosure, row_sum_bound

CERTIFIED = "certified dilatation enclosure"
UNCERTIFIED = "PF eigenvalue of M only"

PASS, FAIL, NOT_APPLICABLE = "pass", "fail", "n/a"


@dataclass(frozen=True)
class AnalysisReport:
    name: str
    surface: SurfaceSig
    self_int: int
    filling: bool
    taut_warnings: tuple[str, ...] = ()
    census: RegionCensus | None = None
    row_sum_bound: int | None = None
    primitive: bool | None = None
    enclosure: SpectralEnclosure | None = None
    enclosure_label: str | None = None
    bounds: BoundsReport | None = None
    verdict: str = NOT_APPLICABLE
    warnings: tuple[str, ...] = field(default=())

    @property
    def track_class(self) -> str | None:
        return self.census.track_class if self.census else None

    def to_json(self) -> dict:
        out = {
            "name": self.name,
            "surface": {"genus": self.surface.genus, "punctures": self.surface.punctures},
            "self_intersections": self.self_int,
            "filling": self.filling,
            "taut_warnings": list(self.taut_warnings),
            "warnings": list(self.warnings),
        }
        if self.census is not None:
            out["regions"] = self.census.to_json()
            out["track_class"] = self.track_class
        if self.row_sum_bound is not None:
            out["matrix"] = {"row_sum_bound": self.row_sum_bound, "primitive": self.primitive}
        if self.enclosure is not None:
            enc = self.enclosure.to_json()
            enc["label"] = self.enclosure_label
            enc["width"] = fraction_text(self.enclosure.width)
            out["enclosure"] = enc
        if self.bounds is not None:
            out["bounds"] = self.bounds.to_json()
        out["sandwich"] = self.verdict
        return out


def sandwich(bounds: BoundsReport, enc: SpectralEnclosure) -> bool:
    """log_lower <= ln(lo) and ln(hi) <= log_upper."""
    if enc.lo <= 0:
        return False
    return bounds.log_lower <= math.log(enc.lo) and math.log(enc.hi) <= bounds.log_upper


def analyze(diagram: CurveDiagram, tol: Fraction | float = DEFAULT_TOL) -> AnalysisReport:
    rep = surface_and_filling(diagram)
    taut = tuple(
        f"{f.label} is an unpunctured {'monogon' if f.n_corners == 1 else 'bigon'}; the curve is not in minimal position"
        for f in taut_obstruction(diagram)
    )
    warnings = []
    if not rep.euler_bound_holds:
        warnings.append("self-intersection count is below the Euler-characteristic bound")
    base = dict(
        name=diagram.name,
        surface=rep.surface,
        self_int=diagram.self_intersections,
        filling=rep.filling,
        taut_warnings=taut,
    )
    if not rep.filling:
        return AnalysisReport(**base, warnings=tuple(warnings))
    if not rep.kra_hypothesis:
        raise HypothesisViolated(f"{rep.surface} does not satisfy 3g+n>3")

    track = build_pretrack(diagram)
    census = classify_regions(track)
    m = incidence_matrix(diagram)
    prim = is_primitive(m)
    bounds = weakest_dilatation_bounds(diagram.self_intersections, rep.surface)
    enc = label = None
    verdict = NOT_APPLICABLE
    if prim:
        enc = pf_enclosure(m, tol=tol)
        certified = census.track_class in (TRAIN_TRACK, BIGON_TRACK)
        label = CERTIFIED if certified else UNCERTIFIED
        if certified:
            verdict = PASS if sandwich(bounds, enc) else FAIL
        if not enc.converged:
            warnings.append(f"iteration cap reached after {enc.iterations} steps; bracket is wider than tol")
    else:
        warnings.append("incidence matrix is not primitive; no enclosure computed")
    return AnalysisReport(
        **base,
        census=census,
        row_sum_bound=row_sum_bound(m),
        primitive=prim,
        enclosure=enc,
        enclosure_label=label,
        bounds=bounds,
        verdict=verdict,
        warnings=tuple(warnings),
    )
