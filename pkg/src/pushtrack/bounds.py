"""Closed-form dilatation bounds, evaluated in the log domain.

These are display values in double precision, not certified quantities; the
certified numbers live in :mod:`pushtrack.spectral`.  Working with logs keeps
``9**i`` from overflowing for large self-intersection numbers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .curve import SurfaceSig
from .errors import BadParameters, HypothesisViolated

PRIMITIVE = "primitive"
SQUARE_S04_S12 = "square_S04_S12"
POWER234_S11 = "power234_S11"
OTHER = "other"
POWER_CLASSES = (PRIMITIVE, SQUARE_S04_S12, POWER234_S11, OTHER)

LOWER_CENTRAL = "lower_central"
DERIVED = "derived"
LOWER_CENTRAL_PUNCTURED = "lower_central_punctured"
SERIES = (LOWER_CENTRAL, DERIVED, LOWER_CENTRAL_PUNCTURED)

LOG9 = math.log(9)
LOG11 = math.log(11)

_SQUARE_SURFACES = (SurfaceSig(0, 4), SurfaceSig(1, 2))
_S11 = SurfaceSig(1, 1)


@dataclass(frozen=True)
class BoundsReport:
    self_int: int | None
    surface: SurfaceSig
    power_class: str | None
    log_lower: float
    log_upper: float | None
    upper_strict: bool = False
    warnings: tuple[str, ...] = ()
    extras: dict = field(default_factory=dict)

    @property
    def lower(self) -> float:
        return math.exp(self.log_lower)

    @property
    def upper(self) -> float | None:
        if self.log_upper is None:
            return None
        try:
            return math.exp(self.log_upper)
        except OverflowError:
            return math.inf

    def to_json(self) -> dict:
        upper = self.upper
        return {
            "self_int": self.self_int,
            "surface": {"genus": self.surface.genus, "punctures": self.surface.punctures},
            "power_class": self.power_class,
            "log_lower": self.log_lower,
            "log_upper": self.log_upper,
            "lower": self.lower,
            "upper": None if upper is None or math.isinf(upper) else upper,
            "upper_strict": self.upper_strict,
            "warnings": list(self.warnings),
            "extras": dict(sorted(self.extras.items())),
        }


def _require_kra(surface: SurfaceSig) -> None:
    if not surface.satisfies_kra:
        raise HypothesisViolated(f"{surface} does not satisfy 3g+n>3")


def euler_bound_holds(i: int, surface: SurfaceSig) -> bool:
    """A filling curve has i >= 2g+n-2, strictly on a closed surface."""
    bound = 2 * surface.genus + surface.punctures - 2
    return i > bound if surface.punctures == 0 else i >= bound


def lower_case(surface: SurfaceSig, power_class: str) -> str:
    """Which case of the power-class lower bound applies: 'i', 'ii' or 'iii'."""
    if power_class not in POWER_CLASSES:
        raise BadParameters(f"unknown power class {power_class!r}; choose from {POWER_CLASSES}")
    if power_class == SQUARE_S04_S12:
        if surface not in _SQUARE_SURFACES:
            raise HypothesisViolated(f"{power_class} only applies on S_{{0,4}} or S_{{1,2}}, not {surface}")
        return "i"
    if power_class == POWER234_S11:
        if surface != _S11:
            raise HypothesisViolated(f"{power_class} only applies on S_{{1,1}}, not {surface}")
        return "ii"
    return "iii"


def _log_lower_for(i: int, case: str) -> float:
    if case == "i":
        return math.log(i) / 5
    if case == "ii":
        return math.log((i + 1) / 2) / 5
    return math.log(i + 1) / 5


def dilatation_bounds(i: int, surface: SurfaceSig, power_class: str = PRIMITIVE) -> BoundsReport:
    """Lower bound from the power class, upper bound ``9**i`` regardless."""
    _require_kra(surface)
    if i < 1:
        raise BadParameters("self-intersection number must be >= 1")
    case = lower_case(surface, power_class)
    warnings = []
    if not euler_bound_holds(i, surface):
        warnings.append(f"i={i} is below the Euler bound for {surface}; no filling curve has it")
    return BoundsReport(
        self_int=i,
        surface=surface,
        power_class=power_class,
        log_lower=_log_lower_for(i, case),
        log_upper=i * LOG9,
        warnings=tuple(warnings),
        extras={"case": case},
    )


def weakest_lower_case(surface: SurfaceSig) -> str:
    """Case to use when nothing is known about primitivity."""
    if surface in _SQUARE_SURFACES:
        return "i"
    if surface == _S11:
        return "ii"
    return "iii"


def weakest_dilatation_bounds(i: int, surface: SurfaceSig) -> BoundsReport:
    cls = {"i": SQUARE_S04_S12, "ii": POWER234_S11, "iii": OTHER}[weakest_lower_case(surface)]
    return dilatation_bounds(i, surface, cls)


def least_dilatation_bounds(surface: SurfaceSig, k: int | None = None) -> BoundsReport:
    """Bounds on the least entropy over point-pushing pseudo-Anosovs, optionally
    restricted to pushing curves with ``k`` self-intersections."""
    _require_kra(surface)
    g, n = surface.genus, surface.punctures
    if k is not None:
        if n != 0 or g < 3:
            raise HypothesisViolated("the stratified bound needs a closed surface of genus >= 3")
        if k < 3 * g - 1:
            raise HypothesisViolated(f"the stratified bound needs k >= 3g-1 = {3 * g - 1}, got {k}")
        return BoundsReport(
            self_int=k,
            surface=surface,
            power_class=None,
            log_lower=math.log(k + 1) / 5,
            log_upper=math.log(k) + g * LOG11,
            upper_strict=True,
        )
    if n == 0 and g >= 2:
        return BoundsReport(None, surface, None, math.log(2 * g) / 5, g * LOG11, upper_strict=True)
    return BoundsReport(None, surface, None, math.log(2 * g + n - 1) / 5, None)


@dataclass(frozen=True)
class AlgebraicBound:
    series: str
    k: int
    log_bound: float
    log_simplified: float | None = None
    vacuous: bool = False
    weak_form: bool = False

    def to_json(self) -> dict:
        return {
            "series": self.series,
            "k": self.k,
            "log_bound": self.log_bound,
            "log_simplified": self.log_simplified,
            "vacuous": self.vacuous,
            "weak_form": self.weak_form,
        }


def _min_self_int(series: str, k: int, surface: SurfaceSig) -> float:
    # smallest self-intersection number a depth-k element can have
    if series == LOWER_CENTRAL:
        return math.log(k, 8) - 1
    return k / (4 * surface.genus + surface.punctures - 1) - 1


def algebraic_lower_bounds(k: int, series: str, surface: SurfaceSig) -> AlgebraicBound:
    """Log lower bound for a filling loop at depth ``k`` of a series.

    Nonpositive values are clamped to 0 and flagged ``vacuous``: every
    dilatation is at least 1 anyway.  Surfaces with 3g+n in {4, 5} get the
    weaker power-class form and ``weak_form=True``.
    """
    if series not in SERIES:
        raise BadParameters(f"unknown series {series!r}; choose from {SERIES}")
    if k < 1:
        raise BadParameters("depth k must be >= 1")
    _require_kra(surface)
    if series == LOWER_CENTRAL_PUNCTURED and surface.punctures < 1:
        raise HypothesisViolated("the punctured lower-central bound needs n >= 1")
    if series == DERIVED:
        # 2^(ceil(k/2)-2) + 1 stands in for i+1
        i_plus_one = 2 ** (math.ceil(k / 2) - 2) + 1
    else:
        i_plus_one = _min_self_int(series, k, surface) + 1
    case = weakest_lower_case(surface)
    weak = case != "iii"
    if weak:
        if case == "i":
            i_plus_one -= 1
        elif case == "ii":
            i_plus_one /= 2
    raw = math.log(i_plus_one) / 5 if i_plus_one > 0 else -math.inf
    simplified = (k - 4) / 10 * math.log(2) if series == DERIVED and not weak else None
    return AlgebraicBound(
        series=series,
        k=k,
        log_bound=max(raw, 0.0),
        log_simplified=simplified,
        vacuous=raw <= 0,
        weak_form=weak,
    )


@dataclass(frozen=True)
class PowerCurveBounds:
    i_primitive: int
    m: int
    self_int_bound: int
    log_dilatation: float
    c: float
    log_guaranteed: float

    def to_json(self) -> dict:
        return {
            "i_primitive": self.i_primitive,
            "m": self.m,
            "self_int_bound": self.self_int_bound,
            "log_dilatation": self.log_dilatation,
            "C": self.c,
            "log_guaranteed": self.log_guaranteed,
        }


def power_curve_bounds(i_primitive: int, m: int, log_lambda: float) -> PowerCurveBounds:
    """What is known about the ``m``-th power of a curve with ``i_primitive``
    self-intersections and dilatation ``exp(log_lambda)``.

    The guaranteed value ``C * sqrt(i(gamma^m))`` uses the intersection bound
    in place of the true ``i(gamma^m)``, so it never exceeds ``m * log_lambda``.
    """
    if i_primitive < 1 or m < 1 or log_lambda <= 0:
        raise BadParameters("i, m and log(lambda) must be positive")
    bound = m * m * i_primitive + m - 1
    c = log_lambda / math.sqrt(2 * i_primitive)
    return PowerCurveBounds(
        i_primitive=i_primitive,
        m=m,
        self_int_bound=bound,
        log_dilatation=m * log_lambda,
        c=c,
        log_guaranteed=c * math.sqrt(bound),
    )
