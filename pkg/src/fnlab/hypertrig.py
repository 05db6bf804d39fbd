"""Closed-form trigonometry of right-angled hyperbolic polygons.

Identities used (sides a, b, c pairwise non-adjacent, with gamma the side
between a and b, opposite c; similarly alpha opposite a, beta opposite b):

    cosh c     = sinh a sinh b cosh gamma - cosh a cosh b      (hexagon)
    cosh alpha = (cosh a + cosh b cosh c) / (sinh b sinh c)    (hexagon, dual form)
    cosh c     = sinh a sinh b                                 (pentagon, c opposite the
                                                                right angle between a, b)

plus the collar half-width w(l) = arcsinh(1 / sinh(l/2)) and the trace
identity |tr| = 2 cosh(l/2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

from .errors import DegeneracyError, DomainError, NonHyperbolicError

#: Width of the band below 1 inside which arccosh arguments are clamped.
CLAMP_BAND = 1e-10

Direction = Literal["length_to_trace", "trace_to_length"]


@dataclass(frozen=True)
class HexagonSides:
    """Six sides of a right-angled hexagon, cyclic order a, gamma, b, alpha, c, beta."""

    a: float
    b: float
    c: float
    alpha: float
    beta: float
    gamma: float

    def __post_init__(self):
        for name in ("a", "b", "c", "alpha", "beta", "gamma"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise DegeneracyError(f"hexagon side {name}={v!r} is not positive")

    def identity_residual(self) -> float:
        """Relative residual of the law of cosines for side c."""
        lhs = math.cosh(self.c)
        rhs = (math.sinh(self.a) * math.sinh(self.b) * math.cosh(self.gamma)
               - math.cosh(self.a) * math.cosh(self.b))
        return abs(lhs - rhs) / abs(lhs)


def _check_length(x: float, name: str = "length") -> float:
    x = float(x)
    if not math.isfinite(x) or x <= 0:
        raise DomainError(f"{name} must be positive and finite, got {x!r}")
    return x


def acosh_clamped(x: float) -> float:
    """arccosh with arguments in [1 - CLAMP_BAND, 1) snapped to 1."""
    if x >= 1.0:
        return math.acosh(x)
    if x >= 1.0 - CLAMP_BAND:
        return 0.0
    raise DegeneracyError(f"arccosh argument {x!r} below 1")


_LN2 = math.log(2.0)


def _log_cosh(x: float) -> float:
    return x + math.log1p(math.exp(-2.0 * x)) - _LN2


def _log_sinh(x: float) -> float:
    if x < 20.0:
        return math.log(math.sinh(x))
    return x + math.log1p(-math.exp(-2.0 * x)) - _LN2


def hexagon_opposite_side(a: float, b: float, c: float) -> float:
    """Side opposite ``a`` in the right-angled hexagon with alternate sides a, b, c."""
    a, b, c = (_check_length(v) for v in (a, b, c))
    if max(a, b, c) < 300.0 and min(b, c) > 1e-100:
        arg = (math.cosh(a) + math.cosh(b) * math.cosh(c)) / (math.sinh(b) * math.sinh(c))
        return acosh_clamped(arg)
    # extreme sides: work with log of the argument to avoid overflow and underflow
    lnum = _log_cosh(b) + _log_cosh(c)
    lnum = max(lnum, _log_cosh(a)) + math.log1p(math.exp(-abs(lnum - _log_cosh(a))))
    larg = lnum - _log_sinh(b) - _log_sinh(c)
    if larg > 20.0:
        return larg + _LN2  # arccosh x = log 2x up to 1/(4x^2)
    return acosh_clamped(math.exp(larg))


def solve_right_hexagon(a: float, b: float, gamma: float) -> HexagonSides:
    """Complete a right-angled hexagon from sides a, b and the side gamma between them."""
    a = _check_length(a, "a")
    b = _check_length(b, "b")
    gamma = _check_length(gamma, "gamma")
    arg = math.sinh(a) * math.sinh(b) * math.cosh(gamma) - math.cosh(a) * math.cosh(b)
    c = acosh_clamped(arg)
    if c == 0.0:
        raise DegeneracyError("hexagon side c collapsed to zero")
    alpha = hexagon_opposite_side(a, b, c)
    beta = hexagon_opposite_side(b, c, a)
    return HexagonSides(a=a, b=b, c=c, alpha=alpha, beta=beta, gamma=gamma)


def solve_right_pentagon(a: float, b: float) -> float:
    """Side opposite the right angle between the adjacent sides a and b."""
    a = _check_length(a, "a")
    b = _check_length(b, "b")
    prod = math.sinh(a) * math.sinh(b)
    if prod <= 1.0 + CLAMP_BAND:
        raise DegeneracyError(f"sinh a * sinh b = {prod!r} <= 1: no right-angled pentagon")
    return math.acosh(prod)


def pants_seams(l0: float, l1: float, l2: float) -> tuple[float, float, float]:
    """Seam lengths (s01, s12, s20) of a pair of pants with cuff lengths l0, l1, l2.

    The pants is the double of the hexagon with alternate sides l0/2, l1/2, l2/2;
    seam s_jk is the common perpendicular between cuffs j and k.
    """
    h = [_check_length(v, "cuff length") / 2.0 for v in (l0, l1, l2)]
    s01 = hexagon_opposite_side(h[2], h[0], h[1])
    s12 = hexagon_opposite_side(h[0], h[1], h[2])
    s20 = hexagon_opposite_side(h[1], h[2], h[0])
    return s01, s12, s20


def collar_halfwidth(l: float) -> float:
    """Half-width of the standard embedded collar about a geodesic of length l."""
    l = _check_length(l, "l")
    if l > 1400.0:
        return 2.0 * math.exp(-l / 2.0)
    return math.asinh(1.0 / math.sinh(l / 2.0))


def collar_log_constant(L: float) -> float:
    """Largest C with 2 w(l) >= C |log l| for every l in (0, L], l != 1.

    On (0, 1) the ratio 2 w(l) / |log l| exceeds 2 and tends to 2 as l -> 0,
    since 2l/(1 - l^2) > sinh(l/2) there. On (1, inf) it is strictly decreasing
    (w decreases, log increases), so its infimum over (1, L] sits at L.
    """
    L = _check_length(L, "L")
    if L <= 1.0:
        return 2.0
    return min(2.0, 2.0 * collar_halfwidth(L) / math.log(L))


def length_to_trace(l: float) -> float:
    return 2.0 * math.cosh(_check_length(l) / 2.0)


def trace_to_length(tr: float) -> float:
    x = abs(float(tr))
    if not math.isfinite(x):
        raise DomainError(f"trace must be finite, got {tr!r}")
    if x <= 2.0:
        raise NonHyperbolicError(f"|trace| = {x!r} <= 2 is not hyperbolic")
    return 2.0 * math.acosh(x / 2.0)


def length_trace_convert(x: float, direction: Direction) -> float:
    if direction == "length_to_trace":
        return length_to_trace(x)
    if direction == "trace_to_length":
        return trace_to_length(x)
    raise DomainError(f"unknown direction {direction!r}")
