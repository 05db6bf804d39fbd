"""Twist deformations, Wolpert's derivative formulas and twist recovery.

Twists are measured in length units: twisting curve i by t moves the two sides
of C_i past each other by hyperbolic distance t, so ``theta_i`` grows by
``2 pi t / l_i``. With the chart of :mod:`fnlab.holonomy` the length of a
crossing curve then changes at rate ``sum cos theta(p)``.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np
from scipy.optimize import brentq

from .certificates import BoundKind, CertifiedBound
from .errors import NotPureTwistError, UnsupportedError, ValidationError
from .holonomy import Holonomy, IntersectionPoint, curve_length, holonomy_rep, intersection_data
from .surface import (CurveClass, FNPoint, PantsDecomposition, ShigaBounds, decomposition_curve,
                      dehn_twist_class, dual_curve, intersection_number, make_fn_point)

#: Step of the centered first difference (one Richardson level).
FD_STEP_FIRST = 1e-5
#: Step of the centered second difference. Larger than the first-derivative
#: step because the h^-2 roundoff term dominates below about 1e-4.
FD_STEP_SECOND = 1e-3


@dataclass(frozen=True)
class TwistVector:
    """Finitely supported twist amounts t_i in length units."""

    entries: Mapping[int, float]

    def __post_init__(self):
        ent = {int(k): float(v) for k, v in dict(self.entries).items()}
        for k, v in ent.items():
            if not math.isfinite(v):
                raise ValidationError(f"twist amount for curve {k} is not finite")
        object.__setattr__(self, "entries", dict(sorted(ent.items())))

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(self.entries)

    @property
    def norm(self) -> float:
        """|t| = sup |t_i|."""
        return max((abs(v) for v in self.entries.values()), default=0.0)

    def __neg__(self) -> "TwistVector":
        return TwistVector({k: -v for k, v in self.entries.items()})

    def __hash__(self):
        return hash(tuple(self.entries.items()))


def _check_interior(decomp: PantsDecomposition, i: int):
    if not decomp.curve(i).interior:
        raise ValidationError(f"curve {i} is a boundary curve and carries no twist")


def twist(p: FNPoint, i: int, t: float) -> FNPoint:
    """Left Fenchel-Nielsen twist of length t along interior curve i."""
    _check_interior(p.decomposition, i)
    if t == 0:
        return p
    tw = list(p.twists)
    tw[i] += 2.0 * math.pi * t / p.lengths[i]
    return make_fn_point(p.decomposition, p.lengths, tw)


def multi_twist(p: FNPoint, tv: TwistVector) -> FNPoint:
    tw = list(p.twists)
    for i, t in tv.entries.items():
        _check_interior(p.decomposition, i)
        tw[i] += 2.0 * math.pi * t / p.lengths[i]
    return make_fn_point(p.decomposition, p.lengths, tw)


def _rep(x) -> Holonomy:
    return x if isinstance(x, Holonomy) else holonomy_rep(x)


def length_along_twist(p: FNPoint, i: int, beta: CurveClass, ts: Sequence[float]) -> np.ndarray:
    """Samples of t -> l_t(beta) along the twist flow about C_i."""
    _check_interior(p.decomposition, i)
    rep = holonomy_rep(p)
    return np.array([curve_length(rep.with_point(twist(p, i, float(t))), beta) for t in ts])


def _points(rep: Holonomy, i: int, beta: CurveClass) -> list[IntersectionPoint]:
    dec = rep.decomposition
    _check_interior(dec, i)
    n = intersection_number(beta, dec, i)
    if n not in (1, 2):
        raise UnsupportedError(f"twist derivative formulas need 1 or 2 intersections, got {n}")
    return intersection_data(rep, decomposition_curve(dec, i), beta)


def wolpert_d1(p, i: int, beta: CurveClass) -> float:
    """First twist derivative of l(beta): sum of cos theta over the crossings."""
    return math.fsum(pt.cos for pt in _points(_rep(p), i, beta))


def _coth_half(l: float) -> float:
    """(e^l + 1) / (e^l - 1)."""
    return 1.0 / math.tanh(l / 2.0)


def wolpert_d2_from_points(pts: Sequence[IntersectionPoint]) -> float:
    if len(pts) == 1:
        (pt,) = pts
        l = pt.subarcs[0]
        return 0.5 * _coth_half(l) * pt.sin ** 2
    p1, p2 = pts
    l1, l2 = p1.subarcs
    l = l1 + l2
    # (e^l1 + e^l2) / (e^l - 1), scaled by e^-l against overflow
    cross = (math.exp(l1 - l) + math.exp(l2 - l)) / -math.expm1(-l)
    return cross * p1.sin * p2.sin + 0.5 * _coth_half(l) * (p1.sin ** 2 + p2.sin ** 2)


def wolpert_d2(p, i: int, beta: CurveClass) -> float:
    """Second twist derivative of l(beta).

    One crossing: (e^l + 1) / (2 (e^l - 1)) sin^2 theta. Two crossings, with
    l1, l2 the arcs of beta between them: the same diagonal terms plus the
    cross term (e^l1 + e^l2) / (e^l - 1) sin theta1 sin theta2.
    """
    return wolpert_d2_from_points(_points(_rep(p), i, beta))


def richardson_first(f, h: float) -> float:
    d = lambda s: (f(s) - f(-s)) / (2.0 * s)
    return (4.0 * d(h / 2.0) - d(h)) / 3.0


def richardson_second(f, h: float) -> float:
    f0 = f(0.0)
    d = lambda s: (f(s) - 2.0 * f0 + f(-s)) / (s * s)
    return (4.0 * d(h / 2.0) - d(h)) / 3.0


def _length_fn(p: FNPoint, i: int, beta: CurveClass, rep: Holonomy | None = None):
    rep = rep if rep is not None else holonomy_rep(p)
    return lambda t: curve_length(rep.with_point(twist(p, i, t)), beta)


def fd_d1(p: FNPoint, i: int, beta: CurveClass, h: float = FD_STEP_FIRST) -> float:
    return richardson_first(_length_fn(p, i, beta), h)


def fd_d2(p: FNPoint, i: int, beta: CurveClass, h: float = FD_STEP_SECOND) -> float:
    return richardson_second(_length_fn(p, i, beta), h)


# ---------------------------------------------------------------------------
# Measured constants


@dataclass(frozen=True)
class ShigaConstants:
    """Constants of the twist bound, measured by sweeping the Shiga box.

    L bounds the normalized dual lengths, rho0 / rho1 bound sin theta from
    below for duals and their once-twisted images, A bounds the two-crossing
    second derivative from below. The sweep is empirical: these are measured
    constants with a safety margin, not closed-form ones.
    """

    delta: float
    M: float
    L: float
    rho0: float
    rho1: float
    A: float
    samples: int
    seed: int
    margin: float = 0.05

    @property
    def rho(self) -> float:
        return min(self.rho0, self.rho1)

    @property
    def K(self) -> float:
        x = self.L + self.M
        return 0.25 * _coth_half(x)

    @property
    def lam(self) -> float:
        """Threshold on cos theta for single crossings: K rho^2 delta / 2."""
        return self.K * self.rho ** 2 * self.delta / 2.0

    @property
    def lam0(self) -> float:
        """Threshold on cos theta1 + cos theta2 for two crossings, below A delta / 2."""
        return self.A * self.delta / 4.0

    @property
    def n_max(self) -> float:
        """Upper bound on the number of normalizing Dehn twists."""
        r = self.rho0
        return 4.0 * math.tanh(self.L / 2.0) * math.sqrt(1.0 - r * r) / (r * r) + 1.0


def e_of(D: float) -> float:
    """e(D) = 1 + sum_{n>=2} D^{n-1}/n! = (e^D - 1) / D."""
    return math.expm1(D) / D if D > 0 else 1.0


def normalized_dual(p: FNPoint, i: int) -> tuple[CurveClass, int]:
    """Dual of C_i twisted back so its effective twist lies in [-l/2, l/2]."""
    n0 = round(p.twist_length(i) / p.lengths[i])
    return dehn_twist_class(p.decomposition, dual_curve(p.decomposition, i), i, -n0), n0


@functools.lru_cache(maxsize=64)
def measure_shiga_constants(decomp: PantsDecomposition, delta: float, M: float,
                            samples: int = 160, seed: int = 0) -> ShigaConstants:
    """Sweep the box delta <= l <= M (normalized twists) and record L, rho0, rho1, A."""
    ShigaBounds(delta, M)
    rng = np.random.default_rng(seed)
    n, m = decomp.n_curves, decomp.n_interior
    configs = []
    for corner in (delta, M):
        for frac in (-0.5, 0.0, 0.5):
            configs.append(([corner] * n, [frac] * m))
    for _ in range(samples):
        ls = np.exp(rng.uniform(math.log(delta), math.log(M), n))
        configs.append((list(ls), list(rng.uniform(-0.5, 0.5, m))))
    L, rho0, rho1, A = 0.0, 1.0, 1.0, math.inf
    duals = [dual_curve(decomp, i) for i in range(m)]
    plus = [dehn_twist_class(decomp, b, i, 1) for i, b in enumerate(duals)]
    minus = [dehn_twist_class(decomp, b, i, -1) for i, b in enumerate(duals)]
    for ls, fracs in configs:
        th = [2.0 * math.pi * f for f in fracs]
        rep = holonomy_rep(make_fn_point(decomp, ls, th))
        for i in range(m):
            pts = _points(rep, i, duals[i])
            L = max(L, pts[0].subarcs[0] if len(pts) == 1 else sum(pts[0].subarcs))
            rho0 = min(rho0, *(pt.sin for pt in pts))
            for c in (plus[i], minus[i]):
                rho1 = min(rho1, *(pt.sin for pt in _points(rep, i, c)))
            if len(pts) == 2:
                A = min(A, wolpert_d2_from_points(pts))
    if A == math.inf:
        A = 0.0
    k = 0.05
    return ShigaConstants(delta, M, float(L * (1 + k)), float(rho0 * (1 - k)),
                          float(rho1 * (1 - k)), float(A * (1 - k)),
                          samples, seed, k)


# ---------------------------------------------------------------------------
# Recovery


@dataclass(frozen=True)
class RecoveryResult:
    t_hat: float
    bound: CertifiedBound
    shift: int = 0
    diagnostics: dict = field(default_factory=dict, compare=False)


def _expand_root(g, lo: float, hi: float, step: float, max_iter: int = 200) -> float:
    glo, ghi = g(lo), g(hi)
    it = 0
    while glo * ghi > 0:
        if it > max_iter:
            raise ValidationError("could not bracket the twist root")
        # g is increasing: move toward the sign change
        if glo > 0:
            lo -= step
            glo = g(lo)
        else:
            hi += step
            ghi = g(hi)
        step *= 1.5
        it += 1
    if glo == 0:
        return lo
    if ghi == 0:
        return hi
    return brentq(g, lo, hi, xtol=1e-14, rtol=4 * np.finfo(float).eps, maxiter=500)


def _check_pure_twist(p: FNPoint, q: FNPoint, i: int):
    if p.decomposition != q.decomposition:
        raise NotPureTwistError("points live on different decompositions")
    for k, (a, b) in enumerate(zip(p.lengths, q.lengths)):
        if abs(a - b) > 1e-12 * max(abs(a), abs(b)):
            raise NotPureTwistError(f"lengths of curve {k} differ ({a!r} vs {b!r})")
    for k, (a, b) in enumerate(zip(p.twists, q.twists)):
        if k != i and abs(a - b) > 1e-12 * max(1.0, abs(a)):
            raise NotPureTwistError(f"twist of curve {k} differs; not a twist along curve {i}")


def twist_recover(p: FNPoint, q: FNPoint, i: int, bounds: ShigaBounds | None = None,
                  constants: ShigaConstants | None = None) -> RecoveryResult:
    """Recover t with q = twist(p, i, t) from dual-curve lengths and angles.

    The recovery reads only lengths and intersection angles of the dual curve
    and its twist images on q: it picks the Dehn-twist image of minimal length,
    then inverts the strictly convex length function of p (through the
    monotone derivative near the minimum, through the length itself on the
    steep branches). The accompanying upper bound is C * sup |log ratio| over
    the twisted duals the argument uses.
    """
    dec = p.decomposition
    _check_interior(dec, i)
    _check_pure_twist(p, q, i)
    if q.twists == p.twists:
        zero = CertifiedBound(0.0, BoundKind.UPPER, "twist-recovery-bound", meta={"regime": "identical"})
        return RecoveryResult(0.0, zero)
    l = p.lengths[i]
    beta0, n0 = normalized_dual(p, i)
    rep_p = holonomy_rep(p)
    rep_q = rep_p.with_point(q)

    @functools.lru_cache(maxsize=None)
    def image(n):
        return dehn_twist_class(dec, beta0, i, n)

    def lq(n):
        return curve_length(rep_q, image(n))

    # the lengths l_q(Tw^n beta0) = f_p(t + n l) are convex in n; walk downhill
    n_star = 0
    for direction in (1, -1):
        while lq(n_star + direction) < lq(n_star):
            n_star += direction
    target = lq(n_star)
    slope = wolpert_d1(rep_q, i, image(n_star))

    def rep_at(s):
        return rep_p.with_point(twist(p, i, s)) if s else rep_p

    d1 = lambda s: wolpert_d1(rep_at(s), i, beta0)
    f = lambda s: curve_length(rep_at(s), beta0)
    t0 = _expand_root(d1, -l, l, l)
    if abs(slope) < 0.5:
        s_star = _expand_root(lambda s: d1(s) - slope, t0 - l, t0 + l, l)
    elif slope > 0:
        s_star = _expand_root(lambda s: f(s) - target, t0, t0 + 2 * l, l)
    else:
        s_star = _expand_root(lambda s: target - f(s), t0 - 2 * l, t0, l)
    t_hat = s_star - n_star * l

    bound, diag = _twist_bound(p, q, i, beta0, rep_p, rep_q, t0, bounds, constants)
    diag.update({"n_star": n_star, "n0": n0, "t0": t0})
    return RecoveryResult(t_hat, bound, n_star, diag)


def _twist_bound(p, q, i, beta0, rep_p, rep_q, t0, bounds, constants):
    dec = p.decomposition
    if constants is None:
        if bounds is None:
            lo, hi = min(p.lengths), max(p.lengths)
            bounds = ShigaBounds(0.3, 3.0) if (lo >= 0.3 and hi <= 3.0) else ShigaBounds(lo, hi)
        constants = measure_shiga_constants(dec, bounds.delta, bounds.M)
    k = intersection_number(beta0, dec, i)
    lam = constants.lam if k == 1 else constants.lam0
    if not lam > 0:
        raise ValidationError("measured constants give a zero threshold")
    best = 0.0
    diag = {"constants": constants, "k": k, "lambda": lam}
    for sigma in (1, -1):
        cos0 = sigma * wolpert_d1(rep_p, i, beta0)
        if cos0 >= lam:
            regime = "steep"
        elif abs(cos0) < lam:
            regime = "flat"
        else:
            regime = "reversed"
        N = 0
        c = dehn_twist_class(dec, beta0, i, 0)
        while sigma * wolpert_d1(rep_p, i, c) < lam:
            N += 1
            c = dehn_twist_class(dec, beta0, i, sigma * N)
            if N > 10_000:
                raise ValidationError("twist normalization did not terminate")
        lp, lq = curve_length(rep_p, c), curve_length(rep_q, c)
        eta = abs(math.log(lq / lp))
        L_eff = max(constants.L + k * N * constants.M, lp)
        C = e_of(max(1.0, eta)) * L_eff / lam
        value = C * eta
        diag[sigma] = {"regime": regime, "N": N, "C": C, "eta": eta,
                       "N_exceeds_max": N > constants.n_max}
        best = max(best, value)
    bound = CertifiedBound(best, BoundKind.UPPER, "twist-recovery-bound",
                           meta={"regimes": (diag[1]["regime"], diag[-1]["regime"])})
    return bound, diag
