"""Batch experiments producing CSV report tables.

Every report starts with ``# key: value`` metadata lines (configuration,
summary statistics, caveats), followed by one fixed header line and the data
rows. Floats are written with 17 significant digits, and nothing depends on
the clock, so a rerun with the same configuration is byte-identical.
"""

from __future__ import annotations

import io
import math
import warnings
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from .errors import ValidationError
from .holonomy import holonomy_rep
from .metrics import (ThickPartSpec, ThickStatus, d_arc_lower, d_fn, d_ls_lower, thick_membership,
                      twist_dls_upper, twist_dls_upper_pair)
from .surface import FNPoint, build_decomposition, dual_curve, make_fn_point, preset
from .twistflow import fd_d1, fd_d2, twist, wolpert_d1, wolpert_d2

WOLPERT_PRESETS = ("one-holed-torus", "four-holed-sphere", "genus-2")
UNDERFLOW = 1e-12


@dataclass(frozen=True)
class ExperimentConfig:
    """Parameters shared by the experiments; each experiment reads what it needs."""

    name: str
    surface: str = "four-holed-sphere"
    presets: tuple[str, ...] = WOLPERT_PRESETS
    k_min: int = 3
    k_max: int = 20
    eps_base: float = 2.0
    t: float = 1.0
    samples: int = 34
    budget: int = 2
    seed: int = 0
    delta: float = 0.3
    M: float = 3.0
    epsilon: float = 0.3
    epsilon0: float | None = None
    radius: float = 1.0
    thin_epsilon: float | None = None
    max_tries: int = 200
    out: str | None = None

    def __post_init__(self):
        if self.k_max < self.k_min:
            raise ValidationError(f"empty k range {self.k_min}..{self.k_max}")
        if self.samples < 1:
            raise ValidationError("samples must be >= 1")
        if not self.presets:
            raise ValidationError("no presets configured")
        if self.budget < 0:
            raise ValidationError("budget must be >= 0")
        if not (0 < self.delta <= self.M):
            raise ValidationError("need 0 < delta <= M")
        if not self.eps_base > 1:
            raise ValidationError("eps_base must exceed 1")
        if self.radius <= 0 or self.epsilon <= 0:
            raise ValidationError("radius and epsilon must be positive")

    def eps(self, k: int) -> float:
        return self.eps_base ** (-k)


def _fmt(x: Any) -> str:
    if isinstance(x, (float, np.floating)):
        return format(float(x), ".17g")
    if x is None:
        return ""
    return str(x)


@dataclass
class Report:
    name: str
    header: tuple[str, ...]
    rows: list[tuple] = field(default_factory=list)
    meta: dict[str, Any] = field(default_factory=dict)
    summary: dict[str, Any] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)

    def column(self, name: str) -> list:
        j = self.header.index(name)
        return [r[j] for r in self.rows]

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write(f"# experiment: {self.name}\n")
        for k, v in list(self.meta.items()) + list(self.summary.items()):
            buf.write(f"# {k}: {_fmt(v)}\n")
        for w in self.warnings:
            buf.write(f"# warning: {w}\n")
        buf.write(",".join(self.header) + "\n")
        for r in self.rows:
            buf.write(",".join(_fmt(x) for x in r) + "\n")
        return buf.getvalue()

    def write(self, path: str | Path) -> None:
        Path(path).write_text(self.to_csv(), encoding="utf-8")


def _config_meta(cfg: ExperimentConfig, keys: Sequence[str]) -> dict:
    d = asdict(cfg)
    return {k: d[k] for k in keys}


def _warn(report: Report, msg: str):
    report.warnings.append(msg)
    warnings.warn(msg, RuntimeWarning, stacklevel=3)


# ---------------------------------------------------------------------------


def run_wolpert_verification(cfg: ExperimentConfig) -> Report:
    """Analytic twist derivatives against Richardson finite differences."""
    for name in cfg.presets:
        if name not in WOLPERT_PRESETS:
            raise ValidationError(f"preset {name!r} not in {WOLPERT_PRESETS}")
    rep = Report("wolpert", ("surface", "config", "curve", "l", "theta", "derivative",
                             "analytic", "numeric", "abs_err", "rel_err"))
    rep.meta = _config_meta(cfg, ("presets", "samples", "seed", "delta", "M"))
    rep.meta["fd"] = "centered, one Richardson level; h=1e-5 (first), h=1e-3 (second)"
    rng = np.random.default_rng(cfg.seed)
    lo, hi = math.log(cfg.delta), math.log(cfg.M)
    max1 = max2 = 0.0
    for name in cfg.presets:
        dec = preset(name)
        for s in range(cfg.samples):
            ls = np.exp(rng.uniform(lo, hi, dec.n_curves))
            th = rng.uniform(0.0, 2.0 * math.pi, dec.n_interior)
            p = make_fn_point(dec, ls, th)
            hol = holonomy_rep(p)
            for i in range(dec.n_interior):
                beta = dual_curve(dec, i)
                a1, n1 = wolpert_d1(hol, i, beta), fd_d1(p, i, beta)
                a2, n2 = wolpert_d2(hol, i, beta), fd_d2(p, i, beta)
                e1 = abs(a1 - n1)
                e2 = abs(a2 - n2)
                r1 = e1 / abs(n1) if n1 else (0.0 if e1 == 0 else math.inf)
                r2 = e2 / abs(n2)
                max1, max2 = max(max1, r1), max(max2, r2)
                base = (name, s, i, p.lengths[i], p.twists[i])
                rep.rows.append(base + ("d1", a1, n1, e1, r1))
                rep.rows.append(base + ("d2", a2, n2, e2, r2))
    rep.summary = {"configs": cfg.samples * len(cfg.presets), "max_rel_err_d1": float(max1),
                   "max_rel_err_d2": float(max2)}
    return rep


def _linear_fit(x: Sequence[float], y: Sequence[float]) -> tuple[float, float, float]:
    x, y = np.asarray(x, float), np.asarray(y, float)
    b, a = np.polyfit(x, y, 1)
    resid = y - (a + b * x)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 - float(np.sum(resid ** 2)) / ss_tot if ss_tot > 0 else 1.0
    return float(a), float(b), r2


def _shrinking_point(cfg: ExperimentConfig, eps: float) -> tuple[FNPoint, int]:
    """Point whose interior curve 0 has length eps, all other curves length 1."""
    if cfg.surface.startswith("ladder-"):
        dec = preset(cfg.surface)
        # shrink the middle rung: the curve the truncation window is centered on
        alpha = dec.n_interior // 2
    else:
        dec = preset(cfg.surface)
        alpha = 0
    if dec.n_interior == 0:
        raise ValidationError("surface has no interior curve to shrink")
    ls = [1.0] * dec.n_curves
    ls[alpha] = eps
    return make_fn_point(dec, ls, [0.0] * dec.n_interior), alpha


def _twist_rows(cfg: ExperimentConfig, name: str, t_of_k) -> Report:
    rep = Report(name, ("k", "eps", "t", "d_fn", "d_fn_kind", "dls_upper", "upper_kind",
                        "upper_source", "dls_lower", "lower_kind", "ratio", "ratio_validity"))
    rep.meta = _config_meta(cfg, ("surface", "k_min", "k_max", "eps_base", "t", "budget"))
    rep.meta["caveat"] = ("finite truncations only: ratios describe growth on the computed "
                          "window, not the infinite-type surface")
    L = cfg.eps(cfg.k_min)
    rep.meta["collar_L"] = L
    for k in range(cfg.k_min, cfg.k_max + 1):
        eps = cfg.eps(k)
        if eps < UNDERFLOW:
            _warn(rep, f"k={k}: eps={eps:.3g} below {UNDERFLOW:g}; row omitted")
            continue
        t = t_of_k(k, eps)
        p, alpha = _shrinking_point(cfg, eps)
        q = twist(p, alpha, t)
        hp = holonomy_rep(p)
        fn = d_fn(p, q)
        up = twist_dls_upper(hp, alpha, t, 0, L=max(L, eps))
        lo = d_ls_lower(hp, hp.with_point(q), cfg.budget)
        ratio = fn.value / up.value
        rep.rows.append((k, eps, t, fn.value, fn.kind.value, up.value, up.kind.value, up.source,
                         lo.value, lo.kind.value, ratio, "lower bound on d_fn/d_ls"))
    if not rep.rows:
        raise ValidationError("every row underflowed; nothing to report")
    return rep


def run_shrinking_curve(cfg: ExperimentConfig) -> Report:
    """Fixed twist t about a curve of length eps_k = base^-k."""
    rep = _twist_rows(cfg, "shrinking-curve", lambda k, eps: cfg.t)
    ks, rs = rep.column("k"), rep.column("ratio")
    if len(ks) >= 2:
        a, b, r2 = _linear_fit(ks, rs)
        logs = [abs(math.log(e)) for e in rep.column("eps")]
        _, slope_log, _ = _linear_fit(logs, rs)
        rep.summary = {"fit_intercept": a, "fit_slope_k": b, "fit_r2": r2,
                       "fit_slope_abs_log_eps": slope_log}
    return rep


def run_divergent_twist(cfg: ExperimentConfig) -> Report:
    """Twist t_k = sqrt(log 1/eps_k) about a curve of length eps_k."""
    rep = _twist_rows(cfg, "divergent-twist", lambda k, eps: math.sqrt(math.log(1.0 / eps)))
    ts, eps = rep.column("t"), rep.column("eps")
    quot = [t / abs(math.log(e)) for t, e in zip(ts, eps)]
    if any(b >= a for a, b in zip(quot, quot[1:])):
        _warn(rep, "t_k / |log eps_k| is not decreasing; the rule may not send it to 0")
    ups, fns = rep.column("dls_upper"), rep.column("d_fn")
    rep.summary = {"k0_upper_decreasing": _monotone_from(rep.column("k"), ups, -1),
                   "k0_dfn_increasing": _monotone_from(rep.column("k"), fns, +1),
                   "final_dls_upper": ups[-1], "final_d_fn": fns[-1]}
    return rep


def _monotone_from(ks, ys, sign) -> int | None:
    """Smallest k from which ys is strictly monotone in the given direction."""
    start = len(ys) - 1
    while start > 0 and sign * (ys[start] - ys[start - 1]) > 0:
        start -= 1
    return ks[start] if ys else None


def _sample_point(rng, dec, box, thin: float | None) -> FNPoint:
    lo, hi = box
    ls = np.exp(rng.uniform(math.log(lo), math.log(hi), dec.n_curves))
    th = rng.uniform(0.0, 2.0 * math.pi, dec.n_interior)
    if thin is not None:
        ls[0] = thin * math.exp(rng.uniform(0.0, math.log(2.0)))
    return make_fn_point(dec, ls, th)


def _perturb(rng, p: FNPoint, radius: float, thin: float | None) -> FNPoint:
    """Uniform perturbation of the FN embedding inside the sup-norm ball.

    With a thin curve the perturbation is a pure twist along it, the
    deformation whose ratio blows up as the curve shrinks.
    """
    n, m = p.decomposition.n_curves, p.decomposition.n_interior
    if thin is not None:
        b = rng.uniform(-radius, radius)
        th = list(p.twists)
        th[0] += b / p.lengths[0]
        return make_fn_point(p.decomposition, p.lengths, th)
    a = rng.uniform(-radius, radius, n)
    b = rng.uniform(-radius, radius, m)
    ls = [l * math.exp(x) for l, x in zip(p.lengths, a)]
    th = [(p.lengths[i] * p.twists[i] + b[i]) / ls[i] for i in range(m)]
    return make_fn_point(p.decomposition, ls, th)


def run_thickpart_scan(cfg: ExperimentConfig) -> Report:
    """Empirical bi-Lipschitz constant d_fn / d_ls_lower on pairs in the thick part."""
    dec = build_decomposition(cfg.surface)
    thin = cfg.thin_epsilon
    eps = cfg.epsilon if thin is None else thin
    spec = ThickPartSpec(eps, cfg.epsilon0)
    has_boundary = dec.n_boundary > 0
    rep = Report("thickpart", ("pair", "d_fn", "d_fn_kind", "dls_lower", "lower_kind", "ratio",
                               "dls_upper", "ratio_vs_upper", "arc_lower", "arc_ratio", "tries"))
    rep.meta = _config_meta(cfg, ("surface", "samples", "seed", "budget", "epsilon", "epsilon0",
                                  "radius", "thin_epsilon", "delta", "M"))
    rep.meta["ratio_validity"] = "d_fn / d_ls_lower is an upper bound on d_fn / d_ls"
    rep.meta["ratio_vs_upper_validity"] = ("d_fn / twist_dls_upper is a lower bound on d_fn / d_ls "
                                           "(pure-twist pairs only)")
    rep.meta["identical_pair_ratio"] = "1 by convention"
    box = (max(cfg.delta, eps), cfg.M)
    rng = np.random.default_rng(cfg.seed)
    ratios = []
    for s in range(cfg.samples):
        for tries in range(1, cfg.max_tries + 1):
            p = _sample_point(rng, dec, box, thin)
            q = _perturb(rng, p, cfg.radius, thin)
            hp, hq = holonomy_rep(p), holonomy_rep(q)
            if (thick_membership(hp, spec, 0).status == ThickStatus.IN
                    and thick_membership(hq, spec, 0).status == ThickStatus.IN):
                break
        else:
            raise ValidationError(f"sampler missed the thick part {cfg.max_tries} times in a row")
        fn = d_fn(p, q).value
        lo = d_ls_lower(hp, hq, cfg.budget).value
        ratio = 1.0 if fn == 0.0 and lo == 0.0 else (fn / lo if lo > 0 else math.inf)
        arc = arc_ratio = up = ratio_up = None
        if thin is not None:
            up = twist_dls_upper_pair(hp, hq, 0).value
            ratio_up = 1.0 if fn == 0.0 and up == 0.0 else fn / up
        if has_boundary:
            arc = d_arc_lower(hp, hq, cfg.budget).value
            arc_ratio = 1.0 if arc == 0.0 and lo == 0.0 else (arc / lo if lo > 0 else math.inf)
        ratios.append(ratio)
        rep.rows.append((s, fn, "exact", lo, "lower", ratio, up, ratio_up, arc, arc_ratio, tries))
    r = np.asarray(ratios)
    rep.summary = {"max_ratio": float(r.max()), "median_ratio": float(np.median(r)),
                   "p90_ratio": float(np.quantile(r, 0.9)), "min_ratio": float(r.min())}
    if thin is not None:
        rep.summary["max_ratio_vs_upper"] = max(x for x in rep.column("ratio_vs_upper"))
    return rep


EXPERIMENTS = {
    "wolpert": run_wolpert_verification,
    "shrinking-curve": run_shrinking_curve,
    "divergent-twist": run_divergent_twist,
    "thickpart": run_thickpart_scan,
}
