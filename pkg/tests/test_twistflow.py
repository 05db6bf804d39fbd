import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import random_point
from fnlab.errors import NotPureTwistError, UnsupportedError, ValidationError
from fnlab.holonomy import curve_length, holonomy_rep
from fnlab.surface import (closed_curve, decomposition_curve, dehn_twist_class, dual_curve,
                           make_fn_point, preset)
from fnlab.twistflow import (TwistVector, fd_d1, fd_d2, length_along_twist, measure_shiga_constants,
                             multi_twist, twist, twist_recover, wolpert_d1, wolpert_d2)


def _torus_oracle(a, b, t):
    """Dual length on a one-holed torus, t measured from the orthogonal position.

    The dual's holonomy is a product of translations by t along C and by d
    along the common perpendicular, so cosh(l/2) = cosh(t/2) cosh(d/2).
    """
    a, b, t = mpmath.mpf(a), mpmath.mpf(b), mpmath.mpf(t)
    d = 2 * mpmath.asinh(mpmath.cosh(b / 4) / mpmath.sinh(a / 2))
    return 2 * mpmath.acosh(mpmath.cosh(t / 2) * mpmath.cosh(d / 2))


def test_full_twist_adds_two_pi():
    p = make_fn_point(preset("genus-2"), (0.7, 1.1, 2.0), (0.1, 0.2, 0.3))
    q = twist(p, 1, 1.1)
    assert q.twists[1] == pytest.approx(0.2 + 2 * math.pi, rel=1e-15)
    assert q.lengths == p.lengths
    assert twist(p, 1, 0.0) is p


@given(st.floats(-5, 5), st.floats(-5, 5))
def test_twist_additive(a, b):
    p = make_fn_point(preset("genus-2"), (0.7, 1.1, 2.0), (0.1, 0.2, 0.3))
    lhs = twist(twist(p, 2, a), 2, b).twists[2]
    assert lhs == pytest.approx(twist(p, 2, a + b).twists[2], abs=1e-12)


def test_multi_twist_commutes_and_inverts():
    p = make_fn_point(preset("genus-2"), (0.7, 1.1, 2.0), (0.1, 0.2, 0.3))
    tv = TwistVector({0: 0.4, 2: -1.3})
    q = multi_twist(p, tv)
    r = twist(twist(p, 2, -1.3), 0, 0.4)
    assert q.twists == pytest.approx(r.twists, abs=1e-14)
    back = multi_twist(q, -tv)
    assert back.twists == pytest.approx(p.twists, abs=1e-14)
    assert tv.norm == 1.3 and tv.support == (0, 2)
    with pytest.raises(ValidationError):
        TwistVector({0: math.nan})


def test_boundary_twist_rejected():
    p = make_fn_point(preset("four-holed-sphere"), (1.0,) * 5, (0.0,))
    with pytest.raises(ValidationError):
        twist(p, 3, 0.5)


def test_disjoint_curve_length_constant(rng):
    d = preset("genus-2")
    p = random_point(rng, d)
    beta = dual_curve(d, 1)          # disjoint from C_0
    ls = length_along_twist(p, 0, beta, np.linspace(-3, 3, 13))
    assert np.ptp(ls) < 1e-12 * ls[0]
    c2 = decomposition_curve(d, 2)
    ls = length_along_twist(p, 0, c2, [-1.0, 2.0])
    assert ls == pytest.approx([p.lengths[2]] * 2, rel=1e-14)


@pytest.mark.parametrize("theta", [0.0, 0.4, -2.0, 5.0])
def test_torus_length_matches_oracle(theta):
    a, b = 0.9, 1.6
    p = make_fn_point(preset("one-holed-torus"), (a, b), (theta,))
    l = curve_length(holonomy_rep(p), dual_curve(p.decomposition, 0))
    assert l == pytest.approx(float(_torus_oracle(a, b, a * theta / (2 * math.pi))), rel=1e-13)


@pytest.mark.parametrize("theta", [0.0, 0.4, -2.0, 5.0])
def test_torus_derivatives_match_oracle(theta):
    a, b = 0.9, 1.6
    mpmath.mp.dps = 40
    p = make_fn_point(preset("one-holed-torus"), (a, b), (theta,))
    t = mpmath.mpf(a) * theta / (2 * mpmath.pi)
    beta = dual_curve(p.decomposition, 0)
    f = lambda s: _torus_oracle(a, b, s)
    assert wolpert_d1(p, 0, beta) == pytest.approx(float(mpmath.diff(f, t)), abs=1e-12)
    assert wolpert_d2(p, 0, beta) == pytest.approx(float(mpmath.diff(f, t, 2)), rel=1e-11)


def test_orthogonal_second_derivative():
    # at the orthogonal position sin = 1 and d2 = (e^l + 1) / (2 (e^l - 1))
    p = make_fn_point(preset("one-holed-torus"), (1.0, 1.7), (0.0,))
    beta = dual_curve(p.decomposition, 0)
    l = curve_length(holonomy_rep(p), beta)
    assert wolpert_d1(p, 0, beta) == pytest.approx(0.0, abs=1e-14)
    assert wolpert_d2(p, 0, beta) == pytest.approx((math.exp(l) + 1) / (2 * math.expm1(l)), rel=1e-13)


@pytest.mark.parametrize("name", ["one-holed-torus", "four-holed-sphere", "genus-2", "genus-2-theta"])
def test_derivatives_vs_finite_differences(name, rng):
    d = preset(name)
    for _ in range(4):
        p = random_point(rng, d)
        for i in range(d.n_interior):
            beta = dual_curve(d, i)
            n1 = fd_d1(p, i, beta)
            assert wolpert_d1(p, i, beta) == pytest.approx(n1, abs=1e-7 * max(1, abs(n1)))
            assert wolpert_d2(p, i, beta) == pytest.approx(fd_d2(p, i, beta), rel=1e-5)


@pytest.mark.parametrize("name", ["one-holed-torus", "four-holed-sphere", "genus-2"])
def test_convex_and_monotone_slope(name, rng):
    d = preset(name)
    p = random_point(rng, d)
    beta = dual_curve(d, 0)
    ts = np.linspace(-3, 3, 301)
    ls = length_along_twist(p, 0, beta, ts)
    assert np.all(ls[:-2] - 2 * ls[1:-1] + ls[2:] > 0)
    rep = holonomy_rep(p)
    slopes = [wolpert_d1(rep.with_point(twist(p, 0, t)), 0, beta) for t in ts[::10]]
    assert all(s1 < s2 for s1, s2 in zip(slopes, slopes[1:]))
    assert all(-2 < s < 2 for s in slopes)


@pytest.mark.parametrize("name", ["one-holed-torus", "four-holed-sphere", "genus-2-theta"])
def test_full_twist_periodicity(name, rng):
    d = preset(name)
    p = random_point(rng, d)
    for i in range(d.n_interior):
        beta = dual_curve(d, i)
        for n in (1, -1, 3):
            lhs = curve_length(holonomy_rep(twist(p, i, n * p.lengths[i])), beta)
            rhs = curve_length(holonomy_rep(p), dehn_twist_class(d, beta, i, n))
            assert lhs == pytest.approx(rhs, rel=1e-12)


def test_derivatives_need_crossings():
    d = preset("genus-2")
    p = make_fn_point(d, (1.0, 1.0, 1.0), (0.0, 0.0, 0.0))
    with pytest.raises(UnsupportedError):
        wolpert_d1(p, 0, dual_curve(d, 1))
    t = preset("one-holed-torus")
    triple = closed_curve(t, dual_curve(t, 0).word * 3)
    with pytest.raises(UnsupportedError):
        wolpert_d2(make_fn_point(t, (1.0, 1.0), (0.0,)), 0, triple)


@pytest.mark.parametrize("t", [0.0, 0.3, -0.8, 5.0, -7.3])
@pytest.mark.parametrize("name", ["one-holed-torus", "four-holed-sphere", "genus-2"])
def test_twist_recovery(name, t, rng):
    d = preset(name)
    p = random_point(rng, d, 0.5, 2.5)
    i = d.n_interior - 1
    res = twist_recover(p, twist(p, i, t), i)
    assert res.t_hat == pytest.approx(t, abs=1e-9)
    assert res.bound.kind.value == "upper"
    assert res.bound.value >= abs(t)


def test_recovery_rejects_non_twists(rng):
    d = preset("genus-2")
    p = random_point(rng, d)
    q = make_fn_point(d, (p.lengths[0] * 1.01,) + p.lengths[1:], p.twists)
    with pytest.raises(NotPureTwistError):
        twist_recover(p, q, 0)
    with pytest.raises(NotPureTwistError):
        twist_recover(p, twist(p, 1, 0.2), 0)


def test_measured_constants_are_plain_and_positive():
    c = measure_shiga_constants(preset("four-holed-sphere"), 0.3, 3.0)
    assert all(type(x) is float for x in (c.L, c.rho0, c.rho1, c.A))
    assert 0 < c.rho <= 1 and c.lam > 0 and c.lam0 > 0 and c.L > 0
    assert measure_shiga_constants(preset("four-holed-sphere"), 0.3, 3.0) is c
