import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fnlab.errors import UnsupportedError, ValidationError
from fnlab.surface import (Boundedness, RuleFamily, ShigaBounds, arc_class, boundedness_check,
                           build_decomposition, closed_curve, decomposition_curve, dehn_twist_class,
                           double_surface, dual_curve, enumerate_arcs, enumerate_curves,
                           intersection_number, invert_word, ladder, make_fn_point, preset)

PRESETS = ["pants", "one-holed-torus", "four-holed-sphere", "genus-2", "genus-2-theta", "ladder-1",
           "ladder-3"]


def test_preset_one_holed_torus():
    d = preset("one-holed-torus")
    assert (len(d.pants), d.n_interior, d.n_boundary, d.genus) == (1, 1, 1, 1)


def test_preset_genus_2():
    d = preset("genus-2")
    assert (len(d.pants), d.n_interior, d.n_boundary, d.genus) == (2, 3, 0, 2)


@pytest.mark.parametrize("k", [1, 2, 5])
def test_ladder_topology(k):
    d = ladder(k)
    assert len(d.pants) == 2 * k
    assert d.genus == k and d.n_boundary == 2


def test_build_from_mapping_and_errors():
    spec = {"pants": [["glued", "glued", "boundary"]], "gluings": [[[0, 0], [0, 1]]]}
    assert build_decomposition(spec).genus == 1
    twice = {"pants": [["glued", "glued", "glued"]], "gluings": [[[0, 0], [0, 1]], [[0, 1], [0, 2]]]}
    with pytest.raises(ValidationError, match="twice"):
        build_decomposition(twice)
    dangling = {"pants": [["glued", "boundary", "boundary"]], "gluings": []}
    with pytest.raises(ValidationError, match="dangling"):
        build_decomposition(dangling)
    split = {"pants": [["boundary"] * 3, ["boundary"] * 3], "gluings": []}
    with pytest.raises(ValidationError, match="disconnected"):
        build_decomposition(split)
    with pytest.raises(ValidationError):
        preset("klein-bottle")


def test_make_fn_point():
    make_fn_point(preset("genus-2"), (1, 1, 1), (0, 0, 0))
    with pytest.raises(ValidationError):
        make_fn_point(preset("genus-2"), (1, 0, 1), (0, 0, 0))
    p = make_fn_point(preset("one-holed-torus"), (0.5, 2.0), (math.pi,))
    assert p.twist_length(0) == pytest.approx(0.25)
    with pytest.raises(ValidationError, match="boundary"):
        make_fn_point(preset("one-holed-torus"), (0.5, 2.0), (math.pi, 0.0))


def test_boundedness():
    b = ShigaBounds(0.5, 2.0)
    assert boundedness_check([1.0] * 10, b) == Boundedness.SHIGA
    assert boundedness_check(RuleFamily.geometric(0.5), ShigaBounds(0.01, 1.0)) == Boundedness.UPPER_BOUNDED_ONLY
    assert boundedness_check(range(1, 50), b) == Boundedness.UNBOUNDED
    with pytest.raises(ValidationError):
        boundedness_check(RuleFamily(lambda k: k), b)
    with pytest.raises(ValidationError):
        ShigaBounds(2.0, 1.0)


def _all_intersections(d, c):
    return [intersection_number(c, d, j) for j in range(d.n_curves)]


@pytest.mark.parametrize("name", PRESETS[1:])
def test_dual_curve_properties(name):
    d = preset(name)
    for i in range(d.n_interior):
        b = dual_curve(d, i)
        counts = _all_intersections(d, b)
        assert counts[i] in (1, 2)
        assert all(c == 0 for j, c in enumerate(counts) if j != i)


def test_dual_intersection_cases():
    assert intersection_number(dual_curve(preset("one-holed-torus"), 0), preset("one-holed-torus"), 0) == 1
    g2 = preset("genus-2")
    assert intersection_number(dual_curve(g2, 1), g2, 1) == 2
    with pytest.raises(ValidationError):
        dual_curve(preset("one-holed-torus"), 1)


@pytest.mark.parametrize("name", PRESETS[1:])
def test_dehn_twist_group_action(name):
    d = preset(name)
    for i in range(d.n_interior):
        b = dual_curve(d, i)
        assert dehn_twist_class(d, b, i, 0) == b
        once = dehn_twist_class(d, b, i, 1)
        assert once != b
        assert intersection_number(once, d, i) == intersection_number(b, d, i)
        assert dehn_twist_class(d, once, i, -1) == b
        assert dehn_twist_class(d, dehn_twist_class(d, b, i, 2), i, 3) == dehn_twist_class(d, b, i, 5)


def test_dehn_twist_rejects_arcs():
    d = preset("four-holed-sphere")
    arc = enumerate_arcs(d, 0)[0]
    with pytest.raises(UnsupportedError):
        dehn_twist_class(d, arc, 0, 1)


def test_canonical_form_invariance():
    d = preset("four-holed-sphere")
    b = dual_curve(d, 0)
    w = b.word
    for k in range(len(w)):
        assert closed_curve(d, w[k:] + w[:k]) == b
    assert closed_curve(d, invert_word(w)) == b
    # the cuff seen from the far side of its gluing is the same curve
    t = preset("one-holed-torus")
    assert closed_curve(t, [("c", 0, 1, 1)]) == decomposition_curve(t, 0)


def test_double_surface():
    dp = double_surface(preset("pants"))
    assert (len(dp.pants), dp.n_interior, dp.n_boundary, dp.genus) == (2, 3, 0, 2)
    dt = double_surface(preset("one-holed-torus"))
    assert dt.genus == 2 and dt.n_boundary == 0
    for name in ("pants", "one-holed-torus", "four-holed-sphere", "ladder-2"):
        d = preset(name)
        assert double_surface(d).euler_characteristic == 2 * d.euler_characteristic
    with pytest.raises(ValidationError):
        double_surface(preset("genus-2"))


def test_enumeration_seed_set_and_monotone():
    for name in PRESETS:
        d = preset(name)
        seeds = {decomposition_curve(d, i) for i in range(d.n_curves)}
        seeds |= {dual_curve(d, i) for i in range(d.n_interior)}
        assert set(enumerate_curves(d, 0)) == seeds
        prev = set()
        for K in range(4):
            cur = enumerate_curves(d, K)
            assert len(cur) == len(set(cur))
            assert prev <= set(cur)
            prev = set(cur)


def test_enumeration_deterministic():
    d = preset("genus-2")
    assert enumerate_curves(d, 2) == enumerate_curves(preset("genus-2"), 2)


def test_one_holed_torus_count():
    # seeds C, boundary, beta; plus Tw^n beta for n = +-1, +-2, +-3
    assert len(enumerate_curves(preset("one-holed-torus"), 3)) == 9


def test_arcs():
    d = preset("four-holed-sphere")
    arcs = enumerate_arcs(d, 1)
    assert arcs and all(not a.is_closed for a in arcs)
    bset = set(d.boundary_slots)
    assert all(a.start in bset and a.end in bset for a in arcs)
    assert set(enumerate_arcs(d, 0)) <= set(arcs)
    with pytest.raises(ValidationError):
        arc_class(d, (0, 2), [("w", 0, 2, 0)], (0, 0))
    with pytest.raises(ValidationError):
        arc_class(d, (0, 0), [("c", 0, 0, 2)], (0, 0))


@given(st.integers(-6, 6), st.integers(-6, 6))
def test_twist_composition_property(m, n):
    d = preset("genus-2-theta")
    b = dual_curve(d, 1)
    assert dehn_twist_class(d, dehn_twist_class(d, b, 1, m), 1, n) == dehn_twist_class(d, b, 1, m + n)
