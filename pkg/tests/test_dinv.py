from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dtower.complex import ChainElement, Generator, GeneratorKey, KnotComplex, mirror
from dtower.dinv import (
    alt_signature_d,
    d_invariants,
    d_minus_one,
    d_plus_one,
    descend,
    initial_window,
    large_surgery_d,
    stable_d,
    tower_class,
    unshifted_d,
)
from dtower.errors import (
    NoTowerError,
    NotACycleError,
    OddSignatureError,
    PreconditionError,
    UngradedTouchedError,
    WindowExhaustedError,
)
from dtower.f2 import homology_generators, is_boundary
from dtower.grading import assign_gradings
from dtower.models import (
    box_sum,
    connected_sum,
    figure_eight,
    left_trefoil,
    right_trefoil,
    staircase,
    torus_3_4,
    unknot,
)
from dtower.truncation import Region, truncate_region

from strategies import offsets, small_knots


def K(base, u=0):
    return GeneratorKey(base, u)


def window(c, region, B):
    return truncate_region(assign_gradings(c), region, B)


def test_truncation_examples():
    tc = window(unknot(), Region.QUADRANT, 2)
    assert list(tc.basis) == [K("e", -2), K("e", -1), K("e", 0)]
    assert [tuple(tc.filtrations[k]) for k in tc.basis] == [(2, 2), (1, 1), (0, 0)]
    tc = window(right_trefoil(), Region.HOOK, 1)
    assert K("a", 1) in tc and tuple(tc.filtrations[K("a", 1)]) == (-1, 0)
    assert K("b", 1) in tc and tuple(tc.filtrations[K("b", 1)]) == (0, 0)
    assert K("a", 2) not in tc


def test_truncation_requires_gradings():
    with pytest.raises(UngradedTouchedError):
        truncate_region(figure_eight(), Region.HOOK, 2)


def test_descend_examples():
    tc = window(unknot(), Region.QUADRANT, 3)
    assert tuple(descend(tc, ChainElement([K("e")]))) == (1, 0)

    tc = window(right_trefoil(), Region.HOOK, 4)
    d = descend(tc, ChainElement([K("a")]))
    assert (d.steps, d.last_grading) == (2, -2)
    # U.a is homologous to U.c, and U^2.a has left the hook
    assert is_boundary(tc, ChainElement([K("a", 1), K("c", 1)]))
    assert not is_boundary(tc, ChainElement([K("a", 1)]))
    assert K("a", 2) not in tc

    tc = window(right_trefoil(), Region.QUADRANT, 4)
    assert tuple(descend(tc, ChainElement([K("a")]))) == (1, 0)


def test_descend_trace():
    tc = window(right_trefoil(), Region.HOOK, 4)
    d = descend(tc, ChainElement([K("a")]))
    assert [tuple(s) for s in d.trace] == [(0, 0, False), (1, -2, False), (2, -4, True)]


def test_descend_errors():
    tc = window(right_trefoil(), Region.HOOK, 4)
    with pytest.raises(NotACycleError):
        descend(tc, ChainElement([K("b")]))
    with pytest.raises(PreconditionError):
        descend(tc, ChainElement([K("a", 1), K("c", 1)]))
    # a generator high in the quadrant is still there when U^3 runs past the window
    high = KnotComplex("high", (Generator("e", (10, 10), 0),))
    tc = truncate_region(high, Region.QUADRANT, 2)
    with pytest.raises(WindowExhaustedError):
        descend(tc, ChainElement([K("e")]))


def test_descend_refuses_ungraded_support():
    graded = assign_gradings(figure_eight())
    tc = truncate_region(graded, Region.HOOK, 3, allow_ungraded=True)
    # U.w0 leaves the hook, so U.y0 is a cycle; only U.x0 hits it, together with U.z0
    cycle = ChainElement([K("y0", 1)])
    assert not is_boundary(tc, cycle)
    with pytest.raises(UngradedTouchedError):
        descend(tc, cycle)


def test_tower_class_examples():
    tc = window(unknot(), Region.QUADRANT, 4)
    assert tower_class(tc) == ChainElement([K("e", -4)])
    tc = window(right_trefoil(), Region.HOOK, 4)
    x = tower_class(tc)
    # a class homologous to U^-4 a, the slice generator moved up the window
    assert is_boundary(tc, x + ChainElement([K("a", -4)]))
    gens = dict(homology_generators(tc.layer(-4)))
    assert x in gens[8]
    tc = truncate_region(assign_gradings(figure_eight()), Region.HOOK, 4, allow_ungraded=True)
    assert tower_class(tc) == ChainElement([K("e", -4)])


def test_no_tower_in_small_window():
    low = KnotComplex("low", (Generator("e", (-5, -5), 0),))
    with pytest.raises(NoTowerError):
        tower_class(truncate_region(low, Region.QUADRANT, 2))
    # a window of 8 sees the class at (3, 3) but it leaves after 3 steps
    with pytest.raises(NoTowerError):
        tower_class(truncate_region(low, Region.QUADRANT, 8))
    assert tower_class(truncate_region(low, Region.QUADRANT, 16)) == ChainElement([K("e", -16)])


@pytest.mark.parametrize(
    "knot, plus, minus",
    [
        (unknot, 0, 0),
        (right_trefoil, -2, 0),
        (left_trefoil, 0, 2),
        (figure_eight, 0, 0),
        (lambda: connected_sum(right_trefoil(), right_trefoil()), -2, 0),
        (lambda: connected_sum(right_trefoil(), left_trefoil()), 0, 0),
    ],
)
def test_golden_values(knot, plus, minus):
    c = knot()
    assert d_plus_one(c) == plus
    assert d_minus_one(c) == minus


def test_t34_and_three_lefts():
    assert d_plus_one(torus_3_4()) == -2
    lhs = connected_sum(left_trefoil(), left_trefoil(), left_trefoil(), torus_3_4())
    assert d_minus_one(lhs) == 2


def test_connected_sum_not_additive():
    r, l = right_trefoil(), left_trefoil()
    assert d_plus_one(connected_sum(r, l)) == 0
    assert d_plus_one(r) + d_plus_one(l) == -2


def test_report_fields():
    rep = d_invariants(right_trefoil())
    assert (rep.d_plus, rep.d_minus) == (-2, 0)
    assert all(b >= initial_window(right_trefoil()) for b in rep.windows_used)
    assert rep.descent_traces["plus"][-1].died
    assert rep.lines() == ["d(S^3_{+1}(K)) = -2", "d(S^3_{-1}(K)) = 0"]
    assert rep.coefficients == "F2"


def test_window_override(monkeypatch):
    monkeypatch.setenv("DTOWER_WINDOW", "3")
    assert initial_window(torus_3_4()) == 3
    assert d_plus_one(torus_3_4()) == -2
    monkeypatch.setenv("DTOWER_WINDOW", "zero")
    with pytest.raises(PreconditionError):
        initial_window(unknot())


def test_large_surgery():
    assert large_surgery_d(unknot(), 2, 1) == Fraction(1, 4)
    assert large_surgery_d(unknot(), 2, -1) == Fraction(-1, 4)
    assert large_surgery_d(right_trefoil(), 7, 1) == Fraction(-1, 2)
    assert large_surgery_d(right_trefoil(), 7, 1) == unshifted_d(
        assign_gradings(right_trefoil()), Region.HOOK, 8
    ).last_grading + Fraction(6, 4)
    with pytest.raises(PreconditionError):
        large_surgery_d(torus_3_4(), 4, 1)  # genus 3 needs p >= 5
    assert isinstance(large_surgery_d(torus_3_4(), 5, -1), Fraction)


def test_alt_formula():
    assert alt_signature_d(-2) == -2
    assert alt_signature_d(0) == 0
    assert alt_signature_d(2) == 0
    assert alt_signature_d(-6) == -4
    with pytest.raises(OddSignatureError):
        alt_signature_d(3)


@pytest.mark.parametrize("sigma", range(-20, 21, 2))
def test_alt_formula_matches_ceiling_definition(sigma):
    import math

    assert alt_signature_d(sigma) == 2 * min(0, -math.ceil(-sigma / 4))


# --- randomized properties -------------------------------------------------


@settings(max_examples=100, deadline=None)
@given(small_knots())
def test_parity(c):
    rep = d_invariants(c)
    assert rep.d_plus % 2 == 0 and rep.d_minus % 2 == 0


@settings(max_examples=100, deadline=None)
@given(small_knots())
def test_mirror_identity(c):
    assert d_minus_one(c) == -d_plus_one(mirror(c))


@settings(max_examples=100, deadline=None)
@given(small_knots(), st.sampled_from([Region.HOOK, Region.QUADRANT]))
def test_window_doubling_and_tripling(c, region):
    graded = assign_gradings(c)
    base, B = stable_d(graded, region)
    for factor in (2, 3):
        assert unshifted_d(graded, region, factor * B).last_grading == base.last_grading


@settings(max_examples=100, deadline=None)
@given(offsets)
def test_box_sum_offset_independence(offs):
    c = box_sum(len(offs), offs)
    assert d_plus_one(c) == 0 and d_minus_one(c) == 0


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(1, 3), min_size=1, max_size=3))
def test_staircase_mirror_identity(steps):
    c = staircase(steps)
    assert d_minus_one(c) == -d_plus_one(mirror(c))
    assert d_plus_one(c) <= 0
