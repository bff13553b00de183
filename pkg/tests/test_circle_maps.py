from fractions import Fraction as Q

import pytest
from hypothesis import given
from hypothesis import strategies as st

from eulerlab import (CircleMap, Lift, MonotoneDegreeOneMap, NonInvertible, PLLift,
                      canonicalize, compose_lifts, eval_lift, invert_lift,
                      pointwise_max, verify_lift)
from eulerlab.circle_maps import as_rational
from strategies import pl_lifts, rationals

F = PLLift([(0, 0), (Q(1, 2), Q(3, 4))])


def test_eval_identity():
    assert eval_lift(PLLift.identity(), Q(7, 3)) == Q(7, 3)


def test_eval_piecewise():
    assert eval_lift(F, Q(1, 4)) == Q(3, 8)
    assert eval_lift(F, Q(3, 4)) == Q(7, 8)


def test_eval_right_continuous_at_jump():
    J = PLLift([(0, 0), (Q(1, 2), Q(1, 4), Q(3, 4))], strict=False)
    assert J(Q(1, 2)) == Q(3, 4)
    assert J.left_limit(Q(1, 2)) == Q(1, 4)


def test_floats_rejected():
    with pytest.raises(TypeError):
        as_rational(0.5)


def test_compose_examples():
    ident = PLLift.identity()
    assert compose_lifts(ident, ident) == ident
    assert compose_lifts(F, F)(Q(1, 4)) == Q(9, 16)
    R = compose_lifts(PLLift.translation(Q(1, 4)), PLLift.translation(Q(1, 2)))
    assert R == PLLift.translation(Q(3, 4))


def test_invert_examples():
    assert invert_lift(PLLift.identity()) == PLLift.identity()
    inv = canonicalize(invert_lift(PLLift.translation(Q(1, 3))))
    assert inv.base == CircleMap.rotation(Q(2, 3)) and inv.offset == -1
    assert invert_lift(F)(Q(3, 4)) == Q(1, 2)


def test_invert_nonstrict_raises():
    with pytest.raises(NonInvertible):
        invert_lift(PLLift([(0, 0), (Q(1, 2), 0)], strict=False))


def test_canonicalize_examples():
    L = canonicalize(PLLift.translation(Q(5, 4)))
    assert (L.base, L.offset) == (CircleMap.rotation(Q(1, 4)), 1)
    assert canonicalize(PLLift.identity()) == Lift.identity()
    L = canonicalize(PLLift.translation(Q(-1, 2)))
    assert (L.base, L.offset) == (CircleMap.rotation(Q(1, 2)), -1)


def test_pointwise_max_examples():
    ident = PLLift.identity()
    assert pointwise_max([ident]) == ident
    half = PLLift.translation(Q(1, 2))
    assert pointwise_max([ident, half]) == half
    T = PLLift.translation(Q(1, 4))
    M = pointwise_max([T, F])
    for i in range(100):
        x = Q(i, 100)
        assert M(x) == max(T(x), F(x))


def test_verify_lift_reports():
    assert verify_lift(PLLift.identity()).valid
    bad = PLLift([(0, 0), (Q(1, 2), Q(1, 2)), (Q(1, 4), Q(3, 4))], validate=False)
    assert any("x not increasing" in v for v in verify_lift(bad).violations)
    flat = PLLift([(0, 0), (Q(1, 4), 0), (Q(1, 2), Q(1, 2))], validate=False)
    assert any("not strictly increasing" in v for v in verify_lift(flat).violations)


def test_invalid_lift_raises():
    with pytest.raises(ValueError):
        PLLift([(Q(1, 2), 0)])


def test_circle_map_basics():
    f = CircleMap.rotation(Q(1, 3))
    assert f * f * f == CircleMap.identity()
    assert f.inverse() == CircleMap.rotation(Q(2, 3))
    assert f(Q(5, 6)) == Q(1, 6)


def test_monotone_constant_and_identity():
    c = MonotoneDegreeOneMap.constant(Q(1, 3))
    assert not c.is_homeomorphism()
    assert c(Q(7, 8)) == Q(1, 3)
    assert MonotoneDegreeOneMap.identity().is_homeomorphism()


# -- properties -----------------------------------------------------------


@given(pl_lifts(), pl_lifts(), st.integers(-3, 3), st.integers(-3, 3))
def test_circle_composition_is_lift_independent(A, B, m, n):
    base = canonicalize(compose_lifts(A, B)).base
    assert canonicalize(compose_lifts(A.shifted(m), B.shifted(n))).base == base


@given(pl_lifts())
def test_double_inverse(A):
    assert invert_lift(invert_lift(A)) == A


@given(pl_lifts(), rationals(64, -3, 3))
def test_inverse_composes_to_identity(A, x):
    assert compose_lifts(invert_lift(A), A) == PLLift.identity()
    assert invert_lift(A)(A(x)) == x


@given(pl_lifts(), rationals(64, -3, 3))
def test_periodicity(A, x):
    assert eval_lift(A, x + 1) == eval_lift(A, x) + 1


@given(pl_lifts(), pl_lifts(), rationals(64, -2, 2))
def test_composition_pointwise(A, B, x):
    assert compose_lifts(A, B)(x) == A(B(x))


@given(st.lists(pl_lifts(16, 4), min_size=1, max_size=4), rationals(64, -1, 2))
def test_pointwise_max_matches_scalar(Fs, x):
    M = pointwise_max(Fs)
    assert M(x) == max(G(x) for G in Fs)
    assert verify_lift(M).valid


@given(pl_lifts())
def test_canonicalize_reconstructs(A):
    L = canonicalize(A)
    assert 0 <= L.base.canonical_lift(0) < 1
    assert L.as_pl() == A


@st.composite
def monotone_lifts(draw, max_den=16):
    """Non-decreasing lifts, possibly with jumps and flat pieces."""
    k = draw(st.integers(0, 4))
    xs = sorted(draw(st.sets(rationals(max_den).filter(bool), min_size=k, max_size=k)))
    cuts = sorted(draw(st.lists(rationals(max_den), min_size=2 * k + 1, max_size=2 * k + 1)))
    y0 = draw(rationals(max_den, -1, 1))
    bps = [(0, y0, y0 + cuts[0])]
    for i, x in enumerate(xs):
        bps.append((x, y0 + cuts[2 * i + 1], y0 + cuts[2 * i + 2]))
    return PLLift(bps, strict=False)


@given(monotone_lifts(), monotone_lifts(), rationals(64, -2, 2))
def test_monotone_composition_pointwise(A, B, x):
    C = compose_lifts(A, B)
    assert C(x) == A(B(x))
    assert verify_lift(C).valid


@given(monotone_lifts(), pl_lifts(16, 4), rationals(64, -2, 2))
def test_left_limits_of_composites(A, B, x):
    # B is continuous, so (A o B)(x^-) = A(B(x)^-)
    assert compose_lifts(A, B).left_limit(x) == A.left_limit(B(x))
