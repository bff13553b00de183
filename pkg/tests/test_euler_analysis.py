import random
from fractions import Fraction as Q

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eulerlab import (CircleMap, Cochain, FiniteGroup, FreeBall, GammaSpace, Lift,
                      LiftedCocycle, MeasureFamily, Obstruction, PLLift,
                      PrimitiveCertificate, Ring, build_cocycle, check_equivariant_family,
                      classify_witness, coboundary, conjugate, decide_ball_vanishing,
                      decide_class_equality, elementary_reduction, euler_pullback,
                      family_from_lift, from_representation, lift_from_family,
                      lift_from_primitive, primitive_from_family, primitive_from_lift,
                      rotation_reduction, semicohomology_witness, solve_primitive,
                      trivial_cocycle, verify_cocycle, verify_lifted, verify_obstruction,
                      verify_primitive, verify_semicohomology, witness_from_family)
from eulerlab.corpus import (planted_conjugate_pair, planted_family, random_base_cocycle,
                             random_pl_homeo, random_space)
from eulerlab.errors import (MixedAtomicity, NotACocycle, NotAPrimitive, NotEquivariant)
from eulerlab.euler_analysis import (FiniteSetFamily, ball_family, degree_zero_difference,
                                     pushforward_cdf)

R = CircleMap.rotation
Z2 = FiniteGroup.cyclic(2)
POINT = GammaSpace.point(Z2)
SWAP = GammaSpace.from_generators(Z2, ["w1", "w2"], {"g": [1, 0]})
HALF = from_representation(POINT, {"g": R(Q(1, 2))})


def swap_cocycle():
    return build_cocycle(SWAP, {("g", "w1"): R(Q(1, 4)), ("g", "w2"): R(Q(3, 4))})


def is_identity(m):
    return all(m.lift(Q(k, 12)) == Q(k, 12) for k in range(12))


def int_cochain(space, table):
    return Cochain(space, 1, Ring.INT, {(g,): tuple(v) for g, v in enumerate(table)})


# -- solve_primitive ------------------------------------------------------


def test_zero_cochain_primitive_is_zero():
    cert = solve_primitive(Cochain.zero(SWAP, 2), Ring.INT)
    assert cert.u.is_zero()


def test_half_rotation_system():
    c = euler_pullback(HALF)
    obs = solve_primitive(c, Ring.INT)
    assert isinstance(obs, Obstruction)
    assert (obs.modulus, obs.residue) == (2, 1)
    assert verify_obstruction(c, obs)
    cert = solve_primitive(euler_pullback(HALF, Ring.RAT), Ring.RAT)
    assert cert.u(1) == (Q(1, 2),)


def test_swap_example_has_integer_primitive():
    s = swap_cocycle()
    c = euler_pullback(s)
    cert = solve_primitive(c, Ring.INT)
    assert isinstance(cert, PrimitiveCertificate) and verify_primitive(c, cert)


def test_not_a_cocycle():
    bad = Cochain(POINT, 2, Ring.INT, {(0, 0): (0,), (0, 1): (1,), (1, 0): (0,), (1, 1): (0,)})
    with pytest.raises(NotACocycle):
        solve_primitive(bad)


# -- lifts and families ---------------------------------------------------


def test_trivial_lift_and_back():
    t = trivial_cocycle(SWAP)
    cert = solve_primitive(euler_pullback(t))
    lifted = lift_from_primitive(t, cert)
    assert all(L == Lift.identity() for row in lifted.table for L in row)
    assert primitive_from_lift(t, lifted).u.is_zero()
    assert family_from_lift(lifted).values == (0, 0)


def test_swap_round_trip():
    s = swap_cocycle()
    cert = primitive_from_family(s, [0, Q(1, 4)])
    lifted = lift_from_primitive(s, cert)
    assert lifted.project().table == s.table
    assert primitive_from_lift(s, lifted) == cert
    r = family_from_lift(lifted)
    assert check_equivariant_family(s, r.to_circle())


def test_lift_from_family_swap_entries():
    s = swap_cocycle()
    lifted, real = lift_from_family(s, [0, Q(1, 4)])
    assert verify_lifted(lifted).valid
    for g in Z2:
        for w in range(2):
            assert lifted(g, w)(real[w]) == real[SWAP.act(g, w)]
    lifted, _ = lift_from_family(trivial_cocycle(SWAP), [Q(1, 3), Q(1, 3)])
    assert all(L.offset == 0 for row in lifted.table for L in row)


def test_lift_from_family_no_fixed_point():
    Z4 = FiniteGroup.cyclic(4)
    quarter = from_representation(GammaSpace.point(Z4), {"g": R(Q(1, 4))})
    for x in (0, Q(1, 3), Q(1, 2)):
        with pytest.raises(NotEquivariant):
            lift_from_family(quarter, [x])


def test_primitive_from_family_rejects_perturbation():
    with pytest.raises(NotEquivariant):
        primitive_from_family(swap_cocycle(), [0, Q(1, 4) + Q(1, 64)])
    assert primitive_from_family(trivial_cocycle(SWAP), [Q(2, 5), Q(2, 5)]).u.is_zero()


def test_single_element_group_family():
    G = FiniteGroup.cyclic(1)
    S = GammaSpace.from_generators(G, ["a", "b"], {})
    lifted = lift_from_primitive(trivial_cocycle(S), solve_primitive(Cochain.zero(S, 2)))
    assert family_from_lift(lifted).values == (0, 0)


def test_offsets_shifted_by_degree_zero_coboundary():
    s = swap_cocycle()
    cert = primitive_from_family(s, [0, Q(1, 4)])
    lifted = lift_from_primitive(s, cert)
    n = (2, -1)
    shifted = LiftedCocycle(SWAP, tuple(
        tuple(lifted(g, w).shifted(n[SWAP.act(g, w)] - n[w]) for w in range(2)) for g in Z2))
    u2 = primitive_from_lift(s, shifted)
    expected = cert.u + coboundary(Cochain(SWAP, 0, Ring.INT, {(): n}))
    assert u2.u == expected


def test_lift_from_primitive_rejects_wrong_u():
    s = swap_cocycle()
    with pytest.raises(NotAPrimitive):
        lift_from_primitive(s, PrimitiveCertificate(Ring.INT, int_cochain(SWAP, [(0, 0), (0, 0)])))


# -- semicohomology, rotation reduction -----------------------------------


def test_witness_for_equal_cocycles_is_identity():
    s = swap_cocycle()
    w = semicohomology_witness(s, s, PrimitiveCertificate(Ring.INT, Cochain.zero(SWAP, 1)))
    assert all(is_identity(m) for m in w.maps)


def test_witness_with_coboundary_twist():
    half = from_representation(SWAP, {"g": R(Q(1, 2))})
    u = coboundary(Cochain(SWAP, 0, Ring.INT, {(): (1, 0)}))
    w = semicohomology_witness(half, half, PrimitiveCertificate(Ring.INT, u))
    assert verify_semicohomology(half, half, w)


def test_witness_against_trivial_from_planted_family():
    rng = random.Random(11)
    sigma, r = planted_family(rng, SWAP)
    t = trivial_cocycle(SWAP)
    res = decide_class_equality(sigma, t, Ring.INT)
    w = semicohomology_witness(sigma, t, res.certificate)
    assert verify_semicohomology(sigma, t, w)
    # over a finite group the sup of homeomorphisms is a homeomorphism; the
    # collapsing witness comes from the family instead
    assert set(classify_witness(w)) == {"homeomorphism"}
    wf = witness_from_family(r)
    assert verify_semicohomology(sigma, t, wf)
    assert set(classify_witness(wf)) == {"collapsing"}


def test_witness_rejects_non_primitive():
    with pytest.raises(NotAPrimitive):
        semicohomology_witness(HALF, trivial_cocycle(POINT),
                               PrimitiveCertificate(Ring.INT, Cochain.zero(POINT, 1)))


def test_rotation_reduction_tautological():
    s = swap_cocycle()
    G = SWAP.group
    # u(g)(x) = angle of s(g, g^-1 x)
    u = Cochain(SWAP, 1, Ring.RAT, {(g,): tuple(s(g, SWAP.act(G.inv(g), x)).rotation_angle()
                                                for x in range(2)) for g in G})
    sigma0, fl = rotation_reduction(s, PrimitiveCertificate(Ring.RAT, u))
    assert sigma0.table == s.table and fl.u.is_zero()


def test_rotation_reduction_half():
    cert = PrimitiveCertificate(Ring.RAT, Cochain(POINT, 1, Ring.RAT, {(0,): (0,), (1,): (Q(1, 2),)}))
    sigma0, fl = rotation_reduction(HALF, cert)
    assert sigma0(1, 0) == R(Q(1, 2)) and fl.u.is_zero()


@settings(max_examples=20)
@given(st.randoms(use_true_random=False))
def test_rotation_reduction_planted_pl(rng):
    S = random_space(rng)
    base = random_base_cocycle(rng, S)
    h = [random_pl_homeo(rng, 8, 3) for _ in range(S.size)]
    sigma = conjugate(base, h)
    cert = solve_primitive(euler_pullback(sigma, Ring.RAT), Ring.RAT)
    sigma0, fl = rotation_reduction(sigma, cert)
    assert sigma0.is_rotation_valued() and verify_cocycle(sigma0).valid
    assert coboundary(fl.u) == euler_pullback(sigma) - euler_pullback(sigma0)


def test_rotation_reduction_rejects_non_primitive():
    with pytest.raises(NotAPrimitive):
        rotation_reduction(HALF, PrimitiveCertificate(Ring.RAT, Cochain.zero(POINT, 1, Ring.RAT)))


# -- elementary reduction -------------------------------------------------


def test_elementary_trivial_uniform():
    sigma0, w = elementary_reduction(trivial_cocycle(SWAP), MeasureFamily.uniform(2))
    assert sigma0.table == trivial_cocycle(SWAP).table
    assert all(is_identity(m) for m in w.maps)


def test_elementary_half_rotation_uniform():
    sigma0, w = elementary_reduction(HALF, MeasureFamily.uniform(1))
    assert sigma0(1, 0) == R(Q(1, 2))
    assert verify_semicohomology(sigma0, HALF, w)


def fixing_swap():
    f = CircleMap.from_points([(0, 0), (Q(1, 4), Q(1, 8)), (Q(1, 2), Q(1, 2))])
    return build_cocycle(SWAP, {("g", "w1"): f, ("g", "w2"): f.inverse()})


def test_elementary_single_atom():
    res = elementary_reduction(fixing_swap(), MeasureFamily.dirac([Q(1, 2), Q(1, 2)]))
    assert isinstance(res, FiniteSetFamily)
    assert res.k == 1 and res.sets == ((Q(1, 2),), (Q(1, 2),))


def test_elementary_atom_at_zero():
    res = elementary_reduction(fixing_swap(), MeasureFamily.dirac([0, 0]))
    assert res.k == 1 and res.sets == ((0,), (0,))


def test_elementary_mixed_atomicity():
    S = GammaSpace.from_generators(Z2, ["a", "b"], {})
    mu = MeasureFamily((PLLift.identity(), MeasureFamily.dirac([Q(1, 3)]).cdfs[0]))
    with pytest.raises(MixedAtomicity):
        elementary_reduction(trivial_cocycle(S), mu)


def test_elementary_not_equivariant():
    with pytest.raises(NotEquivariant):
        elementary_reduction(HALF, MeasureFamily.dirac([Q(1, 3)]))


def test_measure_family_requires_cdf():
    with pytest.raises(ValueError):
        MeasureFamily((PLLift([(0, Q(1, 4))], strict=False),))


@settings(max_examples=15)
@given(st.randoms(use_true_random=False))
def test_elementary_conjugated_lebesgue(rng):
    S = random_space(rng)
    sigma_rot = random_base_cocycle(rng, S)
    if not sigma_rot.is_rotation_valued():
        sigma_rot = from_representation(S, {})
    h = [random_pl_homeo(rng, 8, 3) for _ in range(S.size)]
    sigma = conjugate(sigma_rot, h)
    # mu(w) = (h(w)^-1)_* Lebesgue has CDF x -> H(x) - H(0)
    cdfs = tuple(pushforward_cdf(PLLift.identity(), f.inverse()) for f in h)
    sigma0, w = elementary_reduction(sigma, MeasureFamily(cdfs))
    assert sigma0.is_rotation_valued()
    assert verify_semicohomology(sigma0, sigma, w)


# -- decide_class_equality ------------------------------------------------


def test_decide_examples():
    s = swap_cocycle()
    res = decide_class_equality(s, s, Ring.INT)
    assert res.equal and res.certificate.u.is_zero()
    res = decide_class_equality(HALF, trivial_cocycle(POINT), Ring.INT)
    assert not res.equal and res.obstruction.modulus == 2
    res = decide_class_equality(HALF, trivial_cocycle(POINT), Ring.RAT)
    assert res.equal and res.certificate.u(1) == (Q(1, 2),)


@settings(max_examples=25)
@given(st.randoms(use_true_random=False))
def test_round_trip_a(rng):
    S = random_space(rng)
    sigma, r = planted_family(rng, S)
    u0 = primitive_from_family(sigma, r)
    lifted = lift_from_primitive(sigma, u0)
    rt = family_from_lift(lifted)
    assert check_equivariant_family(sigma, rt.to_circle())
    u1 = primitive_from_family(sigma, rt.to_circle())
    assert degree_zero_difference(u1.u, u0.u) is not None


@settings(max_examples=25)
@given(st.randoms(use_true_random=False))
def test_witness_validity(rng):
    S = random_space(rng)
    base = random_base_cocycle(rng, S)
    s1, s2, _ = planted_conjugate_pair(rng, base, 8)
    res = decide_class_equality(s1, s2, Ring.INT)
    assert res.equal
    assert verify_semicohomology(s1, s2, semicohomology_witness(s1, s2, res.certificate))


# -- truncated free groups ------------------------------------------------


def test_ball_family_monotone_in_radius():
    rng = random.Random(2)
    f, g = random_pl_homeo(rng, 16, 4), random_pl_homeo(rng, 16, 4)
    lifts = [Lift(f, 0), Lift(g, -1)]
    vals = [ball_family(FreeBall(2, r), lifts) for r in (1, 2, 3)]
    assert vals == sorted(vals)


def test_ball_vanishing_is_tagged_with_radius():
    res = decide_ball_vanishing(FreeBall(1, 3), [R(Q(1, 2))])
    assert res.equal and res.radius == 3
    res = decide_ball_vanishing(FreeBall(2, 2), [R(Q(1, 3)), R(Q(1, 2))])
    assert res.equal and res.radius == 2
