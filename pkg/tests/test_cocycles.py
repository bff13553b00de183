import random
from fractions import Fraction as Q

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eulerlab import (CircleMap, FiniteGroup, GammaSpace,
                      MonotoneDegreeOneMap, PLLift, SemicohomologyWitness, build_cocycle,
                      check_equivariant_family, classify_witness, constant_witness,
                      from_representation, rot_from_function, trivial_cocycle,
                      verify_cocycle, verify_semicohomology)
from eulerlab.corpus import planted_conjugate_pair, random_base_cocycle, random_space
from eulerlab.errors import InconsistentCocycle, NotACocycle, NotAHomomorphism

R = CircleMap.rotation
Z2 = FiniteGroup.cyclic(2)
SWAP = GammaSpace.from_generators(Z2, ["w1", "w2"], {"g": [1, 0]})
POINT = GammaSpace.point(Z2)


def swap_cocycle():
    return build_cocycle(SWAP, {("g", "w1"): R(Q(1, 4)), ("g", "w2"): R(Q(3, 4))})


def test_build_examples():
    assert build_cocycle(SWAP, {}).table == trivial_cocycle(SWAP).table
    s = swap_cocycle()
    assert verify_cocycle(s).valid
    assert s(Z2.identity, 0).is_identity()
    with pytest.raises(InconsistentCocycle):
        build_cocycle(POINT, {("g", "w"): R(Q(1, 4))})


def test_representation_examples():
    Z4 = FiniteGroup.cyclic(4)
    s = from_representation(GammaSpace.point(Z4), {"g": R(Q(1, 4))})
    assert s(Z4.element("g^2"), 0) == R(Q(1, 2))
    assert from_representation(POINT, {}).table == trivial_cocycle(POINT).table
    with pytest.raises(NotAHomomorphism):
        from_representation(GammaSpace.point(FiniteGroup.cyclic(3)), {"g": R(Q(1, 2))})


def test_rot_from_function_examples():
    assert rot_from_function(POINT, [[0], [0]]).table == trivial_cocycle(POINT).table
    s = rot_from_function(POINT, [[0], [Q(1, 2)]])
    assert s(1, 0) == R(Q(1, 2))
    with pytest.raises(NotACocycle):
        rot_from_function(POINT, [[0], [Q(1, 3)]])


def test_rot_from_function_sign():
    # f(g^k) = k/3 is a homomorphism to Q/Z; the rotation cocycle is R(k/3)
    Z3 = FiniteGroup.cyclic(3)
    s = rot_from_function(GammaSpace.point(Z3), [[0], [Q(1, 3)], [Q(2, 3)]])
    assert s(Z3.element("g"), 0) == R(Q(1, 3))


def test_equivariant_family_examples():
    s = swap_cocycle()
    assert check_equivariant_family(trivial_cocycle(SWAP), [Q(1, 5), Q(1, 5)])
    assert check_equivariant_family(s, [0, Q(1, 4)])
    assert not check_equivariant_family(s, [0, Q(1, 2)])


def test_semicohomology_examples():
    s = swap_cocycle()
    ident = SemicohomologyWitness((MonotoneDegreeOneMap.identity(),) * 2)
    assert verify_semicohomology(s, s, ident)
    assert verify_semicohomology(s, trivial_cocycle(SWAP), constant_witness(SWAP, Q(2, 7)))


def test_perturbed_witness_fails():
    rng = random.Random(3)
    base = random_base_cocycle(rng, SWAP)
    s1, s2, w = planted_conjugate_pair(rng, base)
    assert verify_semicohomology(s1, s2, w)
    # insert a breakpoint at 1/2 and move it up by 1/64
    F = w.maps[0].lift
    bps = [b for b in F.breakpoints if b[0] != Q(1, 2)]
    bps.append((Q(1, 2), F(Q(1, 2)) + Q(1, 64)))
    moved = MonotoneDegreeOneMap.from_lift(PLLift(sorted(bps), strict=False))
    bad = SemicohomologyWitness((moved,) + w.maps[1:])
    assert not verify_semicohomology(s1, s2, bad)


def test_classify_examples():
    assert classify_witness(SemicohomologyWitness((MonotoneDegreeOneMap.identity(),))) == (
        "homeomorphism",)
    assert classify_witness(SemicohomologyWitness((MonotoneDegreeOneMap.constant(0),))) == (
        "collapsing",)
    flat = MonotoneDegreeOneMap.from_lift(
        PLLift([(0, 0), (Q(1, 4), Q(1, 2)), (Q(1, 2), Q(1, 2))], strict=False))
    assert classify_witness(SemicohomologyWitness((flat,))) == ("collapsing",)


@settings(max_examples=30)
@given(st.randoms(use_true_random=False))
def test_constant_witness_always_right(rng):
    S = random_space(rng)
    sigma = random_base_cocycle(rng, S)
    x0 = Q(rng.randrange(64), 64)
    assert verify_semicohomology(sigma, trivial_cocycle(S), constant_witness(S, x0))


def test_corpus_cocycles_valid(small_corpus):
    for entry in small_corpus:
        sigma = entry.sigma
        assert verify_cocycle(sigma).valid, entry.label
        if entry.representation is not None:
            S = sigma.space
            assert all(sigma(g, w) == sigma(g, 0) for g in S.group for w in range(S.size))
