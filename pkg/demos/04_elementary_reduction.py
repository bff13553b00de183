# coding: utf-8

# # Elementary cocycles
#
# An invariant family of probability measures on the circle either has no
# atoms, in which case the cocycle is semiconjugate to rotations, or it has
# finitely many atoms of top mass that form an invariant finite set.

from fractions import Fraction as Q

from eulerlab import (CircleMap, FiniteGroup, GammaSpace, MeasureFamily, build_cocycle,
                      elementary_reduction, from_representation, verify_semicohomology)

Z2 = FiniteGroup.cyclic(2)
swap = GammaSpace.from_generators(Z2, ["w1", "w2"], {"g": [1, 0]})

# Lebesgue measure on every slice, rotation cocycle: the reduction is the
# cocycle itself and the witness is the identity.

half = from_representation(swap, {"g": CircleMap.rotation(Q(1, 2))})
sigma0, w = elementary_reduction(half, MeasureFamily.uniform(2))
print("atomless branch, intertwines:", verify_semicohomology(sigma0, half, w))

# A swap by a PL map fixing 1/2: Dirac masses at 1/2 form a one-point set family.

f = CircleMap.from_points([(0, 0), (Q(1, 4), Q(1, 8)), (Q(1, 2), Q(1, 2))])
fixing = build_cocycle(swap, {("g", "w1"): f, ("g", "w2"): f.inverse()})
res = elementary_reduction(fixing, MeasureFamily.dirac([Q(1, 2), Q(1, 2)]))
print("atomic branch: k =", res.k, "sets =", [[str(x) for x in s] for s in res.sets])
