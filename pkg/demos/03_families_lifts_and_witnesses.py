# coding: utf-8

# # Equivariant families, lifts and semicohomology witnesses
#
# A cocycle with an equivariant family of points has vanishing integral
# class.  The library moves between four pieces of data: a family, an
# integer primitive, a lift to the real line, and a witness that
# intertwines the cocycle with the trivial one.

import random

from eulerlab import (Ring, classify_witness, decide_class_equality, euler_pullback,
                      family_from_lift, lift_from_primitive, primitive_from_family,
                      semicohomology_witness, trivial_cocycle, verify_lifted,
                      verify_primitive, verify_semicohomology, witness_from_family)
from eulerlab.corpus import planted_family, random_space

rng = random.Random(3)
S = random_space(rng)
sigma, r = planted_family(rng, S)
print("group order", S.group.order, "points", S.size)
print("planted family:", [str(x) for x in r.values])

# family -> primitive -> lift -> family

u = primitive_from_family(sigma, r)
print("primitive verifies:", verify_primitive(euler_pullback(sigma), u))
lifted = lift_from_primitive(sigma, u)
print("lift is a cocycle:", verify_lifted(lifted).valid)
print("family from the lift:", [str(x) for x in family_from_lift(lifted).values])

# A witness assembled from the integer primitive consists of homeomorphisms;
# the one assembled from the family collapses each slice to a point.

t = trivial_cocycle(S)
res = decide_class_equality(sigma, t, Ring.INT)
w = semicohomology_witness(sigma, t, res.certificate)
print("max-construction witness:", classify_witness(w), verify_semicohomology(sigma, t, w))
wf = witness_from_family(r)
print("family witness:", classify_witness(wf), verify_semicohomology(sigma, t, wf))
