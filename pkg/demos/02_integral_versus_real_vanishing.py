# coding: utf-8

# # Integral versus real vanishing
#
# Z/n acting on a one-point space through the rotation by 1/n is the basic
# example where the Euler class is torsion: its pullback has no integer
# primitive, yet a rational one exists.

from fractions import Fraction as Q

from eulerlab import (CircleMap, FiniteGroup, GammaSpace, Ring, euler_pullback,
                      from_representation, rotation_reduction, solve_primitive,
                      verify_obstruction)

n = 5
G = FiniteGroup.cyclic(n)
S = GammaSpace.point(G)
sigma = from_representation(S, {"g": CircleMap.rotation(Q(1, n))})

# Over the integers the solver returns a modular obstruction: a functional
# that kills every coboundary mod n yet sends the cocycle to 1.

c = euler_pullback(sigma, Ring.INT)
obs = solve_primitive(c, Ring.INT)
print("modulus", obs.modulus, "residue", obs.residue, "re-verified:", verify_obstruction(c, obs))

# Over the rationals a primitive exists, and it is k/n on g^k.

cert = solve_primitive(euler_pullback(sigma, Ring.RAT), Ring.RAT)
x = G.identity
for k in range(n):
    print(f"u(g^{k}) =", cert.u(x)[0])
    x = G.mul(G.generators[0], x)

# The fractional part of the primitive recovers the rotation cocycle.

sigma0, floor_part = rotation_reduction(sigma, cert)
print("rotation reduction equals sigma:", sigma0.table == sigma.table)
print("integer part vanishes:", floor_part.u.is_zero())
