# coding: utf-8

# # Circle maps and the Euler cocycle
#
# Circle homeomorphisms are stored as piecewise-linear lifts with exact
# rational breakpoints.  The canonical lift of a map is the one whose value
# at 0 lies in [0, 1); the Euler cocycle is the integer by which canonical
# lifts fail to compose.

from fractions import Fraction as Q

from eulerlab import CircleMap, euler_coboundary_check, euler_value

# Two rotations whose angles add past a full turn carry 1.

a, b = CircleMap.rotation(Q(2, 3)), CircleMap.rotation(Q(1, 2))
print("eps(R_2/3, R_1/2) =", euler_value(a, b))
print("eps(R_1/3, R_1/2) =", euler_value(CircleMap.rotation(Q(1, 3)), b))

# A PL homeomorphism is given by breakpoints of one period of its lift.

f = CircleMap.from_points([(0, Q(1, 8)), (Q(1, 2), Q(3, 4))])
print(f)
print("f(1/4) =", f(Q(1, 4)), "  f^-1(f(1/4)) =", f.inverse()(f(Q(1, 4))))

# The cocycle identity holds for every triple, with no rounding anywhere.

g = CircleMap.from_points([(0, Q(5, 6)), (Q(1, 3), Q(1, 1))])
print("coboundary check on (f, g, a):", euler_coboundary_check(f, g, a))
print("values on a few pairs:", [euler_value(x, y) for x in (f, g, a) for y in (f, g, a)])
