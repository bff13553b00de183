"""The normalized bounded Euler cocycle on PL circle homeomorphisms.

For circle maps ``f, g`` the canonical lifts satisfy
``s(f) o s(g) = s(f o g) + e(f, g)`` with an integer carry ``e(f, g)``,
which is always 0 or 1.  The same integer serves the real-coefficient
class after embedding in the rationals.
"""
from __future__ import annotations

import math

from .circle_maps import CircleMap, canonicalize, compose_lifts


def euler_value(f: CircleMap, g: CircleMap) -> int:
    """Integer carry ``s(f)(s(g)(0)) - s(f o g)(0)``."""
    top = f.canonical_lift(g.canonical_lift(0))
    # s(f)s(g) lifts fg, so s(fg)(0) is the fractional part of top
    return math.floor(top)


def euler_coboundary_check(f: CircleMap, g: CircleMap, h: CircleMap) -> int:
    """``e(g,h) - e(fg,h) + e(f,gh) - e(f,g)``; zero for every triple."""
    return (euler_value(g, h) - euler_value(f * g, h)
            + euler_value(f, g * h) - euler_value(f, g))


def euler_value_via_lifts(f: CircleMap, g: CircleMap) -> int:
    """Same carry computed by composing lifts and reading the offset.

    Slower than :func:`euler_value`; kept as an independent route for tests.
    """
    return canonicalize(compose_lifts(f.canonical_lift, g.canonical_lift)).offset
