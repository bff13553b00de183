"""Independent reference computations used by the tests.

Nothing here calls the solver or the lift machinery of the library; the
only shared pieces are the group tables and map evaluation.
"""
import math
from fractions import Fraction
from itertools import product


def scalar_euler(f, g):
    """Carry of canonical lifts, read off by evaluating at 0 only."""
    a = f.canonical_lift(g.canonical_lift(Fraction(0)))
    fg0 = a - math.floor(a)
    return a - fg0


def rotation_euler(a, b):
    return math.floor(a + b)


def brute_force_primitive(space, c, bound=3):
    """Backtracking search for an integer u, |u| <= bound, u(e) = 0, with du = c.

    ``c`` is a dict ``(g, l) -> tuple over points``.  Returns the first
    solution found as a dict ``(g, w) -> int`` or None.
    """
    G = space.group
    e = G.identity
    unknowns = [(g, w) for g in sorted(G, key=lambda g: (len(G.words[g]), g))
                if g != e for w in range(space.size)]
    pos = {v: i for i, v in enumerate(unknowns)}
    checks = [[] for _ in unknowns]
    for g in G:
        gi = G.inv(g)
        for lam in G:
            gl = G.mul(g, lam)
            for w in range(space.size):
                terms = [(1, lam, space.act(gi, w)), (-1, gl, w), (1, g, w)]
                terms = [(s, h, x) for s, h, x in terms if h != e]
                rhs = c[g, lam][w]
                if not terms:
                    if rhs != 0:
                        return None
                    continue
                last = max(pos[h, x] for _, h, x in terms)
                checks[last].append((terms, rhs))
    values = {}

    def ok(i):
        for terms, rhs in checks[i]:
            if sum(s * values[h, x] for s, h, x in terms) != rhs:
                return False
        return True

    def search(i):
        if i == len(unknowns):
            return True
        for v in range(-bound, bound + 1):
            values[unknowns[i]] = v
            if ok(i) and search(i + 1):
                return True
        del values[unknowns[i]]
        return False

    return dict(values) if search(0) else None


def naive_coboundary1(space, u):
    """``du(g, l)(w) = u(l)(g^-1 w) - u(g l)(w) + u(g)(w)`` from a dict u[(g, w)]."""
    G = space.group
    return {(g, lam): tuple(u[lam, space.act(G.inv(g), w)] - u[G.mul(g, lam), w] + u[g, w]
                            for w in range(space.size))
            for g, lam in product(G, G)}
