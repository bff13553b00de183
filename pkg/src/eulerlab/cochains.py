"""Inhomogeneous cochains of a finite group with coefficients in functions on Omega.

An n-cochain assigns to each n-tuple of group elements a coefficient
vector, one integer (ring ``Int``) or rational (ring ``Rat``) per point.
The group acts on coefficient vectors by ``(g v)(w) = v(g^-1 w)``.
"""
from __future__ import annotations

import enum
from fractions import Fraction
from itertools import product
from typing import Callable

from .circle_maps import CircleMap
from .errors import UnsupportedDegree
from .euler_cocycle import euler_value
from .group_space import GammaSpace


class Ring(str, enum.Enum):
    INT = "Int"
    RAT = "Rat"

    @classmethod
    def parse(cls, value) -> "Ring":
        if isinstance(value, Ring):
            return value
        aliases = {"Z": cls.INT, "Int": cls.INT, "int": cls.INT,
                   "Q": cls.RAT, "Rat": cls.RAT, "rat": cls.RAT, "R": cls.RAT}
        try:
            return aliases[value]
        except KeyError:
            raise ValueError(f"unknown ring {value!r}; use Z or Q") from None

    def coerce(self, x):
        if self is Ring.INT:
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    raise ValueError(f"{x} is not an integer")
                return int(x)
            return int(x)
        return Fraction(x)


def act(space: GammaSpace, g: int, v: tuple) -> tuple:
    """``(g v)(w) = v(g^-1 w)``."""
    gi = space.group.inv(g)
    return tuple(v[space.act(gi, w)] for w in range(space.size))


class Cochain:
    """Inhomogeneous ``degree``-cochain: ``values[(g1, .., gn)]`` is a tuple over points."""

    __slots__ = ("space", "degree", "ring", "values")

    def __init__(self, space: GammaSpace, degree: int, ring, values: dict):
        self.space = space
        self.degree = degree
        self.ring = Ring.parse(ring)
        self.values = values

    @classmethod
    def zero(cls, space, degree, ring=Ring.INT):
        ring = Ring.parse(ring)
        z = (ring.coerce(0),) * space.size
        return cls(space, degree, ring,
                   {k: z for k in product(range(space.group.order), repeat=degree)})

    @classmethod
    def from_function(cls, space, degree, ring, fn: Callable):
        """Build from ``fn(gammas, w)``."""
        ring = Ring.parse(ring)
        return cls(space, degree, ring, {
            k: tuple(ring.coerce(fn(k, w)) for w in range(space.size))
            for k in product(range(space.group.order), repeat=degree)})

    def __call__(self, *gammas) -> tuple:
        return self.values[gammas]

    def with_ring(self, ring) -> "Cochain":
        ring = Ring.parse(ring)
        return Cochain(self.space, self.degree, ring,
                       {k: tuple(ring.coerce(x) for x in v) for k, v in self.values.items()})

    def _combine(self, other, sign):
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        ring = Ring.RAT if Ring.RAT in (self.ring, other.ring) else Ring.INT
        return Cochain(self.space, self.degree, ring, {
            k: tuple(ring.coerce(a + sign * b) for a, b in zip(v, other.values[k]))
            for k, v in self.values.items()})

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return Cochain(self.space, self.degree, self.ring,
                       {k: tuple(-x for x in v) for k, v in self.values.items()})

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        return self.degree == other.degree and self.values == other.values

    __hash__ = None

    def is_zero(self) -> bool:
        return all(x == 0 for v in self.values.values() for x in v)

    def __repr__(self):
        return f"Cochain(degree={self.degree}, ring={self.ring.value}, entries={len(self.values)})"


def coboundary(c: Cochain) -> Cochain:
    """Inhomogeneous coboundary of ``c``.

    ``(dc)(g1..g_{n+1}) = g1 . c(g2..) + sum_i (-1)^i c(.., g_i g_{i+1}, ..)
    + (-1)^{n+1} c(g1..g_n)``; in degree 0 this is ``g . u - u``.
    """
    S, n = c.space, c.degree
    G = S.group
    m = S.size
    vals = c.values
    out = {}
    for key in product(range(G.order), repeat=n + 1):
        first = act(S, key[0], vals[key[1:]])
        acc = list(first)
        for i in range(1, n + 1):
            merged = key[:i - 1] + (G.mul(key[i - 1], key[i]),) + key[i + 1:]
            v = vals[merged]
            sgn = -1 if i % 2 else 1
            for w in range(m):
                acc[w] += sgn * v[w]
        v = vals[key[:n]]
        sgn = -1 if (n + 1) % 2 else 1
        for w in range(m):
            acc[w] += sgn * v[w]
        out[key] = tuple(acc)
    return Cochain(S, n + 1, c.ring, out)


def sup_norm(c: Cochain):
    return max((abs(x) for v in c.values.values() for x in v), default=0)


# ---------------------------------------------------------------------------
# homogeneous <-> inhomogeneous


class HomogeneousCochain:
    """Function ``G^{n+1} -> coefficient vectors``."""

    __slots__ = ("space", "degree", "ring", "values")

    def __init__(self, space, degree, ring, values):
        self.space, self.degree, self.ring, self.values = space, degree, Ring.parse(ring), values

    def __eq__(self, other):
        return (isinstance(other, HomogeneousCochain) and self.degree == other.degree
                and self.values == other.values)

    __hash__ = None


MAX_HOMOGENEOUS_DEGREE = 3


def homogenize(c: Cochain) -> HomogeneousCochain:
    """``(V c)(g0..gn) = g0 . c(g0^-1 g1, .., g_{n-1}^-1 g_n)``."""
    if c.degree > MAX_HOMOGENEOUS_DEGREE:
        raise UnsupportedDegree(f"degree {c.degree} > {MAX_HOMOGENEOUS_DEGREE}")
    S, n = c.space, c.degree
    G = S.group
    out = {}
    for key in product(range(G.order), repeat=n + 1):
        args = tuple(G.mul(G.inv(key[i]), key[i + 1]) for i in range(n))
        out[key] = act(S, key[0], c.values[args])
    return HomogeneousCochain(S, n, c.ring, out)


def inhomogenize(f: HomogeneousCochain) -> Cochain:
    """``(W f)(g1..gn) = f(e, g1, g1 g2, .., g1 .. gn)``."""
    if f.degree > MAX_HOMOGENEOUS_DEGREE:
        raise UnsupportedDegree(f"degree {f.degree} > {MAX_HOMOGENEOUS_DEGREE}")
    S, n = f.space, f.degree
    G = S.group
    out = {}
    for key in product(range(G.order), repeat=n):
        partial = [G.identity]
        for g in key:
            partial.append(G.mul(partial[-1], g))
        out[key] = f.values[tuple(partial)]
    return Cochain(S, n, f.ring, out)


def translate_homogeneous(g: int, f: HomogeneousCochain) -> HomogeneousCochain:
    """``(g f)(g0..gn) = g . f(g^-1 g0, .., g^-1 gn)``."""
    S = f.space
    G = S.group
    gi = G.inv(g)
    return HomogeneousCochain(S, f.degree, f.ring, {
        key: act(S, g, f.values[tuple(G.mul(gi, x) for x in key)]) for key in f.values})


def is_invariant(f: HomogeneousCochain) -> bool:
    return all(translate_homogeneous(g, f) == f for g in f.space.group)


def homogeneous_coboundary(f: HomogeneousCochain) -> HomogeneousCochain:
    """Standard ``sum_i (-1)^i f(g0, .., omit g_i, ..)``."""
    S, n = f.space, f.degree
    out = {}
    for key in product(range(S.group.order), repeat=n + 2):
        acc = [0] * S.size
        for i in range(n + 2):
            v = f.values[key[:i] + key[i + 1:]]
            sgn = -1 if i % 2 else 1
            for w in range(S.size):
                acc[w] += sgn * v[w]
        out[key] = tuple(acc)
    return HomogeneousCochain(S, n + 1, f.ring, out)


# ---------------------------------------------------------------------------
# pullback along a cocycle


def inverse_table(sigma):
    """``A[g][w] = sigma(g^-1, w)^-1``, the maps fed to the pullback."""
    S = sigma.space
    G = S.group
    return [[sigma(G.inv(g), w).inverse() for w in range(S.size)] for g in G]


def pullback(sigma, psi: Callable[[CircleMap, CircleMap], int], ring=Ring.INT) -> Cochain:
    """``c(g, l)(w) = psi(sigma(g^-1, w)^-1, sigma(l^-1, g^-1 w)^-1)``."""
    ring = Ring.parse(ring)
    S = sigma.space
    G = S.group
    A = inverse_table(sigma)
    out = {}
    for g in G:
        gi = G.inv(g)
        Ag = A[g]
        for lam in G:
            Al = A[lam]
            out[g, lam] = tuple(ring.coerce(psi(Ag[w], Al[S.act(gi, w)])) for w in range(S.size))
    return Cochain(S, 2, ring, out)


def euler_pullback(sigma, ring=Ring.INT) -> Cochain:
    """The parametrized Euler cochain of ``sigma``."""
    return pullback(sigma, euler_value, ring)


def representation_pullback(group, rho, psi=euler_value) -> dict:
    """``(g, l) -> psi(rho(g), rho(l))`` for ``rho`` indexed by elements."""
    return {(g, lam): psi(rho[g], rho[lam]) for g in group for lam in group}
