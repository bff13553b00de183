"""Measurable cocycles over finite Gamma-spaces, stored as full tables.

``sigma(g, w)`` is a :class:`CircleMap`; the cocycle identity reads
``sigma(g1 g2, w) = sigma(g1, g2 w) o sigma(g2, w)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .circle_maps import (CircleMap, Lift, MonotoneDegreeOneMap, Report,
                          as_rational, frac_part)
from .errors import InconsistentCocycle, NotACocycle, NotAHomomorphism
from .group_space import GammaSpace


@dataclass(frozen=True, eq=False)
class MeasurableCocycle:
    space: GammaSpace
    table: tuple  # table[g][w] -> CircleMap

    def __call__(self, g: int, w: int) -> CircleMap:
        return self.table[g][w]

    @property
    def group(self):
        return self.space.group

    def entries(self):
        for g in self.space.group:
            for w in range(self.space.size):
                yield g, w, self.table[g][w]

    def __eq__(self, other):
        if not isinstance(other, MeasurableCocycle):
            return NotImplemented
        return self.space is other.space and self.table == other.table

    __hash__ = object.__hash__

    def is_rotation_valued(self) -> bool:
        return all(f.is_rotation() for _, _, f in self.entries())


def verify_cocycle(sigma: MeasurableCocycle) -> Report:
    """Check ``sigma(e, .) = id`` and the cocycle identity on every triple."""
    S = sigma.space
    G = S.group
    v = []
    if any(not sigma(G.identity, w).is_identity() for w in range(S.size)):
        v.append("sigma(e, w) is not the identity")
    for g1 in G:
        for g2 in G:
            g12 = G.mul(g1, g2)
            for w in range(S.size):
                if sigma(g12, w) != sigma(g1, S.act(g2, w)) * sigma(g2, w):
                    v.append(f"identity fails at ({G.names[g1]}, {G.names[g2]}, {S.points[w]})")
    return Report(tuple(v))


def _first_failure(sigma: MeasurableCocycle):
    S = sigma.space
    G = S.group
    for g1 in G:
        for g2 in G:
            g12 = G.mul(g1, g2)
            for w in range(S.size):
                if sigma(g12, w) != sigma(g1, S.act(g2, w)) * sigma(g2, w):
                    return g1, g2, w
    return None


def _check_or_raise(sigma: MeasurableCocycle) -> MeasurableCocycle:
    bad = _first_failure(sigma)
    if bad is not None:
        G, S = sigma.space.group, sigma.space
        g1, g2, w = bad
        raise InconsistentCocycle(G.names[g1], G.names[g2], S.points[w])
    return sigma


def _normalize_generator_table(space: GammaSpace, generator_table):
    G = space.group
    out = {}
    for (gen, pt), f in generator_table.items():
        pos = G.generator_names.index(gen) if isinstance(gen, str) else gen
        w = space.point_index(pt) if isinstance(pt, str) else pt
        out[pos, w] = f
    return out


def build_cocycle(space: GammaSpace,
                  generator_table: Mapping[tuple, CircleMap]) -> MeasurableCocycle:
    """Extend generator values along geodesic words and verify every relation.

    Keys are ``(generator, point)`` given by name or index; missing
    entries default to the identity.
    """
    G = space.group
    gens = _normalize_generator_table(space, generator_table)
    ident = CircleMap.identity()
    m = space.size
    table = [None] * G.order
    table[G.identity] = [ident] * m
    # words[g] = (pos,) + words[h] with g = s_pos * h
    for g in sorted(range(G.order), key=lambda g: len(G.words[g])):
        word = G.words[g]
        if not word:
            continue
        pos, rest = word[0], word[1:]
        h = G.identity
        for p in reversed(rest):
            h = G.mul(G.generators[p], h)
        row_h = table[h]
        table[g] = [gens.get((pos, space.act(h, w)), ident) * row_h[w] for w in range(m)]
    sigma = MeasurableCocycle(space, tuple(tuple(r) for r in table))
    return _check_or_raise(sigma)


def from_table(space: GammaSpace, table, validate=True) -> MeasurableCocycle:
    sigma = MeasurableCocycle(space, tuple(tuple(r) for r in table))
    return _check_or_raise(sigma) if validate else sigma


def trivial_cocycle(space: GammaSpace) -> MeasurableCocycle:
    ident = CircleMap.identity()
    return MeasurableCocycle(space, tuple((ident,) * space.size for _ in space.group))


def from_representation(space: GammaSpace,
                        images: Mapping[str, CircleMap]) -> MeasurableCocycle:
    """The cocycle ``sigma(g, w) = rho(g)``, constant in ``w``."""
    G = space.group
    ident = CircleMap.identity()
    gen_img = {pos: images.get(name, ident) for pos, name in enumerate(G.generator_names)}
    rho = [None] * G.order
    rho[G.identity] = ident
    for g in sorted(range(G.order), key=lambda g: len(G.words[g])):
        word = G.words[g]
        if word:
            val = ident
            for pos in word:
                val = val * gen_img[pos]
            rho[g] = val
    for a in G:
        for b in G:
            if rho[G.mul(a, b)] != rho[a] * rho[b]:
                raise NotAHomomorphism(
                    f"rho({G.names[a]}*{G.names[b]}) != rho({G.names[a]}) rho({G.names[b]})")
    return MeasurableCocycle(space, tuple((rho[g],) * space.size for g in G))


def rot_from_function(space: GammaSpace, f) -> MeasurableCocycle:
    """Rotation cocycle attached to an additive circle-valued 1-cocycle ``f``.

    ``f(g, w)`` (callable, mapping, or ``table[g][w]``) must satisfy
    ``f(l)(g^-1 w) - f(g l)(w) + f(g)(w) = 0 mod 1``; the rotation
    cocycle is ``sigma0(g, w) = R(-f(g^-1)(w))``, equivalently
    ``R(f(g)(g w))``.
    """
    G = space.group
    m = space.size
    val = _as_table(space, f)
    for g in G:
        gi = G.inv(g)
        for lam in G:
            gl = G.mul(g, lam)
            for w in range(m):
                d = val[lam][space.act(gi, w)] - val[gl][w] + val[g][w]
                if d.denominator != 1:
                    raise NotACocycle(
                        f"coboundary of f is {d} mod 1 at ({G.names[g]}, {G.names[lam]}, "
                        f"{space.points[w]})")
    table = tuple(tuple(CircleMap.rotation(-val[G.inv(g)][w]) for w in range(m)) for g in G)
    return from_table(space, table)


def _as_table(space: GammaSpace, f):
    G, m = space.group, space.size
    if callable(f):
        return [[as_rational(f(g, w)) for w in range(m)] for g in G]
    if isinstance(f, Mapping):
        out = [[Fraction(0)] * m for _ in G]
        for (g, w), x in f.items():
            gi = G.element(g) if isinstance(g, str) else g
            wi = space.point_index(w) if isinstance(w, str) else w
            out[gi][wi] = as_rational(x)
        return out
    return [[as_rational(x) for x in row] for row in f]


def conjugate(sigma: MeasurableCocycle, h: Sequence[CircleMap]) -> MeasurableCocycle:
    """The cohomologous cocycle ``h(g w)^-1 o sigma(g, w) o h(w)``."""
    S = sigma.space
    hinv = [x.inverse() for x in h]
    table = tuple(tuple(hinv[S.act(g, w)] * sigma(g, w) * h[w] for w in range(S.size))
                  for g in S.group)
    return MeasurableCocycle(S, table)


# ---------------------------------------------------------------------------
# lifted cocycles and families


@dataclass(frozen=True, eq=False)
class LiftedCocycle:
    space: GammaSpace
    table: tuple  # table[g][w] -> Lift

    def __call__(self, g: int, w: int) -> Lift:
        return self.table[g][w]

    def project(self) -> MeasurableCocycle:
        return MeasurableCocycle(self.space, tuple(tuple(L.base for L in row) for row in self.table))

    def __eq__(self, other):
        if not isinstance(other, LiftedCocycle):
            return NotImplemented
        return self.space is other.space and self.table == other.table

    __hash__ = object.__hash__


def verify_lifted(lifted: LiftedCocycle) -> Report:
    S = lifted.space
    G = S.group
    v = []
    for w in range(S.size):
        if lifted(G.identity, w) != Lift.identity():
            v.append(f"lift at (e, {S.points[w]}) is not the identity")
    for g1 in G:
        for g2 in G:
            g12 = G.mul(g1, g2)
            for w in range(S.size):
                if lifted(g12, w) != lifted(g1, S.act(g2, w)) * lifted(g2, w):
                    v.append(f"lifted identity fails at ({G.names[g1]}, {G.names[g2]}, "
                             f"{S.points[w]})")
    return Report(tuple(v))


@dataclass(frozen=True)
class EquivariantFamily:
    """Points ``r(w)``: circle points in [0, 1), or real numbers when ``real``."""
    values: tuple
    real: bool = False

    def __post_init__(self):
        vals = tuple(as_rational(x) for x in self.values)
        if not self.real:
            vals = tuple(frac_part(x) for x in vals)
        object.__setattr__(self, "values", vals)

    def __getitem__(self, w):
        return self.values[w]

    def __len__(self):
        return len(self.values)

    def to_circle(self) -> "EquivariantFamily":
        return EquivariantFamily(self.values, real=False)


def check_equivariant_family(sigma: MeasurableCocycle, r) -> bool:
    """``r(g w) = sigma(g, w) r(w)`` on the circle for every ``g, w``."""
    S = sigma.space
    vals = [frac_part(as_rational(x)) for x in (r.values if isinstance(r, EquivariantFamily) else r)]
    if len(vals) != S.size:
        raise ValueError("family must have one value per point")
    return all(sigma(g, w)(vals[w]) == vals[S.act(g, w)]
               for g in S.group for w in range(S.size))


def check_lifted_family(lifted: LiftedCocycle, r) -> bool:
    """``r(g w) = lifted(g, w)(r(w))`` in the real line."""
    S = lifted.space
    vals = r.values if isinstance(r, EquivariantFamily) else tuple(as_rational(x) for x in r)
    return all(lifted(g, w)(vals[w]) == vals[S.act(g, w)]
               for g in S.group for w in range(S.size))


# ---------------------------------------------------------------------------
# semicohomology


@dataclass(frozen=True)
class SemicohomologyWitness:
    """Slices ``phi(w)`` and the side of the relation they realize.

    For ``side == "left"`` and cocycles ``(s1, s2)``:
    ``s1(g, w) o phi(w) = phi(g w) o s2(g, w)``.  ``"right"`` swaps the
    roles of ``s1`` and ``s2``.
    """
    maps: tuple
    side: str = "left"

    def __post_init__(self):
        if self.side not in ("left", "right"):
            raise ValueError("side must be 'left' or 'right'")
        object.__setattr__(self, "maps", tuple(
            m if isinstance(m, MonotoneDegreeOneMap) else MonotoneDegreeOneMap.from_circle_map(m)
            for m in self.maps))


def verify_semicohomology(sigma1: MeasurableCocycle, sigma2: MeasurableCocycle,
                          witness: SemicohomologyWitness) -> bool:
    S = sigma1.space
    if sigma2.space is not S and sigma2.space.action != S.action:
        raise ValueError("cocycles live on different spaces")
    a, b = (sigma1, sigma2) if witness.side == "left" else (sigma2, sigma1)
    phi = witness.maps
    if len(phi) != S.size:
        raise ValueError("witness needs one slice per point")
    for g in S.group:
        for w in range(S.size):
            if phi[w].before(a(g, w)) != phi[S.act(g, w)].after(b(g, w)):
                return False
    return True


def classify_witness(witness: SemicohomologyWitness) -> tuple:
    """``"homeomorphism"`` or ``"collapsing"`` for each slice."""
    return tuple("homeomorphism" if m.is_homeomorphism() else "collapsing"
                 for m in witness.maps)


def witness_from_family(r) -> SemicohomologyWitness:
    """Constant slices ``phi(w) = r(w)``: a left witness for ``(sigma, trivial)``."""
    vals = r.values if isinstance(r, EquivariantFamily) else r
    return SemicohomologyWitness(tuple(MonotoneDegreeOneMap.constant(x) for x in vals), "left")


def constant_witness(space: GammaSpace, x0=0) -> SemicohomologyWitness:
    """Constant slices ``phi(w) = x0``: a right witness for ``(sigma, trivial)``."""
    return SemicohomologyWitness(
        tuple(MonotoneDegreeOneMap.constant(x0) for _ in range(space.size)), "right")
