"""Random and exhaustive instance generators.

The exhaustive corpus is a fixed finite grid: the groups Z/2, Z/3, Z/4 and
S_3, every action on at most three points, and cocycles whose generator
values are rotations with denominators at most 6, their conjugates by a
small list of PL maps, and representation-induced cocycles.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from typing import Iterator, Optional

from .circle_maps import CircleMap, PLLift
from .cocycles import (EquivariantFamily, MeasurableCocycle, SemicohomologyWitness,
                       build_cocycle, conjugate, from_representation, from_table,
                       trivial_cocycle, witness_from_family)
from .errors import InconsistentCocycle, NotAHomomorphism
from .group_space import FiniteGroup, GammaSpace


# ---------------------------------------------------------------------------
# random circle maps


def random_rational(rng: random.Random, max_den: int) -> Fraction:
    q = rng.randint(1, max_den)
    return Fraction(rng.randrange(q), q)


def _distinct_interior(rng, k, max_den):
    out = set()
    while len(out) < k:
        x = random_rational(rng, max_den)
        if x:
            out.add(x)
    return sorted(out)


def random_pl_homeo(rng: random.Random, max_den: int = 64, max_breaks: int = 6) -> CircleMap:
    """PL homeomorphism with at most ``max_breaks`` breakpoints per period."""
    k = rng.randint(0, max_breaks - 1)
    xs = _distinct_interior(rng, k, max_den)
    ts = _distinct_interior(rng, k, max_den)
    y0 = random_rational(rng, max_den)
    pts = [(0, y0)] + [(x, y0 + t) for x, t in zip(xs, ts)]
    return CircleMap.from_lift(PLLift(pts))


def random_rotation(rng: random.Random, max_den: int = 64) -> CircleMap:
    return CircleMap.rotation(random_rational(rng, max_den))


def rotation_grid(max_den: int) -> list:
    return sorted({Fraction(p, q) for q in range(1, max_den + 1) for p in range(q)})


def small_conjugators() -> list:
    """A few fixed PL homeomorphisms with denominators at most 6."""
    h = lambda pts: CircleMap.from_lift(PLLift(pts))
    return [
        h([(0, 0), (Fraction(1, 2), Fraction(1, 3))]),
        h([(0, Fraction(1, 6)), (Fraction(1, 3), Fraction(1, 2))]),
        h([(0, 0), (Fraction(1, 3), Fraction(1, 2)), (Fraction(1, 2), Fraction(2, 3))]),
    ]


# ---------------------------------------------------------------------------
# exhaustive corpus


def small_groups() -> dict:
    return {
        "Z2": FiniteGroup.cyclic(2),
        "Z3": FiniteGroup.cyclic(3),
        "Z4": FiniteGroup.cyclic(4),
        "S3": FiniteGroup.symmetric(3),
    }


def all_actions(group: FiniteGroup, m: int) -> list:
    """Every action of ``group`` on ``m`` labelled points, once each."""
    points = [f"w{i}" for i in range(m)]
    perms = list(permutations(range(m)))
    seen, out = set(), []
    for choice in product(perms, repeat=len(group.generators)):
        gen_action = {name: list(p) for name, p in zip(group.generator_names, choice)}
        try:
            space = GammaSpace.from_generators(group, points, gen_action)
        except NotAHomomorphism:
            continue
        if space.action not in seen:
            seen.add(space.action)
            out.append(space)
    return out


@dataclass(frozen=True, eq=False)
class CorpusEntry:
    label: str
    sigma: MeasurableCocycle
    representation: Optional[tuple] = None  # rho indexed by element when induced


def representation_cocycles(space: GammaSpace, max_den: int = 6):
    """Rotation representations with generator angles of bounded denominator."""
    G = space.group
    grid = rotation_grid(max_den)
    for angles in product(grid, repeat=len(G.generators)):
        images = {n: CircleMap.rotation(a) for n, a in zip(G.generator_names, angles)}
        try:
            sigma = from_representation(space, images)
        except NotAHomomorphism:
            continue
        yield angles, images, sigma


def _rep_table(sigma: MeasurableCocycle) -> tuple:
    return tuple(sigma(g, 0) for g in sigma.space.group)


def _cyclic_table_closes(space: GammaSpace, angles) -> bool:
    """Cheap pre-check that rotation generator values satisfy ``g^n = e``."""
    n = space.group.order
    g = space.group.generators[0]
    for w in range(space.size):
        total, x = Fraction(0), w
        for _ in range(n):
            total += angles[x]
            x = space.act(g, x)
        if total.denominator != 1:
            return False
    return True


def exhaustive_corpus(max_den: int = 6, max_points: int = 3) -> Iterator[CorpusEntry]:
    """Deterministic corpus used by the cocycle and completeness checks.

    For every group and action: all rotation representations, their
    conjugates by each small conjugator (still representation-induced),
    pointwise conjugates by every assignment of ``{id, h}`` to the points,
    and, for cyclic groups, every consistent rotation-valued generator table.
    """
    conj = small_conjugators()
    grid = rotation_grid(max_den)
    ident = CircleMap.identity()
    for gname, G in small_groups().items():
        for m in range(1, max_points + 1):
            for si, space in enumerate(all_actions(G, m)):
                tag = f"{gname}/m{m}/a{si}"
                for angles, _, sigma in representation_cocycles(space, max_den):
                    atag = ",".join(str(a) for a in angles)
                    yield CorpusEntry(f"{tag}/rep[{atag}]", sigma, _rep_table(sigma))
                    if all(a == 0 for a in angles):
                        continue
                    for ci, h in enumerate(conj):
                        s2 = conjugate(sigma, [h] * m)
                        yield CorpusEntry(f"{tag}/rep[{atag}]^h{ci}", s2, _rep_table(s2))
                    h = conj[0]
                    for mask in product((0, 1), repeat=m):
                        if 0 < sum(mask) < m:
                            s3 = conjugate(sigma, [h if b else ident for b in mask])
                            yield CorpusEntry(f"{tag}/rep[{atag}]^pt{mask}", s3)
                if len(G.generators) == 1 and m > 1:
                    for vals in product(grid, repeat=m):
                        if not _cyclic_table_closes(space, vals):
                            continue
                        table = {(0, w): CircleMap.rotation(a) for w, a in enumerate(vals)}
                        try:
                            sigma = build_cocycle(space, table)
                        except InconsistentCocycle:
                            continue
                        vtag = ",".join(str(a) for a in vals)
                        yield CorpusEntry(f"{tag}/gen[{vtag}]", sigma)


# ---------------------------------------------------------------------------
# planted instances


def random_space(rng: random.Random, max_points: int = 3) -> GammaSpace:
    G = rng.choice(list(small_groups().values()))
    m = rng.randint(1, max_points)
    return rng.choice(all_actions(G, m))


def planted_family(rng: random.Random, space: GammaSpace, max_den: int = 16):
    """``sigma(g, w) = h(g w) h(w)^-1`` carrying the family ``h(w)(x0)``."""
    h = [random_pl_homeo(rng, max_den, 4) for _ in range(space.size)]
    hinv = [f.inverse() for f in h]
    table = tuple(tuple(h[space.act(g, w)] * hinv[w] for w in range(space.size))
                  for g in space.group)
    sigma = from_table(space, table)
    x0 = random_rational(rng, max_den)
    return sigma, EquivariantFamily(tuple(f(x0) for f in h))


def planted_conjugate_pair(rng: random.Random, sigma: MeasurableCocycle, max_den: int = 16):
    """``(sigma, h^-1 sigma h)`` together with ``h`` as a left witness."""
    h = [random_pl_homeo(rng, max_den, 4) for _ in range(sigma.space.size)]
    return sigma, conjugate(sigma, h), SemicohomologyWitness(tuple(h), "left")


def planted_collapsing_pair(rng: random.Random, space: GammaSpace, max_den: int = 16):
    """``(sigma, trivial)`` with a constant-slice witness from a planted family."""
    sigma, r = planted_family(rng, space, max_den)
    return sigma, trivial_cocycle(space), witness_from_family(r)


def random_base_cocycle(rng: random.Random, space: GammaSpace, max_den: int = 6):
    """A rotation representation, possibly conjugated pointwise by PL maps."""
    reps = list(representation_cocycles(space, max_den))
    _, _, sigma = rng.choice(reps)
    if rng.random() < 0.5:
        h = [random_pl_homeo(rng, 8, 3) for _ in range(space.size)]
        sigma = conjugate(sigma, h)
    return sigma
