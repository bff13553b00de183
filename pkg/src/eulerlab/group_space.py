"""Finite groups, truncated free groups, and finite measure-preserving spaces."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Mapping, Sequence

from .circle_maps import Report, as_rational
from .errors import NotAHomomorphism


class FiniteGroup:
    """A finite group given by its multiplication table.

    Elements are the integers ``0 .. order-1``; ``table[a][b]`` is ``a*b``.
    ``generators`` are element indices, ``generator_names`` their labels.
    ``words[g]`` is a shortest word (list of generator positions) for ``g``.
    """

    def __init__(self, table, generators, identity=0, names=None,
                 generator_names=None, validate=True):
        self.table = tuple(tuple(row) for row in table)
        self.order = len(self.table)
        self.identity = identity
        self.generators = tuple(generators)
        self.generator_names = tuple(generator_names or
                                     (f"s{i + 1}" for i in range(len(self.generators))))
        inv = [None] * self.order
        for a in range(self.order):
            for b in range(self.order):
                if self.table[a][b] == identity:
                    inv[a] = b
                    break
        self.inverses = tuple(inv)
        self.words = self._geodesic_words()
        if names is None:
            names = [self._word_name(self.words[g]) if self.words[g] is not None else str(g)
                     for g in range(self.order)]
        self.names = tuple(names)
        if validate:
            report = verify_group(self)
            if not report.valid:
                raise ValueError("invalid group table: " + "; ".join(report.violations))

    def _geodesic_words(self):
        words = [None] * self.order
        words[self.identity] = ()
        queue = deque([self.identity])
        while queue:
            g = queue.popleft()
            for pos, s in enumerate(self.generators):
                h = self.table[s][g]
                if words[h] is None:
                    words[h] = (pos,) + words[g]
                    queue.append(h)
        return tuple(words)

    def _word_name(self, word):
        if not word:
            return "e"
        out, i = [], 0
        while i < len(word):
            j = i
            while j < len(word) and word[j] == word[i]:
                j += 1
            name = self.generator_names[word[i]]
            out.append(name if j - i == 1 else f"{name}^{j - i}")
            i = j
        return "*".join(out)

    # -- constructors -----------------------------------------------------

    @classmethod
    def cyclic(cls, n: int, generator_name: str = "g") -> "FiniteGroup":
        if n < 1:
            raise ValueError("cyclic group order must be positive")
        table = [[(a + b) % n for b in range(n)] for a in range(n)]
        gens = [1 % n] if n > 1 else [0]
        names = ["e"] + [generator_name if k == 1 else f"{generator_name}^{k}"
                         for k in range(1, n)]
        return cls(table, gens, 0, names, [generator_name])

    @classmethod
    def from_permutations(cls, degree: int, generators: Sequence[Sequence[int]],
                          generator_names=None) -> "FiniteGroup":
        """Permutation group generated by ``generators`` (image lists).

        Products compose right to left: ``(p*q)(i) = p[q[i]]``.
        """
        ident = tuple(range(degree))
        gens = [tuple(p) for p in generators]
        for p in gens:
            if sorted(p) != list(ident):
                raise ValueError(f"{list(p)} is not a permutation of {degree} points")
        elements = [ident]
        index = {ident: 0}
        queue = deque([ident])
        while queue:
            g = queue.popleft()
            for s in gens:
                h = tuple(s[g[i]] for i in range(degree))
                if h not in index:
                    index[h] = len(elements)
                    elements.append(h)
                    queue.append(h)
        table = [[index[tuple(a[b[i]] for i in range(degree))] for b in elements]
                 for a in elements]
        group = cls(table, [index[s] for s in gens], 0, None, generator_names)
        group.permutations = tuple(elements)
        return group

    @classmethod
    def symmetric(cls, m: int) -> "FiniteGroup":
        """``S_m`` generated by adjacent transpositions ``s1 .. s_{m-1}``."""
        gens = []
        for i in range(m - 1):
            p = list(range(m))
            p[i], p[i + 1] = p[i + 1], p[i]
            gens.append(p)
        if not gens:
            gens = [list(range(m))]
        return cls.from_permutations(m, gens)

    @classmethod
    def dihedral(cls, n: int) -> "FiniteGroup":
        """Symmetries of the n-gon, generators rotation ``r`` and flip ``f``."""
        r = [(i + 1) % n for i in range(n)]
        f = [(-i) % n for i in range(n)]
        return cls.from_permutations(n, [r, f], ["r", "f"])

    # -- queries ----------------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def element(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"no element named {name!r}") from None

    def generator_index(self, name: str) -> int:
        try:
            return self.generators[self.generator_names.index(name)]
        except ValueError:
            raise KeyError(f"no generator named {name!r}") from None

    def __len__(self):
        return self.order

    def __iter__(self):
        return iter(range(self.order))

    def __repr__(self):
        return f"FiniteGroup(order={self.order}, generators={list(self.generator_names)})"


def verify_group(G: FiniteGroup) -> Report:
    v = []
    n = G.order
    rng = range(n)
    if any(len(row) != n or any(not 0 <= x < n for x in row) for row in G.table):
        return Report(("table is not square over the element set",))
    e = G.identity
    if any(G.table[e][a] != a or G.table[a][e] != a for a in rng):
        v.append("identity law fails")
    if any(G.inverses[a] is None or G.table[G.inverses[a]][a] != e for a in rng):
        v.append("inverse law fails")
    t = G.table
    if any(t[t[a][b]][c] != t[a][t[b][c]] for a, b, c in product(rng, rng, rng)):
        v.append("associativity fails")
    if any(w is None for w in G.words):
        v.append("generators do not generate")
    return Report(tuple(v))


def word_eval(G: FiniteGroup, word: Sequence[int]) -> int:
    """Evaluate a word of signed 1-based generator positions.

    ``[1, 1, -2]`` means ``s1 * s1 * s2^-1`` for generators ``s1, s2``.
    """
    g = G.identity
    for letter in word:
        if letter == 0 or abs(letter) > len(G.generators):
            raise IndexError(f"bad generator letter {letter}")
        s = G.generators[abs(letter) - 1]
        g = G.table[g][s if letter > 0 else G.inverses[s]]
    return g


# ---------------------------------------------------------------------------
# truncated free groups


class FreeBall:
    """Reduced words of length at most ``radius`` in a free group.

    Letters are signed 1-based generator positions.  Products are partial:
    :meth:`mul` returns ``None`` when the reduced product leaves the ball.
    """

    def __init__(self, rank: int, radius: int):
        if rank < 1 or radius < 0:
            raise ValueError("rank must be >= 1 and radius >= 0")
        self.rank, self.radius = rank, radius
        letters = [k for i in range(1, rank + 1) for k in (i, -i)]
        words = [()]
        frontier = [()]
        for _ in range(radius):
            nxt = []
            for w in frontier:
                for a in letters:
                    if w and w[-1] == -a:
                        continue
                    nxt.append(w + (a,))
            words.extend(nxt)
            frontier = nxt
        self.elements = tuple(words)
        self.index = {w: i for i, w in enumerate(words)}
        self.identity = 0
        self.order = len(words)
        self.inverses = tuple(self.index[tuple(-a for a in reversed(w))] for w in words)

    @staticmethod
    def reduce(word):
        out = []
        for a in word:
            if out and out[-1] == -a:
                out.pop()
            else:
                out.append(a)
        return tuple(out)

    def mul(self, a: int, b: int):
        return self.index.get(self.reduce(self.elements[a] + self.elements[b]))

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def __len__(self):
        return self.order

    def __iter__(self):
        return iter(range(self.order))

    @staticmethod
    def expected_size(rank: int, radius: int) -> int:
        return 1 + sum(2 * rank * (2 * rank - 1) ** (k - 1) for k in range(1, radius + 1))


def free_ball(rank: int, radius: int) -> FreeBall:
    return FreeBall(rank, radius)


# ---------------------------------------------------------------------------
# finite Gamma-spaces


@dataclass(frozen=True, eq=False)
class GammaSpace:
    """A finite probability space ``points`` with a measure-preserving action.

    ``action[g][w]`` is the index of ``g . w``.
    """
    group: FiniteGroup
    points: tuple
    weights: tuple
    action: tuple

    @classmethod
    def from_generators(cls, group: FiniteGroup, points: Sequence[str],
                        generator_action: Mapping[str, Sequence[int]],
                        weights=None, validate=True) -> "GammaSpace":
        """Extend generator permutations of the points to the whole group."""
        m = len(points)
        if weights is None:
            weights = [Fraction(1, m)] * m
        weights = tuple(as_rational(w) for w in weights)
        gen_perm = {}
        for pos, name in enumerate(group.generator_names):
            perm = generator_action.get(name, list(range(m)))
            if sorted(perm) != list(range(m)):
                raise NotAHomomorphism(f"action of {name} is not a permutation of the points")
            gen_perm[pos] = tuple(perm)
        act = [None] * group.order
        act[group.identity] = tuple(range(m))
        for g in range(group.order):
            word = group.words[g]
            perm = tuple(range(m))
            for pos in reversed(word):
                perm = tuple(gen_perm[pos][perm[i]] for i in range(m))
            act[g] = perm
        space = cls(group, tuple(points), weights, tuple(act))
        for g in group:
            for s_pos, s in enumerate(group.generators):
                sg = group.mul(s, g)
                if any(act[sg][w] != gen_perm[s_pos][act[g][w]] for w in range(m)):
                    raise NotAHomomorphism("generator permutations violate a group relation")
        if validate:
            report = verify_space(space)
            if not report.valid:
                raise ValueError("invalid Gamma-space: " + "; ".join(report.violations))
        return space

    @classmethod
    def point(cls, group: FiniteGroup, name: str = "w") -> "GammaSpace":
        """One-point space with the trivial action."""
        return cls.from_generators(group, [name], {})

    def act(self, g: int, w: int) -> int:
        return self.action[g][w]

    @property
    def size(self) -> int:
        return len(self.points)

    def point_index(self, name: str) -> int:
        try:
            return self.points.index(name)
        except ValueError:
            raise KeyError(f"no point named {name!r}") from None

    def orbits(self):
        seen, out = set(), []
        for w in range(self.size):
            if w in seen:
                continue
            orb = sorted({self.action[g][w] for g in self.group})
            seen.update(orb)
            out.append(tuple(orb))
        return out

    def relabeled(self, perm: Sequence[int]) -> "GammaSpace":
        """Same space with point ``w`` renamed to position ``perm[w]``."""
        m = self.size
        inv = [0] * m
        for w, p in enumerate(perm):
            inv[p] = w
        points = tuple(self.points[inv[p]] for p in range(m))
        weights = tuple(self.weights[inv[p]] for p in range(m))
        action = tuple(tuple(perm[row[inv[p]]] for p in range(m)) for row in self.action)
        return GammaSpace(self.group, points, weights, action)


def verify_space(S: GammaSpace) -> Report:
    """Check the measure and action axioms; non-freeness is only a warning."""
    v, warn = [], []
    G, m = S.group, S.size
    if len(S.weights) != m:
        v.append("one weight per point required")
    else:
        if any(w <= 0 for w in S.weights):
            v.append("weights must be positive")
        if sum(S.weights) != 1:
            v.append(f"weights sum to {sum(S.weights)}, not 1")
    if len(S.action) != G.order or any(sorted(row) != list(range(m)) for row in S.action):
        v.append("action rows must be permutations of the points")
        return Report(tuple(v), tuple(warn))
    if S.action[G.identity] != tuple(range(m)):
        v.append("identity does not act trivially")
    for a in G:
        for b in G:
            ab = G.mul(a, b)
            if any(S.action[ab][w] != S.action[a][S.action[b][w]] for w in range(m)):
                v.append(f"action is not compatible with the product {G.names[a]}*{G.names[b]}")
                break
    if len(S.weights) == m:
        for g in G:
            if any(S.weights[S.action[g][w]] != S.weights[w] for w in range(m)):
                v.append(f"{G.names[g]} does not preserve the weights")
    non_free = [S.points[w] for w in range(m)
                if any(S.action[g][w] == w for g in G if g != G.identity)]
    if non_free:
        warn.append("action is not free at " + ", ".join(map(str, non_free)))
    return Report(tuple(v), tuple(warn))


def is_free(S: GammaSpace) -> bool:
    return not verify_space(S).warnings


def is_ergodic(S: GammaSpace) -> bool:
    """For a finite space with positive weights ergodic means transitive."""
    return len(S.orbits()) == 1
