"""Exact piecewise-linear circle maps and their lifts to the real line.

A lift ``F: R -> R`` with ``F(x + 1) = F(x) + 1`` is stored by one period:
breakpoints ``x_0 = 0 < x_1 < ... < x_m < 1`` with a left limit ``yL_i``
and a (right-continuous) value ``yR_i`` at each breakpoint.  Between
breakpoints the lift is affine, and the last segment runs from
``(x_m, yR_m)`` to ``(1, yL_0 + 1)``.

All coordinates are :class:`fractions.Fraction`.
"""
from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import NonInvertible

Q = Fraction


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are rejected: they would silently break exactness.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot use {value!r} as an exact rational")


def frac_part(x: Fraction) -> Fraction:
    return x - math.floor(x)


@dataclass(frozen=True)
class Report:
    """Outcome of a diagnostic check."""
    violations: tuple = ()
    warnings: tuple = ()

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.valid


class PLLift:
    """A monotone, degree-one, piecewise-linear lift of a circle map.

    ``breakpoints`` entries are ``(x, y)`` for continuity points or
    ``(x, yL, yR)`` at jumps.  ``strict=True`` requests an increasing
    homeomorphism.  Construction validates and coalesces redundant
    breakpoints unless ``validate=False``, which keeps the data verbatim
    so that :func:`verify_lift` can report on it.
    """

    __slots__ = ("xs", "yl", "yr", "strict", "_hash")

    def __init__(self, breakpoints: Iterable[Sequence], strict: bool = True,
                 validate: bool = True):
        xs, yl, yr = [], [], []
        for bp in breakpoints:
            if len(bp) == 2:
                x, y = bp
                y0 = y1 = as_rational(y)
            elif len(bp) == 3:
                x, y0, y1 = bp
                y0, y1 = as_rational(y0), as_rational(y1)
            else:
                raise ValueError(f"breakpoint {bp!r} must have 2 or 3 entries")
            xs.append(as_rational(x))
            yl.append(y0)
            yr.append(y1)
        self.xs, self.yl, self.yr = tuple(xs), tuple(yl), tuple(yr)
        self.strict = bool(strict)
        self._hash = None
        if validate:
            report = _check(self)
            if not report.valid:
                raise ValueError("invalid PL lift: " + "; ".join(report.violations))
            self._coalesce()

    # -- construction helpers -------------------------------------------

    @classmethod
    def _from_arrays(cls, xs, yl, yr, strict) -> "PLLift":
        obj = cls.__new__(cls)
        obj.xs, obj.yl, obj.yr = tuple(xs), tuple(yl), tuple(yr)
        obj.strict = strict
        obj._hash = None
        obj._coalesce()
        return obj

    @classmethod
    def identity(cls) -> "PLLift":
        return cls([(0, 0)])

    @classmethod
    def translation(cls, a) -> "PLLift":
        """The lift ``x -> x + a``."""
        return cls([(0, as_rational(a))])

    def _coalesce(self):
        xs, yl, yr = list(self.xs), list(self.yl), list(self.yr)
        n = len(xs)
        if n <= 1:
            return
        keep = [0]
        for i in range(1, n):
            if yl[i] != yr[i]:
                keep.append(i)
                continue
            p = keep[-1]
            if i + 1 < n:
                x2, y2 = xs[i + 1], yl[i + 1]
            else:
                x2, y2 = Fraction(1), yl[0] + 1
            # collinear (xs[p], yr[p]) -> (xs[i], y) -> (x2, y2)
            if (yl[i] - yr[p]) * (x2 - xs[i]) != (y2 - yr[i]) * (xs[i] - xs[p]):
                keep.append(i)
        if len(keep) != n:
            self.xs = tuple(xs[i] for i in keep)
            self.yl = tuple(yl[i] for i in keep)
            self.yr = tuple(yr[i] for i in keep)

    # -- evaluation ------------------------------------------------------

    def segments(self):
        """Yield ``(x0, y0, x1, y1)`` for each affine piece of one period."""
        n = len(self.xs)
        for i in range(n):
            if i + 1 < n:
                yield self.xs[i], self.yr[i], self.xs[i + 1], self.yl[i + 1]
            else:
                yield self.xs[i], self.yr[i], Fraction(1), self.yl[0] + 1

    def _segment(self, i):
        if i + 1 < len(self.xs):
            return self.xs[i], self.yr[i], self.xs[i + 1], self.yl[i + 1]
        return self.xs[i], self.yr[i], Fraction(1), self.yl[0] + 1

    def __call__(self, x) -> Fraction:
        x = as_rational(x)
        n = math.floor(x)
        t = x - n
        i = bisect_right(self.xs, t) - 1
        if self.xs[i] == t:
            return self.yr[i] + n
        x0, y0, x1, y1 = self._segment(i)
        return y0 + (y1 - y0) * (t - x0) / (x1 - x0) + n

    def left_limit(self, x) -> Fraction:
        """``lim_{s -> x-} F(s)``; differs from ``F(x)`` only at jumps."""
        x = as_rational(x)
        n = math.floor(x)
        t = x - n
        i = bisect_right(self.xs, t) - 1
        if self.xs[i] == t:
            return self.yl[i] + n
        return self(x)

    # -- structure -------------------------------------------------------

    @property
    def breakpoints(self):
        return tuple(zip(self.xs, self.yl, self.yr))

    def has_jumps(self) -> bool:
        return any(a != b for a, b in zip(self.yl, self.yr))

    def is_homeomorphism(self) -> bool:
        """Strictly increasing and continuous, whatever the flag says."""
        return not self.has_jumps() and all(y1 > y0 for _, y0, _, y1 in self.segments())

    def shifted(self, k) -> "PLLift":
        """Post-compose with the translation by ``k``."""
        k = as_rational(k)
        if k == 0:
            return self
        return PLLift._from_arrays(self.xs, [y + k for y in self.yl],
                                   [y + k for y in self.yr], self.strict)

    def as_strictness(self, strict: bool) -> "PLLift":
        if strict == self.strict:
            return self
        if strict and not self.is_homeomorphism():
            raise ValueError("lift is not strictly increasing")
        return PLLift._from_arrays(self.xs, self.yl, self.yr, strict)

    def __eq__(self, other):
        if not isinstance(other, PLLift):
            return NotImplemented
        return (self.strict == other.strict and self.xs == other.xs
                and self.yl == other.yl and self.yr == other.yr)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.strict, self.xs, self.yl, self.yr))
        return self._hash

    def __repr__(self):
        parts = []
        for x, a, b in self.breakpoints:
            parts.append(f"({x}, {a})" if a == b else f"({x}, {a}, {b})")
        kind = "strict" if self.strict else "nondecreasing"
        return f"PLLift([{', '.join(parts)}], {kind})"


def _check(F: PLLift) -> Report:
    v = []
    if not F.xs:
        return Report(("no breakpoints",))
    if F.xs[0] != 0:
        v.append("first breakpoint is not x = 0")
    if any(not (0 <= x < 1) for x in F.xs):
        v.append("breakpoint outside [0, 1)")
    if any(b <= a for a, b in zip(F.xs, F.xs[1:])):
        v.append("x not increasing")
        return Report(tuple(v))
    if any(a > b for a, b in zip(F.yl, F.yr)):
        v.append("jump goes downwards (yL > yR)")
    if F.strict and F.has_jumps():
        v.append("jump in a strict lift")
    for x0, y0, x1, y1 in F.segments():
        if y1 < y0:
            v.append(f"decreasing segment on [{x0}, {x1}]")
        elif F.strict and y1 == y0:
            v.append(f"not strictly increasing on [{x0}, {x1}]")
    return Report(tuple(v))


def verify_lift(F: PLLift) -> Report:
    """List every violated PLLift invariant (empty report when valid)."""
    return _check(F)


def eval_lift(F: PLLift, x) -> Fraction:
    return F(x)


# ---------------------------------------------------------------------------
# composition, inversion, maxima


def compose_lifts(F: PLLift, G: PLLift) -> PLLift:
    """Return ``F o G``.

    Breakpoints of the result are those of ``G`` together with the
    preimages under ``G`` of the breakpoints of ``F`` (all translates).
    """
    xs = set(G.xs)
    for x0, y0, x1, y1 in G.segments():
        if y1 == y0:
            continue
        for k in range(math.floor(y0), math.ceil(y1) + 1):
            for fx in F.xs:
                y = fx + k
                if y0 < y < y1:
                    xs.add(x0 + (y - y0) * (x1 - x0) / (y1 - y0))
    xs = sorted(xs)
    gxs = G.xs
    yl, yr = [], []
    for x in xs:
        yr.append(F(G(x)))
        # left limit: look at the G-segment ending at x
        j = bisect_right(gxs, x) - 1
        if gxs[j] == x:
            j -= 1  # segment ending at x starts at the previous breakpoint
            if j < 0:
                j = len(gxs) - 1
            seg = G._segment(j)
            shift = -1 if x == 0 else 0
            a0, b0, _, b1 = seg
            b0, b1 = b0 + shift, b1 + shift
        else:
            a0, b0, _, b1 = G._segment(j)
        if b1 == b0:             # G flat right before x: F o G constant = F(b0)
            yl.append(F(b0))
        else:
            yl.append(F.left_limit(G.left_limit(x)))
    return PLLift._from_arrays(xs, yl, yr, F.strict and G.strict)


def _preimage(F: PLLift, y: Fraction) -> Fraction:
    """The unique ``x`` with ``F(x) = y`` for a strict lift ``F``."""
    n = math.floor(y - F.yr[0])
    t = y - n
    for x0, y0, x1, y1 in F.segments():
        if y0 <= t < y1:
            return x0 + (t - y0) * (x1 - x0) / (y1 - y0) + n
    raise AssertionError("preimage search fell off the period")  # pragma: no cover


def invert_lift(F: PLLift) -> PLLift:
    """Inverse of a strict lift, exact."""
    if not F.strict:
        raise NonInvertible("non-decreasing lifts have no inverse")
    pts = {}
    for x, y in zip(F.xs, F.yr):
        k = math.floor(y)
        pts[y - k] = x - k
    if 0 not in pts:
        pts[Fraction(0)] = _preimage(F, Fraction(0))
    xs = sorted(pts)
    ys = [pts[x] for x in xs]
    return PLLift._from_arrays(xs, ys, ys, True)


def pointwise_max(Fs: Sequence[PLLift]) -> PLLift:
    """Upper envelope of finitely many lifts."""
    Fs = list(Fs)
    if not Fs:
        raise ValueError("pointwise_max needs at least one lift")
    if len(Fs) == 1:
        return Fs[0]
    grid = sorted(set().union(*(F.xs for F in Fs)))
    pts = set(grid)
    bounds = grid + [Fraction(1)]
    for a, b in zip(bounds, bounds[1:]):
        left = [F(a) for F in Fs]
        right = [F.left_limit(b) for F in Fs]
        for i in range(len(Fs)):
            for j in range(i + 1, len(Fs)):
                da = left[i] - left[j]
                db = right[i] - right[j]
                if (da > 0 and db < 0) or (da < 0 and db > 0):
                    pts.add(a + (b - a) * da / (da - db))
    xs = sorted(pts)
    yr = [max(F(x) for F in Fs) for x in xs]
    yl = [max(F.left_limit(x) for F in Fs) for x in xs]
    return PLLift._from_arrays(xs, yl, yr, all(F.strict for F in Fs))


# ---------------------------------------------------------------------------
# circle-level wrappers


@dataclass(frozen=True)
class CircleMap:
    """A PL orientation-preserving circle homeomorphism.

    Stored through its canonical lift, the unique lift with value at 0 in
    ``[0, 1)``.  Equality is structural and coincides with equality of maps.
    """
    canonical_lift: PLLift

    def __post_init__(self):
        F = self.canonical_lift
        if not F.strict:
            raise ValueError("circle homeomorphisms need a strict lift")
        if not 0 <= F(0) < 1:
            raise ValueError("canonical lift must send 0 into [0, 1)")

    @classmethod
    def identity(cls) -> "CircleMap":
        return _IDENTITY

    @classmethod
    def rotation(cls, a) -> "CircleMap":
        return cls(PLLift.translation(frac_part(as_rational(a))))

    @classmethod
    def from_lift(cls, F: PLLift) -> "CircleMap":
        return canonicalize(F).base

    @classmethod
    def from_points(cls, points, shift=0) -> "CircleMap":
        """Circle map through ``(x, y)`` pairs of one period, any lift."""
        return cls.from_lift(PLLift(points).shifted(shift))

    @property
    def lift(self) -> PLLift:
        return self.canonical_lift

    def __call__(self, x) -> Fraction:
        return frac_part(self.canonical_lift(x))

    def __mul__(self, other: "CircleMap") -> "CircleMap":
        """``f * g`` is the composite ``f o g``."""
        if self.is_rotation() and other.is_rotation():
            return CircleMap.rotation(self.rotation_angle() + other.rotation_angle())
        return canonicalize(compose_lifts(self.canonical_lift, other.canonical_lift)).base

    def inverse(self) -> "CircleMap":
        if self.is_rotation():
            return CircleMap.rotation(-self.rotation_angle())
        return canonicalize(invert_lift(self.canonical_lift)).base

    def is_identity(self) -> bool:
        return self == _IDENTITY

    def is_rotation(self) -> bool:
        return len(self.canonical_lift.xs) == 1

    def rotation_angle(self) -> Fraction:
        if not self.is_rotation():
            raise ValueError("not a rotation")
        return self.canonical_lift.yr[0]

    def __repr__(self):
        if self.is_rotation():
            return f"R({self.rotation_angle()})"
        return f"CircleMap({self.canonical_lift!r})"


_IDENTITY = CircleMap(PLLift.identity())


@dataclass(frozen=True)
class Lift:
    """An element of the universal cover: ``canonical_lift(base) + offset``."""
    base: CircleMap
    offset: int = 0

    @classmethod
    def identity(cls) -> "Lift":
        return cls(_IDENTITY, 0)

    @classmethod
    def translation(cls, n: int) -> "Lift":
        return cls(_IDENTITY, n)

    def as_pl(self) -> PLLift:
        return self.base.canonical_lift.shifted(self.offset)

    def __call__(self, x) -> Fraction:
        return self.base.canonical_lift(x) + self.offset

    def __mul__(self, other: "Lift") -> "Lift":
        comp = canonicalize(compose_lifts(self.base.canonical_lift,
                                          other.base.canonical_lift))
        return Lift(comp.base, comp.offset + self.offset + other.offset)

    def inverse(self) -> "Lift":
        inv = canonicalize(invert_lift(self.base.canonical_lift))
        return Lift(inv.base, inv.offset - self.offset)

    def shifted(self, n: int) -> "Lift":
        return Lift(self.base, self.offset + n)


def canonicalize(F: PLLift) -> Lift:
    """Split a strict lift as ``s(base) + offset`` with ``s(base)(0)`` in [0, 1)."""
    if not F.strict:
        raise NonInvertible("canonicalize needs a strict lift")
    k = math.floor(F(0))
    return Lift(CircleMap(F.shifted(-k)), k)


@dataclass(frozen=True)
class MonotoneDegreeOneMap:
    """A non-decreasing degree-one circle map, lift normalized at 0 into [0, 1)."""
    lift: PLLift = field()

    def __post_init__(self):
        if not 0 <= self.lift(0) < 1:
            raise ValueError("normalized lift must send 0 into [0, 1)")
        if self.lift.strict:
            object.__setattr__(self, "lift", self.lift.as_strictness(False))
        # a collapse onto one point has a lift for every jump position;
        # pin the jump at 0 so that equality stays structural
        c = self._constant_value()
        if c is not None:
            object.__setattr__(self, "lift", PLLift._from_arrays((Fraction(0),), (c - 1,), (c,),
                                                                 False))

    def _constant_value(self):
        F = self.lift
        ys = set()
        for _, ya, _, yb in F.segments():
            if ya != yb:
                return None
            ys.add(frac_part(ya))
        return ys.pop() if len(ys) == 1 else None

    @classmethod
    def from_lift(cls, F: PLLift) -> "MonotoneDegreeOneMap":
        F = F.as_strictness(False)
        return cls(F.shifted(-math.floor(F(0))))

    @classmethod
    def from_circle_map(cls, f: CircleMap) -> "MonotoneDegreeOneMap":
        return cls.from_lift(f.canonical_lift)

    @classmethod
    def identity(cls) -> "MonotoneDegreeOneMap":
        return cls.from_lift(PLLift.identity())

    @classmethod
    def constant(cls, x0) -> "MonotoneDegreeOneMap":
        """The collapse of the whole circle onto ``x0``."""
        x0 = frac_part(as_rational(x0))
        return cls(PLLift([(0, x0 - 1, x0)], strict=False))

    def __call__(self, x) -> Fraction:
        return frac_part(self.lift(x))

    def is_homeomorphism(self) -> bool:
        return self.lift.is_homeomorphism()

    def to_circle_map(self) -> CircleMap:
        return CircleMap.from_lift(self.lift.as_strictness(True))

    def after(self, f: CircleMap) -> "MonotoneDegreeOneMap":
        """``self o f``."""
        return MonotoneDegreeOneMap.from_lift(compose_lifts(self.lift, f.canonical_lift))

    def before(self, f: CircleMap) -> "MonotoneDegreeOneMap":
        """``f o self``."""
        return MonotoneDegreeOneMap.from_lift(compose_lifts(f.canonical_lift, self.lift))
