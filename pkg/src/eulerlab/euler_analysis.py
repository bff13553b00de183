"""Deciding vanishing and equality of parametrized Euler classes.

Every positive answer carries a primitive ``u`` with ``coboundary(u) = c``
and every negative answer over the integers carries a modular functional
on the linear system ``coboundary(u) = c``.  The constructive steps
between primitives, lifted cocycles, equivariant families and
semicohomology witnesses are all exact and are re-verified before being
returned.

Notation used below: ``S(g, w)`` is the canonical lift of ``sigma(g, w)``
and ``e_sigma(g, l)(w)`` the integer carry in
``S(g, l w) S(l, w) = S(g l, w) + e_sigma(g, l)(w)``.  The Euler pullback
is ``c(g, l)(x) = e_sigma(g, l)((g l)^-1 x)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .circle_maps import (CircleMap, Lift, MonotoneDegreeOneMap, PLLift,
                          as_rational, compose_lifts, frac_part, invert_lift,
                          pointwise_max)
from .cochains import Cochain, Ring, coboundary, euler_pullback
from .cocycles import (EquivariantFamily, LiftedCocycle, MeasurableCocycle,
                       SemicohomologyWitness, check_equivariant_family,
                       check_lifted_family, from_table, rot_from_function,
                       verify_lifted, verify_semicohomology)
from .errors import (MixedAtomicity, NotACocycle, NotALift, NotAPrimitive,
                     NotEquivariant, VerificationFailed)
from .euler_cocycle import euler_value
from .group_space import FreeBall, GammaSpace
from .linalg import (LinearObstruction, check_obstruction, solve_integer,
                     solve_rational)


# ---------------------------------------------------------------------------
# certificates


@dataclass(frozen=True, eq=False)
class PrimitiveCertificate:
    """A degree-1 cochain ``u`` with ``u(e) = 0``."""
    ring: Ring
    u: Cochain

    def __eq__(self, other):
        if not isinstance(other, PrimitiveCertificate):
            return NotImplemented
        return self.ring == other.ring and self.u == other.u

    __hash__ = None


@dataclass(frozen=True)
class Obstruction:
    """``functional . A = 0 (mod modulus)`` but ``functional . b = residue``.

    ``equations`` labels the rows as ``(g, l, w)`` index triples, so the
    system can be rebuilt and checked without the solver.
    """
    ring: Ring
    functional: tuple
    modulus: int
    residue: object
    equations: tuple


@dataclass(frozen=True, eq=False)
class Equal:
    certificate: PrimitiveCertificate
    radius: Optional[int] = None  # set for truncated free-group answers

    @property
    def equal(self) -> bool:
        return True


@dataclass(frozen=True)
class NotEqual:
    obstruction: Obstruction

    @property
    def equal(self) -> bool:
        return False


# ---------------------------------------------------------------------------
# the linear system coboundary(u) = c


def unknown_labels(space: GammaSpace):
    G = space.group
    return [(g, w) for g in G if g != G.identity for w in range(space.size)]


def equation_labels(space: GammaSpace):
    G = space.group
    return [(g, lam, w) for g in G for lam in G for w in range(space.size)]


def primitive_system(c: Cochain):
    """Matrix, right-hand side and labels for ``coboundary(u) = c``."""
    S = c.space
    G = S.group
    cols = unknown_labels(S)
    col = {lab: i for i, lab in enumerate(cols)}
    rows = equation_labels(S)
    A, b = [], []
    for g, lam, w in rows:
        row = [0] * len(cols)
        # u(l)(g^-1 w) - u(g l)(w) + u(g)(w)
        for coef, h, x in ((1, lam, S.act(G.inv(g), w)),
                           (-1, G.mul(g, lam), w),
                           (1, g, w)):
            if h != G.identity:
                row[col[h, x]] += coef
        A.append(row)
        b.append(c.values[g, lam][w])
    return A, b, cols, rows


def _cochain_from_vector(space, ring, x, cols):
    ring = Ring.parse(ring)
    G = space.group
    vals = {(g,): [ring.coerce(0)] * space.size for g in G}
    for (g, w), v in zip(cols, x):
        vals[(g,)][w] = ring.coerce(v)
    return Cochain(space, 1, ring, {k: tuple(v) for k, v in vals.items()})


def verify_primitive(c: Cochain, cert: PrimitiveCertificate) -> bool:
    u = cert.u
    G = c.space.group
    if u.degree != 1 or any(x != 0 for x in u.values[(G.identity,)]):
        return False
    return coboundary(u) == c


def verify_obstruction(c: Cochain, obs: Obstruction) -> bool:
    A, b, _, rows = primitive_system(c)
    if tuple(rows) != tuple(obs.equations):
        return False
    return check_obstruction(A, b, LinearObstruction(obs.functional, obs.modulus, obs.residue))


def solve_primitive(c: Cochain, ring=Ring.INT):
    """A primitive of the 2-cocycle ``c`` over ``ring``, or an obstruction."""
    ring = Ring.parse(ring)
    if c.degree != 2:
        raise ValueError(f"expected a 2-cochain, got degree {c.degree}")
    if not coboundary(c).is_zero():
        raise NotACocycle("coboundary of the 2-cochain is nonzero")
    A, b, cols, rows = primitive_system(c)
    if ring is Ring.INT:
        if any(Fraction(v).denominator != 1 for v in b):
            raise ValueError("integer solve needs an integer cochain")
        x, obs = solve_integer(A, b)
    else:
        x, obs = solve_rational(A, b)
    if x is None:
        out = Obstruction(ring, obs.functional, obs.modulus, obs.residue, tuple(rows))
        if not verify_obstruction(c, out):
            raise VerificationFailed("obstruction does not re-verify")
        return out
    cert = PrimitiveCertificate(ring, _cochain_from_vector(c.space, ring, x, cols))
    if not verify_primitive(c, cert):
        raise VerificationFailed("primitive does not re-verify")
    return cert


def decide_class_equality(sigma1: MeasurableCocycle, sigma2: MeasurableCocycle, ring=Ring.INT):
    """``Equal(u)`` with ``coboundary(u) = c(sigma1) - c(sigma2)``, or ``NotEqual``."""
    ring = Ring.parse(ring)
    if sigma1.space is not sigma2.space and sigma1.space.action != sigma2.space.action:
        raise ValueError("cocycles live on different spaces")
    c = euler_pullback(sigma1, ring) - euler_pullback(sigma2, ring)
    res = solve_primitive(c, ring)
    if isinstance(res, Obstruction):
        return NotEqual(res)
    return Equal(res)


# ---------------------------------------------------------------------------
# primitives <-> lifts <-> families


def _require_int(cert: PrimitiveCertificate):
    if Ring.parse(cert.ring) is not Ring.INT:
        raise NotAPrimitive("an integer primitive is required")


def lift_from_primitive(sigma: MeasurableCocycle, cert: PrimitiveCertificate) -> LiftedCocycle:
    """``lift(g, w) = S(g, w) - u(g)(g w)``."""
    _require_int(cert)
    S = sigma.space
    if not verify_primitive(euler_pullback(sigma, Ring.INT), cert):
        raise NotAPrimitive("u is not a primitive of the Euler pullback")
    u = cert.u.values
    table = tuple(
        tuple(Lift(sigma(g, w), -int(u[(g,)][S.act(g, w)])) for w in range(S.size))
        for g in S.group)
    lifted = LiftedCocycle(S, table)
    if not verify_lifted(lifted).valid:
        raise VerificationFailed("lifted cocycle identity fails")
    return lifted


def _check_projection(sigma: MeasurableCocycle, lifted: LiftedCocycle):
    S = sigma.space
    for g in S.group:
        for w in range(S.size):
            if lifted(g, w).base != sigma(g, w):
                raise NotALift(f"lift at ({S.group.names[g]}, {S.points[w]}) "
                               "does not project to sigma")


def primitive_from_lift(sigma: MeasurableCocycle, lifted: LiftedCocycle) -> PrimitiveCertificate:
    """``u(g)(x) = -offset(lift(g, g^-1 x))``."""
    _check_projection(sigma, lifted)
    if not verify_lifted(lifted).valid:
        raise NotALift("lifted table violates the cocycle identity")
    S = sigma.space
    G = S.group
    vals = {(g,): tuple(-lifted(g, S.act(G.inv(g), x)).offset for x in range(S.size))
            for g in G}
    cert = PrimitiveCertificate(Ring.INT, Cochain(S, 1, Ring.INT, vals))
    if not verify_primitive(euler_pullback(sigma, Ring.INT), cert):
        raise VerificationFailed("recovered primitive does not re-verify")
    return cert


def family_from_lift(lifted: LiftedCocycle) -> EquivariantFamily:
    """``r(w) = max_g lift(g, g^-1 w)(0)``, an equivariant family of reals."""
    S = lifted.space
    G = S.group
    vals = tuple(max(lifted(g, S.act(G.inv(g), w))(0) for g in G) for w in range(S.size))
    fam = EquivariantFamily(vals, real=True)
    if not check_lifted_family(lifted, fam):
        raise VerificationFailed("sup family is not equivariant")
    return fam


def lift_from_family(sigma: MeasurableCocycle, r):
    """The lift sending ``r(w)`` to ``r(g w)``, with ``r`` taken in [0, 1)."""
    S = sigma.space
    fam = r if isinstance(r, EquivariantFamily) else EquivariantFamily(tuple(r))
    fam = fam.to_circle()
    if len(fam) != S.size:
        raise ValueError("family must have one value per point")
    if not check_equivariant_family(sigma, fam):
        raise NotEquivariant("r(g w) != sigma(g, w) r(w) for some g, w")
    rows = []
    for g in S.group:
        row = []
        for w in range(S.size):
            f = sigma(g, w)
            k = f.canonical_lift(fam[w]) - fam[S.act(g, w)]
            if k.denominator != 1:
                raise VerificationFailed("non-integral offset")
            row.append(Lift(f, -int(k)))
        rows.append(tuple(row))
    lifted = LiftedCocycle(S, tuple(rows))
    if not verify_lifted(lifted).valid:
        raise VerificationFailed("lift from family violates the cocycle identity")
    real = EquivariantFamily(fam.values, real=True)
    if not check_lifted_family(lifted, real):
        raise VerificationFailed("lift does not carry the family")
    return lifted, real


def primitive_from_family(sigma: MeasurableCocycle, r) -> PrimitiveCertificate:
    lifted, _ = lift_from_family(sigma, r)
    return primitive_from_lift(sigma, lifted)


def degree_zero_difference(u1: Cochain, u2: Cochain):
    """An integer ``n`` on points with ``u1 - u2 = g.n - n``, or ``None``."""
    S = u1.space
    G = S.group
    d = u1 - u2
    A, b = [], []
    for g in G:
        gi = G.inv(g)
        for w in range(S.size):
            row = [0] * S.size
            row[S.act(gi, w)] += 1
            row[w] -= 1
            A.append(row)
            b.append(d.values[(g,)][w])
    x, _ = solve_integer(A, b) if d.ring is Ring.INT else solve_rational(A, b)
    return x


# ---------------------------------------------------------------------------
# semicohomology


def _twisted_comparisons(a: MeasurableCocycle, b: MeasurableCocycle, u: Cochain, w: int):
    """``S_a(g, w)^-1 o (S_b(g, w) + u(g)(g w))`` for every ``g``."""
    S = a.space
    out = []
    for g in S.group:
        top = b(g, w).canonical_lift.shifted(int(u.values[(g,)][S.act(g, w)]))
        out.append(compose_lifts(invert_lift(a(g, w).canonical_lift), top))
    return out


def semicohomology_witness(sigma1: MeasurableCocycle, sigma2: MeasurableCocycle,
                           cert: PrimitiveCertificate) -> SemicohomologyWitness:
    """Left witness ``sigma1(g, w) phi(w) = phi(g w) sigma2(g, w)``.

    ``cert`` must satisfy ``coboundary(u) = c(sigma1) - c(sigma2)`` over
    the integers.  With this twist the lifts ``S_1`` and ``S_2 + u`` carry
    the same integer defect, so the max over the finite group of the
    comparison lifts is equivariant.
    """
    _require_int(cert)
    c = euler_pullback(sigma1, Ring.INT) - euler_pullback(sigma2, Ring.INT)
    if not verify_primitive(c, cert):
        raise NotAPrimitive("u is not a primitive of c(sigma1) - c(sigma2)")
    S = sigma1.space
    maps = tuple(MonotoneDegreeOneMap.from_lift(pointwise_max(_twisted_comparisons(
        sigma1, sigma2, cert.u, w))) for w in range(S.size))
    witness = SemicohomologyWitness(maps, "left")
    if not verify_semicohomology(sigma1, sigma2, witness):
        raise VerificationFailed("constructed witness does not intertwine")
    return witness


# ---------------------------------------------------------------------------
# reduction to rotations


def rotation_reduction(sigma: MeasurableCocycle, cert: PrimitiveCertificate):
    """Rotation cocycle ``sigma0`` and integer ``floor(u)`` linking the classes.

    With ``f = u mod 1`` the rotation cocycle is ``sigma0(g, w) = R(-f(g^-1)(w))``
    and ``c(sigma) - c(sigma0) = coboundary(floor(u))``.
    """
    S = sigma.space
    G = S.group
    c = euler_pullback(sigma, Ring.RAT)
    u = cert.u.with_ring(Ring.RAT)
    if not verify_primitive(c, PrimitiveCertificate(Ring.RAT, u)):
        raise NotAPrimitive("u is not a rational primitive of the Euler pullback")
    f = [[frac_part(u.values[(g,)][w]) for w in range(S.size)] for g in G]
    sigma0 = rot_from_function(S, f)
    fl = Cochain(S, 1, Ring.INT, {k: tuple(math.floor(x) for x in v) for k, v in u.values.items()})
    link = euler_pullback(sigma, Ring.INT) - euler_pullback(sigma0, Ring.INT)
    if coboundary(fl) != link:
        raise VerificationFailed("class-link identity fails")
    return sigma0, PrimitiveCertificate(Ring.INT, fl)


# ---------------------------------------------------------------------------
# measure families


def _is_cdf(F: PLLift) -> bool:
    return F.yl[0] == 0 and F.left_limit(1) == 1


@dataclass(frozen=True)
class MeasureFamily:
    """Probability measures given by CDF slices ``F(x) = mu[0, x]``.

    A slice is a non-decreasing degree-one lift with ``F(0^-) = 0``; a jump
    at ``x`` is an atom of that mass, including one at ``0``.
    """
    cdfs: tuple

    def __post_init__(self):
        cdfs = tuple(F.as_strictness(False) for F in self.cdfs)
        for i, F in enumerate(cdfs):
            if not _is_cdf(F):
                raise ValueError(f"slice {i} is not a CDF normalized by F(0^-) = 0")
        object.__setattr__(self, "cdfs", cdfs)

    @classmethod
    def uniform(cls, n: int) -> "MeasureFamily":
        return cls((PLLift.identity(),) * n)

    @classmethod
    def dirac(cls, points) -> "MeasureFamily":
        """Unit atoms at the given points, one per slice."""
        out = []
        for x in points:
            x = frac_part(as_rational(x))
            if x == 0:
                out.append(PLLift([(0, 0, 1)], strict=False))
            else:
                out.append(PLLift([(0, 0, 0), (x, 0, 1)], strict=False))
        return cls(tuple(out))

    def __len__(self):
        return len(self.cdfs)

    def atoms(self, w: int) -> dict:
        F = self.cdfs[w]
        return {x: yr - yl for x, yl, yr in zip(F.xs, F.yl, F.yr) if yr > yl}


@dataclass(frozen=True)
class FiniteSetFamily:
    """Equivariant finite sets ``F(w)`` of common cardinality ``k``."""
    sets: tuple
    k: int


def pushforward_cdf(F: PLLift, f: CircleMap) -> PLLift:
    """CDF of ``f_* mu`` where ``F`` is the CDF of ``mu``."""
    Sinv = invert_lift(f.canonical_lift)
    G = compose_lifts(F, Sinv)
    base = F.left_limit(Sinv(0))
    return compose_lifts(PLLift.translation(-base), G)


def check_measure_family(sigma: MeasurableCocycle, mu: MeasureFamily) -> bool:
    S = sigma.space
    if len(mu) != S.size:
        raise ValueError("measure family needs one slice per point")
    return all(pushforward_cdf(mu.cdfs[w], sigma(g, w)).breakpoints
               == mu.cdfs[S.act(g, w)].breakpoints
               for g in S.group for w in range(S.size))


def check_set_family(sigma: MeasurableCocycle, fam: FiniteSetFamily) -> bool:
    S = sigma.space
    return all(tuple(sorted(sigma(g, w)(x) for x in fam.sets[w])) == fam.sets[S.act(g, w)]
               for g in S.group for w in range(S.size))


def elementary_reduction(sigma: MeasurableCocycle, mu: MeasureFamily):
    """Either an equivariant finite-set family or a rotation cocycle with a CDF witness.

    The atomic branch returns :class:`FiniteSetFamily`; the atomless branch
    returns ``(sigma0, witness)`` with the left relation
    ``sigma0(g, w) F(w) = F(g w) sigma(g, w)``.
    """
    S = sigma.space
    G = S.group
    if not check_measure_family(sigma, mu):
        raise NotEquivariant("measure family is not carried by the cocycle")
    atoms = [mu.atoms(w) for w in range(S.size)]
    atomic = [bool(a) for a in atoms]
    if any(atomic) and not all(atomic):
        raise MixedAtomicity("some slices have atoms and others do not")
    if all(atomic) and S.size:
        sets = []
        for a in atoms:
            top = max(a.values())
            sets.append(tuple(sorted(x for x, m in a.items() if m == top)))
        ks = {len(s) for s in sets}
        if len(ks) != 1:
            raise MixedAtomicity("maximal atoms have different counts on different slices")
        fam = FiniteSetFamily(tuple(sets), ks.pop())
        if not check_set_family(sigma, fam):
            raise VerificationFailed("atom sets are not equivariant")
        return fam
    table = tuple(tuple(CircleMap.rotation(-mu.cdfs[w](sigma(g, w).inverse()(0)))
                        for w in range(S.size)) for g in G)
    sigma0 = from_table(S, table)
    witness = SemicohomologyWitness(tuple(MonotoneDegreeOneMap.from_lift(F) for F in mu.cdfs),
                                    "left")
    if not verify_semicohomology(sigma0, sigma, witness):
        raise VerificationFailed("CDF witness does not intertwine")
    return sigma0, witness


# ---------------------------------------------------------------------------
# truncated free groups


def ball_representation(ball: FreeBall, images: Sequence[CircleMap]):
    """Images of every ball element under the homomorphism fixed on generators."""
    ident = CircleMap.identity()
    inv = [f.inverse() for f in images]
    out = []
    for word in ball.elements:
        val = ident
        for a in word:
            val = val * (images[a - 1] if a > 0 else inv[-a - 1])
        out.append(val)
    return out


def ball_lifts(ball: FreeBall, generator_lifts: Sequence[Lift]):
    """Lifted homomorphism on the ball from arbitrary generator lifts."""
    ident = Lift.identity()
    inv = [L.inverse() for L in generator_lifts]
    out = []
    for word in ball.elements:
        val = ident
        for a in word:
            val = val * (generator_lifts[a - 1] if a > 0 else inv[-a - 1])
        out.append(val)
    return out


def ball_family(ball: FreeBall, generator_lifts: Sequence[Lift]) -> Fraction:
    """``max_g lift(g)(0)`` over the ball, the truncated sup of the family."""
    return max(L(0) for L in ball_lifts(ball, generator_lifts))


def ball_euler_pullback(ball: FreeBall, images: Sequence[CircleMap]) -> dict:
    """``(g, l) -> e(rho(g), rho(l))`` on pairs whose product stays in the ball."""
    rho = ball_representation(ball, images)
    return {(g, lam): euler_value(rho[g], rho[lam])
            for g in ball for lam in ball if ball.mul(g, lam) is not None}


def decide_ball_vanishing(ball: FreeBall, images: Sequence[CircleMap], ring=Ring.INT):
    """Vanishing test restricted to the ball.

    ``NotEqual`` is final.  ``Equal`` only says the truncated system is
    solvable and is tagged with the radius.
    """
    ring = Ring.parse(ring)
    c = ball_euler_pullback(ball, images)
    cols = [g for g in ball if g != ball.identity]
    col = {g: i for i, g in enumerate(cols)}
    rows = sorted(c)
    A, b = [], []
    for g, lam in rows:
        row = [0] * len(cols)
        for coef, h in ((1, lam), (-1, ball.mul(g, lam)), (1, g)):
            if h != ball.identity:
                row[col[h]] += coef
        A.append(row)
        b.append(c[g, lam])
    x, obs = solve_integer(A, b) if ring is Ring.INT else solve_rational(A, b)
    if x is None:
        eqs = tuple((g, lam, 0) for g, lam in rows)
        return NotEqual(Obstruction(ring, obs.functional, obs.modulus, obs.residue, eqs))
    return Equal(dict(zip(cols, x)), radius=ball.radius)
