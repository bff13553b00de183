"""Exact integer and rational linear systems with checkable answers.

``solve_integer`` runs a diagonal (Smith-style) reduction ``U A V = D``
with unimodular ``U`` and ``V`` and returns either an integer solution or
an obstruction row ``y`` such that ``y A = 0 (mod m)`` while
``y b != 0 (mod m)``.  Modulus ``0`` means the congruences are plain
equalities, i.e. the system has no rational solution either.

Pivoting is deterministic: smallest absolute value, ties broken by
(row, column) order.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import List, Sequence


Matrix = List[List[int]]


@dataclass(frozen=True)
class LinearObstruction:
    functional: tuple
    modulus: int
    residue: object


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_decomposition(A: Sequence[Sequence[int]]):
    """Return ``(U, D, V, rank)`` with ``U A V = D`` diagonal.

    The diagonal entries are nonzero exactly in positions ``0 .. rank-1``
    and each divides the next, so the torsion of ``Z^m / A Z^n`` can be
    read off directly.
    """
    D = [list(map(int, row)) for row in A]
    m = len(D)
    n = len(D[0]) if m else 0
    U, V = _identity(m), _identity(n)
    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = D[i]
            for j in range(t, n):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        D[t], D[i] = D[i], D[t]
        U[t], U[i] = U[i], U[t]
        if j != t:
            for row in D:
                row[t], row[j] = row[j], row[t]
            for row in V:
                row[t], row[j] = row[j], row[t]
        while True:
            done = True
            p = D[t][t]
            for i in range(t + 1, m):
                x = D[i][t]
                if not x:
                    continue
                q = x // p
                Di, Dt, Ui, Ut = D[i], D[t], U[i], U[t]
                for k in range(t, n):
                    Di[k] -= q * Dt[k]
                for k in range(m):
                    Ui[k] -= q * Ut[k]
                if Di[t]:
                    D[t], D[i] = D[i], D[t]
                    U[t], U[i] = U[i], U[t]
                    p = D[t][t]
                    done = False
            for j in range(t + 1, n):
                x = D[t][j]
                if not x:
                    continue
                q = x // p
                for row in D:
                    row[j] -= q * row[t]
                for row in V:
                    row[j] -= q * row[t]
                if D[t][j]:
                    for row in D:
                        row[t], row[j] = row[j], row[t]
                    for row in V:
                        row[t], row[j] = row[j], row[t]
                    p = D[t][t]
                    done = False
            if not (done and all(D[i][t] == 0 for i in range(t + 1, m))):
                continue
            # enforce the divisibility chain d_t | d_{t+1} | ...
            bad = next((i for i in range(t + 1, m)
                        if any(D[i][j] % p for j in range(t + 1, n))), None)
            if bad is None:
                break
            D[t] = [a + c for a, c in zip(D[t], D[bad])]
            U[t] = [a + c for a, c in zip(U[t], U[bad])]
        t += 1
    return U, D, V, t


def matvec(A, x):
    return [sum(a * b for a, b in zip(row, x)) for row in A]


def vecmat(y, A):
    if not A:
        return []
    n = len(A[0])
    out = [0] * n
    for coef, row in zip(y, A):
        if coef:
            for k in range(n):
                out[k] += coef * row[k]
    return out


def _modinv(a, m):
    return pow(a, -1, m)


def _normalize_modular(y, m, r):
    """Rescale ``y`` so that its residue becomes ``gcd(r, m)``."""
    g = gcd(r, m)
    mg = m // g
    t = _modinv((r // g) % mg, mg) if mg > 1 else 1
    y2 = []
    for c in y:
        c = (c * t) % m
        if c > m // 2:
            c -= m
        y2.append(c)
    return y2, g


def solve_integer(A, b):
    """Solve ``A x = b`` over the integers.

    Returns ``(x, None)`` on success or ``(None, LinearObstruction)``.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    b = [int(v) for v in b]
    if n == 0:
        for i, v in enumerate(b):
            if v:
                y = [0] * m
                y[i] = 1
                return None, LinearObstruction(tuple(y), 0, v)
        return [], None
    U, D, V, r = smith_decomposition(A)
    Ub = matvec(U, b)
    for i in range(r, m):
        if Ub[i]:
            y = U[i]
            g = 0
            for c in y:
                g = gcd(g, c)
            y = [c // g for c in y]
            return None, LinearObstruction(tuple(y), 0, sum(c * v for c, v in zip(y, b)))
    for i in range(r):
        d = abs(D[i][i])
        if Ub[i] % d:
            y, res = _normalize_modular(U[i], d, Ub[i] % d)
            return None, LinearObstruction(tuple(y), d, res)
    yv = [Ub[i] // D[i][i] for i in range(r)] + [0] * (n - r)
    return matvec(V, yv), None


def solve_rational(A, b):
    """Gauss-Jordan over the rationals, tracking row combinations.

    Returns ``(x, None)`` or ``(None, LinearObstruction)`` where the
    obstruction is an integer row with ``y A = 0`` and ``y b != 0``.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    R = [[Fraction(v) for v in row] + [Fraction(bv)] for row, bv in zip(A, b)]
    T = [[Fraction(int(i == j)) for j in range(m)] for i in range(m)]
    pivots = []
    row = 0
    for col in range(n):
        piv = next((i for i in range(row, m) if R[i][col] != 0), None)
        if piv is None:
            continue
        R[row], R[piv] = R[piv], R[row]
        T[row], T[piv] = T[piv], T[row]
        inv = 1 / R[row][col]
        R[row] = [v * inv for v in R[row]]
        T[row] = [v * inv for v in T[row]]
        for i in range(m):
            if i != row and R[i][col] != 0:
                f = R[i][col]
                R[i] = [a - f * c for a, c in zip(R[i], R[row])]
                T[i] = [a - f * c for a, c in zip(T[i], T[row])]
        pivots.append(col)
        row += 1
        if row == m:
            break
    for i in range(row, m):
        if R[i][n] != 0:
            y = T[i]
            den = 1
            for v in y:
                den = den * v.denominator // gcd(den, v.denominator)
            yi = [int(v * den) for v in y]
            g = 0
            for c in yi:
                g = gcd(g, c)
            yi = [c // g for c in yi]
            return None, LinearObstruction(tuple(yi), 0, sum(c * Fraction(v) for c, v in zip(yi, b)))
    x = [Fraction(0)] * n
    for i, col in enumerate(pivots):
        x[col] = R[i][n]
    return x, None


def check_obstruction(A, b, obs: LinearObstruction) -> bool:
    """Independent re-verification of an obstruction certificate."""
    y = list(obs.functional)
    if len(y) != len(A):
        return False
    yA = vecmat(y, A)
    yb = sum(c * v for c, v in zip(y, b))
    m = obs.modulus
    if m == 0:
        return all(v == 0 for v in yA) and yb != 0 and yb == obs.residue
    if any(Fraction(v) % m for v in yA):
        return False
    if Fraction(yb).denominator != 1:
        return False
    return int(yb) % m != 0 and int(yb) % m == obs.residue % m
