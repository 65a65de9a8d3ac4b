"""Small exact rational linear algebra and Fourier-Motzkin elimination."""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence


def primitive(v: Sequence) -> tuple[int, ...]:
    """Positive rescaling of a nonzero rational vector to a primitive integer one."""
    fr = [Fraction(x) for x in v]
    if not any(fr):
        raise ValueError("zero vector has no primitive normalization")
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    return tuple(x // g for x in ints)


def rref(rows: Sequence[Sequence], ncols: int | None = None):
    """Reduced row echelon form over Q. Returns ``(rows, pivot_columns)``."""
    m = [[Fraction(x) for x in r] for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1]) if rows else 0


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[list[Fraction]]:
    """Basis of ``{x : rows @ x = 0}``."""
    if not rows:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    red, piv = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for r, p in enumerate(piv):
            x[p] = -red[r][f]
        basis.append(x)
    return basis


def solve(a: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """One solution of ``a @ x = b`` or ``None`` when inconsistent."""
    ncols = len(a[0]) if a else 0
    aug = [list(r) + [bb] for r, bb in zip(a, b)]
    red, piv = rref(aug, ncols + 1)
    if ncols in piv:
        return None
    x = [Fraction(0)] * ncols
    for r, p in enumerate(piv):
        x[p] = red[r][ncols]
    return x


def inverse(a: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(a)
    aug = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(a)]
    red, piv = rref(aug, 2 * n)
    if piv[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in red]


def _normalize_ineq(row: list[Fraction], rhs: Fraction):
    lead = next((abs(x) for x in row if x != 0), None)
    if lead is None:
        return tuple(row), rhs
    return tuple(x / lead for x in row), rhs / lead


def fm_feasible(a: Sequence[Sequence], b: Sequence) -> bool:
    """Exact feasibility of ``a @ y >= b`` by Fourier-Motzkin elimination."""
    system = {_normalize_ineq([Fraction(x) for x in r], Fraction(bb)) for r, bb in zip(a, b)}
    nvars = len(a[0]) if a else 0
    for v in range(nvars):
        pos, neg, rest = [], [], []
        for row, rhs in system:
            (pos if row[v] > 0 else neg if row[v] < 0 else rest).append((row, rhs))
        new = set(rest)
        for pr, pb in pos:
            for nr, nb in neg:
                cp, cn = pr[v], -nr[v]
                row = [cn * x + cp * y for x, y in zip(pr, nr)]
                row[v] = Fraction(0)
                new.add(_normalize_ineq(row, cn * pb + cp * nb))
        system = new
    return all(rhs <= 0 for _, rhs in system)
