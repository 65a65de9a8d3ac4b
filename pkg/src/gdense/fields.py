"""Coefficient fields: rationals, prime fields and their extensions.

Elements are python-flint scalars so ordinary operators work on them. Dense
linear algebra goes through flint matrices where flint has them and falls
back to plain elimination otherwise.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import flint

P31 = 2**31 - 1


class Field:
    name = "?"
    characteristic = 0
    degree = 1

    def __call__(self, x):
        raise NotImplementedError

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def __eq__(self, other):
        return isinstance(other, Field) and self.name == other.name

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return self.name

    # dense matrices are lists of rows of field elements

    def rref(self, rows: Sequence[Sequence], ncols: int):
        """Reduced row echelon form: ``(nonzero_rows, pivot_columns)``."""
        return _python_rref(self, rows, ncols)

    def matmul(self, a, b):
        if not a or not b:
            inner = len(b)
            cols = len(b[0]) if b else 0
            return [[self.zero] * cols for _ in a]
        bt = list(zip(*b))
        z = self.zero
        return [[sum((x * y for x, y in zip(row, col)), z) for col in bt] for row in a]

    def rank(self, rows, ncols: int) -> int:
        return len(self.rref(rows, ncols)[1]) if rows else 0

    def nullspace(self, rows, ncols: int) -> list[list]:
        """Basis of ``{x : rows @ x = 0}`` in the standard reduced form."""
        if not rows:
            return [[self.one if i == j else self.zero for i in range(ncols)] for j in range(ncols)]
        red, piv = self.rref(rows, ncols)
        pset = set(piv)
        out = []
        for f in range(ncols):
            if f in pset:
                continue
            x = [self.zero] * ncols
            x[f] = self.one
            for r, p in enumerate(piv):
                x[p] = -red[r][f]
            out.append(x)
        return out

    def inverse(self, a):
        n = len(a)
        aug = [list(r) + [self.one if i == j else self.zero for j in range(n)] for i, r in enumerate(a)]
        red, piv = self.rref(aug, 2 * n)
        if piv[:n] != list(range(n)) or len(piv) < n:
            raise ValueError("matrix is singular")
        return [row[n:] for row in red[:n]]

    def from_int(self, x: int):
        return self(x)

    def to_json(self, x):
        return int(x)

    def from_json(self, v):
        return self(v)

    def poly(self, coeffs):
        raise NotImplementedError

    def charpoly(self, a):
        raise NotImplementedError


def _python_rref(field: Field, rows, ncols: int):
    m = [list(r) for r in rows]
    piv = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = field.one / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        piv.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], piv


def _flint_rref(mat, ncols: int):
    red, rk = mat.rref()
    rows = red.tolist()[:rk]
    piv = []
    for row in rows:
        piv.append(next(c for c in range(ncols) if row[c] != 0))
    return rows, piv


class Rationals(Field):
    name = "QQ"

    def __call__(self, x):
        if isinstance(x, Fraction):
            return flint.fmpq(x.numerator, x.denominator)
        if isinstance(x, str):
            f = Fraction(x)
            return flint.fmpq(f.numerator, f.denominator)
        return flint.fmpq(x)

    def _mat(self, rows, ncols):
        return flint.fmpq_mat(len(rows), ncols, [x for r in rows for x in r])

    def rref(self, rows, ncols):
        if not rows:
            return [], []
        return _flint_rref(self._mat(rows, ncols), ncols)

    def rank(self, rows, ncols):
        if not rows or not ncols:
            return 0
        return self._mat(rows, ncols).rank()

    def matmul(self, a, b):
        if not a or not b or not b[0]:
            return super().matmul(a, b)
        return (self._mat(a, len(b)) * self._mat(b, len(b[0]))).tolist()

    def to_json(self, x):
        x = Fraction(int(x.p), int(x.q))
        return str(x) if x.denominator != 1 else x.numerator

    def from_json(self, v):
        return self(Fraction(v) if isinstance(v, str) else v)

    def charpoly(self, a):
        return self._mat(a, len(a)).charpoly()


class PrimeField(Field):
    def __init__(self, p: int = P31):
        self.p = p
        self.characteristic = p
        self.name = f"GF({p})"

    def __call__(self, x):
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator divisible by {self.p}")
            return flint.nmod(x.numerator, self.p) / flint.nmod(x.denominator, self.p)
        if isinstance(x, flint.fmpq):
            return self(Fraction(int(x.p), int(x.q)))
        if isinstance(x, flint.nmod):
            return x
        return flint.nmod(int(x), self.p)

    def _mat(self, rows, ncols):
        return flint.nmod_mat(len(rows), ncols, [int(x) for r in rows for x in r], self.p)

    def rref(self, rows, ncols):
        if not rows:
            return [], []
        return _flint_rref(self._mat(rows, ncols), ncols)

    def rank(self, rows, ncols):
        if not rows or not ncols:
            return 0
        return self._mat(rows, ncols).rank()

    def matmul(self, a, b):
        if not a or not b or not b[0]:
            return super().matmul(a, b)
        return (self._mat(a, len(b)) * self._mat(b, len(b[0]))).tolist()

    def poly(self, coeffs):
        return flint.nmod_poly([int(c) for c in coeffs], self.p)

    def charpoly(self, a):
        return self._mat(a, len(a)).charpoly()


class ExtensionField(Field):
    """``GF(p^r)`` through flint's ``fq_default``; elimination is pure Python."""

    def __init__(self, p: int, r: int):
        self.p = p
        self.degree = r
        self.characteristic = p
        self.name = f"GF({p}^{r})"
        self.ctx = flint.fq_default_ctx(p, r)
        self.poly_ctx = flint.fq_default_poly_ctx(self.ctx)

    def __call__(self, x):
        if isinstance(x, Fraction):
            return self.ctx(x.numerator) / self.ctx(x.denominator)
        if isinstance(x, flint.nmod):
            return self.ctx(int(x))
        if isinstance(x, flint.fmpq):
            return self(Fraction(int(x.p), int(x.q)))
        if isinstance(x, flint.fq_default):
            return x
        return self.ctx(x)

    def from_coefficients(self, coeffs: Sequence[int]):
        g = self.ctx.gen()
        out = self.ctx.zero()
        pw = self.ctx.one()
        for c in coeffs:
            out += pw * c
            pw *= g
        return out

    def to_json(self, x):
        return str(x)

    def poly(self, coeffs):
        return self.poly_ctx(list(coeffs))

    def charpoly(self, a):
        # Hessenberg-free route: determinant of (xI - a) by fraction-free
        # elimination is awkward here, so interpolate det(tI - a) instead.
        n = len(a)
        pts, vals = [], []
        for t in range(n + 1):
            m = [[(self(t) if i == j else self.zero) - a[i][j] for j in range(n)] for i in range(n)]
            pts.append(self(t))
            vals.append(_det(self, m))
        return _interpolate(self, pts, vals)


def _det(field: Field, m):
    m = [list(r) for r in m]
    n = len(m)
    det = field.one
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return field.zero
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        inv = field.one / m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return det


def _interpolate(field: ExtensionField, xs, ys):
    pc = field.poly_ctx
    result = pc([])
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        term = pc([yi])
        for j, xj in enumerate(xs):
            if j != i:
                term = term * pc([-xj, field.one]) * pc([field.one / (xi - xj)])
        result = result + term
    return result


QQ = Rationals()
GF = PrimeField


def field_from_name(name: str) -> Field:
    if name in ("QQ", "Q", "rationals"):
        return QQ
    if name.startswith("GF(") and name.endswith(")"):
        body = name[3:-1]
        if "^" in body:
            p, r = body.split("^")
            return ExtensionField(int(p), int(r))
        return PrimeField(int(body))
    raise ValueError(f"unknown field {name!r}")
