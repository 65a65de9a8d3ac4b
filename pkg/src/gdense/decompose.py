"""Krull-Schmidt splitting of two-term complexes and generic decompositions.

Splitting works over a prime field. A random chain endomorphism is pushed to
the tops of the projectives, its characteristic polynomial is split into
coprime parts, and the resulting idempotent polynomial is evaluated on the
endomorphism and lifted to an honest idempotent. Each idempotent is then
turned into an explicit summand complex.

When the endomorphism ring modulo its radical is a proper field extension
(the complex is indecomposable over ``GF(p)`` but not over its closure), the
complex is moved to ``GF(p^r)`` and split there.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .algebra import LMat
from .complexes import (
    TwoTermComplex,
    chain_maps,
    hom_complexes,
    minimize,
    random_complex,
)
from .fields import GF, P31, ExtensionField, Field, PrimeField, QQ


# --- endomorphism data ----------------------------------------------------------


def _top_pair(u: tuple[LMat, LMat], F: Field) -> list[list]:
    """Block-diagonal top matrix of a chain map on ``top X^-1 ⊕ top X^0``."""
    a, b = u[0].top(), u[1].top()
    n1, n2 = len(a), len(b)
    z = F.zero
    out = [row + [z] * n2 for row in a]
    out += [[z] * n1 + row for row in b]
    return out


def _flat(m):
    return [x for row in m for x in row]


def end_semisimple_dim(X: TwoTermComplex, basis=None) -> int:
    """``dim End(X) / rad End(X)`` in the homotopy category.

    Null-homotopic maps of a minimal complex and maps with radical entries
    both lie in the radical, so the quotient only sees the algebra ``A`` of
    top matrices. Its radical is the kernel of the trace form, which is exact
    in characteristic 0 and whenever ``p`` exceeds the size of the tops.
    """
    F = X.field
    if basis is None:
        basis = chain_maps(X, X)
    tops = [_top_pair(u, F) for u in basis]
    if not tops or not tops[0]:
        return 0
    n = len(tops[0])
    red, _ = F.rref([_flat(t) for t in tops], n * n)
    span = [[row[i * n : (i + 1) * n] for i in range(n)] for row in red]
    gram = []
    for s in span:
        gram.append([sum((s[i][j] * t[j][i] for i in range(n) for j in range(n)), F.zero) for t in span])
    return F.rank(gram, len(span))


# --- matrix helpers over the regular representation -------------------------------


class _Mat:
    """Square matrix over a field with the few operations idempotent lifting needs."""

    def __init__(self, F: Field, rows):
        self.F = F
        self.rows = [list(r) for r in rows]

    @property
    def n(self):
        return len(self.rows)

    def __mul__(self, other):
        return _Mat(self.F, self.F.matmul(self.rows, other.rows))

    def __add__(self, other):
        return _Mat(self.F, [[x + y for x, y in zip(a, b)] for a, b in zip(self.rows, other.rows)])

    def __sub__(self, other):
        return _Mat(self.F, [[x - y for x, y in zip(a, b)] for a, b in zip(self.rows, other.rows)])

    def scale(self, s):
        return _Mat(self.F, [[s * x for x in r] for r in self.rows])

    def __eq__(self, other):
        return all(x == y for a, b in zip(self.rows, other.rows) for x, y in zip(a, b))

    @classmethod
    def eye(cls, F, n):
        return cls(F, [[F.one if i == j else F.zero for j in range(n)] for i in range(n)])


def _poly_eval(coeffs: Sequence, m: _Mat) -> _Mat:
    F = m.F
    out = _Mat(F, [[F.zero] * m.n for _ in range(m.n)])
    eye = _Mat.eye(F, m.n)
    for c in reversed(list(coeffs)):
        out = out * m + eye.scale(c)
    return out


def _lift_idempotent(a: _Mat, max_iter: int = 64) -> _Mat:
    for _ in range(max_iter):
        sq = a * a
        if sq == a:
            return a
        a = sq.scale(a.F(3)) - (sq * a).scale(a.F(2))
    raise RuntimeError("idempotent lifting did not converge")


def _idempotent_from_poly(u: tuple[LMat, LMat], coeffs) -> tuple[LMat, LMat]:
    out = []
    for part in u:
        if not part.dom:
            out.append(part)
            continue
        F = part.field
        m = _Mat(F, part.regular())
        e = _lift_idempotent(_poly_eval(coeffs, m))
        out.append(LMat.from_regular(part.alg, F, part.dom, part.cod, e.rows))
    return out[0], out[1]


def _coerce_coeffs(poly, F: Field):
    return [F(int(c)) if isinstance(F, PrimeField) else c for c in poly.coeffs()]


# --- summands from idempotents ---------------------------------------------------


def _pivots(F: Field, rows, ncols):
    if not rows or not ncols:
        return []
    return F.rref(rows, ncols)[1]


def _invert_top_unit(M: LMat) -> LMat:
    """Inverse of a square map between projectives with invertible top."""
    F, alg = M.field, M.alg
    T = M.top()
    Tinv = F.inverse(T) if T else []
    Ti = LMat.from_scalars(alg, F, M.cod, M.dom, Tinv)
    N = M - LMat.from_scalars(alg, F, M.dom, M.cod, T)
    U = -(Ti @ N)
    term = LMat.identity(alg, F, M.dom)
    total = term
    for _ in range(alg.L + 1):
        term = term @ U
        if term.is_zero():
            break
        total = total + term
    inv = total @ Ti
    assert (inv @ M) == LMat.identity(alg, F, M.dom)
    return inv


def _image_columns(e: LMat) -> tuple[list[int], list[int]]:
    """Columns ``J`` spanning the top image of ``e`` and rows ``I`` with ``e[I,J]`` invertible."""
    F = e.field
    t = e.top()
    n = len(t)
    J = _pivots(F, t, n)
    tj = [[t[i][j] for i in range(n)] for j in J]
    I = _pivots(F, tj, n)
    return I, J


def summand(X: TwoTermComplex, eps: tuple[LMat, LMat]) -> TwoTermComplex:
    """The complex ``im(eps)`` for an idempotent chain endomorphism ``eps``."""
    e1, e0 = eps
    F, alg = X.field, X.alg
    _, J1 = _image_columns(e1) if X.minus else ([], [])
    I0, J0 = _image_columns(e0) if X.plus else ([], [])
    if not J0:
        return TwoTermComplex(alg, LMat.zero(alg, F, [X.minus[j] for j in J1], []))
    inv = _invert_top_unit(e0.sub(I0, J0))
    d = (X.f @ e1).sub(I0, J1)
    return TwoTermComplex(alg, inv @ d)


# --- splitting --------------------------------------------------------------------


@dataclass
class Piece:
    complex: TwoTermComplex
    status: str  # "indecomposable" | "possibly-indecomposable"
    end_rad_dim: int

    def to_dict(self) -> dict:
        return {
            "g_vector": list(self.complex.g_vector()),
            "status": self.status,
            "end_rad_dim": self.end_rad_dim,
            "complex": self.complex.to_dict(),
        }


@dataclass
class Decomposition:
    pieces: list[Piece] = field(default_factory=list)

    @property
    def summands(self) -> list[TwoTermComplex]:
        return [p.complex for p in self.pieces]

    def __iter__(self):
        return iter(self.summands)

    def __len__(self):
        return len(self.pieces)

    def g_vectors(self) -> list[tuple[int, ...]]:
        return sorted(p.complex.g_vector() for p in self.pieces)

    def to_dict(self) -> dict:
        return {"summands": [p.to_dict() for p in self.pieces]}


def _random_scalar(F: Field, rng: np.random.Generator):
    if isinstance(F, ExtensionField):
        return F.from_coefficients([int(x) for x in rng.integers(0, F.p, size=F.degree)])
    return F(int(rng.integers(0, F.characteristic)))


def _try_split(X: TwoTermComplex, basis, rng, trials: int):
    """Return ``(eps, None)`` for a nontrivial idempotent, or ``(None, degrees)``."""
    F = X.field
    seen_degrees = set()
    for _ in range(trials):
        coeffs = [_random_scalar(F, rng) for _ in basis]
        u0 = LMat.zero(X.alg, F, X.minus, X.minus)
        u1 = LMat.zero(X.alg, F, X.plus, X.plus)
        for c, (a, b) in zip(coeffs, basis):
            if c != 0:
                u0 = u0 + a.scale(c)
                u1 = u1 + b.scale(c)
        top = _top_pair((u0, u1), F)
        chi = F.charpoly(top)
        _, factors = chi.factor()
        if len(factors) < 2:
            seen_degrees.add(factors[0][0].degree() if factors else 0)
            continue
        q, mult = factors[0]
        A = q**mult
        B = chi // A
        g, _, t = A.xgcd(B)
        if g.degree() != 0:
            raise ArithmeticError("characteristic polynomial factors are not coprime")
        # t*B/g is 1 modulo A and 0 modulo B
        ginv = F.one / _coerce_coeffs(g, F)[0]
        e = (t * B * ginv) % chi
        eps = _idempotent_from_poly((u0, u1), _coerce_coeffs(e, F))
        return eps, None
    return None, seen_degrees


def _complement(X: TwoTermComplex, eps):
    F, alg = X.field, X.alg
    return (
        LMat.identity(alg, F, X.minus) - eps[0],
        LMat.identity(alg, F, X.plus) - eps[1],
    )


def decompose(
    X: TwoTermComplex,
    seed: int | np.random.Generator = 0,
    trials: int = 8,
    p: int = P31,
) -> Decomposition:
    """Split ``X`` into indecomposable summands (up to homotopy).

    Complexes over the rationals are reduced modulo ``p`` first. A summand is
    marked ``indecomposable`` when its endomorphism ring modulo radical is
    the base field (checked exactly); otherwise, after ``trials`` failed
    random splitting attempts, it is reported as ``possibly-indecomposable``.
    """
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    if X.field == QQ:
        X = X.change_field(GF(p))
    X = minimize(X)
    out = Decomposition()
    stack = [X]
    while stack:
        Y = stack.pop()
        if Y.is_zero():
            continue
        basis = chain_maps(Y, Y)
        s = end_semisimple_dim(Y, basis)
        if s == 1:
            out.pieces.append(Piece(Y, "indecomposable", 1))
            continue
        eps, degrees = _try_split(Y, basis, rng, trials)
        if eps is not None:
            a = summand(Y, eps)
            b = summand(Y, _complement(Y, eps))
            assert tuple(x + y for x, y in zip(a.g_vector(), b.g_vector())) == Y.g_vector()
            stack.append(b)
            stack.append(a)
            continue
        F = Y.field
        if isinstance(F, PrimeField) and degrees == {s}:
            # End/rad looks like GF(p^s): split after extending scalars
            stack.append(Y.change_field(ExtensionField(F.p, s)))
            continue
        out.pieces.append(Piece(Y, "possibly-indecomposable", s))
    return out


# --- generic decomposition ----------------------------------------------------------


def e_invariant_samples(alg, g, g2, trials: int = 5, seed: int = 0, coeff_range: int = 100, field=QQ):
    if trials < 1:
        raise ValueError("trials must be >= 1")
    ss = np.random.SeedSequence(seed)
    vals = []
    for child in ss.spawn(trials):
        r1, r2 = [np.random.default_rng(c) for c in child.spawn(2)]
        X = random_complex(alg, g, coeff_range, r1, field)
        Y = random_complex(alg, g2, coeff_range, r2, field)
        vals.append(hom_complexes(X, Y, 1).quotient_dim)
    return vals


def e_invariant(alg, g, g2, trials: int = 5, seed: int = 0, coeff_range: int = 100) -> int:
    """Generic ``dim Hom(X_g, ΣX_g')`` estimated as a minimum over random pairs."""
    return min(e_invariant_samples(alg, g, g2, trials, seed, coeff_range))


def summand_kind(Y: TwoTermComplex) -> str:
    ext = hom_complexes(Y, Y, 1).quotient_dim
    if ext == 0:
        return "presilting"
    if ext == 1 and end_semisimple_dim(Y) == 1:
        return "band"
    return "other"


@dataclass
class GenericDecomposition:
    status: str  # "stable" | "inconclusive"
    terms: list[tuple[tuple[int, ...], int, str]]
    observed: list[list[tuple[int, ...]]]
    pairwise_ext: list[list[int]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "terms": [
                {"g": list(g), "multiplicity": m, "kind": k} for g, m, k in self.terms
            ],
            "observed": [[list(g) for g in obs] for obs in self.observed],
            "pairwise_ext": self.pairwise_ext,
        }


def generic_decomposition(
    alg, g: Sequence[int], trials: int = 5, seed: int = 0, coeff_range: int = 100, p: int = P31
) -> GenericDecomposition:
    """Decompose ``trials`` independent random complexes of class ``g``.

    The summand multiset must agree across all samples, otherwise the result
    is ``inconclusive``. Kinds come from the first sample; ``pairwise_ext``
    lists ``dim Hom(Y_i, ΣY_j)`` between its summands.
    """
    if trials < 2:
        raise ValueError("trials must be >= 2")
    F = GF(p)
    ss = np.random.SeedSequence(seed)
    observed = []
    first = None
    for child in ss.spawn(trials):
        r_build, r_split = [np.random.default_rng(c) for c in child.spawn(2)]
        X = random_complex(alg, g, coeff_range, r_build, F)
        dec = decompose(X, r_split)
        observed.append(dec.g_vectors())
        if first is None:
            first = dec
    if any(o != observed[0] for o in observed):
        return GenericDecomposition("inconclusive", [], observed)
    kinds = {}
    for piece in first.pieces:
        gv = piece.complex.g_vector()
        if gv not in kinds:
            kinds[gv] = summand_kind(piece.complex)
    counts = Counter(observed[0])
    terms = [(gv, counts[gv], kinds[gv]) for gv in sorted(counts)]
    summands = first.summands
    ext = [
        [
            hom_complexes(a, b, 1).quotient_dim if a.field == b.field else -1
            for b in summands
        ]
        for a in summands
    ]
    return GenericDecomposition("stable", terms, observed, ext)
