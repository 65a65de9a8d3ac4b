"""Two-term complexes of projectives and Hom spaces in the homotopy category."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .algebra import HomCoords, LMat, PathAlgebra
from .fields import QQ, Field


@dataclass(frozen=True)
class TwoTermComplex:
    """``P^{-1} --f--> P^0`` with ``P^{-1} = ⊕ P_minus[c]`` and ``P^0 = ⊕ P_plus[r]``."""

    alg: PathAlgebra
    f: LMat

    @property
    def field(self) -> Field:
        return self.f.field

    @property
    def minus(self) -> tuple:
        return self.f.dom

    @property
    def plus(self) -> tuple:
        return self.f.cod

    @property
    def m_minus(self) -> tuple[int, ...]:
        return tuple(self.minus.count(v) for v in range(self.alg.n))

    @property
    def m_plus(self) -> tuple[int, ...]:
        return tuple(self.plus.count(v) for v in range(self.alg.n))

    def g_vector(self) -> tuple[int, ...]:
        return tuple(p - m for p, m in zip(self.m_plus, self.m_minus))

    def is_zero(self) -> bool:
        return not self.minus and not self.plus

    def change_field(self, F: Field) -> "TwoTermComplex":
        return TwoTermComplex(self.alg, self.f.change_field(F))

    def direct_sum(self, other: "TwoTermComplex") -> "TwoTermComplex":
        z1 = LMat.zero(self.alg, self.field, other.minus, self.plus)
        z2 = LMat.zero(self.alg, self.field, self.minus, other.plus)
        return TwoTermComplex(self.alg, LMat.block([[self.f, z1], [z2, other.f]]))

    def to_dict(self) -> dict:
        return {
            "field": self.field.name,
            "minus": [self.alg.vertices[v] for v in self.minus],
            "plus": [self.alg.vertices[v] for v in self.plus],
            "m_minus": list(self.m_minus),
            "m_plus": list(self.m_plus),
            "g_vector": list(self.g_vector()),
            "blocks": self.f.to_blocks(),
        }

    @classmethod
    def from_dict(cls, alg: PathAlgebra, d: dict) -> "TwoTermComplex":
        from .fields import field_from_name

        F = field_from_name(d.get("field", "QQ"))
        if "minus" in d:
            minus = [alg.vertex(str(v)) for v in d["minus"]]
            plus = [alg.vertex(str(v)) for v in d["plus"]]
        else:
            minus = _expand(d["m_minus"])
            plus = _expand(d["m_plus"])
        blocks = d.get("blocks", [])
        ent = {}
        for r, row in enumerate(blocks):
            for c, vec in enumerate(row):
                if len(vec) != alg.dim(minus[c], plus[r]):
                    raise ValueError(f"block ({r},{c}) has wrong length")
                ent[(r, c)] = [F.from_json(x) for x in vec]
        return cls(alg, LMat(alg, F, minus, plus, ent))


def _expand(mult: Sequence[int]) -> list[int]:
    return [v for v, m in enumerate(mult) for _ in range(int(m))]


def complex_from_blocks(
    alg: PathAlgebra,
    minus: Sequence,
    plus: Sequence,
    blocks: Mapping[tuple[int, int], Mapping] | None = None,
    field: Field = QQ,
) -> TwoTermComplex:
    """Build a complex from path combinations.

    ``minus``/``plus`` list the vertices of the summands (names or indices);
    ``blocks[(r, c)]`` is a ``{path: coefficient}`` map for the component
    ``P_minus[c] -> P_plus[r]``.
    """
    mi = [alg.vertex(v) for v in minus]
    pl = [alg.vertex(v) for v in plus]
    ent = {}
    for (r, c), terms in (blocks or {}).items():
        ent[(r, c)] = alg.element(mi[c], pl[r], terms, field)
    return TwoTermComplex(alg, LMat(alg, field, mi, pl, ent))


def projective(alg: PathAlgebra, v, shifted: bool = False, field: Field = QQ) -> TwoTermComplex:
    """``0 -> P_v`` or, with ``shifted``, ``P_v -> 0`` (that is ``ΣP_v``)."""
    i = alg.vertex(v)
    if shifted:
        return complex_from_blocks(alg, [i], [], field=field)
    return complex_from_blocks(alg, [], [i], field=field)


def regular(alg: PathAlgebra, shifted: bool = False, field: Field = QQ) -> TwoTermComplex:
    verts = list(range(alg.n))
    if shifted:
        return complex_from_blocks(alg, verts, [], field=field)
    return complex_from_blocks(alg, [], verts, field=field)


def g_vector(X: TwoTermComplex) -> tuple[int, ...]:
    return X.g_vector()


# --- Hom spaces --------------------------------------------------------------


@dataclass
class HomSpace:
    shift: int
    ambient_dim: int
    chain_dim: int
    homotopy_dim: int
    chain_basis: list = field(default_factory=list, repr=False)

    @property
    def quotient_dim(self) -> int:
        return self.chain_dim - self.homotopy_dim

    def to_dict(self) -> dict:
        return {
            "shift": self.shift,
            "ambient_dim": self.ambient_dim,
            "chain_dim": self.chain_dim,
            "homotopy_dim": self.homotopy_dim,
            "quotient_dim": self.quotient_dim,
        }


def _columns(fn, coords: HomCoords, out: HomCoords, F: Field) -> list[list]:
    """Images of the basis of ``coords`` under ``fn`` as vectors in ``out``."""
    return [out.vector(fn(b)) for b in coords.basis(F)]


def _check_pair(X: TwoTermComplex, Y: TwoTermComplex):
    if X.alg is not Y.alg:
        raise ValueError("complexes live over different algebras")
    if X.field != Y.field:
        raise ValueError("complexes live over different fields")


def shift_images(X: TwoTermComplex, Y: TwoTermComplex):
    """Coordinates of ``Hom(X^-1, Y^0)`` and a spanning set of the null part."""
    F = X.field
    amb = HomCoords(X.alg, X.minus, Y.plus)
    c_m = HomCoords(X.alg, X.minus, Y.minus)
    c_p = HomCoords(X.alg, X.plus, Y.plus)
    rows = _columns(lambda a: Y.f @ a, c_m, amb, F)
    rows += _columns(lambda b: b @ X.f, c_p, amb, F)
    return amb, rows


def hom_complexes(X: TwoTermComplex, Y: TwoTermComplex, shift: int = 0, basis: bool = False) -> HomSpace:
    """``Hom(X, Σ^shift Y)`` in the homotopy category, for shift 0 or 1."""
    _check_pair(X, Y)
    F = X.field
    if shift == 1:
        amb, rows = shift_images(X, Y)
        rk = F.rank(rows, amb.size) if rows and amb.size else 0
        return HomSpace(1, amb.size, amb.size, rk)
    if shift != 0:
        raise ValueError("shift must be 0 or 1 for two-term complexes")
    c_m = HomCoords(X.alg, X.minus, Y.minus)
    c_p = HomCoords(X.alg, X.plus, Y.plus)
    tgt = HomCoords(X.alg, X.minus, Y.plus)
    n = c_m.size + c_p.size
    # chain condition u0 f_X - f_Y u-1 = 0, as a matrix with one column per unknown
    cols = _columns(lambda a: -(Y.f @ a), c_m, tgt, F)
    cols += _columns(lambda b: b @ X.f, c_p, tgt, F)
    if tgt.size:
        eq = [[cols[j][i] for j in range(n)] for i in range(tgt.size)]
        chain = F.nullspace(eq, n)
    else:
        chain = F.nullspace([], n)
    # homotopies h: X^0 -> Y^-1 give (h f_X, f_Y h)
    c_h = HomCoords(X.alg, X.plus, Y.minus)
    hrows = []
    for h in c_h.basis(F):
        hrows.append(c_m.vector(h @ X.f) + c_p.vector(Y.f @ h))
    rk = F.rank(hrows, n) if hrows and n else 0
    return HomSpace(0, n, len(chain), rk, chain if basis else [])


def chain_maps(X: TwoTermComplex, Y: TwoTermComplex) -> list[tuple[LMat, LMat]]:
    """Basis of degree-0 chain maps ``X -> Y`` as pairs ``(u^-1, u^0)``."""
    hs = hom_complexes(X, Y, 0, basis=True)
    c_m = HomCoords(X.alg, X.minus, Y.minus)
    c_p = HomCoords(X.alg, X.plus, Y.plus)
    F = X.field
    out = []
    for v in hs.chain_basis:
        out.append((c_m.matrix(F, v[: c_m.size]), c_p.matrix(F, v[c_m.size :])))
    return out


def is_presilting(X: TwoTermComplex) -> bool:
    return hom_complexes(X, X, 1).quotient_dim == 0


def shift_quotient_basis(U: TwoTermComplex, H: TwoTermComplex) -> list[LMat]:
    """Representatives ``U^-1 -> H^0`` of a basis of ``Hom(U, ΣH)``.

    The null part is put in reduced echelon form over the fixed path-basis
    order; the representatives are the coordinate vectors of the non-pivot
    positions.
    """
    _check_pair(U, H)
    F = U.field
    amb, rows = shift_images(U, H)
    red, piv = F.rref(rows, amb.size) if rows and amb.size else ([], [])
    pset = set(piv)
    return [amb.basis_element(F, i) for i in range(amb.size) if i not in pset]


# --- random complexes ----------------------------------------------------------


def split_g(g: Sequence[int]) -> tuple[list[int], list[int]]:
    gp = [max(x, 0) for x in g]
    gm = [max(-x, 0) for x in g]
    return gm, gp


def random_complex(
    alg: PathAlgebra,
    g: Sequence[int],
    coeff_range: int = 100,
    rng: np.random.Generator | int | None = 0,
    field: Field = QQ,
) -> TwoTermComplex:
    """Complex ``P^{g-} -> P^{g+}`` with uniform integer coefficients in ``[-R, R]``."""
    if len(g) != alg.n:
        raise ValueError(f"g-vector has length {len(g)}, algebra has {alg.n} vertices")
    if coeff_range < 1:
        raise ValueError("coeff_range must be >= 1")
    if not isinstance(rng, np.random.Generator):
        rng = np.random.default_rng(rng)
    gm, gp = split_g(g)
    minus, plus = _expand(gm), _expand(gp)
    ent = {}
    for r, w in enumerate(plus):
        for c, v in enumerate(minus):
            d = alg.dim(v, w)
            if d:
                vals = rng.integers(-coeff_range, coeff_range + 1, size=d)
                ent[(r, c)] = [field(int(x)) for x in vals]
    return TwoTermComplex(alg, LMat(alg, field, minus, plus, ent))


# --- cylinders and minimal complexes ---------------------------------------------


def minimize(X: TwoTermComplex) -> TwoTermComplex:
    """Cancel contractible summands ``P --unit--> P`` (homotopy equivalent result)."""
    alg, F = X.alg, X.field
    minus, plus = list(X.minus), list(X.plus)
    ent = {k: list(v) for k, v in X.f.ent.items()}
    while True:
        pivot = next(
            ((r, c) for (r, c), v in sorted(ent.items()) if plus[r] == minus[c] and v[0] != 0),
            None,
        )
        if pivot is None:
            break
        r0, c0 = pivot
        v = minus[c0]
        pinv = alg.unit_inverse(F, v, ent[(r0, c0)])
        row0 = {c: val for (r, c), val in ent.items() if r == r0}
        for (r, c) in [k for k in ent if k[1] == c0 and k[0] != r0]:
            # row_r -= (f[r][c0] p^-1) row_r0
            q = alg.mult(F, v, v, plus[r], ent[(r, c0)], pinv)
            for cc, val in row0.items():
                prod = alg.mult(F, minus[cc], v, plus[r], q, val)
                cur = ent.get((r, cc))
                if cur is None:
                    cur = [F.zero] * len(prod)
                    ent[(r, cc)] = cur
                for i, x in enumerate(prod):
                    cur[i] -= x
        new = {}
        for (r, c), val in ent.items():
            if r == r0 or c == c0 or all(x == 0 for x in val):
                continue
            new[(r - (r > r0), c - (c > c0))] = val
        ent = new
        del plus[r0]
        del minus[c0]
    return TwoTermComplex(alg, LMat(alg, F, minus, plus, ent))


def cylinder(U: TwoTermComplex, H: TwoTermComplex, minimal: bool = True) -> TwoTermComplex:
    """The cocone of ``U -> (ΣH)^d`` given by a basis of ``Hom(U, ΣH)``.

    Degree -1 is ``U^-1 ⊕ (H^-1)^d``, degree 0 is ``U^0 ⊕ (H^0)^d`` and the
    differential is lower triangular with ``f_U``, ``d`` copies of ``f_H`` and
    the basis maps in the corner. With ``minimal`` the contractible summands
    are cancelled afterwards. ``d = 0`` returns ``U`` itself.
    """
    fs = shift_quotient_basis(U, H)
    if not fs:
        return U
    alg, F = U.alg, U.field
    d = len(fs)
    zero = lambda dom, cod: LMat.zero(alg, F, dom, cod)
    top = [U.f] + [zero(H.minus, U.plus) for _ in range(d)]
    rows = [top]
    for i, fi in enumerate(fs):
        row = [fi]
        for j in range(d):
            row.append(H.f if i == j else zero(H.minus, H.plus))
        rows.append(row)
    f = LMat.block(rows)
    X = TwoTermComplex(alg, f)
    return minimize(X) if minimal else X


def cylinder_power(U: TwoTermComplex, H: TwoTermComplex, m: int, minimal: bool = True) -> TwoTermComplex:
    X = U
    for _ in range(m):
        X = cylinder(X, H, minimal)
    return X
