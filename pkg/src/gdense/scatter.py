"""Truncated cluster scattering diagrams in log coordinates.

Group elements are kept as their logarithms, elements of the graded Lie
algebra with basis ``x^d`` and bracket ``[x^a, x^b] = {a, b} x^(a+b)``,
truncated at total degree ``k``. Products use the Baker-Campbell-Hausdorff
series in Dynkin's form.
"""
from __future__ import annotations

import functools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import factorial
from typing import Iterable, Sequence

from . import exact

log = logging.getLogger(__name__)

Vec = tuple[int, ...]


@dataclass(frozen=True)
class ScatterLattice:
    """Rank ``n`` lattice ``N`` with the skew form ``{e_i, e_j} = form[i][j]``."""

    form: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        f = tuple(tuple(int(x) for x in row) for row in self.form)
        n = len(f)
        if any(len(r) != n for r in f):
            raise ValueError("form must be square")
        for i in range(n):
            for j in range(n):
                if f[i][j] != -f[j][i]:
                    raise ValueError("form must be skew-symmetric")
        object.__setattr__(self, "form", f)

    @property
    def n(self) -> int:
        return len(self.form)

    def pair(self, a: Sequence[int], b: Sequence[int]) -> int:
        f = self.form
        return sum(a[i] * f[i][j] * b[j] for i in range(self.n) if a[i] for j in range(self.n) if b[j])

    def p_star(self, d: Sequence[int]) -> Vec:
        """``{d, -}`` as a vector of ``M``: its value on ``e_j``."""
        return tuple(sum(d[i] * self.form[i][j] for i in range(self.n)) for j in range(self.n))

    @classmethod
    def from_quiver(cls, B) -> "ScatterLattice":
        """``{e_i, e_j}`` = arrows j -> i minus arrows i -> j, i.e. ``b_ji``.

        With the g-vector convention of :mod:`gdense.seeds`, the rank 2
        completion for the form ``B`` itself reproduces the g-fan of ``B``;
        so the completion for this form matches the fan of the opposite quiver.
        """
        b = B.entries if hasattr(B, "entries") else B
        n = len(b)
        return cls(tuple(tuple(b[j][i] for j in range(n)) for i in range(n)))

    def to_dict(self) -> dict:
        return {"form": [list(r) for r in self.form]}


def delta(d: Sequence[int]) -> int:
    return sum(d)


def is_positive(d: Sequence[int]) -> bool:
    return all(x >= 0 for x in d) and any(d)


class LieSeries:
    """Finite sum ``Σ c_d x^d`` over ``d`` in ``N⁺`` with ``δ(d) <= order``."""

    __slots__ = ("lattice", "order", "coeffs")

    def __init__(self, lattice: ScatterLattice, order: int, coeffs=None):
        self.lattice = lattice
        self.order = order
        out = {}
        for d, c in (coeffs or {}).items():
            d = tuple(int(x) for x in d)
            if len(d) != lattice.n:
                raise ValueError(f"degree {d} has wrong rank")
            if not is_positive(d):
                raise ValueError(f"degree {d} is not in N+")
            c = Fraction(c)
            if c and delta(d) <= order:
                out[d] = out.get(d, Fraction(0)) + c
        self.coeffs = {d: c for d, c in out.items() if c}

    @classmethod
    def monomial(cls, lattice, order, d, c=1) -> "LieSeries":
        return cls(lattice, order, {tuple(d): c})

    def zero_like(self) -> "LieSeries":
        return LieSeries(self.lattice, self.order)

    def is_zero(self) -> bool:
        return not self.coeffs

    def truncate(self, k: int) -> "LieSeries":
        return LieSeries(self.lattice, k, {d: c for d, c in self.coeffs.items() if delta(d) <= k})

    def min_degree(self) -> int:
        return min((delta(d) for d in self.coeffs), default=10**9)

    def _combine(self, other, sign):
        if other.lattice != self.lattice:
            raise ValueError("series over different lattices")
        k = min(self.order, other.order)
        out = dict(self.coeffs)
        for d, c in other.coeffs.items():
            out[d] = out.get(d, Fraction(0)) + sign * c
        return LieSeries(self.lattice, k, out)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, s) -> "LieSeries":
        s = Fraction(s)
        return LieSeries(self.lattice, self.order, {d: s * c for d, c in self.coeffs.items()})

    def __eq__(self, other):
        if not isinstance(other, LieSeries):
            return NotImplemented
        return self.lattice == other.lattice and self.coeffs == other.coeffs

    def __repr__(self):
        terms = " + ".join(f"{c}*x^{d}" for d, c in sorted(self.coeffs.items()))
        return f"LieSeries(order={self.order}: {terms or '0'})"

    def to_list(self) -> list[dict]:
        return [
            {"d": list(d), "num": c.numerator, "den": c.denominator}
            for d, c in sorted(self.coeffs.items(), key=lambda t: (delta(t[0]), t[0]))
        ]

    @classmethod
    def from_list(cls, lattice, order, items) -> "LieSeries":
        return cls(lattice, order, {tuple(t["d"]): Fraction(t["num"], t["den"]) for t in items})


def bracket(a: LieSeries, b: LieSeries, k: int | None = None) -> LieSeries:
    """Bilinear extension of ``[x^d1, x^d2] = {d1, d2} x^(d1+d2)``, cut at degree ``k``."""
    L = a.lattice
    if b.lattice != L:
        raise ValueError("series over different lattices")
    if k is None:
        k = min(a.order, b.order)
    out: dict[Vec, Fraction] = {}
    for d1, c1 in a.coeffs.items():
        s1 = delta(d1)
        for d2, c2 in b.coeffs.items():
            if s1 + delta(d2) > k:
                continue
            w = L.pair(d1, d2)
            if w:
                d = tuple(x + y for x, y in zip(d1, d2))
                out[d] = out.get(d, Fraction(0)) + w * c1 * c2
    return LieSeries(L, k, out)


@functools.lru_cache(maxsize=None)
def dynkin_coefficients(k: int) -> dict[str, Fraction]:
    """Coefficient of the right-nested bracket of each X/Y word of length <= k.

    ``log(e^X e^Y) = Σ_w c(w) [w_1, [w_2, ... w_m]]`` with Dynkin's weights:
    a word splits into blocks ``X^r Y^s`` (r + s > 0); a split into ``n``
    blocks contributes ``(-1)^(n-1) / (n m Π r_i! s_i!)``.
    """
    coeffs: dict[str, Fraction] = {}
    for m in range(1, k + 1):
        for letters in product("XY", repeat=m):
            w = "".join(letters)
            total = Fraction(0)
            for blocks in _block_splits(w):
                n = len(blocks)
                den = n * m
                for r, s in blocks:
                    den *= factorial(r) * factorial(s)
                total += Fraction((-1) ** (n - 1), den)
            if total:
                coeffs[w] = total
    return coeffs


def _block_splits(w: str):
    """All ways to cut ``w`` into consecutive nonempty blocks of the shape X^r Y^s."""
    if not w:
        yield []
        return
    for end in range(1, len(w) + 1):
        head = w[:end]
        r = len(head) - len(head.lstrip("X"))
        if head[r:].strip("Y"):
            break  # head is not X^r Y^s, and longer heads won't be either
        for rest in _block_splits(w[end:]):
            yield [(r, len(head) - r)] + rest


def bch_mul(a: LieSeries, b: LieSeries, k: int | None = None) -> LieSeries:
    """``log(exp(a) exp(b))`` truncated at degree ``k``."""
    if k is None:
        k = min(a.order, b.order)
    a, b = a.truncate(k), b.truncate(k)
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    ma, mb = a.min_degree(), b.min_degree()
    gens = {"X": a, "Y": b}
    mind = {"X": ma, "Y": mb}
    memo: dict[str, LieSeries] = {}

    def nested(w: str) -> LieSeries:
        if w in memo:
            return memo[w]
        if len(w) == 1:
            res = gens[w]
        else:
            inner = nested(w[1:])
            res = bracket(gens[w[0]], inner, k) if not inner.is_zero() else inner
        memo[w] = res
        return res

    out = LieSeries(a.lattice, k)
    for w, c in dynkin_coefficients(k).items():
        if sum(mind[x] for x in w) > k:
            continue
        term = nested(w)
        if not term.is_zero():
            out = out + term.scale(c)
    return out


def bch_inverse(a: LieSeries) -> LieSeries:
    return -a


# --- walls -------------------------------------------------------------------------


@dataclass
class Wall:
    d0: Vec
    support_rays: list[Vec]
    log_fn: LieSeries

    def __post_init__(self):
        self.d0 = tuple(self.d0)
        self.support_rays = [tuple(r) for r in self.support_rays]
        for d in self.log_fn.coeffs:
            if _multiple_of(d, self.d0) is None:
                raise ValueError(f"log function term x^{d} is not a multiple of {self.d0}")

    def to_dict(self) -> dict:
        return {
            "d0": list(self.d0),
            "support_rays": [list(r) for r in self.support_rays],
            "log_fn": self.log_fn.to_list(),
        }

    @classmethod
    def from_dict(cls, lattice, order, d) -> "Wall":
        return cls(tuple(d["d0"]), [tuple(r) for r in d["support_rays"]],
                   LieSeries.from_list(lattice, order, d["log_fn"]))


def _multiple_of(d: Sequence[int], d0: Sequence[int]) -> int | None:
    j = None
    for x, y in zip(d, d0):
        if y == 0:
            if x:
                return None
            continue
        if x % y:
            return None
        q = x // y
        if j is None:
            j = q
        elif q != j:
            return None
    return j if j and j > 0 else None


def dilog_series(lattice: ScatterLattice, d0: Sequence[int], k: int) -> LieSeries:
    """``Σ_{j>=1} (-1)^(j-1) x^(j d0) / j^2`` cut at degree ``k``."""
    s = delta(d0)
    coeffs = {}
    j = 1
    while j * s <= k:
        coeffs[tuple(j * x for x in d0)] = Fraction((-1) ** (j - 1), j * j)
        j += 1
    return LieSeries(lattice, k, coeffs)


def initial_walls(L: ScatterLattice, k: int) -> list[Wall]:
    """One wall per ``e_i``, supported on the hyperplane ``e_i⊥`` (given by ±e_j, j≠i)."""
    walls = []
    for i in range(L.n):
        e = tuple(int(j == i) for j in range(L.n))
        rays = []
        for j in range(L.n):
            if j != i:
                u = tuple(int(t == j) for t in range(L.n))
                rays += [u, tuple(-x for x in u)]
        walls.append(Wall(e, rays, dilog_series(L, e, k)))
    return walls


def path_ordered_product(walls: Sequence[Wall], crossings: Iterable[tuple], k: int) -> LieSeries:
    """``log(φ_l^ε_l ⋯ φ_1^ε_1)`` for crossings listed in the order they happen.

    ``crossings`` holds ``(wall, sign)`` pairs, where ``wall`` is a Wall or an
    index into ``walls``.
    """
    lattice = walls[0].log_fn.lattice if walls else None
    acc = None
    for w, eps in crossings:
        if eps not in (1, -1):
            raise ValueError("crossing signs must be +1 or -1")
        wall = walls[w] if isinstance(w, int) else w
        term = wall.log_fn.truncate(k).scale(eps)
        acc = term if acc is None else bch_mul(term, acc, k)
    if acc is None:
        if lattice is None:
            raise ValueError("no walls given")
        return LieSeries(lattice, k)
    return acc


# --- rank 2 -------------------------------------------------------------------------


def _angle_key(m: Sequence[int]):
    """Exact counterclockwise order of directions, starting just after angle π/4."""
    x, y = m[0] + m[1], m[1] - m[0]  # rotate by -π/4 (and scale)
    half = 0 if (y > 0 or (y == 0 and x > 0)) else 1
    return half, x, y


def _ccw_cmp(a, b):
    ha, xa, ya = _angle_key(a)
    hb, xb, yb = _angle_key(b)
    if ha != hb:
        return ha - hb
    cross = xa * yb - ya * xb
    return -1 if cross > 0 else (1 if cross < 0 else 0)


def loop_crossings(walls: Sequence[Wall]) -> list[tuple[int, int]]:
    """Crossings of a counterclockwise loop around the origin in rank 2.

    The loop starts at angle π/4, inside the positive chamber. Each support
    ray of each wall is crossed once, with sign ``-sign d/dt <d0, γ(t)>``.
    """
    events = []
    for idx, w in enumerate(walls):
        for r in w.support_rays:
            if r[0] == r[1] and r[0] > 0:
                raise ValueError("wall ray on the loop's base point")
            # tangent at r is proportional to (-r2, r1)
            deriv = -w.d0[0] * r[1] + w.d0[1] * r[0]
            if deriv == 0:
                raise ValueError(f"ray {r} is not transverse to the loop")
            events.append((r, idx, -1 if deriv > 0 else 1))
    events.sort(key=functools.cmp_to_key(lambda a, b: _ccw_cmp(a[0], b[0]) or (a[1] - b[1])))
    return [(idx, eps) for _, idx, eps in events]


def loop_product(walls: Sequence[Wall], k: int) -> LieSeries:
    return path_ordered_product(walls, loop_crossings(walls), k)


def complete_rank2(L: ScatterLattice, k: int) -> list[Wall]:
    """Consistent completion of the initial walls up to degree ``k``.

    Works order by order: the degree-``j`` part of the loop product is
    central modulo higher degrees, so each offending term ``c x^d`` is
    cancelled by adding ``-c/ε x^d`` to the wall on the ray ``p*(d0)``,
    ``d0`` the primitive vector of ``d`` and ``ε`` that ray's crossing sign.
    New walls are created by increasing ``δ`` and then by angle.
    """
    if L.n != 2:
        raise ValueError("complete_rank2 needs a rank 2 lattice")
    walls = initial_walls(L, k)
    ray_wall: dict[Vec, int] = {}
    for j in range(1, k + 1):
        err = loop_product(walls, j)
        bad = {d: c for d, c in err.coeffs.items() if delta(d) < j}
        if bad:
            raise AssertionError(f"lower-order terms survived: {bad}")
        todo = sorted(
            ((d, c) for d, c in err.coeffs.items() if delta(d) == j),
            key=functools.cmp_to_key(
                lambda a, b: _ccw_cmp(_ray_for(L, a[0]), _ray_for(L, b[0])) or (a[0] > b[0]) - (a[0] < b[0])
            ),
        )
        for d, c in todo:
            d0 = exact.primitive(d)
            ray = _ray_for(L, d0)
            deriv = -d0[0] * ray[1] + d0[1] * ray[0]
            eps = -1 if deriv > 0 else 1
            a = -c / eps
            if ray not in ray_wall:
                walls.append(Wall(d0, [ray], LieSeries(L, k)))
                ray_wall[ray] = len(walls) - 1
            w = walls[ray_wall[ray]]
            w.log_fn = w.log_fn + LieSeries.monomial(L, k, d, a)
    return walls


def _ray_for(L: ScatterLattice, d: Sequence[int]) -> Vec:
    p = L.p_star(exact.primitive(d))
    if not any(p):
        raise ValueError(f"{d} pairs to zero with everything; no wall direction")
    return exact.primitive(p)


# --- walls on a computed fan --------------------------------------------------------


def facet_normal(rays: Sequence[Sequence[int]], n: int) -> Vec:
    basis = exact.nullspace([list(r) for r in rays], n)
    if len(basis) != 1:
        raise ValueError("face is not of codimension one")
    return exact.primitive(basis[0])


def attach_fan_functions(F, L: ScatterLattice, k: int) -> list[Wall]:
    """A dilogarithm wall on every codimension-one face of the fan.

    Faces whose normal has entries of both signs are skipped with a warning.
    """
    walls = []
    for face in sorted(F.facet_map()):
        normal = facet_normal(face, F.ambient_dim)
        if all(x <= 0 for x in normal):
            normal = tuple(-x for x in normal)
        if not is_positive(normal):
            log.warning("facet %s has normal %s outside N+; skipped", face, normal)
            continue
        walls.append(Wall(normal, list(face), dilog_series(L, normal, k)))
    return walls
