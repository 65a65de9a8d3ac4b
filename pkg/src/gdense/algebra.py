"""Path algebras with relations and matrices between their projectives.

Paths compose right to left: the path ``("b", "a")`` means ``b`` after ``a``.
The indecomposable projective ``P_i = e_i Λ`` has ``Hom(P_i, P_j) = e_j Λ e_i``,
the span of paths from ``i`` to ``j``, and composition is the algebra product.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import exact
from .fields import QQ, Field

Path = tuple  # (source, target, arrows right-to-left)


class PresentationError(ValueError):
    pass


class PathAlgebra:
    """Finite-dimensional quotient ``kQ / I`` with every path of length ``L`` zero."""

    def __init__(
        self,
        vertices: Sequence,
        arrows: Sequence[tuple],
        relations: Iterable[Sequence[tuple]] = (),
        nilpotency_bound: int = 2,
        name: str | None = None,
    ):
        self.vertices = [str(v) for v in vertices]
        if len(set(self.vertices)) != len(self.vertices):
            raise PresentationError("duplicate vertex names")
        self.vindex = {v: i for i, v in enumerate(self.vertices)}
        self.arrows = []
        self.aindex = {}
        for name_, s, t in arrows:
            name_ = str(name_)
            if name_ in self.aindex:
                raise PresentationError(f"duplicate arrow {name_!r}")
            if str(s) not in self.vindex or str(t) not in self.vindex:
                raise PresentationError(f"arrow {name_!r} has an unknown endpoint")
            self.aindex[name_] = len(self.arrows)
            self.arrows.append((name_, self.vindex[str(s)], self.vindex[str(t)]))
        if nilpotency_bound < 1:
            raise PresentationError("nilpotency bound must be >= 1")
        self.L = int(nilpotency_bound)
        self.relations = [
            [(Fraction(c), tuple(str(a) for a in path)) for c, path in rel] for rel in relations
        ]
        self.name = name
        self._tables: dict[str, dict] = {}
        self._build()

    # --- construction ------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.vertices)

    def _path_ends(self, arrows: tuple[int, ...]):
        for left, right in zip(arrows, arrows[1:]):
            if self.arrows[left][1] != self.arrows[right][2]:
                return None
        return self.arrows[arrows[-1]][1], self.arrows[arrows[0]][2]

    def _parse_path(self, path: Sequence[str]) -> Path:
        if not path:
            raise PresentationError("empty path needs an explicit vertex")
        try:
            idx = tuple(self.aindex[a] for a in path)
        except KeyError as exc:
            raise PresentationError(f"unknown arrow {exc.args[0]!r}") from None
        ends = self._path_ends(idx)
        if ends is None:
            raise PresentationError(f"arrows {list(path)} are not composable")
        return (ends[0], ends[1], idx)

    def _all_paths(self) -> list[Path]:
        paths = [(v, v, ()) for v in range(self.n)]
        layer = list(paths)
        for _ in range(self.L):
            nxt = []
            for s, t, arr in layer:
                for ai, (_, src, tgt) in enumerate(self.arrows):
                    if src == t:
                        nxt.append((s, tgt, (ai,) + arr))
            paths.extend(nxt)
            layer = nxt
        return paths

    def _build(self):
        paths = self._all_paths()
        blocks: dict[tuple[int, int], list[Path]] = {}
        for p in paths:
            blocks.setdefault((p[0], p[1]), []).append(p)
        # longest paths first, so elimination keeps the shortest normal forms
        for key in blocks:
            blocks[key].sort(key=lambda p: (-len(p[2]), p[2]))
        col = {key: {p: i for i, p in enumerate(ps)} for key, ps in blocks.items()}

        ideal: dict[tuple[int, int], list[list[Fraction]]] = {k: [] for k in blocks}
        for rel in self.relations:
            terms = []
            for c, path in rel:
                p = self._parse_path(path)
                if len(p[2]) < 2:
                    raise PresentationError("relation terms must have length >= 2")
                terms.append((c, p))
            ends = {(p[0], p[1]) for _, p in terms}
            if len(ends) != 1:
                raise PresentationError("relation mixes paths with different endpoints")
            s, t = ends.pop()
            for u in paths:
                if u[0] != t:
                    continue
                for w in paths:
                    if w[1] != s:
                        continue
                    key = (w[0], u[1])
                    if key not in blocks:
                        continue
                    vec = [Fraction(0)] * len(blocks[key])
                    hit = False
                    for c, p in terms:
                        arr = u[2] + p[2] + w[2]
                        if len(arr) > self.L:
                            continue
                        vec[col[key][(key[0], key[1], arr)]] += c
                        hit = True
                    if hit and any(vec):
                        ideal[key].append(vec)

        self.basis: dict[tuple[int, int], list[Path]] = {}
        self._reduce: dict[tuple[int, int], dict[Path, list[Fraction]]] = {}
        for key, ps in blocks.items():
            rows = ideal[key]
            base_rank = exact.rank(rows) if rows else 0
            top = [p for p in ps if len(p[2]) == self.L]
            for p in top:
                unit = [Fraction(int(q == p)) for q in ps]
                if exact.rank(rows + [unit]) != base_rank:
                    raise PresentationError(
                        f"path {self.path_name(p)} of length {self.L} is nonzero; "
                        "nilpotency bound violated"
                    )
            units = [[Fraction(int(q == p)) for q in ps] for p in top]
            red, piv = exact.rref(rows + units, len(ps)) if rows or units else ([], [])
            pset = set(piv)
            normal = [i for i in range(len(ps)) if i not in pset]
            normal.sort(key=lambda i: (len(ps[i][2]), ps[i][2]))
            self.basis[key] = [ps[i] for i in normal]
            pos = {i: k for k, i in enumerate(normal)}
            table = {}
            for i, p in enumerate(ps):
                v = [Fraction(0)] * len(normal)
                if i in pos:
                    v[pos[i]] = Fraction(1)
                else:
                    row = red[piv.index(i)]
                    for j in normal:
                        if row[j]:
                            v[pos[j]] = -row[j]
                table[p] = v
            self._reduce[key] = table
        for v in range(self.n):
            assert self.basis[(v, v)][0] == (v, v, ())

    # --- basic data --------------------------------------------------------

    def dim(self, i: int, j: int) -> int:
        """``dim e_j Λ e_i``: paths from ``i`` to ``j`` modulo relations."""
        return len(self.basis.get((i, j), ()))

    @property
    def total_dim(self) -> int:
        return sum(len(b) for b in self.basis.values())

    def projective_dim(self, v: int) -> int:
        return sum(self.dim(s, v) for s in range(self.n))

    def path_name(self, p: Path) -> str:
        if not p[2]:
            return f"e_{self.vertices[p[0]]}"
        return "*".join(self.arrows[a][0] for a in p[2])

    def basis_names(self, i: int, j: int) -> list[str]:
        return [self.path_name(p) for p in self.basis.get((i, j), [])]

    def reduce_path(self, p: Path) -> list[Fraction]:
        key = (p[0], p[1])
        if len(p[2]) >= self.L:
            return [Fraction(0)] * self.dim(*key)
        return list(self._reduce[key][p])

    def vertex(self, v) -> int:
        """Index of a vertex given by name (str) or by 0-based index (int)."""
        if isinstance(v, int) and not isinstance(v, bool):
            if 0 <= v < self.n:
                return v
            raise PresentationError(f"vertex index {v} out of range")
        try:
            return self.vindex[str(v)]
        except KeyError:
            raise PresentationError(f"unknown vertex {v!r}") from None

    def element(self, source, target, terms: Mapping, field: Field = QQ) -> tuple:
        """Coefficient vector in ``e_target Λ e_source`` of a combination of paths.

        ``terms`` maps a path (tuple of arrow names, right to left, or a single
        arrow name; the empty tuple is the idempotent when source = target) to
        its coefficient.
        """
        i, j = self.vertex(source), self.vertex(target)
        vec = [Fraction(0)] * self.dim(i, j)
        for path, c in terms.items():
            if isinstance(path, str):
                path = (path,)
            if not path:
                if i != j:
                    raise PresentationError("idempotent needs source = target")
                p = (i, i, ())
            else:
                p = self._parse_path(path)
            if (p[0], p[1]) != (i, j):
                raise PresentationError(f"path {list(path)} does not run {source} -> {target}")
            for k, x in enumerate(self.reduce_path(p)):
                vec[k] += Fraction(c) * x
        return tuple(field(x) for x in vec)

    # --- multiplication ----------------------------------------------------

    def table(self, field: Field):
        """Structure constants: ``t[(i,j,k)]`` lists ``(x, y, product)`` for
        basis ``x`` of ``e_k Λ e_j`` and ``y`` of ``e_j Λ e_i``."""
        if field.name in self._tables:
            return self._tables[field.name]
        t = {}
        for i in range(self.n):
            for j in range(self.n):
                for k in range(self.n):
                    bij = self.basis.get((i, j), [])
                    bjk = self.basis.get((j, k), [])
                    entries = []
                    for xi, x in enumerate(bjk):
                        for yi, y in enumerate(bij):
                            arr = x[2] + y[2]
                            prod = self.reduce_path((i, k, arr))
                            nz = [(r, field(c)) for r, c in enumerate(prod) if c]
                            if nz:
                                entries.append((xi, yi, nz))
                    t[(i, j, k)] = entries
        self._tables[field.name] = t
        return t

    def mult(self, field: Field, i: int, j: int, k: int, a, b) -> list:
        """Product ``a*b`` of ``a`` in ``e_k Λ e_j`` and ``b`` in ``e_j Λ e_i``."""
        out = [field.zero] * self.dim(i, k)
        for xi, yi, nz in self.table(field)[(i, j, k)]:
            c = a[xi] * b[yi]
            if c != 0:
                for r, v in nz:
                    out[r] += c * v
        return out

    def unit_inverse(self, field: Field, v: int, a) -> list:
        """Inverse of a unit of ``e_v Λ e_v`` (nonzero idempotent coefficient)."""
        lam = a[0]
        if lam == 0:
            raise ZeroDivisionError("element is not a unit")
        inv_lam = field.one / lam
        # a = lam (1 + m) with m nilpotent; a^{-1} = lam^{-1} sum (-m)^k
        m = [x * inv_lam for x in a]
        m[0] -= field.one
        neg = [-x for x in m]
        term = [field.one] + [field.zero] * (len(a) - 1)
        total = list(term)
        for _ in range(self.L + 1):
            term = self.mult(field, v, v, v, term, neg)
            if all(x == 0 for x in term):
                break
            total = [x + y for x, y in zip(total, term)]
        return [x * inv_lam for x in total]

    # --- serialisation -----------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "arrows": [
                {"name": a, "source": self.vertices[s], "target": self.vertices[t]}
                for a, s, t in self.arrows
            ],
            "relations": [
                [{"coefficient": str(c), "path": list(p)} for c, p in rel]
                for rel in self.relations
            ],
            "nilpotency_bound": self.L,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "PathAlgebra":
        try:
            rels = [
                [(Fraction(str(t["coefficient"])), tuple(t["path"])) for t in rel]
                for rel in d.get("relations", [])
            ]
            arrows = [(a["name"], a["source"], a["target"]) for a in d["arrows"]]
            return cls(d["vertices"], arrows, rels, int(d["nilpotency_bound"]), d.get("name"))
        except (KeyError, TypeError) as exc:
            raise PresentationError(f"malformed algebra description: {exc}") from None


def kronecker_algebra(m: int = 2) -> PathAlgebra:
    """Path algebra of the m-Kronecker quiver, arrows ``a, b, ...`` from 1 to 2."""
    names = "abcdefghijklmnopqrstuvwxyz"
    arrows = [(names[i] if m <= len(names) else f"a{i}", "1", "2") for i in range(m)]
    return PathAlgebra(["1", "2"], arrows, (), 2, name=f"kronecker{m}")


def a2_algebra() -> PathAlgebra:
    return PathAlgebra(["1", "2"], [("a", "1", "2")], (), 2, name="A2")


def dual_numbers() -> PathAlgebra:
    return PathAlgebra(["1"], [("x", "1", "1")], [[(1, ("x", "x"))]], 2, name="dual")


# --- matrices between sums of indecomposable projectives ---------------------


class LMat:
    """Morphism ``⊕ P_{dom[c]} -> ⊕ P_{cod[r]}``.

    ``ent`` maps ``(r, c)`` to the coefficient tuple of the entry in
    ``e_{cod[r]} Λ e_{dom[c]}``; zero entries are omitted.
    """

    __slots__ = ("alg", "field", "dom", "cod", "ent", "_bycol")

    def __init__(self, alg: PathAlgebra, field: Field, dom, cod, ent=None):
        self.alg = alg
        self.field = field
        self.dom = tuple(dom)
        self.cod = tuple(cod)
        self.ent = {}
        self._bycol = None
        for key, v in (ent or {}).items():
            v = tuple(v)
            if any(x != 0 for x in v):
                self.ent[key] = v

    @classmethod
    def zero(cls, alg, field, dom, cod):
        return cls(alg, field, dom, cod)

    @classmethod
    def identity(cls, alg, field, verts):
        ent = {}
        for i, v in enumerate(verts):
            vec = [field.zero] * alg.dim(v, v)
            vec[0] = field.one
            ent[(i, i)] = vec
        return cls(alg, field, verts, verts, ent)

    @classmethod
    def from_scalars(cls, alg, field, dom, cod, mat):
        """Lift a scalar matrix between same-vertex summands to idempotent multiples."""
        ent = {}
        for r, row in enumerate(mat):
            for c, x in enumerate(row):
                if x != 0:
                    if dom[c] != cod[r]:
                        raise ValueError("scalar entry between different vertices")
                    vec = [field.zero] * alg.dim(dom[c], dom[c])
                    vec[0] = x
                    ent[(r, c)] = vec
        return cls(alg, field, dom, cod, ent)

    def entry(self, r, c):
        v = self.ent.get((r, c))
        if v is None:
            return (self.field.zero,) * self.alg.dim(self.dom[c], self.cod[r])
        return v

    @property
    def shape(self):
        return len(self.cod), len(self.dom)

    def is_zero(self) -> bool:
        return not self.ent

    def _check(self, other):
        if other.alg is not self.alg or other.field != self.field:
            raise ValueError("matrices over different algebras or fields")

    def __add__(self, other: "LMat") -> "LMat":
        self._check(other)
        if other.dom != self.dom or other.cod != self.cod:
            raise ValueError("shape mismatch")
        ent = dict(self.ent)
        for k, v in other.ent.items():
            if k in ent:
                ent[k] = tuple(x + y for x, y in zip(ent[k], v))
            else:
                ent[k] = v
        return LMat(self.alg, self.field, self.dom, self.cod, ent)

    def __neg__(self):
        return LMat(
            self.alg, self.field, self.dom, self.cod,
            {k: tuple(-x for x in v) for k, v in self.ent.items()},
        )

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "LMat":
        return LMat(
            self.alg, self.field, self.dom, self.cod,
            {k: tuple(s * x for x in v) for k, v in self.ent.items()},
        )

    def _columns_by_row(self):
        if self._bycol is None:
            rows: dict[int, list] = {}
            for (r, c), v in self.ent.items():
                rows.setdefault(r, []).append((c, v))
            self._bycol = rows
        return self._bycol

    def __matmul__(self, other: "LMat") -> "LMat":
        """Composition ``self ∘ other``."""
        self._check(other)
        if other.cod != self.dom:
            raise ValueError("composition shape mismatch")
        alg, F = self.alg, self.field
        # index self by column k
        bycol: dict[int, list] = {}
        for (r, k), a in self.ent.items():
            bycol.setdefault(k, []).append((r, a))
        acc: dict[tuple[int, int], list] = {}
        for (k, c), b in other.ent.items():
            for r, a in bycol.get(k, ()):
                prod = alg.mult(F, other.dom[c], self.dom[k], self.cod[r], a, b)
                cur = acc.get((r, c))
                if cur is None:
                    acc[(r, c)] = prod
                else:
                    for i, x in enumerate(prod):
                        cur[i] += x
        return LMat(alg, F, other.dom, self.cod, acc)

    def __eq__(self, other):
        if not isinstance(other, LMat):
            return NotImplemented
        return (self.dom, self.cod) == (other.dom, other.cod) and (self - other).is_zero()

    def sub(self, rows: Sequence[int], cols: Sequence[int]) -> "LMat":
        rpos = {r: i for i, r in enumerate(rows)}
        cpos = {c: i for i, c in enumerate(cols)}
        ent = {
            (rpos[r], cpos[c]): v for (r, c), v in self.ent.items() if r in rpos and c in cpos
        }
        return LMat(
            self.alg, self.field,
            [self.dom[c] for c in cols], [self.cod[r] for r in rows], ent,
        )

    @staticmethod
    def block(rows_of_blocks: Sequence[Sequence["LMat"]]) -> "LMat":
        """Assemble a block matrix; every block in a block-row shares its codomain."""
        first = rows_of_blocks[0][0]
        dom = tuple(v for b in rows_of_blocks[0] for v in b.dom)
        cod = tuple(v for row in rows_of_blocks for v in row[0].cod)
        ent = {}
        roff = 0
        for row in rows_of_blocks:
            coff = 0
            for b in row:
                for (r, c), v in b.ent.items():
                    ent[(roff + r, coff + c)] = v
                coff += len(b.dom)
            roff += len(row[0].cod)
        return LMat(first.alg, first.field, dom, cod, ent)

    def top(self) -> list[list]:
        """Induced scalar matrix on tops: idempotent coefficients of same-vertex entries."""
        F = self.field
        out = [[F.zero] * len(self.dom) for _ in self.cod]
        for (r, c), v in self.ent.items():
            if self.dom[c] == self.cod[r]:
                out[r][c] = v[0]
        return out

    def change_field(self, field: Field) -> "LMat":
        return LMat(
            self.alg, field, self.dom, self.cod,
            {k: tuple(field(x) for x in v) for k, v in self.ent.items()},
        )

    # regular representation: P_v = ⊕_s e_v Λ e_s as a vector space

    def _offsets(self, verts):
        alg = self.alg
        offs = []
        pos = 0
        for v in verts:
            o = {}
            for s in range(alg.n):
                o[s] = pos
                pos += alg.dim(s, v)
            offs.append(o)
        return offs, pos

    def regular(self) -> list[list]:
        """Matrix of the underlying linear map on ``⊕ P_dom -> ⊕ P_cod``."""
        alg, F = self.alg, self.field
        doff, dn = self._offsets(self.dom)
        coff, cn = self._offsets(self.cod)
        m = [[F.zero] * dn for _ in range(cn)]
        tab = alg.table(F)
        for (r, c), a in self.ent.items():
            v, w = self.dom[c], self.cod[r]
            for s in range(alg.n):
                for xi, yi, nz in tab[(s, v, w)]:
                    if a[xi] == 0:
                        continue
                    col = doff[c][s] + yi
                    for k, val in nz:
                        m[coff[r][s] + k][col] += a[xi] * val
        return m

    @classmethod
    def from_regular(cls, alg, field, dom, cod, m) -> "LMat":
        tmp = cls(alg, field, dom, cod)
        doff, _ = tmp._offsets(dom)
        coff, _ = tmp._offsets(cod)
        ent = {}
        for c, v in enumerate(dom):
            col = doff[c][v]  # the idempotent e_v sits first in e_v Λ e_v
            for r, w in enumerate(cod):
                start = coff[r][v]
                vec = [m[start + k][col] for k in range(alg.dim(v, w))]
                if any(x != 0 for x in vec):
                    ent[(r, c)] = vec
        return cls(alg, field, dom, cod, ent)

    def to_blocks(self) -> list[list[list]]:
        F = self.field
        return [
            [[F.to_json(x) for x in self.entry(r, c)] for c in range(len(self.dom))]
            for r in range(len(self.cod))
        ]

    def __repr__(self):
        return f"LMat({len(self.cod)}x{len(self.dom)}, {len(self.ent)} nonzero over {self.field})"


@dataclass
class HomCoords:
    """Coordinates on ``Hom(⊕P_dom, ⊕P_cod)`` over the path basis."""

    alg: PathAlgebra
    dom: tuple
    cod: tuple

    def __post_init__(self):
        self.slots = []
        self.offset = {}
        pos = 0
        for r, w in enumerate(self.cod):
            for c, v in enumerate(self.dom):
                d = self.alg.dim(v, w)
                if d:
                    self.offset[(r, c)] = pos
                    self.slots.append((r, c, d))
                    pos += d
        self.size = pos

    def basis_element(self, field: Field, idx: int) -> LMat:
        for r, c, d in self.slots:
            off = self.offset[(r, c)]
            if off <= idx < off + d:
                vec = [field.zero] * d
                vec[idx - off] = field.one
                return LMat(self.alg, field, self.dom, self.cod, {(r, c): vec})
        raise IndexError(idx)

    def basis(self, field: Field):
        for r, c, d in self.slots:
            for t in range(d):
                vec = [field.zero] * d
                vec[t] = field.one
                yield LMat(self.alg, field, self.dom, self.cod, {(r, c): vec})

    def vector(self, m: LMat) -> list:
        F = m.field
        out = [F.zero] * self.size
        for (r, c), v in m.ent.items():
            off = self.offset[(r, c)]
            for i, x in enumerate(v):
                out[off + i] = x
        return out

    def matrix(self, field: Field, vec) -> LMat:
        ent = {}
        for r, c, d in self.slots:
            off = self.offset[(r, c)]
            ent[(r, c)] = vec[off : off + d]
        return LMat(self.alg, field, self.dom, self.cod, ent)
