"""Quivers as skew-symmetric integer matrices.

Mutation, canonical forms up to vertex relabeling, breadth-first exploration
of mutation classes, and recognition of the named mutation-finite families.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

Matrix = tuple[tuple[int, ...], ...]


def _freeze(rows: Iterable[Iterable[int]]) -> Matrix:
    return tuple(tuple(int(x) for x in row) for row in rows)


@dataclass(frozen=True)
class ExchangeMatrix:
    """Skew-symmetric matrix with ``b[i][j] = #(i -> j) - #(j -> i)``."""

    entries: Matrix

    def __post_init__(self):
        rows = _freeze(self.entries)
        object.__setattr__(self, "entries", rows)
        n = len(rows)
        for i, row in enumerate(rows):
            if len(row) != n:
                raise ValueError(f"row {i} has length {len(row)}, expected {n}")
            for j in range(i, n):
                if row[j] != -rows[j][i]:
                    raise ValueError(f"not skew-symmetric at ({i}, {j})")

    @classmethod
    def from_arrows(cls, n: int, arrows: Iterable[Sequence[int]]) -> "ExchangeMatrix":
        """Build from ``(source, target, multiplicity)`` triples; 2-cycles cancel."""
        b = [[0] * n for _ in range(n)]
        for i, j, w in arrows:
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"arrow ({i}, {j}) out of range for n={n}")
            if i == j:
                raise ValueError(f"loop at vertex {i}")
            b[i][j] += w
            b[j][i] -= w
        return cls(_freeze(b))

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def arrows(self) -> list[tuple[int, int, int]]:
        return [
            (i, j, w)
            for i, row in enumerate(self.entries)
            for j, w in enumerate(row)
            if w > 0
        ]

    def max_weight(self) -> int:
        return max((abs(x) for row in self.entries for x in row), default=0)

    def opposite(self) -> "ExchangeMatrix":
        return ExchangeMatrix(tuple(tuple(-x for x in row) for row in self.entries))

    def permuted(self, perm: Sequence[int]) -> "ExchangeMatrix":
        """Matrix whose vertex ``s`` is the old vertex ``perm[s]``."""
        e = self.entries
        return ExchangeMatrix(tuple(tuple(e[p][q] for q in perm) for p in perm))

    def mutate(self, k: int) -> "ExchangeMatrix":
        return mutate_quiver(self, k)

    def to_list(self) -> list[list[int]]:
        return [list(row) for row in self.entries]


def mutate_matrix(b: Sequence[Sequence[int]], k: int) -> Matrix:
    """Fomin-Zelevinsky mutation of a (possibly rectangular, extended) matrix.

    Rows may outnumber columns (frozen rows); ``k`` indexes a column.
    """
    ncols = len(b[0]) if b else 0
    if not 0 <= k < ncols:
        raise IndexError(f"mutation index {k} out of range 0..{ncols - 1}")
    rowk = b[k]
    out = []
    for i, row in enumerate(b):
        if i == k:
            out.append(tuple(-x for x in row))
            continue
        bik = row[k]
        new = []
        for j, bij in enumerate(row):
            if j == k:
                new.append(-bij)
            elif bik > 0 and rowk[j] > 0:
                new.append(bij + bik * rowk[j])
            elif bik < 0 and rowk[j] < 0:
                new.append(bij - bik * rowk[j])
            else:
                new.append(bij)
        out.append(tuple(new))
    return tuple(out)


def mutate_quiver(B: ExchangeMatrix, k: int) -> ExchangeMatrix:
    if not 0 <= k < B.n:
        raise IndexError(f"mutation index {k} out of range 0..{B.n - 1}")
    return ExchangeMatrix(mutate_matrix(B.entries, k))


# --- canonical forms --------------------------------------------------------


def _refined_colors(e: Matrix) -> list[int]:
    """Isomorphism-invariant vertex colors by iterated neighbourhood refinement."""
    n = len(e)
    colors = [0] * n
    sigs = [tuple(sorted(x for x in row if x)) for row in e]
    ncolors = 0
    while True:
        palette = {s: c for c, s in enumerate(sorted(set(sigs)))}
        new = [palette[s] for s in sigs]
        if len(palette) == ncolors:
            return new
        colors, ncolors = new, len(palette)
        sigs = [
            (colors[v], tuple(sorted((e[v][u], colors[u]) for u in range(n) if e[v][u])))
            for v in range(n)
        ]


def canonical_labeling(B: ExchangeMatrix) -> tuple[int, ...]:
    """Vertex order realising the canonical form of ``B``.

    Vertices are first sorted by refined color; within that constraint the
    order minimising the row-by-row lower triangle is found by a breadth-first
    beam that keeps every tied partial order, so the result is exact.
    """
    e = B.entries
    n = len(e)
    if n == 0:
        return ()
    colors = _refined_colors(e)
    slots = sorted(colors)
    beam: list[tuple[int, ...]] = [(v,) for v in range(n) if colors[v] == slots[0]]
    for t in range(1, n):
        want = slots[t]
        best = None
        nxt: list[tuple[int, ...]] = []
        for seq in beam:
            used = set(seq)
            for v in range(n):
                if v in used or colors[v] != want:
                    continue
                row = e[v]
                chunk = tuple(row[u] for u in seq)
                if best is None or chunk < best:
                    best, nxt = chunk, [seq + (v,)]
                elif chunk == best:
                    nxt.append(seq + (v,))
        beam = nxt
    return beam[0]


def canonical_form(B: ExchangeMatrix) -> ExchangeMatrix:
    """Canonical representative of the isomorphism class of the quiver."""
    return B.permuted(canonical_labeling(B))


# --- mutation classes -------------------------------------------------------


@dataclass
class MutationClassReport:
    finite: str  # "finite" | "infinite" | "budget-exhausted"
    class_size: int | None
    witness: tuple[int, ...] | None
    explored: int
    members: list[ExchangeMatrix] = field(default_factory=list, repr=False)

    def to_dict(self) -> dict:
        return {
            "finite": self.finite,
            "class_size": self.class_size,
            "witness": list(self.witness) if self.witness is not None else None,
            "explored": self.explored,
        }


def mutation_class(B: ExchangeMatrix, max_nodes: int = 100_000) -> MutationClassReport:
    """Breadth-first search of the mutation class up to isomorphism.

    For ``n >= 3`` an edge of weight at least 3 proves mutation-infiniteness,
    so the search stops there with the mutation sequence that reached it.
    """
    if max_nodes < 1:
        raise ValueError("max_nodes must be >= 1")
    n = B.n
    heavy = n >= 3

    start = canonical_form(B)
    if heavy and B.max_weight() >= 3:
        return MutationClassReport("infinite", None, (), 1)
    # canonical key -> (concrete matrix in the original labelling, trail)
    seen: dict[Matrix, tuple[int, ...]] = {start.entries: ()}
    order = [start]
    queue = deque([(B, ())])
    while queue:
        mat, trail = queue.popleft()
        for k in range(n):
            child = mutate_quiver(mat, k)
            key = canonical_form(child)
            if key.entries in seen:
                continue
            ctrail = trail + (k,)
            if heavy and child.max_weight() >= 3:
                return MutationClassReport("infinite", None, ctrail, len(seen) + 1)
            if len(seen) >= max_nodes:
                return MutationClassReport("budget-exhausted", None, None, len(seen))
            seen[key.entries] = ctrail
            order.append(key)
            queue.append((child, ctrail))
    return MutationClassReport("finite", len(seen), None, len(seen), members=order)


def naive_mutation_class_size(B: ExchangeMatrix, max_labeled: int = 200_000) -> int:
    """Class size by exhausting *labelled* matrices, then counting orbits.

    No canonical forms are used: labelled matrices are collected by plain
    mutation closure and grouped by trying every vertex permutation.
    Only practical for small classes.
    """
    from itertools import permutations

    seen = {B.entries}
    stack = [B.entries]
    while stack:
        m = stack.pop()
        for k in range(B.n):
            c = mutate_matrix(m, k)
            if c not in seen:
                seen.add(c)
                stack.append(c)
                if len(seen) > max_labeled:
                    raise RuntimeError("labelled class too large")
    perms = list(permutations(range(B.n)))
    remaining = set(seen)
    orbits = 0
    while remaining:
        m = remaining.pop()
        orbits += 1
        for p in perms:
            remaining.discard(tuple(tuple(m[a][b] for b in p) for a in p))
    return orbits


def classify(B: ExchangeMatrix, max_nodes: int = 100_000) -> str:
    """Label: ``kronecker(m)``, ``exceptional(NAME)``, ``mutation-infinite``,
    ``surface-or-unknown`` or ``budget-exhausted``."""
    from .named import EXCEPTIONAL

    if B.n == 2 and B.entries[0][1] != 0:
        return f"kronecker({abs(B.entries[0][1])})"
    report = mutation_class(B, max_nodes)
    if report.finite == "infinite":
        return "mutation-infinite"
    if report.finite == "budget-exhausted":
        return "budget-exhausted"
    keys = {m.entries for m in report.members}
    for name, Q in EXCEPTIONAL.items():
        if Q.n == B.n and canonical_form(Q).entries in keys:
            return f"exceptional({name})"
    return "surface-or-unknown"
