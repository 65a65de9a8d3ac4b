"""g-vector seeds with principal coefficients and their enumeration."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .quiver import ExchangeMatrix, Matrix, mutate_matrix


def _pos(z: int) -> int:
    return z if z > 0 else 0


@dataclass(frozen=True)
class GSeed:
    """Extended exchange matrix ``[B; C]`` and G-matrix (columns are g-vectors)."""

    btilde: Matrix
    gmat: Matrix
    trail: tuple[int, ...] = ()
    b0: Matrix = ()

    @property
    def n(self) -> int:
        return len(self.gmat)

    @property
    def b(self) -> Matrix:
        return self.btilde[: self.n]

    def g_vector(self, k: int) -> tuple[int, ...]:
        return tuple(row[k] for row in self.gmat)

    def g_vectors(self) -> list[tuple[int, ...]]:
        return [self.g_vector(k) for k in range(self.n)]

    def key(self) -> frozenset:
        """Labelling-independent identity of the seed.

        Each cluster variable is paired with its exchange column, re-indexed
        by the g-vectors of the other variables so that vertex order is
        irrelevant.
        """
        gs = self.g_vectors()
        b = self.b
        return frozenset(
            (gs[k], tuple(sorted((gs[i], b[i][k]) for i in range(self.n) if b[i][k])))
            for k in range(self.n)
        )

    def to_dict(self) -> dict:
        return {
            "g_columns": [list(g) for g in self.g_vectors()],
            "b_mutable": [list(r) for r in self.b],
            "c_matrix": [list(r) for r in c_matrix(self)],
            "trail": list(self.trail),
        }

    @classmethod
    def from_dict(cls, d: dict, b0: Matrix) -> "GSeed":
        cols = d["g_columns"]
        n = len(cols)
        gmat = tuple(tuple(int(cols[k][i]) for k in range(n)) for i in range(n))
        btilde = tuple(tuple(int(x) for x in r) for r in list(d["b_mutable"]) + list(d["c_matrix"]))
        return cls(btilde, gmat, tuple(d["trail"]), tuple(tuple(r) for r in b0))


def initial_seed(B: ExchangeMatrix) -> GSeed:
    n = B.n
    eye = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    return GSeed(B.entries + eye, eye, (), B.entries)


def c_matrix(s: GSeed) -> Matrix:
    return s.btilde[s.n :]


def mutate_seed(s: GSeed, k: int) -> GSeed:
    """Mutate the seed at ``k``.

    The new g-vector is ``-g_k + sum_i [b_ik]_+ g_i - sum_j [c_jk]_+ b0_{.j}``
    where ``c_jk`` is the frozen-row entry (arrows from the principal copy of
    ``j`` to ``k``) and ``b0_{.j}`` is the j-th column of the *initial*
    exchange matrix. Reading the last column off the current matrix instead
    already goes wrong for A2 at depth 2.
    """
    n = s.n
    if not 0 <= k < n:
        raise IndexError(f"mutation index {k} out of range 0..{n - 1}")
    b = s.btilde
    b0 = s.b0
    g = s.gmat
    newg = [-g[r][k] for r in range(n)]
    for i in range(n):
        w = _pos(b[i][k])
        if w:
            for r in range(n):
                newg[r] += w * g[r][i]
    for j in range(n):
        w = _pos(b[n + j][k])
        if w:
            for r in range(n):
                newg[r] -= w * b0[r][j]
    gmat = tuple(
        tuple(newg[r] if c == k else g[r][c] for c in range(n)) for r in range(n)
    )
    return GSeed(mutate_matrix(b, k), gmat, s.trail + (k,), b0)


def mutate_seed_sign_coherent(s: GSeed, k: int) -> GSeed:
    """Same mutation through the c-vector sign recurrence.

    ``g'_k = -g_k + sum_i [-eps * b_ik]_+ g_i`` with ``eps`` the common sign
    of the k-th c-vector. Used as an independent check of :func:`mutate_seed`.
    """
    n = s.n
    ck = [s.btilde[n + j][k] for j in range(n)]
    if any(x > 0 for x in ck) and any(x < 0 for x in ck):
        raise ValueError(f"c-vector {ck} is not sign-coherent")
    eps = 1 if any(x > 0 for x in ck) else -1
    g = s.gmat
    newg = [-g[r][k] for r in range(n)]
    for i in range(n):
        w = _pos(-eps * s.btilde[i][k])
        if w:
            for r in range(n):
                newg[r] += w * g[r][i]
    gmat = tuple(
        tuple(newg[r] if c == k else g[r][c] for c in range(n)) for r in range(n)
    )
    return GSeed(mutate_matrix(s.btilde, k), gmat, s.trail + (k,), s.b0)


def is_sign_coherent(s: GSeed) -> bool:
    c = c_matrix(s)
    for k in range(s.n):
        col = [row[k] for row in c]
        if any(x > 0 for x in col) and any(x < 0 for x in col):
            return False
    return True


@dataclass
class SeedSet:
    seeds: list[GSeed]
    depth: int
    complete: bool
    truncated: bool = False
    n: int = field(default=0)

    def __len__(self) -> int:
        return len(self.seeds)

    def to_dict(self) -> dict:
        return {
            "depth": self.depth,
            "complete": self.complete,
            "truncated": self.truncated,
            "seeds": [s.to_dict() for s in self.seeds],
        }

    @classmethod
    def from_dict(cls, d: dict, B: ExchangeMatrix) -> "SeedSet":
        seeds = [GSeed.from_dict(x, B.entries) for x in d["seeds"]]
        return cls(seeds, d["depth"], d["complete"], d.get("truncated", False), B.n)


def enumerate_seeds(
    B: ExchangeMatrix, depth: int, max_seeds: int | None = None
) -> SeedSet:
    """Breadth-first seeds within ``depth`` mutations of the initial seed.

    ``complete`` is set when no seed beyond the radius exists, i.e. the whole
    exchange graph has been found. Hitting ``max_seeds`` sets ``truncated``.
    """
    if depth < 0:
        raise ValueError("depth must be >= 0")
    s0 = initial_seed(B)
    seen = {s0.key()}
    seeds = [s0]
    frontier = deque([(s0, 0)])
    complete = True
    truncated = False
    while frontier:
        s, d = frontier.popleft()
        for k in range(B.n):
            if s.trail and s.trail[-1] == k:
                continue
            child = mutate_seed(s, k)
            key = child.key()
            if key in seen:
                continue
            if d == depth:
                complete = False
                continue
            if max_seeds is not None and len(seeds) >= max_seeds:
                truncated = True
                complete = False
                frontier.clear()
                break
            seen.add(key)
            seeds.append(child)
            frontier.append((child, d + 1))
    return SeedSet(seeds, depth, complete, truncated, B.n)


def seed_cone(s: GSeed):
    from .fan import SimplicialCone

    return SimplicialCone.from_vectors(s.g_vectors())
