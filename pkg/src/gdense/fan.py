"""Exact simplicial cones and fans, fan validity, coverage and half-spaces."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import exact
from .sampling import default_sampler, directions

Ray = tuple[int, ...]

# Common denominator for rational approximations of sampled directions.
SAMPLE_DENOMINATOR = 10**6


def normalize_ray(v: Sequence[int]) -> Ray:
    """Divide an integer vector by the gcd of its entries."""
    if not any(v):
        raise ValueError("cannot normalize the zero vector")
    return exact.primitive(v)


@dataclass(frozen=True)
class SimplicialCone:
    """Cone over linearly independent primitive rays, stored sorted."""

    rays: tuple[Ray, ...]

    def __post_init__(self):
        rays = tuple(sorted(normalize_ray(r) for r in self.rays))
        if len(set(len(r) for r in rays)) > 1:
            raise ValueError("rays of different dimensions")
        if rays and exact.rank(rays) != len(rays):
            raise ValueError("rays are not linearly independent")
        object.__setattr__(self, "rays", rays)

    @classmethod
    def from_vectors(cls, vectors: Iterable[Sequence[int]]) -> "SimplicialCone":
        return cls(tuple(tuple(int(x) for x in v) for v in vectors))

    @property
    def dim(self) -> int:
        return len(self.rays)

    @property
    def ambient_dim(self) -> int:
        return len(self.rays[0]) if self.rays else 0

    @cached_property
    def inequalities(self) -> np.ndarray:
        """Primitive integer rows ``a_i`` with ``cone = {p : a_i . p >= 0}``.

        Only defined for full-dimensional cones (rows of the inverse ray matrix).
        """
        if self.dim != self.ambient_dim:
            raise ValueError("inequalities need a full-dimensional cone")
        cols = [list(r) for r in self.rays]
        ray_mat = [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]
        inv = exact.inverse(ray_mat)
        rows = [exact.primitive(row) for row in inv]
        return np.array(rows, dtype=object)

    def facets(self) -> list[tuple[Ray, ...]]:
        return [tuple(r for r in self.rays if r != skip) for skip in self.rays]

    def to_list(self) -> list[list[int]]:
        return [list(r) for r in self.rays]


def cone_contains(c: SimplicialCone, p: Sequence) -> bool:
    """Exact test whether ``p`` is a nonnegative combination of the rays."""
    if len(p) != c.ambient_dim:
        raise ValueError(f"point has dimension {len(p)}, cone lives in {c.ambient_dim}")
    if not c.rays:
        return not any(p)
    a = [[c.rays[j][i] for j in range(c.dim)] for i in range(c.ambient_dim)]
    lam = exact.solve(a, [Fraction(x) for x in p])
    return lam is not None and all(x >= 0 for x in lam)


@dataclass
class Fan:
    cones: list[SimplicialCone]
    ambient_dim: int

    def __post_init__(self):
        seen = set()
        uniq = []
        for c in self.cones:
            if c.rays not in seen:
                seen.add(c.rays)
                uniq.append(c)
        self.cones = uniq

    def rays(self) -> list[Ray]:
        return sorted({r for c in self.cones for r in c.rays})

    def facet_map(self) -> dict[tuple[Ray, ...], list[int]]:
        """Codimension-one faces of maximal cones -> indices of cones containing them."""
        out: dict[tuple[Ray, ...], list[int]] = {}
        for i, c in enumerate(self.cones):
            for f in c.facets():
                out.setdefault(f, []).append(i)
        return out

    def to_dict(self) -> dict:
        return {
            "ambient_dim": self.ambient_dim,
            "maximal_cones": [c.to_list() for c in self.cones],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Fan":
        return cls(
            [SimplicialCone.from_vectors(c) for c in d["maximal_cones"]],
            int(d["ambient_dim"]),
        )


def fan_from_seeds(S) -> Fan:
    from .seeds import seed_cone

    return Fan([seed_cone(s) for s in S.seeds], S.n)


# --- validity ---------------------------------------------------------------


def cones_meet_properly(c1: SimplicialCone, c2: SimplicialCone) -> bool:
    """Is ``c1 & c2`` a common face of both?

    Holds iff some linear form vanishes on the shared rays, is positive on the
    other rays of ``c1`` and negative on the other rays of ``c2``. Decided
    exactly by Fourier-Motzkin after eliminating the equality constraints.
    """
    shared = set(c1.rays) & set(c2.rays)
    n = c1.ambient_dim
    basis = exact.nullspace([list(s) for s in shared], n) if shared else exact.nullspace([], n)
    if not basis:
        return set(c1.rays) == set(c2.rays) == shared
    rows, rhs = [], []
    for r in c1.rays:
        if r not in shared:
            rows.append([sum(b[i] * r[i] for i in range(n)) for b in basis])
            rhs.append(1)
    for r in c2.rays:
        if r not in shared:
            rows.append([-sum(b[i] * r[i] for i in range(n)) for b in basis])
            rhs.append(1)
    if not rows:
        return True
    return exact.fm_feasible(rows, rhs)


@dataclass
class ValidityReport:
    valid: bool
    pairs_checked: int
    exhaustive: bool
    violation: tuple[int, int] | None = None

    def to_dict(self) -> dict:
        return {
            "valid": self.valid,
            "pairs_checked": self.pairs_checked,
            "exhaustive": self.exhaustive,
            "violation": list(self.violation) if self.violation else None,
        }


def fan_is_valid(F: Fan, max_pairs: int | None = None, seed: int = 0) -> ValidityReport:
    """Check pairwise that maximal cones meet in common faces.

    With ``max_pairs`` set and more pairs available, a seeded sample of pairs
    is checked and the report is marked non-exhaustive.
    """
    pairs = list(itertools.combinations(range(len(F.cones)), 2))
    exhaustive = max_pairs is None or len(pairs) <= max_pairs
    if not exhaustive:
        pairs = sorted(random.Random(seed).sample(pairs, max_pairs))
    for k, (i, j) in enumerate(pairs):
        if not cones_meet_properly(F.cones[i], F.cones[j]):
            return ValidityReport(False, k + 1, exhaustive, (i, j))
    return ValidityReport(True, len(pairs), exhaustive)


# --- coverage ---------------------------------------------------------------


@dataclass
class CoverageReport:
    covered: int
    samples: int
    method: str
    halfspace_normal: tuple[int, ...] | None = None

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.covered, self.samples)

    def to_dict(self) -> dict:
        return {
            "fraction": float(self.fraction),
            "fraction_exact": f"{self.fraction.numerator}/{self.fraction.denominator}",
            "covered": self.covered,
            "samples": self.samples,
            "method": self.method,
            "halfspace_normal": list(self.halfspace_normal)
            if self.halfspace_normal is not None
            else None,
        }


def rational_directions(n: int, samples: int, sampler: str | None = None) -> np.ndarray:
    """Sampled unit directions as integer numerators over ``SAMPLE_DENOMINATOR``."""
    u = directions(n, samples, sampler)
    return np.rint(u * SAMPLE_DENOMINATOR).astype(np.int64)


def covered_mask(F: Fan, points: np.ndarray) -> np.ndarray:
    """Boolean mask of integer points lying in some maximal cone (boundary included)."""
    covered = np.zeros(len(points), dtype=bool)
    if not F.cones:
        return covered
    bound = int(np.abs(points).max()) * F.ambient_dim
    for c in F.cones:
        todo = np.flatnonzero(~covered)
        if todo.size == 0:
            break
        ineq = c.inequalities
        biggest = max(abs(int(x)) for x in ineq.flat)
        if biggest * bound < 2**62:
            vals = points[todo] @ ineq.astype(np.int64).T
        else:
            vals = points[todo].astype(object) @ ineq.T
        inside = np.all(vals >= 0, axis=1)
        covered[todo[inside]] = True
    return covered


def coverage(F: Fan, samples: int, sampler: str | None = None) -> CoverageReport:
    """Fraction of sampled directions lying in the closure of the fan's support."""
    sampler = sampler or default_sampler(F.ambient_dim)
    pts = rational_directions(F.ambient_dim, samples, sampler)
    mask = covered_mask(F, pts)
    return CoverageReport(int(mask.sum()), samples, sampler, halfspace_detect(F))


# --- half-spaces ------------------------------------------------------------


def _vectors_of_l1_norm(n: int, s: int):
    """Integer vectors with L1 norm ``s`` in lexicographic order."""
    if n == 1:
        return [(-s,), (s,)] if s else [(0,)]
    out = []
    for first in range(-s, s + 1):
        for rest in _vectors_of_l1_norm(n - 1, s - abs(first)):
            out.append((first,) + rest)
    return out


def _is_valid_normal(v: Sequence[int], rays: Sequence[Ray]) -> bool:
    return all(sum(a * b for a, b in zip(v, r)) <= 0 for r in rays)


def halfspace_detect(F: Fan, max_norm: int = 4) -> tuple[int, ...] | None:
    """Primitive ``v`` with ``v . r <= 0`` for every ray ``r`` of the fan, if any.

    Tie-break: smallest L1 norm, then lexicographically smallest. Small norms
    are searched exhaustively; otherwise a linear program proposes a normal
    that is accepted only after exact integer verification.
    """
    rays = F.rays()
    if not rays:
        raise ValueError("fan has no rays")
    n = F.ambient_dim
    R = np.array(rays, dtype=object)
    if (2 * max_norm + 1) ** n <= 200_000:
        for s in range(1, max_norm + 1):
            cand = np.array(_vectors_of_l1_norm(n, s), dtype=object)
            ok = np.all((R @ cand.T) <= 0, axis=0)
            hits = [tuple(int(x) for x in cand[i]) for i in np.flatnonzero(ok)]
            hits = [h for h in hits if h == exact.primitive(h)]
            if hits:
                return min(hits)
    return _halfspace_by_lp(rays, n)


def _halfspace_by_lp(rays: Sequence[Ray], n: int) -> tuple[int, ...] | None:
    from scipy.optimize import linprog

    A = np.array(rays, dtype=float)
    for i in range(n):
        for sign in (1.0, -1.0):
            c = np.zeros(n)
            c[i] = -sign
            res = linprog(c, A_ub=A, b_ub=np.zeros(len(rays)), bounds=[(-1, 1)] * n)
            if res.status != 0 or -res.fun < 1e-9:
                continue
            for den in (10, 100, 1000, 10**4, 10**6):
                q = [Fraction(float(x)).limit_denominator(den) for x in res.x]
                if not any(q):
                    continue
                v = exact.primitive(q)
                if _is_valid_normal(v, rays):
                    return v
    return None


# --- rank 2 limit rays --------------------------------------------------------


def inside_kronecker_gap(ray: Sequence[int], m: int) -> bool:
    """Is the ray strictly inside the open cone between the two limit rays of K_m?

    The limit slopes are the roots of ``s^2 + m s + 1``; a second-quadrant
    ray ``(x, y)`` lies strictly between them iff ``x^2 + m x y + y^2 < 0``.
    """
    x, y = ray
    return x < 0 < y and x * x + m * x * y + y * y < 0
