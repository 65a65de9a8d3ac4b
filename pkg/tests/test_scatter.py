import json
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gdense.fan import Fan, SimplicialCone, fan_from_seeds
from gdense.named import A2, MARKOV, kronecker
from gdense.scatter import (
    LieSeries,
    ScatterLattice,
    Wall,
    attach_fan_functions,
    bch_mul,
    bracket,
    complete_rank2,
    dilog_series,
    dynkin_coefficients,
    initial_walls,
    loop_crossings,
    loop_product,
    path_ordered_product,
)
from gdense.seeds import enumerate_seeds

GOLDEN = Path(__file__).parent / "golden"

A2F = ScatterLattice(((0, 1), (-1, 0)))
K2F = ScatterLattice(((0, 2), (-2, 0)))
M3F = ScatterLattice(((0, 2, -2), (-2, 0, 2), (2, -2, 0)))


def mono(L, k, d, c=1):
    return LieSeries.monomial(L, k, d, c)


@st.composite
def series(draw, L, k, max_terms=5):
    degs = [d for d in _degrees(L.n, k)]
    picked = draw(st.lists(st.sampled_from(degs), max_size=max_terms, unique=True))
    coeffs = {
        d: Fraction(draw(st.integers(-4, 4)), draw(st.integers(1, 3))) for d in picked
    }
    return LieSeries(L, k, coeffs)


def _degrees(n, k):
    out = []

    def rec(prefix, left):
        if len(prefix) == n:
            if any(prefix):
                out.append(tuple(prefix))
            return
        for x in range(left + 1):
            rec(prefix + [x], left - x)

    rec([], k)
    return out


# --- brackets ---------------------------------------------------------------------------


def test_bracket_rule_a2():
    assert bracket(mono(A2F, 3, (1, 0)), mono(A2F, 3, (0, 1))) == mono(A2F, 3, (1, 1))


def test_bracket_rule_k2():
    assert bracket(mono(K2F, 3, (1, 0)), mono(K2F, 3, (0, 1))) == mono(K2F, 3, (1, 1), 2)


def test_bracket_truncates():
    assert bracket(mono(A2F, 1, (1, 0)), mono(A2F, 1, (0, 1))).is_zero()


def test_form_from_quiver():
    # {e_i, e_j} counts arrows j -> i minus arrows i -> j
    assert ScatterLattice.from_quiver(A2).form == ((0, -1), (1, 0))
    L = ScatterLattice.from_quiver(MARKOV)
    assert L.form[1][0] == MARKOV.entries[0][1] == 2


def test_form_must_be_skew():
    with pytest.raises(ValueError):
        ScatterLattice(((0, 1), (1, 0)))


def test_series_rejects_non_positive_degrees():
    with pytest.raises(ValueError):
        LieSeries(A2F, 3, {(1, -1): 1})


def test_p_star_and_delta():
    assert A2F.p_star((1, 1)) == (-1, 1)
    assert A2F.p_star((1, 0)) == (0, 1)
    # p*(d) vanishes on d
    assert sum(a * b for a, b in zip(A2F.p_star((2, 5)), (2, 5))) == 0


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_jacobi_identity(data):
    k = 6
    a, b, c = (data.draw(series(M3F, k)) for _ in range(3))
    jac = bracket(a, bracket(b, c)) + bracket(b, bracket(c, a)) + bracket(c, bracket(a, b))
    assert jac.is_zero()


# --- BCH ----------------------------------------------------------------------------------


def test_bch_low_order():
    x, y = mono(A2F, 2, (1, 0)), mono(A2F, 2, (0, 1))
    assert bch_mul(x, y) == LieSeries(A2F, 2, {(1, 0): 1, (0, 1): 1, (1, 1): Fraction(1, 2)})


def test_dynkin_coefficients_known_terms():
    c = dynkin_coefficients(3)
    assert c["X"] == c["Y"] == 1
    # words XY and YX both give multiples of [X, Y]: 1/2 in total
    assert c["XY"] - c["YX"] == Fraction(1, 2)
    # third order: 1/12 [X,[X,Y]] - 1/12 [Y,[X,Y]]
    assert c["XXY"] - c["XYX"] == Fraction(1, 12)
    assert c["YYX"] - c["YXY"] == Fraction(1, 12)


def _derivation_matrix(a: LieSeries, K: int):
    """Action of ``a`` on functions of degree <= K by ``x^m -> {d, m} x^(d+m)``."""
    L = a.lattice
    basis = [(0,) * L.n] + _degrees(L.n, K)
    index = {m: i for i, m in enumerate(basis)}
    M = [[Fraction(0)] * len(basis) for _ in basis]
    for d, c in a.coeffs.items():
        for m in basis:
            t = tuple(x + y for x, y in zip(d, m))
            if t in index:
                M[index[t]][index[m]] += c * L.pair(d, m)
    return basis, M


def _mat_mul(A, B):
    return [[sum(A[i][t] * B[t][j] for t in range(len(B))) for j in range(len(B[0]))] for i in range(len(A))]


def _mat_exp(M):
    n = len(M)
    out = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    term = [row[:] for row in out]
    for j in range(1, n + 1):
        term = [[x / j for x in row] for row in _mat_mul(term, M)]
        if not any(any(row) for row in term):
            break
        out = [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(out, term)]
    return out


@settings(max_examples=20, deadline=None)
@given(st.data())
def test_bch_against_derivation_representation(data):
    # exp(D_a) exp(D_b) = exp(D_{bch(a, b)}) on the degree-raising part up to k
    k = 4
    L = A2F
    a, b = data.draw(series(L, k, 3)), data.draw(series(L, k, 3))
    z = bch_mul(a, b, k)
    K = k + 1
    basis, Da = _derivation_matrix(a, K)
    _, Db = _derivation_matrix(b, K)
    _, Dz = _derivation_matrix(z, K)
    lhs = _mat_mul(_mat_exp(Da), _mat_exp(Db))
    rhs = _mat_exp(Dz)
    deg = [sum(m) for m in basis]
    for i in range(len(basis)):
        for j in range(len(basis)):
            if deg[i] - deg[j] <= k:
                assert lhs[i][j] == rhs[i][j]


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_bch_associative_and_inverse(data):
    k = data.draw(st.integers(1, 6))
    L = data.draw(st.sampled_from([A2F, K2F, M3F]))
    a, b, c = (data.draw(series(L, k, 4)) for _ in range(3))
    assert bch_mul(bch_mul(a, b, k), c, k) == bch_mul(a, bch_mul(b, c, k), k)
    assert bch_mul(a, -a, k).is_zero()
    assert bch_mul(-a, a, k).is_zero()
    assert bch_mul(a, LieSeries(L, k), k) == a.truncate(k)


# --- walls and completion -----------------------------------------------------------------


def test_dilog_series():
    s = dilog_series(A2F, (1, 1), 6)
    assert s.coeffs == {(1, 1): 1, (2, 2): Fraction(-1, 4), (3, 3): Fraction(1, 9)}


def test_initial_walls_cover_hyperplanes():
    ws = initial_walls(M3F, 2)
    assert [w.d0 for w in ws] == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    assert all(sum(r[i] for r in w.support_rays) == 0 for i, w in enumerate(ws))


def test_wall_function_must_be_parallel():
    with pytest.raises(ValueError):
        Wall((1, 0), [(0, 1)], mono(A2F, 2, (1, 1)))


def test_loop_crossings_signs():
    ws = initial_walls(A2F, 2)
    # leaving the positive chamber across the m2 > 0 axis first
    assert loop_crossings(ws) == [(0, 1), (1, 1), (0, -1), (1, -1)]


def test_initial_loop_is_not_consistent():
    ws = initial_walls(A2F, 2)
    lp = loop_product(ws, 2)
    assert lp.truncate(1).is_zero()
    assert set(lp.coeffs) == {(1, 1)}


def test_a2_pentagon():
    walls = complete_rank2(A2F, 8)
    assert len(walls) == 3
    new = walls[2]
    assert new.d0 == (1, 1)
    assert new.support_rays == [(-1, 1)]
    assert new.log_fn == dilog_series(A2F, (1, 1), 8)
    assert loop_product(walls, 8).is_zero()


def test_a2_inserted_ray_is_fan_ray():
    walls = complete_rank2(A2F, 6)
    inserted = {r for w in walls[2:] for r in w.support_rays}
    # the form {e1, e2} = 1 is the exchange matrix of A2 with b12 = 1
    fan_rays = set(fan_from_seeds(enumerate_seeds(A2, 10)).rays())
    initial = {(1, 0), (0, 1), (-1, 0), (0, -1)}
    assert inserted == fan_rays - initial


def test_k2_completion_consistent():
    walls = complete_rank2(K2F, 6)
    assert loop_product(walls, 6).is_zero()
    central = [w for w in walls if w.d0 == (1, 1)]
    assert len(central) == 1


def test_k2_completion_golden():
    walls = complete_rank2(K2F, 6)
    got = [w.to_dict() for w in walls]
    want = json.loads((GOLDEN / "scatter_k2_order6.json").read_text())
    assert got == want


def test_completion_needs_rank_two():
    with pytest.raises(ValueError):
        complete_rank2(M3F, 2)


def test_path_ordered_product_order():
    a, b = mono(A2F, 2, (1, 0)), mono(A2F, 2, (0, 1))
    wa, wb = Wall((1, 0), [(0, 1)], a), Wall((0, 1), [(1, 0)], b)
    # the later crossing multiplies on the left
    assert path_ordered_product([wa, wb], [(0, 1), (1, 1)], 2) == bch_mul(b, a, 2)


def test_path_ordered_product_rejects_bad_sign():
    with pytest.raises(ValueError):
        path_ordered_product(initial_walls(A2F, 1), [(0, 2)], 1)


# --- attaching to fans ------------------------------------------------------------------


def test_attach_a2_fan():
    F = fan_from_seeds(enumerate_seeds(A2, 10))
    walls = attach_fan_functions(F, A2F, 4)
    assert len(walls) == 5
    w = next(w for w in walls if w.support_rays == [(0, 1)])
    assert w.d0 == (1, 0)
    assert w.log_fn == dilog_series(A2F, (1, 0), 4)


@pytest.mark.parametrize("d", [1, 3, 5])
def test_attach_k2_fan_counts(d):
    F = fan_from_seeds(enumerate_seeds(kronecker(2), d))
    walls = attach_fan_functions(F, K2F, 2)
    interior = [f for f, cones in F.facet_map().items() if len(cones) == 2]
    assert len(interior) == 2 * d
    assert len(walls) == 2 * d + 2


def test_attach_orthant():
    F = Fan([SimplicialCone.from_vectors([(1, 0), (0, 1)])], 2)
    walls = attach_fan_functions(F, A2F, 2)
    assert sorted(w.d0 for w in walls) == [(0, 1), (1, 0)]


def test_attach_skips_mixed_normals(caplog):
    F = Fan([SimplicialCone.from_vectors([(1, 1), (-1, 1)])], 2)
    walls = attach_fan_functions(F, A2F, 2)
    assert [w.support_rays for w in walls] == [[(-1, 1)]]
    assert "outside N+" in caplog.text


def test_attach_markov_fan():
    F = fan_from_seeds(enumerate_seeds(MARKOV, 2))
    walls = attach_fan_functions(F, ScatterLattice.from_quiver(MARKOV), 2)
    assert len(walls) == len(F.facet_map())


def test_wall_json_roundtrip():
    walls = complete_rank2(A2F, 4)
    for w in walls:
        d = json.loads(json.dumps(w.to_dict()))
        assert Wall.from_dict(A2F, 4, d).to_dict() == w.to_dict()
