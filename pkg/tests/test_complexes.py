import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gdense.algebra import PathAlgebra, kronecker_algebra
from gdense.complexes import (
    TwoTermComplex,
    chain_maps,
    complex_from_blocks,
    cylinder,
    cylinder_power,
    hom_complexes,
    is_presilting,
    projective,
    random_complex,
    regular,
)
from gdense.fields import GF, QQ

K = kronecker_algebra(2)


def band(lam, alg=K):
    return complex_from_blocks(alg, ["1"], ["2"], {(0, 0): {"a": 1, "b": lam}})


def rigid_12():
    return complex_from_blocks(K, ["1"], ["2", "2"], {(0, 0): {"a": 1}, (1, 0): {"b": 1}})


def test_band_self_extension_is_one_dimensional():
    H = band(3)
    hs = hom_complexes(H, H, 1)
    assert hs.quotient_dim == 1
    # chain maps P1 -> P2 are span{a, b}; homotopies give span{a + 3b}
    assert hs.ambient_dim == 2


def test_distinct_bands_are_ext_orthogonal():
    assert hom_complexes(band(2), band(5), 1).quotient_dim == 0
    assert hom_complexes(band(0), band(1), 1).quotient_dim == 0


def test_band_endomorphisms():
    assert hom_complexes(band(4), band(4), 0).quotient_dim == 1


def test_projective_end():
    P1 = projective(K, "1")
    assert hom_complexes(P1, P1, 0).quotient_dim == 1
    P2 = projective(K, "2")
    assert hom_complexes(P1, P2, 0).quotient_dim == 2
    assert hom_complexes(P2, P1, 0).quotient_dim == 0


def test_hom_p2_to_shift_p1_vanishes():
    assert hom_complexes(projective(K, "2"), projective(K, "1", shifted=True), 1).quotient_dim == 0


def test_g_vectors():
    assert band(1).g_vector() == (-1, 1)
    assert regular(K).g_vector() == (1, 1)
    assert regular(K, shifted=True).g_vector() == (-1, -1)
    assert rigid_12().g_vector() == (-1, 2)


def test_presilting_examples():
    assert is_presilting(projective(K, "1"))
    assert not is_presilting(band(0))
    assert is_presilting(rigid_12())


def test_chain_maps_commute():
    X = rigid_12()
    for u_minus, u_plus in chain_maps(X, X):
        assert u_plus @ X.f == X.f @ u_minus


def test_random_complex_shapes():
    X = random_complex(K, (1, 0), rng=3)
    assert X.m_minus == (0, 0) and X.m_plus == (1, 0)
    X = random_complex(K, (-1, 1), rng=3)
    assert X.m_minus == (1, 0) and X.m_plus == (0, 1)
    assert random_complex(K, (0, 0)).is_zero()


def test_random_complex_reproducible():
    a = random_complex(K, (-2, 3), rng=11).to_dict()
    b = random_complex(K, (-2, 3), rng=11).to_dict()
    assert a == b
    assert random_complex(K, (-2, 3), rng=12).to_dict() != a


def test_complex_json_roundtrip():
    X = random_complex(K, (-2, 3), rng=1)
    Y = TwoTermComplex.from_dict(K, X.to_dict())
    assert Y.f == X.f


def test_cylinder_of_shifted_regular_by_band():
    U, H = regular(K, shifted=True), band(7)
    assert hom_complexes(U, H, 1).quotient_dim == 2
    C = cylinder(U, H)
    assert C.g_vector() == (-3, 1)
    assert is_presilting(C)


def test_cylinder_degenerate_returns_u():
    U = projective(K, "2")
    H = band(1)
    assert hom_complexes(U, H, 1).quotient_dim == 0
    assert cylinder(U, H).g_vector() == U.g_vector()


@pytest.mark.parametrize("m", [1, 2, 5])
def test_cylinder_power_law(m):
    U, H = regular(K, shifted=True), band(2)
    C = cylinder_power(U, H, m)
    assert C.g_vector() == (-1 - 2 * m, 2 * m - 1)
    assert is_presilting(C)


def test_cylinder_commutation_on_g_vectors():
    U = regular(K, shifted=True)
    H1, H2 = band(1), band(4)
    a = cylinder(cylinder(U, H1), H2)
    b = cylinder(cylinder(U, H2), H1)
    assert a.g_vector() == b.g_vector()


def test_cylinder_unminimized_same_class():
    U, H = regular(K, shifted=True), band(3)
    assert cylinder(U, H, minimal=False).g_vector() == cylinder(U, H).g_vector()


def test_approach_limit_ray():
    # closed form of the cylinder law at m = 100
    m = 100
    x, y = -1 - 2 * m, 2 * m - 1
    r = math.hypot(x, y)
    assert math.hypot(x / r + 1 / math.sqrt(2), y / r - 1 / math.sqrt(2)) < 1e-2


@settings(max_examples=15, deadline=None)
@given(st.integers(-3, 3), st.integers(1, 3), st.integers(0, 2**16))
def test_hom_dims_independent_of_arrow_order(g1, g2, seed):
    # same complexes over the algebra with its arrows listed the other way round
    K2 = PathAlgebra(["1", "2"], [("b", "1", "2"), ("a", "1", "2")], [], 2)
    g = (g1, g2)
    X = random_complex(K, g, coeff_range=5, rng=seed)
    d = X.to_dict()
    # translate block coefficients: entries follow the basis order of each algebra
    blocks = {}
    for r, row in enumerate(d["blocks"]):
        for c, vec in enumerate(row):
            names = K.basis_names(X.minus[c], X.plus[r])
            blocks[(r, c)] = {(n if n else ()): v for n, v in zip(names, vec)}
    Y = complex_from_blocks(K2, d["minus"], d["plus"], blocks)
    for shift in (0, 1):
        assert hom_complexes(X, X, shift).quotient_dim == hom_complexes(Y, Y, shift).quotient_dim


def test_hom_over_prime_field_matches_rationals():
    X = random_complex(K, (-2, 3), rng=5)
    Y = random_complex(K, (-1, 2), rng=6)
    Fp = GF(10007)
    for shift in (0, 1):
        q = hom_complexes(X, Y, shift).quotient_dim
        p = hom_complexes(X.change_field(Fp), Y.change_field(Fp), shift).quotient_dim
        assert p == q


def test_algebra_mismatch():
    A = kronecker_algebra(3)
    with pytest.raises(ValueError):
        hom_complexes(projective(K, "1"), projective(A, "1"), 0)
