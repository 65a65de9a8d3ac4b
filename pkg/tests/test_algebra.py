from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gdense.algebra import (
    PathAlgebra,
    PresentationError,
    a2_algebra,
    dual_numbers,
    kronecker_algebra,
)
from gdense.fields import GF, QQ, ExtensionField, PrimeField, field_from_name


def test_kronecker_dimensions():
    K = kronecker_algebra(2)
    assert K.dim(0, 1) == 2
    assert K.dim(0, 0) == K.dim(1, 1) == 1
    assert K.dim(1, 0) == 0
    assert K.total_dim == 4


def test_small_algebras():
    assert a2_algebra().total_dim == 3
    assert dual_numbers().total_dim == 2


def test_nilpotency_violation_names_a_path():
    with pytest.raises(PresentationError, match="x"):
        PathAlgebra(["1"], [("x", "1", "1")], [], 2)


def test_relation_kills_path():
    # A3 linear with ba = 0: paths e1 e2 e3 a b (ba vanishes)
    A = PathAlgebra(["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3")], [[(1, ("b", "a"))]], 2)
    assert A.total_dim == 5
    assert A.dim(0, 2) == 0


def test_commutativity_relation():
    # square 1 -> 2 -> 4, 1 -> 3 -> 4 with ca = db
    A = PathAlgebra(
        ["1", "2", "3", "4"],
        [("a", "1", "2"), ("b", "1", "3"), ("c", "2", "4"), ("d", "3", "4")],
        [[(1, ("c", "a")), (-1, ("d", "b"))]],
        3,
    )
    assert A.dim(0, 3) == 1
    assert A.total_dim == 9


def test_relation_with_mismatched_endpoints_rejected():
    with pytest.raises(PresentationError):
        PathAlgebra(["1", "2"], [("a", "1", "2"), ("b", "1", "2")], [[(1, ("a",)), (1, ("b",))]], 2)


def test_algebra_json_roundtrip():
    K = kronecker_algebra(3)
    L = PathAlgebra.from_dict(K.to_dict())
    assert L.total_dim == K.total_dim == 5


def test_malformed_description():
    with pytest.raises(PresentationError):
        PathAlgebra.from_dict({"vertices": ["1"]})


def test_multiplication_right_to_left():
    A = PathAlgebra(["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3")], [], 3)
    ea = A.element(0, 1, {"a": 1}, QQ)
    eb = A.element(1, 2, {"b": 1}, QQ)
    prod = A.mult(QQ, 0, 1, 2, ea, eb)
    assert list(prod) == list(A.element(0, 2, {("b", "a"): 1}, QQ))


# --- fields -------------------------------------------------------------------------


def test_prime_field_arithmetic():
    F = GF(7)
    assert F(3) * F(5) == F(1)
    assert F(Fraction(1, 3)) * F(3) == F.one
    with pytest.raises(ZeroDivisionError):
        F(Fraction(1, 7))


def test_field_names_roundtrip():
    for F in (QQ, PrimeField(11), ExtensionField(5, 2)):
        assert field_from_name(F.name) == F


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3), min_size=3, max_size=3))
def test_rank_nullspace_agree(rows):
    for F in (QQ, GF(101)):
        M = [[F(x) for x in r] for r in rows]
        ns = F.nullspace(M, 3)
        assert F.rank(M, 3) + len(ns) == 3
        for v in ns:
            assert all(sum((a * b for a, b in zip(r, v)), F.zero) == 0 for r in M)


def test_inverse_and_singular():
    M = [[QQ(2), QQ(1)], [QQ(1), QQ(1)]]
    inv = QQ.inverse(M)
    assert QQ.matmul(M, inv) == [[QQ(1), QQ(0)], [QQ(0), QQ(1)]]
    with pytest.raises(ValueError):
        QQ.inverse([[QQ(1), QQ(2)], [QQ(2), QQ(4)]])


def test_extension_field_charpoly():
    F = ExtensionField(5, 2)
    a = F.from_coefficients([0, 1])
    M = [[a, F.one], [F.zero, a]]
    cp = F.charpoly(M)
    t = F.poly_ctx([F.zero, F.one])
    assert cp == (t - F.poly_ctx([a])) ** 2
