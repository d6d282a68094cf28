import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from htacert.intmat import (
    IntMatrix,
    adjugate,
    char_poly,
    companion,
    det,
    inverse,
    is_unimodular,
    mat_pow,
    q_det,
    q_inverse,
    q_matmul,
    smith_normal_form,
    to_int_matrix,
)
from htacert.polyalg import IntPoly

from oracles import cofactor_det, determinantal_divisors


def square_matrices(max_n=4, bound=9):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(
            st.lists(st.integers(-bound, bound), min_size=n, max_size=n), min_size=n, max_size=n
        )
    )


def random_matrix(rng, n, bound):
    return IntMatrix([[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n)])


def check_snf(M: IntMatrix):
    r = smith_normal_form(M)
    assert abs(det(r.U)) == 1 and abs(det(r.V)) == 1
    assert r.U @ M @ r.V == IntMatrix.diag(r.d)
    assert all(x >= 0 for x in r.d)
    for a, b in zip(r.d, r.d[1:]):
        # d_i | d_{i+1}, zeros last
        assert (b % a == 0) if a else b == 0
    return r


# --- parsing and construction --------------------------------------------------

def test_parse_inline_and_file_forms():
    A = IntMatrix.parse("0 1; 1 5")
    assert A.rows == ((0, 1), (1, 5))
    B = IntMatrix.parse("# comment\n2\n0 1\n1 5\n")
    assert A == B
    assert str(A) == "0 1; 1 5"
    assert IntMatrix.parse(A.to_text()) == A


@pytest.mark.parametrize("text", ["1 2; 3", "", "a b; c d", "1 2; 3 4; 5 6"])
def test_parse_rejects_bad_input(text):
    with pytest.raises(ValueError):
        IntMatrix.parse(text)


def test_dimension_limits():
    with pytest.raises(ValueError):
        IntMatrix([[0] * 9 for _ in range(9)])
    assert IntMatrix.identity(8).n == 8


# --- determinants and characteristic polynomials --------------------------------------

@settings(max_examples=150, deadline=None)
@given(square_matrices(max_n=5, bound=12))
def test_bareiss_matches_cofactor_expansion(rows):
    assert det(IntMatrix(rows)) == cofactor_det(rows)


@settings(max_examples=80, deadline=None)
@given(square_matrices(), square_matrices())
def test_det_multiplicative(a, b):
    if len(a) != len(b):
        return
    A, B = IntMatrix(a), IntMatrix(b)
    assert det(A @ B) == det(A) * det(B)


@settings(max_examples=80, deadline=None)
@given(square_matrices(max_n=5, bound=15))
def test_char_poly_matches_sympy(rows):
    x = sympy.Symbol("x")
    want = sympy.Poly(sympy.Matrix(rows).charpoly(x).as_expr(), x).all_coeffs()
    got = char_poly(IntMatrix(rows))
    assert list(reversed(got.coeffs)) == [int(c) for c in want]


@settings(max_examples=60, deadline=None)
@given(square_matrices(max_n=4, bound=6))
def test_cayley_hamilton(rows):
    A = IntMatrix(rows)
    acc = IntMatrix.zero(A.n)
    for c in reversed(char_poly(A).coeffs):
        acc = acc @ A + IntMatrix.identity(A.n) * c
    assert acc == IntMatrix.zero(A.n)


def test_char_poly_of_companion():
    for s in ["x^2-5x-1", "x^3-x^2-1", "x^4+2x^3-2x+1", "x^4+6x^3+10x^2+3x+1"]:
        p = IntPoly.parse(s)
        assert char_poly(companion(p)) == p


def test_adjugate_identity():
    rng = random.Random(1)
    for _ in range(50):
        A = random_matrix(rng, rng.randint(1, 4), 7)
        assert A @ adjugate(A) == IntMatrix.identity(A.n) * det(A)


def test_inverse_and_negative_powers():
    A = IntMatrix([[2, 5], [5, 12]])
    assert is_unimodular(A)
    assert A @ inverse(A) == IntMatrix.identity(2)
    assert mat_pow(A, -3) @ mat_pow(A, 3) == IntMatrix.identity(2)
    assert mat_pow(A, 0) == IntMatrix.identity(2)
    with pytest.raises(ValueError):
        inverse(IntMatrix([[2, 0], [0, 1]]))


def test_rational_helpers():
    a = [[Fraction(1, 2), 1], [3, Fraction(-2, 3)]]
    inv = q_inverse(a)
    assert q_matmul(a, inv) == ((1, 0), (0, 1))
    assert q_det(a) == Fraction(-1, 3) - 3
    assert to_int_matrix(a) is None
    assert to_int_matrix([[Fraction(4, 2), 0], [0, 1]]) == IntMatrix([[2, 0], [0, 1]])


# --- Smith normal form -------------------------------------------------------------

def test_snf_examples():
    assert smith_normal_form(IntMatrix([[-1, 1], [1, 4]])).d == (1, 5)
    F3 = mat_pow(IntMatrix([[0, 1], [1, 1]]), 3) - IntMatrix.identity(2)
    assert smith_normal_form(F3).d == (2, 2)
    assert smith_normal_form(IntMatrix.zero(3)).d == (0, 0, 0)


def test_snf_random_suite():
    rng = random.Random(20240501)
    for _ in range(500):
        check_snf(random_matrix(rng, rng.randint(1, 5), 20))


def test_snf_matches_determinantal_divisors():
    # d_1 ... d_k = gcd of k x k minors
    rng = random.Random(7)
    for _ in range(40):
        M = random_matrix(rng, rng.randint(1, 4), 9)
        d = smith_normal_form(M).d
        dd = determinantal_divisors([list(r) for r in M.rows])
        prod = 1
        for k in range(M.n):
            prod *= d[k]
            assert prod == dd[k]


def test_snf_singular_and_rank_deficient():
    M = IntMatrix([[2, 4, 6], [1, 2, 3], [0, 0, 0]])
    r = check_snf(M)
    assert r.d == (1, 0, 0)
