import random
from fractions import Fraction

import gmpy2
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from lefarr.errors import BadPrimeError, DimensionMismatchError, InputError
from lefarr.exactmath import (ExactMatrix, PrimeField, RowSpace, active_field, cross_check, kernel_basis,
                              prime_mode, rank, rational_mode, row_space_dim_sum_and_intersection, rref, scalar)
from lefarr.polyring import HomogeneousForm

P31 = 2147483647  # 2^31 - 1


def small_matrices(max_rows=5, max_cols=5, lo=-4, hi=4):
    return st.integers(1, max_cols).flatmap(
        lambda c: st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c), min_size=0, max_size=max_rows)
        .map(lambda rows: ExactMatrix(rows, c)))


def test_scalar_parsing():
    assert scalar("2") == 2 and type(scalar("2")) is int
    assert scalar("-3/7") == Fraction(-3, 7)
    assert scalar("−3/7") == Fraction(-3, 7)
    assert scalar(Fraction(4, 2)) == 2 and type(scalar(Fraction(4, 2))) is int
    for bad in (0.5, "0.5", "1e3", True, "x", "1/0", None):
        with pytest.raises(InputError):
            scalar(bad)


def test_rank_examples():
    assert rank(ExactMatrix.identity(3)) == 3
    assert rank(ExactMatrix.zeros(4, 7)) == 0
    forms = [HomogeneousForm.monomial(m) for m in [(3, 0, 0), (0, 3, 0), (0, 0, 3), (1, 1, 1)]]
    assert rank(ExactMatrix([f.coeffs for f in forms], 10)) == 4


def test_kernel_examples():
    assert kernel_basis(ExactMatrix.identity(3)).nrows == 0
    K = kernel_basis(ExactMatrix.zeros(2, 5))
    assert K.nrows == 5 and rank(K) == 5
    assert kernel_basis(ExactMatrix([[1, -1]])).rows == ((1, 1),)


def test_row_space_examples():
    I2 = ExactMatrix.identity(2)
    assert row_space_dim_sum_and_intersection(I2, I2) == (2, 2)
    assert row_space_dim_sum_and_intersection(ExactMatrix([[1, 0, 0]]), ExactMatrix([[0, 1, 0]])) == (2, 0)
    A = ExactMatrix([[1, 0, 0], [0, 1, 0]])
    B = ExactMatrix([[0, 1, 0], [0, 0, 1]])
    assert row_space_dim_sum_and_intersection(A, B) == (3, 1)
    with pytest.raises(DimensionMismatchError):
        row_space_dim_sum_and_intersection(A, ExactMatrix([[1, 0]]))


def test_matrix_shape_checks():
    with pytest.raises(DimensionMismatchError):
        ExactMatrix([[1, 2], [3]])
    with pytest.raises(InputError):
        ExactMatrix([])
    M = ExactMatrix([[1, 2, 3], [4, 5, 6]])
    assert M.transpose().shape == (3, 2)
    assert (M @ M.transpose()).rows == ((14, 32), (32, 77))
    assert M.apply([1, 0, -1]) == (-2, -2)
    assert ExactMatrix([], 4).transpose().shape == (4, 0)


@settings(max_examples=150, deadline=None)
@given(small_matrices())
def test_rank_of_transpose(M):
    assert rank(M) == rank(M.transpose())


@settings(max_examples=150, deadline=None)
@given(small_matrices())
def test_rank_nullity_and_kernel_vectors(M):
    K = kernel_basis(M)
    assert M.ncols == rank(M) + K.nrows
    for v in K.rows:
        assert all(x == 0 for x in M.apply(v))
    assert rank(K) == K.nrows


@settings(max_examples=60, deadline=None)
@given(small_matrices(max_rows=6, max_cols=6, lo=-20, hi=20))
def test_rank_and_rref_match_sympy(M):
    oracle = sympy.Matrix(M.rows) if M.nrows else sympy.zeros(0, M.ncols)
    assert rank(M) == oracle.rank()
    R, pivots = rref(M)
    if M.nrows:
        ref, ref_pivots = oracle.rref()
        nonzero = [list(ref.row(i)) for i in range(len(ref_pivots))]
        assert [list(r) for r in R.rows] == nonzero
        assert list(pivots) == list(ref_pivots)


def test_rational_entries():
    M = ExactMatrix([[Fraction(1, 2), Fraction(1, 3)], [Fraction(3, 2), 1]])
    assert rank(M) == 1
    R, pivots = rref(M)
    assert R.rows == ((1, Fraction(2, 3)),) and pivots == [0]


def test_prime_field_validation():
    with pytest.raises(InputError):
        PrimeField(101)
    with pytest.raises(InputError):
        PrimeField(2**31 + 1)  # composite
    F = PrimeField(P31)
    assert F.reduce(-1) == P31 - 1
    assert F.reduce(Fraction(1, 2)) * 2 % P31 == 1
    with pytest.raises(BadPrimeError):
        F.reduce(Fraction(1, P31))


def test_prime_mode_is_scoped():
    assert active_field() is None
    with prime_mode(P31):
        assert active_field().p == P31
        with rational_mode():
            assert active_field() is None
        assert active_field().p == P31
    assert active_field() is None


def _random_31_bit_prime(rng):
    while True:
        p = rng.randrange(2**30 + 1, 2**31)
        if gmpy2.is_prime(p):
            return p


def test_prime_rank_agrees_on_random_matrices():
    rng = random.Random("exactmath/prime-cross-check")
    disagreements = 0
    for _ in range(1000):
        r, c = rng.randint(1, 6), rng.randint(1, 6)
        M = ExactMatrix([[rng.randint(-10, 10) for _ in range(c)] for _ in range(r)], c)
        p = _random_31_bit_prime(rng)
        exact, modular, agree = cross_check(lambda: rank(M), p)
        assert exact == rank(M)
        assert modular <= exact
        assert agree == (exact == modular)
        disagreements += not agree
    assert disagreements == 0


def test_bad_prime_is_caught_by_cross_check():
    p = 1073741827
    M = ExactMatrix([[p, 0], [0, 1]])
    exact, modular, agree = cross_check(lambda: rank(M), p)
    assert (exact, modular, agree) == (2, 1, False)


def test_prime_mode_kernel():
    M = ExactMatrix([[1, 2, 3], [2, 4, 7]])
    with prime_mode(P31):
        K = kernel_basis(M)
    assert K.nrows == 1
    v = K.rows[0]
    assert all(x % P31 == 0 for x in M.apply(v))


def test_row_space_normal_forms():
    U = RowSpace(ExactMatrix([[1, 1, 0, 0], [0, 0, 1, 1]]))
    assert (U.dim, U.codim) == (2, 2)
    assert U.complement == [1, 3]
    assert U.coordinates([2, 2, 3, 3]) == (0, 0)
    assert U.coordinates([1, 0, 0, 0]) == (-1, 0)
    assert U.coordinates([Fraction(1, 2), 1, 0, 5]) == (Fraction(1, 2), 5)
    with pytest.raises(DimensionMismatchError):
        U.coordinates([1, 2])
