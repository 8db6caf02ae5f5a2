import os
import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

from rootlie import _fp_py, _kernels
from rootlie.field import PrimeField, is_prime, primes_from
from rootlie.fmatrix import FMatrix, Inconsistent, rank_kernel, solve_affine
from rootlie.poly import (IntPolynomial, InterpolationError, LaurentPolynomial, interpolate,
                          quantum_binomial, quantum_integer)


def test_prime_field_rejects_composites():
    with pytest.raises(ValueError):
        PrimeField(4)
    assert PrimeField(5).inv(2) == 3
    assert list(PrimeField(3).elements()) == [0, 1, 2]


def test_primes_ascending():
    gen = primes_from(2)
    assert [next(gen) for _ in range(5)] == [2, 3, 5, 7, 11]
    assert is_prime(251) and not is_prime(1)


def test_rank_kernel_examples():
    r, k = rank_kernel(FMatrix.from_rows([[1, 1], [1, 1]], 2))
    assert (r, k.cols) == (1, 1)
    r, k = rank_kernel(FMatrix.identity(3, 5))
    assert (r, k.cols) == (3, 0)
    r, k = rank_kernel(FMatrix.zeros(2, 3, 3))
    assert (r, k.cols) == (0, 3)


def test_solve_affine_examples():
    sol = solve_affine(FMatrix.identity(3, 5), [1, 4, 2])
    assert sol.particular == (1, 4, 2)
    with pytest.raises(Inconsistent):
        solve_affine(FMatrix.zeros(1, 2, 3), [1])
    sol = solve_affine(FMatrix.from_rows([[1, 1]], 2), [1])
    assert sol.particular == (1, 0) and sol.dimension() == 1


def test_interpolate_examples():
    assert interpolate([(2, 1), (3, 1), (5, 1)], 2) == IntPolynomial([1])
    assert interpolate([(2, 3), (3, 4), (5, 6)], 1) == IntPolynomial([1, 1])
    assert interpolate([(2, 2), (3, 6), (5, 20)], 2) == IntPolynomial([0, -1, 1])


def test_interpolate_errors():
    with pytest.raises(InterpolationError, match="non-integral"):
        interpolate([(2, 0), (4, 1)], 1)
    with pytest.raises(InterpolationError, match="mismatch"):
        interpolate([(2, 1), (3, 1), (5, 2)], 1)


def test_quantum_binomial():
    v = LaurentPolynomial.monomial
    assert quantum_binomial(2, 1) == v(1) + v(-1)
    assert quantum_integer(3) == v(2) + v(0) + v(-2)
    assert quantum_binomial(3, 0) == v(0)


matrices = st.integers(1, 6).flatmap(
    lambda r: st.integers(1, 6).flatmap(
        lambda c: st.sampled_from([2, 3]).flatmap(
            lambda p: st.lists(st.lists(st.integers(0, p - 1), min_size=c, max_size=c),
                               min_size=r, max_size=r).map(lambda rows: FMatrix.from_rows(rows, p)))))


@given(matrices)
def test_rank_equals_transpose_rank(m):
    assert m.rank() == m.transpose().rank()


@given(matrices)
def test_kernel_columns_vanish(m):
    r, k = rank_kernel(m)
    assert r + k.cols == m.cols
    assert (m @ k).is_zero()


@given(matrices, st.data())
def test_solve_affine_substitution(m, data):
    x = data.draw(st.lists(st.integers(0, m.p - 1), min_size=m.cols, max_size=m.cols))
    b = [sum(m[i, j] * x[j] for j in range(m.cols)) % m.p for i in range(m.rows)]
    sol = solve_affine(m, b)
    got = [sum(m[i, j] * sol.particular[j] for j in range(m.cols)) % m.p for i in range(m.rows)]
    assert got == b


@given(st.lists(st.integers(-20, 20), min_size=1, max_size=5))
def test_interpolate_recovers_polynomial(coeffs):
    f = IntPolynomial(coeffs)
    bound = len(coeffs) - 1
    pts = [(p, f(p)) for p in (2, 3, 5, 7, 11, 13, 17)[:bound + 2]]
    assert interpolate(pts, bound) == f


@settings(max_examples=50)
@given(matrices)
def test_backends_agree(m):
    rows = m.row_lists()
    assert _kernels.rref(rows, m.cols, m.p) == _fp_py.rref(rows, m.cols, m.p)
    assert _kernels.rank(rows, m.cols, m.p) == _fp_py.rank(rows, m.cols, m.p)


def test_pure_python_fallback_selected_by_env():
    env = dict(os.environ, ROOTLIE_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "from rootlie import _kernels; print(_kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_laurent_arithmetic():
    v = LaurentPolynomial.monomial
    x = v(1) + v(-1)
    assert x * x == v(2) + v(0, 2) + v(-2)
    assert (x * x).exact_div(x) == x
    assert (x - x).is_zero()
