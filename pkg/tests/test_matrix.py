import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dgexact._kernels import _modp_py
from dgexact.field import GF, QQ, field_from_tag
from dgexact.matrix import Matrix, complement_pivots

try:
    from dgexact._kernels import _modp as _modp_cy
except ImportError:
    _modp_cy = None

BACKENDS = [_modp_py] + ([_modp_cy] if _modp_cy else [])


def rand_matrix(field, rng, rows, cols, bound=3):
    if rows == 0 or cols == 0:
        return Matrix.zero(field, rows, cols)
    return Matrix.from_rows(field, [[field.sample(rng, bound) for _ in range(cols)]
                                    for _ in range(rows)])


@pytest.mark.parametrize("backend", BACKENDS)
def test_backends_agree_on_mul_and_rref(backend):
    rng = random.Random(7)
    p = 5
    for _ in range(30):
        n, m, k = rng.randint(1, 6), rng.randint(1, 6), rng.randint(1, 6)
        a = [[rng.randrange(p) for _ in range(m)] for _ in range(n)]
        b = [[rng.randrange(p) for _ in range(k)] for _ in range(m)]
        assert backend.mul_mod(a, b, p) == _modp_py.mul_mod(a, b, p)
        ra, pa = backend.rref_mod(a, p)
        rb, pb = _modp_py.rref_mod(a, p)
        assert ra == rb and pa == pb


@pytest.mark.parametrize("tag", ["Q", "Fp:5", "Fp:2"])
def test_rank_kernel_solve_roundtrip(tag):
    field = field_from_tag(tag)
    rng = random.Random(11)
    for _ in range(40):
        n, m = rng.randint(1, 5), rng.randint(1, 5)
        A = rand_matrix(field, rng, n, m)
        ker = A.kernel_basis()
        assert len(ker) == m - A.rank()
        for v in ker:
            assert all(field.is_zero(x) for x in A.apply(v))
        x = tuple(field.sample(rng) for _ in range(m))
        b = A.apply(x)
        sol = A.solve(b)
        assert sol is not None
        assert A.apply(sol) == b


def test_solve_inconsistent():
    F = GF(5)
    A = Matrix.from_rows(F, [[1, 2], [2, 4]])
    assert A.solve((1, 0)) is None
    assert A.solve((1, 2)) == (1, 0)


def test_inverse():
    F = GF(7)
    A = Matrix.from_rows(F, [[1, 2], [3, 4]])
    Ainv = A.inverse()
    assert A * Ainv == Matrix.identity(F, 2)
    assert Ainv * A == Matrix.identity(F, 2)
    singular = Matrix.from_rows(F, [[1, 2], [2, 4]])
    assert singular.inverse() is None


def test_rational_exactness():
    A = Matrix.from_rows(QQ, [[Fraction(1, 3), Fraction(1, 7)],
                              [Fraction(2, 3), Fraction(2, 7)]])
    assert A.rank() == 1
    ker = A.kernel_basis()
    assert len(ker) == 1
    assert A.apply(ker[0]) == (Fraction(0), Fraction(0))


def test_complement_pivots():
    F = GF(5)
    B = Matrix.from_cols(F, [(1, 0, 0)], rows=3)
    Z = Matrix.from_cols(F, [(1, 0, 0), (0, 1, 0), (2, 3, 0)], rows=3)
    keep = complement_pivots(B, Z)
    assert keep == [1]


def test_block_and_stack():
    F = GF(3)
    A = Matrix.identity(F, 2)
    Z = Matrix.zero(F, 2, 1)
    M = Matrix.block(F, [[A, Z]])
    assert (M.rows, M.cols) == (2, 3)
    assert M.transpose().transpose() == M


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 4), st.integers(0, 4), st.integers(0, 4),
       st.integers(0, 10**6))
def test_mul_associative_mod5(n, m, k, seed):
    F = GF(5)
    rng = random.Random(seed)
    A = rand_matrix(F, rng, n, m)
    B = rand_matrix(F, rng, m, k)
    C = rand_matrix(F, rng, k, max(0, n - 1))
    assert (A * B) * C == A * (B * C)


def test_empty_shapes():
    F = GF(5)
    A = Matrix.zero(F, 0, 3)
    B = Matrix.zero(F, 3, 2)
    assert (A * B).rows == 0
    assert A.rank() == 0
    assert len(B.kernel_basis()) == 2
