import random
from fractions import Fraction

import pytest

from dgexact.field import GF, QQ
from dgexact.matrix import Matrix
from dgexact.complexes import (
    ChainMap, Complex, cone, direct_sum_over, homology, homology_dim,
    homotopy_pullback, is_acyclic, shift, validate_complex, zero_complex,
)


def one_dim(field, degree=0):
    return Complex(field, {degree: 1}, {})


def two_term(field, d_entry, lo=0):
    """field -> field placed in degrees lo, lo+1 with differential [d_entry]."""
    return Complex(field, {lo: 1, lo + 1: 1},
                   {lo: Matrix.from_rows(field, [[d_entry]])})


def rand_complex(field, rng, degrees=(-1, 0, 1), maxdim=3):
    dims = {n: rng.randint(0, maxdim) for n in degrees}
    diffs = {}
    # build valid d by zeroing: random d then project next one onto kernel
    c = Complex(field, dims, {})
    prev = None
    for n in sorted(dims):
        rows, cols = c.dim(n + 1), c.dim(n)
        if rows and cols:
            m = Matrix.from_rows(field, [[field.sample(rng) for _ in range(cols)]
                                         for _ in range(rows)])
            if prev is not None:
                # force m * prev = 0 by solving on the image; cheap trick:
                # replace m with a map vanishing on im(prev)
                ker = prev.transpose().kernel_basis()
                rowsleft = [list(v) for v in ker][:rows]
                while len(rowsleft) < rows:
                    rowsleft.append([field.zero] * cols)
                m = Matrix.from_rows(field, rowsleft)
            diffs[n] = m
            prev = m
        else:
            prev = None
    return Complex(field, dims, diffs)


def test_validate_trivial_cases():
    F = GF(5)
    assert validate_complex(zero_complex(F)) == []
    assert validate_complex(two_term(F, 1)) == []
    bad = Complex(F, {0: 1, 1: 1, 2: 1},
                  {0: Matrix.from_rows(F, [[1]]), 1: Matrix.from_rows(F, [[1]])})
    issues = validate_complex(bad)
    assert issues and "degree 0" in issues[0]


def test_validate_shape_mismatch():
    F = GF(5)
    bad = Complex(F, {0: 2, 1: 1}, {0: Matrix.from_rows(F, [[1]])})
    assert any("shape" in s for s in validate_complex(bad))


@pytest.mark.parametrize("field", [GF(5), QQ])
def test_homology_basics(field):
    assert homology(zero_complex(field), 0) == (0, [])
    acyc = two_term(field, field.one)
    assert homology(acyc, 0)[0] == 0
    assert homology(acyc, 1)[0] == 0


def test_homology_rank_nullity_f5():
    F = GF(5)
    c = two_term(F, 0)
    dim, reps = homology(c, 0)
    assert dim == 1
    assert reps == [(1,)]


def test_homology_reps_are_cycles_spanning():
    F = GF(5)
    rng = random.Random(3)
    for _ in range(25):
        c = rand_complex(F, rng)
        assert validate_complex(c) == []
        for n in c.support():
            dim, reps = homology(c, n)
            assert dim == homology_dim(c, n)
            assert len(reps) == dim
            for v in reps:
                assert all(F.is_zero(x) for x in c.diff(n).apply(v))


def test_shift_conventions():
    F = GF(5)
    rng = random.Random(5)
    c = rand_complex(F, rng)
    assert shift(c, 0) == c
    assert shift(shift(c, 1), -1) == c
    one = one_dim(F, 0)
    assert shift(one, 1).support() == [-1]
    # H^n(C[s]) = H^{n+s}(C)
    for s in (-2, 1, 3):
        sh = shift(c, s)
        for n in range(-4, 4):
            assert homology_dim(sh, n) == homology_dim(c, n + s)


def test_cone_of_identity_contractible():
    F = GF(5)
    c = two_term(F, 2)
    cn, inj, proj = cone(ChainMap.identity(c))
    assert validate_complex(cn) == []
    assert is_acyclic(cn)
    assert inj.is_closed() and proj.is_closed()


def test_cone_of_zero_is_sum_of_shift_and_target():
    F = GF(5)
    rng = random.Random(9)
    M, N = rand_complex(F, rng), rand_complex(F, rng)
    z = ChainMap.zero(M, N)
    cn, _, _ = cone(z)
    expected, _, _ = direct_sum_over(F, [shift(M, 1), N])
    for n in set(cn.dims) | set(expected.dims):
        assert cn.dim(n) == expected.dim(n)


def test_cone_multiplication_by_two():
    over_q = two_term(QQ, Fraction(0))  # placeholder to build maps on
    src = one_dim(QQ)
    tgt = one_dim(QQ)
    f = ChainMap(src, tgt, {0: Matrix.from_rows(QQ, [[Fraction(2)]])})
    cn, _, _ = cone(f)
    assert is_acyclic(cn)
    F2 = GF(2)
    src2, tgt2 = one_dim(F2), one_dim(F2)
    f2 = ChainMap(src2, tgt2, {0: Matrix.from_rows(F2, [[0]])})
    cn2, _, _ = cone(f2)
    assert homology_dim(cn2, -1) == 1
    assert homology_dim(cn2, 0) == 1


def test_cone_rejects_nonclosed():
    F = GF(5)
    c = two_term(F, 1)
    bad = ChainMap(c, c, {0: Matrix.from_rows(F, [[1]]), 1: Matrix.from_rows(F, [[2]])})
    assert not bad.is_closed()
    with pytest.raises(ValueError):
        cone(bad)


def test_cone_euler_characteristic():
    F = GF(7)
    rng = random.Random(13)
    for _ in range(10):
        M, N = rand_complex(F, rng), rand_complex(F, rng)
        cn, _, _ = cone(ChainMap.zero(M, N))
        assert cn.euler_characteristic() == N.euler_characteristic() - M.euler_characteristic()


def test_cone_of_quasi_iso_is_acyclic():
    F = GF(5)
    c = two_term(F, 1)
    # identity is a quasi-iso of an acyclic complex
    cn, _, _ = cone(ChainMap.identity(c))
    assert is_acyclic(cn)
    single = one_dim(F)
    g = ChainMap(single, single, {0: Matrix.from_rows(F, [[3]])})
    assert g.is_quasi_isomorphism()
    cng, _, _ = cone(g)
    assert is_acyclic(cng)


def test_direct_sum():
    F = GF(5)
    rng = random.Random(17)
    total, injs, projs = direct_sum_over(F, [])
    assert total.dims == {}
    c = rand_complex(F, rng)
    total, injs, projs = direct_sum_over(F, [c])
    assert total == c
    a, b = rand_complex(F, rng), rand_complex(F, rng)
    total, injs, projs = direct_sum_over(F, [a, b])
    assert validate_complex(total) == []
    for n in total.support():
        assert total.dim(n) == a.dim(n) + b.dim(n)
    for m in injs + projs:
        assert m.is_closed()
    with pytest.raises(ValueError):
        direct_sum_over(F, [a, rand_complex(QQ, random.Random(1))])


def test_homotopy_pullback_identity_legs():
    F = GF(5)
    c = one_dim(F)
    u = ChainMap.identity(c)
    hp, pa, pb = homotopy_pullback(u, u)
    assert validate_complex(hp) == []
    assert homology_dim(hp, 0) == 1
    assert pa.is_closed() and pb.is_closed()
    assert pb.is_quasi_isomorphism()


def test_homotopy_pullback_zero_target():
    F = GF(5)
    rng = random.Random(21)
    A, B = rand_complex(F, rng), rand_complex(F, rng)
    z = zero_complex(F)
    hp, _, _ = homotopy_pullback(ChainMap.zero(A, z), ChainMap.zero(B, z))
    for n in set(A.dims) | set(B.dims):
        assert hp.dim(n) == A.dim(n) + B.dim(n)


def test_homotopy_pullback_target_mismatch():
    F = GF(5)
    a = one_dim(F)
    b = two_term(F, 1)
    with pytest.raises(ValueError):
        homotopy_pullback(ChainMap.identity(a), ChainMap.identity(b))


def test_homotopy_pullback_projection_quasi_iso_along_identity():
    F = GF(5)
    rng = random.Random(23)
    for _ in range(10):
        C = rand_complex(F, rng)
        B = rand_complex(F, rng)
        # v: B -> C arbitrary closed: use zero, u = id
        hp, pa, pb = homotopy_pullback(ChainMap.identity(C), ChainMap.zero(B, C))
        assert pb.is_quasi_isomorphism()
