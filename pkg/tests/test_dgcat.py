import itertools

import pytest

from dgexact.complexes import Complex
from dgexact.dgcat import (
    DgCategory, DgFunctor, compose, diagonal, differential, element, h0,
    identity_element, is_fibration, is_h0_invertible, is_quasi_equivalence,
    product, terminal_category, to_terminal, validate_dgcat, validate_functor,
)
from dgexact.field import GF, QQ
from dgexact.matrix import Matrix
from dgexact.presets import (
    arrow_category, contractible_arrow_category, duplicated_point_category,
    point_category,
)

F5 = GF(5)


def test_point_category_valid():
    P = point_category(F5)
    assert validate_dgcat(P) == []


def test_arrow_category_valid():
    M = arrow_category(F5)
    assert validate_dgcat(M) == []


def test_corrupt_identity_differential_detected():
    P = point_category(F5)
    hom = P.hom("X", "X")
    bad_hom = Complex(F5, {0: 1}, {0: Matrix.from_rows(F5, [[1]])})
    bad = DgCategory(F5, P.objects, {("X", "X"): bad_hom}, P._comp, P._ids)
    issues = validate_dgcat(bad)
    assert issues
    assert any("d.d" in s or "d(id" in s or "Leibniz" in s for s in issues)


def test_compose_and_differential_elements():
    M = arrow_category(F5)
    f = element(M, "0", "1", 0, (1,))
    id0 = identity_element(M, "0")
    assert compose(M, f, id0) == f
    assert differential(M, f).coeffs == ()


def test_h0_point():
    P = point_category(F5)
    cat = h0(P)
    assert cat.dim("X", "X") == 1


def test_h0_arrow():
    M = arrow_category(F5)
    cat = h0(M)
    assert cat.dim("0", "1") == 1
    assert cat.dim("1", "0") == 0


def test_h0_contractible_arrow():
    A = contractible_arrow_category(F5)
    assert validate_dgcat(A) == []
    cat = h0(A)
    assert cat.dim("X", "Y") == 0


def test_is_h0_invertible():
    M = arrow_category(F5)
    assert is_h0_invertible(M, identity_element(M, "0"))
    f = element(M, "0", "1", 0, (1,))
    assert not is_h0_invertible(M, f)
    with pytest.raises(ValueError):
        is_h0_invertible(M, element(M, "0", "1", 0, (0,)).__class__("0", "1", 1, ()))


def test_is_h0_invertible_rejects_nonclosed():
    A = contractible_arrow_category(F5)
    e = element(A, "X", "Y", -1, (1,))
    with pytest.raises(ValueError):
        is_h0_invertible(A, e)


def test_identity_functor_is_quasi_equivalence_and_fibration():
    M = arrow_category(F5)
    F = DgFunctor.identity(M)
    ok, _ = is_quasi_equivalence(F)
    assert ok
    ok, _ = is_fibration(F)
    assert ok


def test_duplicated_point_inclusion_is_quasi_equivalence():
    P = point_category(F5)
    D = duplicated_point_category(F5)
    assert validate_dgcat(D) == []

    def mats(x, y, deg):
        rows = D.hom("u", "u").dim(deg)
        cols = P.hom(x, y).dim(deg)
        return Matrix.identity(F5, rows) if rows == cols else Matrix.zero(F5, rows, cols)

    incl = DgFunctor(P, D, lambda x: "u", mats, name="incl")
    assert validate_functor(incl) == []
    ok, report = is_quasi_equivalence(incl)
    assert ok, report


def test_unique_functor_to_terminal_is_fibration():
    for A in (point_category(F5), arrow_category(F5), contractible_arrow_category(F5)):
        bang = to_terminal(A)
        ok, report = is_fibration(bang)
        assert ok, report


def test_terminal_category_is_valid():
    T = terminal_category(F5)
    assert validate_dgcat(T) == []


def test_product_and_diagonal():
    M = arrow_category(F5)
    MM, p1, p2 = product(M, M)
    assert validate_dgcat(MM) == []
    assert validate_functor(p1) == []
    assert validate_functor(p2) == []
    diag = diagonal(M, MM)
    assert validate_functor(diag) == []
    # diagonal then projection is the identity
    for x, y in itertools.product(M.objects, repeat=2):
        for n in M.hom(x, y).support():
            assert diag.then(p1).hom_matrix(x, y, n) == Matrix.identity(F5, M.hom(x, y).dim(n))
            assert diag.then(p2).hom_matrix(x, y, n) == Matrix.identity(F5, M.hom(x, y).dim(n))
    # Hom dims add degreewise
    for (a, b), (c, d) in itertools.product(MM.objects, repeat=2):
        for n in MM.hom((a, b), (c, d)).support():
            assert MM.hom((a, b), (c, d)).dim(n) == M.hom(a, c).dim(n) + M.hom(b, d).dim(n)


def test_product_with_terminal_projection_is_quasi_equivalence():
    M = arrow_category(F5)
    T = terminal_category(F5)
    MT, p1, _ = product(M, T)
    ok, report = is_quasi_equivalence(p1)
    assert ok, report


def test_h0_of_product_is_product_of_h0():
    M = arrow_category(F5)
    MM, _, _ = product(M, M)
    hm = h0(M)
    hmm = h0(MM)
    for (a, b), (c, d) in itertools.product(MM.objects, repeat=2):
        assert hmm.dim((a, b), (c, d)) == hm.dim(a, c) + hm.dim(b, d)


def test_quasi_equivalences_compose():
    P = point_category(F5)
    D = duplicated_point_category(F5)

    def mats(x, y, deg):
        rows = D.hom("u", "u").dim(deg)
        cols = P.hom(x, y).dim(deg)
        return Matrix.identity(F5, rows) if rows == cols else Matrix.zero(F5, rows, cols)

    incl = DgFunctor(P, D, lambda x: "u", mats)
    idD = DgFunctor.identity(D)
    comp = incl.then(idD)
    ok1, _ = is_quasi_equivalence(incl)
    ok2, _ = is_quasi_equivalence(idD)
    ok3, _ = is_quasi_equivalence(comp)
    assert ok1 and ok2 and ok3


def test_over_q_invertibility_uses_lattice():
    P = point_category(QQ)
    assert is_h0_invertible(P, identity_element(P, "X"))
