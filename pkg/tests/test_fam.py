import random

import pytest

from dgexact.complexes import zero_complex
from dgexact.dgcat import compose, element, identity_element, validate_dgcat
from dgexact.fam import (
    AlphaCutoff, AlgebraMorphism, COUNTABLE, RegularityError, additive_hull,
    check_algebra, check_algebra_morphism, check_monad_laws, eta, flatten_family,
    free_algebra, materialize, mu, t_of, t_of_functor,
)
from dgexact.dgcat import DgFunctor
from dgexact.field import GF
from dgexact.matrix import Matrix
from dgexact.presets import arrow_category, point_category

F5 = GF(5)


def test_hom_dimension_law():
    M = arrow_category(F5)
    T = t_of(M)
    rng = random.Random(0)
    objs = list(M.objects)
    for _ in range(50):
        F = tuple(rng.choice(objs) for _ in range(rng.randint(0, 4)))
        G = tuple(rng.choice(objs) for _ in range(rng.randint(0, 4)))
        cx = T.hom(F, G)
        degrees = set(cx.dims)
        for i in range(len(F)):
            for j in range(len(G)):
                degrees |= set(M.hom(F[i], G[j]).dims)
        for n in degrees:
            expected = sum(M.hom(F[i], G[j]).dim(n)
                           for i in range(len(F)) for j in range(len(G)))
            assert cx.dim(n) == expected


def test_empty_family_conventions():
    M = arrow_category(F5)
    T = t_of(M)
    assert T.hom((), ("0", "1")) == zero_complex(F5)
    assert T.hom(("0", "1"), ()) == zero_complex(F5)
    assert T.hom((), ()) == zero_complex(F5)


def test_two_to_one_dim():
    M = arrow_category(F5)
    T = t_of(M)
    assert T.hom(("0", "0"), ("1",)).dim(0) == 2


def test_eta_fully_faithful():
    M = arrow_category(F5)
    T = t_of(M)
    e = eta(M, T)
    for x in M.objects:
        for y in M.objects:
            cx = M.hom(x, y)
            tcx = T.hom((x,), (y,))
            assert cx.dims == tcx.dims
            for n in cx.support():
                assert e.hom_matrix(x, y, n) == Matrix.identity(F5, cx.dim(n))
                assert cx.diff(n) == tcx.diff(n)


def test_eta_preserves_structure():
    M = arrow_category(F5)
    T = t_of(M)
    e = eta(M, T)
    f = element(M, "0", "1", 0, (1,))
    id0 = identity_element(M, "0")
    assert e.apply(identity_element(M, "0")) == identity_element(T, ("0",))
    assert e.apply(compose(M, f, id0)) == compose(T, e.apply(f), e.apply(id0))


def test_mu_objects():
    P = point_category(F5)
    T1 = t_of(P)
    T2 = t_of(T1)
    m = mu(T2, T1)
    F = (("X",),)
    assert m.obj((F[0],)) == F[0]
    assert m.obj(ppair := (("X",), ("X",))) == ("X", "X")
    assert len(m.obj(((("X",) * 2), ("X",) * 3))) == 5


def test_mu_hom_matrices_are_bijections():
    M = arrow_category(F5)
    T1 = t_of(M)
    T2 = t_of(T1)
    m = mu(T2, T1)
    FF = (("0", "1"), ("0",))
    GG = (("1",), ("0", "1"))
    src = T2.hom(FF, GG)
    for n in src.support():
        mat = m.hom_matrix(FF, GG, n)
        assert mat.rank() == src.dim(n)


def test_monad_laws_pass():
    for A in (point_category(F5), arrow_category(F5)):
        rng = random.Random(42)
        report = check_monad_laws(A, rng, count=40, max_len=2)
        assert report["passed"], [c for c in report["checks"] if not c["passed"]][:3]


def test_monad_laws_corrupted_mu_fails():
    A = point_category(F5)

    def bad_mu(T2, T1):
        """Concatenate but drop the last entry: a dg functor, not a monad mult."""

        def omap(FF):
            flat = flatten_family(FF, T1.cutoff)
            return flat[:-1] if flat else flat

        def hmats(FF, GG, deg):
            tf, tg = omap(FF), omap(GG)
            src = T2.hom(FF, GG)
            tgt = T1.hom(tf, tg)
            off_f = [0]
            for fam in FF:
                off_f.append(off_f[-1] + len(fam))
            off_g = [0]
            for fam in GG:
                off_g.append(off_g[-1] + len(fam))
            cols = []
            for idx in range(src.dim(deg)):
                x, y, inner = T2.decode(FF, GG, deg, idx)
                i, j, b = T1.decode(FF[x], GG[y], deg, inner)
                gi, gj = off_f[x] + i, off_g[y] + j
                col = [F5.zero] * tgt.dim(deg)
                if gi < len(tf) and gj < len(tg):
                    col[T1.encode(tf, tg, deg, gi, gj, b)] = F5.one
                cols.append(tuple(col))
            return Matrix.from_cols(F5, cols, rows=tgt.dim(deg))

        return DgFunctor(T2, T1, omap, hmats, name="bad-mu")

    rng = random.Random(7)
    report = check_monad_laws(A, rng, count=30, max_len=2, mu_impl=bad_mu)
    failed = [c for c in report["checks"] if not c["passed"]]
    assert failed
    laws = {c["law"] for c in failed}
    assert "associativity" in laws
    assert "unit.eta_T" in laws or "unit.T_eta" in laws
    assert all(c["witness"] is not None for c in failed)


def test_finite_cutoff_overflow():
    A = point_category(F5)
    cut = AlphaCutoff("finite", 3)
    T1 = t_of(A, cut)
    T2 = t_of(T1, cut)
    m = mu(T2, T1)
    with pytest.raises(RegularityError):
        m.obj((("X", "X"), ("X", "X")))
    rng = random.Random(1)
    report = check_monad_laws(A, rng, count=60, max_len=2, cutoff=cut)
    failed = [c for c in report["checks"] if not c["passed"]]
    assert failed
    assert any(c["witness"]["kind"] == "regularity" for c in failed)


def test_materialized_subcategories_validate():
    M = arrow_category(F5)
    T = t_of(M)
    cat = materialize(T, [(), ("0",), ("1",), ("0", "1"), ("0", "0")])
    assert validate_dgcat(cat) == []


def test_free_algebra_point():
    P = point_category(F5)
    alg = free_algebra(P)
    F = (("X",), ("X",))
    assert alg.sum_obj(F) == ("X", "X")
    inj0 = alg.injection(F, 0)
    assert inj0.source == ("X",) and inj0.target == ("X", "X")
    assert alg.sum_obj((("X", "X"),)) == ("X", "X")
    assert alg.injection((("X", "X"),), 0) == identity_element(alg.carrier, ("X", "X"))


def test_additive_hull_dims():
    P = point_category(F5)
    alg = additive_hull(P)
    T = alg.carrier
    assert T.hom(("X", "X"), ("X",)).dim(0) == 2
    assert T.hom((), ("X",)) == zero_complex(F5)
    assert T.hom(("X",), ()) == zero_complex(F5)


def test_check_algebra_passes():
    for A in (point_category(F5), arrow_category(F5)):
        alg = additive_hull(A)
        rng = random.Random(3)
        report = check_algebra(alg, rng, count=60, max_len=3)
        assert report["passed"], [c for c in report["checks"] if not c["passed"]][:3]


def test_cotuple_inverts_restriction():
    M = arrow_category(F5)
    alg = additive_hull(M)
    T = alg.carrier
    rng = random.Random(5)
    for _ in range(20):
        F = alg.sample_family(rng, 3)
        Z = alg.object_sampler(rng)
        S = alg.sum_obj(F)
        cx = T.hom(S, Z)
        for n in cx.support():
            coeffs = tuple(F5.sample(rng) for _ in range(cx.dim(n)))
            m = element(T, S, Z, n, coeffs)
            restricted = [compose(T, m, alg.injection(F, x)) for x in range(len(F))]
            back = alg.cotuple(F, Z, restricted)
            assert back == m


def test_algebra_morphism_identity_passes():
    M = arrow_category(F5)
    alg = additive_hull(M)
    ident = DgFunctor.identity(alg.carrier)
    rng = random.Random(9)
    report = check_algebra_morphism(AlgebraMorphism(alg, alg, ident), rng, count=25)
    assert report["passed"]


def test_algebra_morphism_coordinate_permutation_fails():
    M = arrow_category(F5)
    alg = additive_hull(M)
    T = alg.carrier

    def omap(F):
        return tuple(reversed(F))

    def hmats(F, G, n):
        src = T.hom(F, G)
        tgt = T.hom(omap(F), omap(G))
        cols = []
        for idx in range(src.dim(n)):
            i, j, b = T.decode(F, G, n, idx)
            out_idx = T.encode(omap(F), omap(G), n,
                               len(F) - 1 - i, len(G) - 1 - j, b)
            col = [F5.zero] * tgt.dim(n)
            col[out_idx] = F5.one
            cols.append(tuple(col))
        return Matrix.from_cols(F5, cols, rows=tgt.dim(n))

    flip = DgFunctor(T, T, omap, hmats, name="flip")
    rng = random.Random(11)
    report = check_algebra_morphism(AlgebraMorphism(alg, alg, flip), rng, count=40)
    failed = [c for c in report["checks"] if not c["passed"]]
    assert failed
    assert all("family" in c["witness"] for c in failed)
