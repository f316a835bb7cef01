import random

import pytest

from dgexact.complexes import homology_dim
from dgexact.dgcat import (
    add_elements, compose, differential, element, functors_equal, h0,
    identity_element, is_closed_element, is_fibration, is_h0_invertible,
    is_quasi_equivalence, scale_element, to_terminal, validate_dgcat,
    validate_functor, zero_element,
)
from dgexact.fam import additive_hull, check_algebra, materialize
from dgexact.field import GF
from dgexact.matrix import Matrix
from dgexact.presets import arrow_category, point_category
from dgexact.path import (
    PathBase, build_path, cone_in_path, enumerate_path_objects,
    path_algebra_structure, path_cycle_law_holds, read_phi_blocks,
    sample_strict_auto, strict_inverse, suspend_path_object,
)
from dgexact.twisted import (
    TwistedModel, build_generators, sample_closed_morphism, sample_twisted,
)

F5 = GF(5)


def cone_table_category():
    return build_generators(F5)["C"]


def test_path_objects_point():
    P0 = point_category(F5)
    objs = enumerate_path_objects(P0)
    # all invertible scalar multiples of the identity
    assert len(objs) == 4
    assert all(o.source == "X" and o.target == "X" for o in objs)


def test_path_objects_arrow():
    M = arrow_category(F5)
    objs = enumerate_path_objects(M)
    # only endomorphism isos; the connecting arrow is not H0-invertible
    assert all(o.source == o.target for o in objs)
    assert {o.source for o in objs} == {"0", "1"}
    assert len(objs) == 8


def test_path_category_point_valid_and_h0():
    P0 = point_category(F5)
    data = build_path(P0)
    P = data["category"]
    assert validate_dgcat(P) == []
    idX = identity_element(P0, "X")
    end = P.hom(idX, idX)
    # three dimensions total: the pair part in degree 0, the homotopy part
    # (underlying degree -1 relative to degree-0 elements) showing up in
    # degree +1 of the pullback complex
    assert end.dims == {0: 2, 1: 1}
    assert homology_dim(end, 0) == 1


def test_path_factorization_point_and_arrow():
    for B in (point_category(F5), arrow_category(F5)):
        data = build_path(B)
        P = data["category"]
        assert validate_dgcat(P) == []
        assert validate_functor(data["i"]) == []
        assert validate_functor(data["q"]) == []
        assert functors_equal(data["i"].then(data["q"]), data["diagonal"])
        ok, report = is_quasi_equivalence(data["i"])
        assert ok, report
        ok, report = is_fibration(data["q"])
        assert ok, report
        ok, _ = is_fibration(to_terminal(B))
        assert ok


def test_degree0_cycle_law_sampled():
    C = cone_table_category()
    lazy = PathBase(C)
    objs = enumerate_path_objects(C)
    rng = random.Random(17)
    for _ in range(100):
        fo, go = rng.choice(objs), rng.choice(objs)
        cx = lazy.hom(fo, go)
        coeffs = tuple(F5.sample(rng) for _ in range(cx.dim(0)))
        m = element(lazy, fo, go, 0, coeffs)
        assert path_cycle_law_holds(lazy, m)


def test_compose_with_identity_and_closedness():
    C = cone_table_category()
    lazy = PathBase(C)
    objs = enumerate_path_objects(C)
    rng = random.Random(19)
    for _ in range(30):
        fo, go = rng.choice(objs), rng.choice(objs)
        cx = lazy.hom(fo, go)
        kernel = cx.diff(0).kernel_basis()
        if not kernel:
            continue
        coeffs = [F5.zero] * cx.dim(0)
        for v in kernel:
            c = F5.sample(rng)
            for k, val in enumerate(v):
                coeffs[k] = F5.add(coeffs[k], F5.mul(c, val))
        m = element(lazy, fo, go, 0, tuple(coeffs))
        assert is_closed_element(lazy, m)
        assert compose(lazy, m, identity_element(lazy, fo)) == m
        assert compose(lazy, identity_element(lazy, go), m) == m
        # closed composed with closed stays closed
        hx = lazy.hom(go, go)
        k2 = hx.diff(0).kernel_basis()
        if k2:
            c2 = [F5.zero] * hx.dim(0)
            for v in k2:
                cc = F5.sample(rng)
                for k, val in enumerate(v):
                    c2[k] = F5.add(c2[k], F5.mul(cc, val))
            m2 = element(lazy, go, go, 0, tuple(c2))
            assert is_closed_element(lazy, compose(lazy, m2, m))


def test_path_associativity_sampled():
    C = cone_table_category()
    lazy = PathBase(C)
    objs = enumerate_path_objects(C)
    rng = random.Random(23)
    picks = [rng.choice(objs) for _ in range(4)]
    cat = materialize(lazy, picks)
    assert validate_dgcat(cat) == []


def test_path_algebra_structure():
    M = arrow_category(F5)
    alg = additive_hull(M)
    palg = path_algebra_structure(alg)
    rng = random.Random(29)
    report = check_algebra(palg, rng, count=40, max_len=2)
    assert report["passed"], [c for c in report["checks"] if not c["passed"]][:3]


def test_path_algebra_injections_closed():
    M = arrow_category(F5)
    alg = additive_hull(M)
    palg = path_algebra_structure(alg)
    rng = random.Random(31)
    P = palg.carrier
    for _ in range(10):
        fam = palg.sample_family(rng, 3, min_len=1)
        for x in range(len(fam)):
            inj = palg.injection(fam, x)
            assert is_closed_element(P, inj)
            mx, my, h = P.split(inj)
            assert all(F5.is_zero(c) for c in h.coeffs)


def test_path_unit_and_projection_are_algebra_morphisms():
    """i sends chosen sums to chosen sums; q projects them componentwise."""
    M = arrow_category(F5)
    alg = additive_hull(M)
    palg = path_algebra_structure(alg)
    carrier = alg.carrier
    P = palg.carrier
    rng = random.Random(37)
    for _ in range(15):
        fam = tuple(identity_element(carrier, alg.object_sampler(rng))
                    for _ in range(rng.randint(0, 3)))
        # i(sum of objects) equals sum of i-images
        objs = tuple(fo.source for fo in fam)
        total = alg.sum_obj(objs)
        assert palg.sum_obj(fam) == identity_element(carrier, total)


def sample_path_objects_over_model(model, rng, count):
    objs = []
    while len(objs) < count:
        X = sample_twisted(model, rng, max_terms=2)
        g = sample_strict_auto(model, rng, X)
        objs.append(g)
    return objs


def sample_closed_path_morphism(P, rng, fo, go):
    cx = P.hom(fo, go)
    fld = P.field
    kernel = cx.diff(0).kernel_basis()
    coeffs = [fld.zero] * cx.dim(0)
    for v in kernel:
        c = fld.sample(rng)
        for k, val in enumerate(v):
            coeffs[k] = fld.add(coeffs[k], fld.mul(c, val))
    return element(P, fo, go, 0, tuple(coeffs))


def test_cone_in_path_over_arrow_model():
    model = TwistedModel(arrow_category(F5))
    P = PathBase(model)
    rng = random.Random(41)
    checked_nonzero_h = 0
    for _ in range(25):
        fo, go = sample_path_objects_over_model(model, rng, 2)
        c = sample_closed_path_morphism(P, rng, fo, go)
        data = cone_in_path(model, c, P)
        phi = data["phi"]
        # closed degree 0
        assert is_closed_element(model, phi)
        # h sits verbatim in its block
        mx, my, h = P.split(c)
        blocks = read_phi_blocks(model, data)
        for (s, t), comp in blocks["h"].items():
            assert comp.coeffs == model.component(h, s, t).coeffs
        for (s, t), comp in blocks["f_prime"].items():
            assert comp.coeffs == model.component(go, s, t).coeffs
        for comp in blocks["zero"].values():
            assert all(F5.is_zero(v) for v in comp.coeffs)
        if any(not F5.is_zero(v) for v in h.coeffs):
            checked_nonzero_h += 1
        # canonical morphism from the target of c is closed with zero homotopy
        canonical = data["canonical"]
        assert is_closed_element(P, canonical)
        _, _, hcan = P.split(canonical)
        assert all(F5.is_zero(v) for v in hcan.coeffs)
        # the new object is H0-invertible, hence a path object
        assert is_h0_invertible_via_base(model, phi)
    assert checked_nonzero_h > 0


def is_h0_invertible_via_base(model, phi):
    from dgexact.dgcat import H0Category
    cat = H0Category(model, (phi.source, phi.target))
    coords = cat.space(phi.source, phi.target).reduce(phi.coeffs)
    assert coords is not None
    return cat.is_invertible_class(phi.source, phi.target, coords)


def test_cone_in_path_corepresents():
    from dgexact.complexes import ChainMap, cone as complex_cone
    model = TwistedModel(arrow_category(F5))
    P = PathBase(model)
    rng = random.Random(43)
    for _ in range(6):
        fo, go = sample_path_objects_over_model(model, rng, 2)
        c = sample_closed_path_morphism(P, rng, fo, go)
        data = cone_in_path(model, c, P)
        phi = data["phi"]
        for _ in range(3):
            (zo,) = sample_path_objects_over_model(model, rng, 1)
            hom_phi = P.hom(phi, zo)
            src_cx = P.hom(go, zo)
            tgt_cx = P.hom(fo, zo)
            comps = {}
            for n in src_cx.support():
                cols = []
                for idx in range(src_cx.dim(n)):
                    m = element(P, go, zo, n,
                                tuple(F5.one if k == idx else F5.zero
                                      for k in range(src_cx.dim(n))))
                    cols.append(compose(P, m, c).coeffs)
                comps[n] = Matrix.from_cols(F5, cols, rows=tgt_cx.dim(n))
            pre = ChainMap(src_cx, tgt_cx, comps)
            assert pre.is_closed()
            mc, _, _ = complex_cone(pre)
            degrees = set(hom_phi.dims) | {n + 1 for n in mc.dims}
            for n in degrees:
                assert homology_dim(hom_phi, n) == homology_dim(mc, n - 1)


def test_cone_in_path_zero_morphism_splits():
    model = TwistedModel(arrow_category(F5))
    P = PathBase(model)
    rng = random.Random(47)
    fo, go = sample_path_objects_over_model(model, rng, 2)
    c = zero_element(P, fo, go, 0)
    data = cone_in_path(model, c, P)
    phi = data["phi"]
    (zo,) = sample_path_objects_over_model(model, rng, 1)
    hom_phi = P.hom(phi, zo)
    sh_f = data["blocks"]["shifted_source_map"]
    a = P.hom(sh_f, zo)
    b = P.hom(go, zo)
    for n in set(hom_phi.dims) | set(a.dims) | set(b.dims):
        assert homology_dim(hom_phi, n) == homology_dim(a, n) + homology_dim(b, n)


def test_cone_in_path_identity_morphism_acyclic():
    model = TwistedModel(arrow_category(F5))
    P = PathBase(model)
    rng = random.Random(53)
    (fo,) = sample_path_objects_over_model(model, rng, 1)
    c = identity_element(P, fo)
    data = cone_in_path(model, c, P)
    phi = data["phi"]
    for _ in range(4):
        (zo,) = sample_path_objects_over_model(model, rng, 1)
        hom_phi = P.hom(phi, zo)
        for n in hom_phi.support():
            assert homology_dim(hom_phi, n) == 0


def test_suspend_path_object_round_trip():
    model = TwistedModel(arrow_category(F5))
    P = PathBase(model)
    rng = random.Random(59)
    for _ in range(8):
        (fo,) = sample_path_objects_over_model(model, rng, 1)
        up, unit_u, counit_u = suspend_path_object(model, fo, 1)
        assert is_closed_element(P, unit_u)
        assert is_closed_element(P, counit_u)
        assert compose(P, counit_u, unit_u) == identity_element(P, fo)
        assert compose(P, unit_u, counit_u) == identity_element(P, up)
        down, unit_d, counit_d = suspend_path_object(model, up, -1)
        assert down == fo
        # suspension of an identity object is the identity of the shift
        idX = identity_element(model, fo.source)
        s_id, _, _ = suspend_path_object(model, idX, 1)
        assert s_id == identity_element(model, model.shift_obj(fo.source, 1))


def test_strict_inverse_helper():
    M = arrow_category(F5)
    model = TwistedModel(M)
    xh = model.yoneda("0")
    two = F5.of_int(2)
    g = element(model, xh, xh, 0, (two,))
    inv = strict_inverse(model, g)
    assert inv is not None
    assert compose(model, inv, g) == identity_element(model, xh)
    f = element(model, xh, model.yoneda("1"), 0, (F5.one,))
    assert strict_inverse(model, f) is None
