"""Path categories: H0-invertible closed degree-0 morphisms as objects,
homotopy-pullback Hom complexes, and the diagonal factorization.

An object of P(B) is a closed degree-0 element f: X -> Y of B that is
invertible in H^0(B). Hom_P((f), (f')) in degree n is
Hom(X, X')^n (+) Hom(Y, Y')^n (+) Hom(X, Y')^{n-1}, the homotopy
pullback of postcomposition by f' and precomposition by f, so a
degree-0 triple (m_X, m_Y, h) is closed exactly when m_X and m_Y are
closed and d(h) = m_Y . f - f' . m_X.

Composition of (m'_X, m'_Y, h') of degree m after (m_X, m_Y, h):
(m'_X m_X, m'_Y m_Y, h' m_X + (-1)^m m'_Y h). The Koszul sign is forced
by the Leibniz rule for the pullback differential; degree 0 reduces to
the anchor formula above.

Over the one-object or arrow-type bases the set of objects is finite
once coefficients are enumerated: all residues over F_p and an integer
lattice bound over Q (the closed-invertible locus over Q is infinite;
the bound is configuration, not mathematics).
"""

from __future__ import annotations

import itertools

from .complexes import ChainMap, Complex, homotopy_pullback
from .dgcat import (
    DgCategory, DgFunctor, H0Category, MorphismElement, compose, diagonal,
    differential, element, h0, identity_element, is_closed_element, product,
    zero_element,
)
from .fam import TAlgebra, materialize
from .matrix import Matrix


def postcompose_chain_map(base, g, X) -> ChainMap:
    """Hom(X, src g) -> Hom(X, tgt g), m |-> g . m, as a chain map."""
    fld = base.field
    src = base.hom(X, g.source)
    tgt = base.hom(X, g.target)
    comps = {}
    for n in src.support():
        cols = []
        for idx in range(src.dim(n)):
            m = MorphismElement(X, g.source, n,
                                tuple(fld.one if k == idx else fld.zero
                                      for k in range(src.dim(n))))
            cols.append(compose(base, g, m).coeffs)
        comps[n] = Matrix.from_cols(fld, cols, rows=tgt.dim(n + g.degree))
    return ChainMap(src, tgt, comps, degree=g.degree)


def precompose_chain_map(base, f, Z) -> ChainMap:
    """Hom(tgt f, Z) -> Hom(src f, Z), m |-> m . f, as a chain map."""
    fld = base.field
    src = base.hom(f.target, Z)
    tgt = base.hom(f.source, Z)
    comps = {}
    for n in src.support():
        cols = []
        for idx in range(src.dim(n)):
            m = MorphismElement(f.target, Z, n,
                                tuple(fld.one if k == idx else fld.zero
                                      for k in range(src.dim(n))))
            cols.append(compose(base, m, f).coeffs)
        comps[n] = Matrix.from_cols(fld, cols, rows=tgt.dim(n + f.degree))
    return ChainMap(src, tgt, comps, degree=f.degree)


class PathBase:
    """P(B) presented lazily over any dg base."""

    def __init__(self, base):
        self.base = base
        self.field = base.field
        self._hom_cache = {}

    def hom(self, fo: MorphismElement, go: MorphismElement) -> Complex:
        key = (fo, go)
        hit = self._hom_cache.get(key)
        if hit is None:
            u = postcompose_chain_map(self.base, go, fo.source)
            v = precompose_chain_map(self.base, fo, go.target)
            hit, _, _ = homotopy_pullback(u, v)
            self._hom_cache[key] = hit
        return hit

    def parts(self, fo, go, degree):
        """(dim_a, dim_b, dim_h) of Hom_P in the given degree."""
        a = self.base.hom(fo.source, go.source).dim(degree)
        b = self.base.hom(fo.target, go.target).dim(degree)
        c = self.base.hom(fo.source, go.target).dim(degree - 1)
        return a, b, c

    def split(self, m: MorphismElement):
        """(m_X, m_Y, h) components of a path element."""
        fo, go, n = m.source, m.target, m.degree
        a, b, c = self.parts(fo, go, n)
        mx = MorphismElement(fo.source, go.source, n, m.coeffs[:a])
        my = MorphismElement(fo.target, go.target, n, m.coeffs[a:a + b])
        h = MorphismElement(fo.source, go.target, n - 1, m.coeffs[a + b:a + b + c])
        return mx, my, h

    def join(self, fo, go, degree, mx, my, h) -> MorphismElement:
        a, b, c = self.parts(fo, go, degree)
        if (len(mx.coeffs), len(my.coeffs), len(h.coeffs)) != (a, b, c):
            raise ValueError("component sizes do not fit the path Hom layout")
        return MorphismElement(fo, go, degree, mx.coeffs + my.coeffs + h.coeffs)

    def compose_basis(self, fo, go, ho, gdeg, gidx, fdeg, fidx):
        fld = self.field
        out_deg = gdeg + fdeg
        out_dim = self.hom(fo, ho).dim(out_deg)
        out = [fld.zero] * out_dim
        ga, gb, gc = self.parts(go, ho, gdeg)
        fa, fb, fc = self.parts(fo, go, fdeg)
        oa, ob, oc = self.parts(fo, ho, out_deg)

        def put(offset, coeffs, sign=None):
            for k, v in enumerate(coeffs):
                val = v if sign is None else fld.mul(sign, v)
                out[offset + k] = fld.add(out[offset + k], val)

        if gidx < ga and fidx < fa:
            g_el = _basis(self.base, go.source, ho.source, gdeg, gidx, ga)
            f_el = _basis(self.base, fo.source, go.source, fdeg, fidx, fa)
            put(0, compose(self.base, g_el, f_el).coeffs)
        elif ga <= gidx < ga + gb and fa <= fidx < fa + fb:
            g_el = _basis(self.base, go.target, ho.target, gdeg, gidx - ga, gb)
            f_el = _basis(self.base, fo.target, go.target, fdeg, fidx - fa, fb)
            put(oa, compose(self.base, g_el, f_el).coeffs)
        elif ga + gb <= gidx and fidx < fa:
            # h' . m_X
            g_el = _basis(self.base, go.source, ho.target, gdeg - 1, gidx - ga - gb, gc)
            f_el = _basis(self.base, fo.source, go.source, fdeg, fidx, fa)
            put(oa + ob, compose(self.base, g_el, f_el).coeffs)
        elif ga <= gidx < ga + gb and fa + fb <= fidx:
            # (-1)^{|g|} m'_Y . h
            g_el = _basis(self.base, go.target, ho.target, gdeg, gidx - ga, gb)
            f_el = _basis(self.base, fo.source, go.target, fdeg - 1, fidx - fa - fb, fc)
            sign = fld.one if gdeg % 2 == 0 else fld.neg(fld.one)
            put(oa + ob, compose(self.base, g_el, f_el).coeffs, sign)
        return tuple(out)

    def id_coeffs(self, fo):
        fld = self.field
        a, b, c = self.parts(fo, fo, 0)
        out = [fld.zero] * (a + b + c)
        for k, v in enumerate(self.base.id_coeffs(fo.source)):
            out[k] = v
        for k, v in enumerate(self.base.id_coeffs(fo.target)):
            out[a + k] = v
        return tuple(out)


def _basis(base, x, y, degree, idx, dim):
    fld = base.field
    return MorphismElement(x, y, degree,
                           tuple(fld.one if k == idx else fld.zero for k in range(dim)))


def compose_path(P: PathBase, g: MorphismElement, f: MorphismElement) -> MorphismElement:
    return compose(P, g, f)


def path_cycle_law_holds(P: PathBase, m: MorphismElement) -> bool:
    """Degree-0 element closed iff components closed and d(h) = m_Y f - f' m_X."""
    base = P.base
    fo, go = m.source, m.target
    mx, my, h = P.split(m)
    lhs = differential(base, h)
    rhs_coeffs = compose(base, my, fo)
    rhs2 = compose(base, go, mx)
    fld = base.field
    rhs = tuple(fld.sub(x, y) for x, y in zip(rhs_coeffs.coeffs, rhs2.coeffs))
    law = (is_closed_element(base, mx) and is_closed_element(base, my)
           and lhs.coeffs == rhs)
    return law == is_closed_element(P, m)


# ---------------------------------------------------------------------------
# enumeration and the factorization through P


def enumerate_path_objects(B, bound=2, h0cat=None):
    """All (over F_p) or lattice-bounded (over Q) closed degree-0
    H0-invertible elements, identities always included, canonically ordered."""
    fld = B.field
    cat = h0cat or h0(B, check_well_defined=False)
    found = {}
    for x in B.objects:
        el = identity_element(B, x)
        found[(x, x, el.coeffs)] = el
    scalars = fld.lattice(bound)
    for x in B.objects:
        for y in B.objects:
            cx = B.hom(x, y)
            kernel = cx.diff(0).kernel_basis()
            if not kernel:
                continue
            if len(scalars) ** len(kernel) > 100000:
                raise ValueError("path object enumeration too large at (%s,%s)" % (x, y))
            for combo in itertools.product(scalars, repeat=len(kernel)):
                vec = [fld.zero] * cx.dim(0)
                for c, basis_vec in zip(combo, kernel):
                    for k, v in enumerate(basis_vec):
                        vec[k] = fld.add(vec[k], fld.mul(c, v))
                el = MorphismElement(x, y, 0, tuple(vec))
                key = (x, y, el.coeffs)
                if key in found:
                    continue
                coords = cat.space(x, y).reduce(el.coeffs)
                if coords is not None and cat.is_invertible_class(x, y, coords):
                    found[key] = el

    obj_index = {x: i for i, x in enumerate(B.objects)}

    def sort_key(el):
        return (obj_index[el.source], obj_index[el.target],
                tuple(fld.fmt(c) for c in el.coeffs))

    return sorted(found.values(), key=sort_key)


def build_path(B, bound=2):
    """The full path factorization for a finite dg category.

    Returns a dict with the materialized path category P, the functors
    i: B -> P and q: P -> B x B, the product with its diagonal, and the
    object list.
    """
    fld = B.field
    objects = enumerate_path_objects(B, bound)
    lazy = PathBase(B)
    P = materialize(lazy, objects)
    BB, pr1, pr2 = product(B, B)
    diag = diagonal(B, BB)
    ids = {x: identity_element(B, x) for x in B.objects}

    def i_mats(x, y, n):
        d = B.hom(x, y).dim(n)
        fo, go = ids[x], ids[y]
        a, b, c = lazy.parts(fo, go, n)
        ident = Matrix.identity(fld, d)
        return ident.vstack(ident).vstack(Matrix.zero(fld, c, d))

    i_functor = DgFunctor(B, P, lambda x: ids[x], i_mats, name="path-unit")

    def q_mats(fo, go, n):
        a, b, c = lazy.parts(fo, go, n)
        top = Matrix.identity(fld, a).hstack(Matrix.zero(fld, a, b + c))
        bot = Matrix.zero(fld, b, a).hstack(Matrix.identity(fld, b)).hstack(
            Matrix.zero(fld, b, c))
        return top.vstack(bot)

    q_functor = DgFunctor(P, BB, lambda fo: (fo.source, fo.target), q_mats,
                          name="path-projection")
    return {
        "category": P,
        "lazy": lazy,
        "objects": objects,
        "i": i_functor,
        "q": q_functor,
        "product": BB,
        "diagonal": diag,
    }


# ---------------------------------------------------------------------------
# the algebra structure on P


def path_algebra_structure(alg: TAlgebra, object_sampler=None) -> TAlgebra:
    """Componentwise sums of path objects over an algebra's carrier."""
    carrier = alg.carrier
    P = PathBase(carrier)

    def sum_obj(family):
        fx = tuple(fo.source for fo in family)
        fy = tuple(fo.target for fo in family)
        sx, sy = alg.sum_obj(fx), alg.sum_obj(fy)
        legs = [compose(carrier, alg.injection(fy, i), family[i])
                for i in range(len(family))]
        return alg.cotuple(fx, sy, legs) if family else alg.cotuple((), sy, [])

    def injection(family, x):
        total = sum_obj(family)
        fx = tuple(fo.source for fo in family)
        fy = tuple(fo.target for fo in family)
        mx = alg.injection(fx, x)
        my = alg.injection(fy, x)
        h = zero_element(carrier, family[x].source, total.target, -1)
        return P.join(family[x], total, 0, mx, my, h)

    def cotuple(family, go, morphisms):
        total = sum_obj(family)
        fx = tuple(fo.source for fo in family)
        fy = tuple(fo.target for fo in family)
        degree = morphisms[0].degree if morphisms else 0
        mxs, mys, hs = [], [], []
        for m in morphisms:
            mx, my, h = P.split(m)
            mxs.append(mx)
            mys.append(my)
            hs.append(h)
        return P.join(total, go, degree,
                      alg.cotuple(fx, go.source, mxs),
                      alg.cotuple(fy, go.target, mys),
                      alg.cotuple(fx, go.target, hs))

    sampler = object_sampler or (lambda rng: sample_strict_auto(carrier, rng,
                                                                alg.object_sampler(rng)))
    return TAlgebra(P, sum_obj, injection, cotuple, sampler,
                    name="path(%s)" % alg.name)


def sample_strict_auto(carrier, rng, X, attempts=8):
    """A strictly invertible closed degree-0 endomorphism of X (fallback: id)."""
    fld = carrier.field
    cx = carrier.hom(X, X)
    kernel = cx.diff(0).kernel_basis()
    ident = identity_element(carrier, X)
    for _ in range(attempts):
        coeffs = [fld.zero] * cx.dim(0)
        for v in kernel:
            c = fld.sample(rng)
            for k, val in enumerate(v):
                coeffs[k] = fld.add(coeffs[k], fld.mul(c, val))
        g = MorphismElement(X, X, 0, tuple(coeffs))
        inv = strict_inverse(carrier, g)
        if inv is not None:
            return g
    return ident


def strict_inverse(carrier, g):
    """Two-sided strict inverse of a closed degree-0 element, or None."""
    fld = carrier.field
    if g.source != g.target:
        back = carrier.hom(g.target, g.source)
    else:
        back = carrier.hom(g.source, g.source)
    dim = back.dim(0)
    idl = identity_element(carrier, g.source)
    idr = identity_element(carrier, g.target)
    cols = []
    for idx in range(dim):
        cand = MorphismElement(g.target, g.source, 0,
                               tuple(fld.one if k == idx else fld.zero
                                     for k in range(dim)))
        cols.append(tuple(compose(carrier, cand, g).coeffs)
                    + tuple(compose(carrier, g, cand).coeffs))
    target = tuple(idl.coeffs) + tuple(idr.coeffs)
    M = Matrix.from_cols(fld, cols, rows=len(target))
    sol = M.solve(target)
    if sol is None:
        return None
    return MorphismElement(g.target, g.source, 0, tuple(sol))


# ---------------------------------------------------------------------------
# cones and suspensions of path objects over a twisted-model carrier


def cone_in_path(model, c: MorphismElement, P: PathBase | None = None):
    """Cone of a closed degree-0 path morphism over a twisted-model carrier.

    Returns a dict: the comparison morphism as a path object
    (Phi: cone(m_X) -> cone(m_Y)), its blocks in the matrix presentation
    [[f', h], [0, S(f)]], and the canonical closed path morphism from the
    target of c into the new object (zero homotopy component).
    """
    P = P or PathBase(model)
    if c.degree != 0:
        raise ValueError("cone_in_path needs a degree-0 path morphism")
    if not is_closed_element(P, c):
        raise ValueError("cone_in_path needs a closed path morphism")
    fo, go = c.source, c.target
    mx, my, h = P.split(c)
    cone_x, inj_x, proj_x = model.cone_obj(mx)
    cone_y, inj_y, proj_y = model.cone_obj(my)
    nmx = len(fo.source.terms)   # X[1]-part of cone(m_X)
    nmy = len(fo.target.terms)   # Y[1]-part of cone(m_Y)

    comps = {}
    # S(f): X[1] part -> Y[1] part
    for s in range(nmy):
        for t in range(nmx):
            comps[(s, t)] = model.component(fo, s, t)
    # h: X[1] part -> Y' part, verbatim coefficients
    for s in range(len(go.target.terms)):
        for t in range(nmx):
            comps[(nmy + s, t)] = model.component(h, s, t)
    # f': X' part -> Y' part
    for s in range(len(go.target.terms)):
        for t in range(len(go.source.terms)):
            comps[(nmy + s, nmx + t)] = model.component(go, s, t)
    phi = model.from_components(cone_x, cone_y, 0, comps)

    canonical = P.join(go, phi, 0, inj_x, inj_y,
                       zero_element(model, go.source, cone_y, -1))
    blocks = {
        "target_map": go,
        "homotopy_block": h,
        "shifted_source_map": model.shift_morphism(fo, 1),
    }
    return {"phi": phi, "cone_source": cone_x, "cone_target": cone_y,
            "canonical": canonical, "blocks": blocks,
            "injections": (inj_x, inj_y), "projections": (proj_x, proj_y)}


def read_phi_blocks(model, data):
    """Read the assembled comparison map back in its matrix presentation
    [[f', h], [0, S(f)]]; returns the four blocks as component dicts."""
    phi = data["phi"]
    cone_y = data["cone_target"]
    fo_shift = data["blocks"]["shifted_source_map"]
    go = data["blocks"]["target_map"]
    nmx = len(fo_shift.source.terms)
    nmy = len(cone_y.terms) - len(go.target.terms)
    blocks = {"f_prime": {}, "h": {}, "zero": {}, "shifted_f": {}}
    for s in range(len(cone_y.terms)):
        for t in range(len(data["cone_source"].terms)):
            comp = model.component(phi, s, t)
            if s < nmy and t < nmx:
                blocks["shifted_f"][(s, t)] = comp
            elif s < nmy:
                blocks["zero"][(s, t - nmx)] = comp
            elif t < nmx:
                blocks["h"][(s - nmy, t)] = comp
            else:
                blocks["f_prime"][(s - nmy, t - nmx)] = comp
    return blocks


def suspend_path_object(model, fo: MorphismElement, s: int):
    """Componentwise suspension of a path object with a strict witness pair.

    Returns (shifted object, unit, counit): unit is the closed degree -s
    path morphism (f) -> (Sigma^s f) with identity components and zero
    homotopy part; unit and counit compose to identities exactly.
    """
    if s not in (1, -1):
        raise ValueError("one suspension step at a time")
    P = PathBase(model)
    shifted = model.shift_morphism(fo, s)
    if s == 1:
        ux = model.shift_unit(fo.source)
        uy = model.shift_unit(fo.target)
        cx = model.shift_counit(fo.source)
        cy = model.shift_counit(fo.target)
    else:
        ux = model.reinterpret_target(
            MorphismElement(fo.source, fo.source, 0, tuple(model.id_coeffs(fo.source))), -1)
        uy = model.reinterpret_target(
            MorphismElement(fo.target, fo.target, 0, tuple(model.id_coeffs(fo.target))), -1)
        cx = model.reinterpret_source(
            MorphismElement(fo.source, fo.source, 0, tuple(model.id_coeffs(fo.source))), -1)
        cy = model.reinterpret_source(
            MorphismElement(fo.target, fo.target, 0, tuple(model.id_coeffs(fo.target))), -1)
    unit = P.join(fo, shifted, -s, ux, uy,
                  zero_element(model, fo.source, shifted.target, -s - 1))
    counit = P.join(shifted, fo, s, cx, cy,
                    zero_element(model, shifted.source, fo.target, s - 1))
    return shifted, unit, counit
