"""The families construction on dg categories and its algebras.

T(A) has as objects finite ordered families (tuples) of A-objects; the
Hom complex between families F and G is the product over source indices
of the sum over target indices of the base Homs, realized as one block
sum with basis keys (i, j, base-basis-index). Composition is the
matrix-style pairing induced from A. The unit eta embeds singletons and
the multiplication mu concatenates, which is the finite realization of
the ordinal sum.

An algebra over the construction is stored as its chosen-sum data: a sum
object per family, canonical injections, and a cotuple solver. The free
algebra on A carries T(A) with concatenation sums.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .complexes import Complex
from .dgcat import (
    DgCategory, DgFunctor, MorphismElement, compose, differential, element,
    identity_element,
)
from .matrix import Matrix


class RegularityError(Exception):
    """A family operation exceeded a finite cutoff (the non-regular case)."""


@dataclass(frozen=True)
class AlphaCutoff:
    mode: str = "countable"  # "countable" | "finite"
    n: int = 0

    def admissible(self, length: int) -> bool:
        if self.mode == "countable":
            return True
        return length < self.n

    def check(self, length: int, context: str):
        if not self.admissible(length):
            raise RegularityError(
                "%s produced a family of length %d, not below the finite cutoff %d"
                % (context, length, self.n))


COUNTABLE = AlphaCutoff()


class FamilyCategory:
    """T(A): the dg category of finite families over a base."""

    def __init__(self, base, cutoff: AlphaCutoff = COUNTABLE):
        self.base = base
        self.cutoff = cutoff
        self.field = base.field
        self._hom_cache = {}
        self._layout_cache = {}

    def _check_obj(self, F):
        if not self.cutoff.admissible(len(F)):
            raise RegularityError("family of length %d not admissible" % len(F))

    def layout(self, F, G, degree):
        """Block layout of Hom(F, G)^degree: list of (i, j, dim, offset)."""
        key = (F, G, degree)
        lay = self._layout_cache.get(key)
        if lay is None:
            lay = []
            off = 0
            for i in range(len(F)):
                for j in range(len(G)):
                    d = self.base.hom(F[i], G[j]).dim(degree)
                    if d:
                        lay.append((i, j, d, off))
                        off += d
            self._layout_cache[key] = lay
        return lay

    def hom(self, F, G) -> Complex:
        key = (F, G)
        cx = self._hom_cache.get(key)
        if cx is not None:
            return cx
        self._check_obj(F)
        self._check_obj(G)
        degrees = set()
        for i in range(len(F)):
            for j in range(len(G)):
                degrees |= set(self.base.hom(F[i], G[j]).dims)
        dims = {}
        for n in degrees:
            dims[n] = sum(d for (_, _, d, _) in self.layout(F, G, n))
        diffs = {}
        fld = self.field
        for n in dims:
            rows = dims.get(n + 1, 0)
            if rows == 0:
                continue
            lay_n = self.layout(F, G, n)
            lay_n1 = self.layout(F, G, n + 1)
            pos = {(i, j): off for (i, j, _, off) in lay_n1}
            cols = []
            for (i, j, d, _) in lay_n:
                block_d = self.base.hom(F[i], G[j]).diff(n)
                for c in range(d):
                    col = [fld.zero] * rows
                    if block_d.rows:
                        off1 = pos.get((i, j))
                        for r in range(block_d.rows):
                            col[off1 + r] = block_d.data[r][c]
                    cols.append(tuple(col))
            diffs[n] = Matrix.from_cols(fld, cols, rows=rows) if cols else Matrix.zero(fld, rows, 0)
        cx = Complex(fld, dims, diffs)
        self._hom_cache[key] = cx
        return cx

    def decode(self, F, G, degree, idx):
        for (i, j, d, off) in self.layout(F, G, degree):
            if off <= idx < off + d:
                return i, j, idx - off
        raise IndexError("basis index %d out of range" % idx)

    def encode(self, F, G, degree, i, j, local):
        for (ii, jj, d, off) in self.layout(F, G, degree):
            if (ii, jj) == (i, j):
                return off + local
        raise IndexError("block (%d,%d) empty in degree %d" % (i, j, degree))

    def compose_basis(self, F, G, H, gdeg, gidx, fdeg, fidx):
        fld = self.field
        out_dim = self.hom(F, H).dim(gdeg + fdeg)
        out = [fld.zero] * out_dim
        jg, l, bg = self.decode(G, H, gdeg, gidx)
        i, jf, bf = self.decode(F, G, fdeg, fidx)
        if jf == jg:
            vec = self.base.compose_basis(F[i], G[jf], H[l], gdeg, bg, fdeg, bf)
            lay = self.layout(F, H, gdeg + fdeg)
            off = None
            for (ii, ll, d, o) in lay:
                if (ii, ll) == (i, l):
                    off = o
                    break
            if off is not None:
                for k, v in enumerate(vec):
                    out[off + k] = v
        return tuple(out)

    def id_coeffs(self, F):
        fld = self.field
        dim = self.hom(F, F).dim(0)
        out = [fld.zero] * dim
        for i in range(len(F)):
            base_id = self.base.id_coeffs(F[i])
            if not base_id:
                continue
            off = self.encode(F, F, 0, i, i, 0)
            for k, v in enumerate(base_id):
                out[off + k] = v
        return tuple(out)

    def component(self, m: MorphismElement, i, j) -> MorphismElement:
        """The (i, j) block of a family morphism, as a base element."""
        F, G = m.source, m.target
        base_cx = self.base.hom(F[i], G[j])
        dim = base_cx.dim(m.degree)
        fld = self.field
        coeffs = [fld.zero] * dim
        for (ii, jj, d, off) in self.layout(F, G, m.degree):
            if (ii, jj) == (i, j):
                coeffs = list(m.coeffs[off:off + d])
        return MorphismElement(F[i], G[j], m.degree, tuple(coeffs))

    def from_components(self, F, G, degree, comps) -> MorphismElement:
        """Assemble a family morphism from base components {(i, j): elt}."""
        fld = self.field
        dim = self.hom(F, G).dim(degree)
        out = [fld.zero] * dim
        for (i, j), el in comps.items():
            if el.degree != degree:
                raise ValueError("component degree mismatch")
            for (ii, jj, d, off) in self.layout(F, G, degree):
                if (ii, jj) == (i, j):
                    for k, v in enumerate(el.coeffs):
                        out[off + k] = v
        return MorphismElement(F, G, degree, tuple(out))


def t_of(A, cutoff: AlphaCutoff = COUNTABLE) -> FamilyCategory:
    return FamilyCategory(A, cutoff)


def eta(A, T: FamilyCategory) -> DgFunctor:
    """The singleton embedding A -> T(A); fully faithful at chain level."""
    def hmats(x, y, deg):
        d = A.hom(x, y).dim(deg)
        return Matrix.identity(A.field, d)

    return DgFunctor(A, T, lambda x: (x,), hmats, name="eta")


def flatten_family(FF, cutoff: AlphaCutoff = COUNTABLE):
    flat = tuple(itertools.chain.from_iterable(FF))
    cutoff.check(len(flat), "flattening")
    return flat


def mu(T2: FamilyCategory, T1: FamilyCategory) -> DgFunctor:
    """Concatenation T(T(A)) -> T(A); Hom maps are the regrouping bijections."""
    cutoff = T1.cutoff

    def omap(FF):
        return flatten_family(FF, cutoff)

    def hmats(FF, GG, deg):
        flat_f, flat_g = omap(FF), omap(GG)
        src = T2.hom(FF, GG)
        tgt = T1.hom(flat_f, flat_g)
        off_f = [0]
        for fam in FF:
            off_f.append(off_f[-1] + len(fam))
        off_g = [0]
        for fam in GG:
            off_g.append(off_g[-1] + len(fam))
        fld = T1.field
        cols = []
        for idx in range(src.dim(deg)):
            x, y, inner = T2.decode(FF, GG, deg, idx)
            i, j, b = T1.decode(FF[x], GG[y], deg, inner)
            tgt_idx = T1.encode(flat_f, flat_g, deg,
                                off_f[x] + i, off_g[y] + j, b)
            col = [fld.zero] * tgt.dim(deg)
            col[tgt_idx] = fld.one
            cols.append(tuple(col))
        return Matrix.from_cols(fld, cols, rows=tgt.dim(deg))

    return DgFunctor(T2, T1, omap, hmats, name="mu")


def t_of_functor(G: DgFunctor, T_src: FamilyCategory, T_tgt: FamilyCategory) -> DgFunctor:
    """Apply the families construction to a functor: entrywise objects,
    blockwise Hom matrices."""
    def omap(F):
        return tuple(G.obj(x) for x in F)

    def hmats(F, F2, deg):
        src = T_src.hom(F, F2)
        tgt_obj, tgt_obj2 = omap(F), omap(F2)
        tgt = T_tgt.hom(tgt_obj, tgt_obj2)
        fld = T_src.field
        cols = []
        for idx in range(src.dim(deg)):
            i, j, b = T_src.decode(F, F2, deg, idx)
            block = G.hom_matrix(F[i], F2[j], deg)
            col = [fld.zero] * tgt.dim(deg)
            if block.rows:
                off = T_tgt.encode(tgt_obj, tgt_obj2, deg, i, j, 0)
                for r in range(block.rows):
                    col[off + r] = block.data[r][b]
            cols.append(tuple(col))
        return Matrix.from_cols(fld, cols, rows=tgt.dim(deg))

    return DgFunctor(T_src, T_tgt, omap, hmats, name="T(%s)" % G.name)


def materialize(base, objects, payload_names=False) -> DgCategory:
    """Finite full subcategory on the given objects, as an explicit DgCategory."""
    objects = list(objects)
    homs = {}
    comp = {}
    ids = {}
    for x in objects:
        for y in objects:
            homs[(x, y)] = base.hom(x, y)
    for x in objects:
        for y in objects:
            for z in objects:
                table = {}
                hxy, hyz = homs[(x, y)], homs[(y, z)]
                for gdeg in hyz.support():
                    for fdeg in hxy.support():
                        for gidx in range(hyz.dim(gdeg)):
                            for fidx in range(hxy.dim(fdeg)):
                                vec = base.compose_basis(x, y, z, gdeg, gidx, fdeg, fidx)
                                if any(not base.field.is_zero(v) for v in vec):
                                    table[(gdeg, gidx, fdeg, fidx)] = tuple(vec)
                if table:
                    comp[(x, y, z)] = table
        ids[x] = tuple(base.id_coeffs(x))
    return DgCategory(base.field, objects, homs, comp, ids)


# ---------------------------------------------------------------------------
# law checking


def _random_family(rng, objs, max_len, min_len=0):
    k = rng.randint(min_len, max_len)
    return tuple(rng.choice(objs) for _ in range(k))


def _random_nested(rng, objs, depth, max_len):
    if depth == 0:
        return rng.choice(objs)
    return tuple(_random_nested(rng, objs, depth - 1, max_len)
                 for _ in range(rng.randint(0, max_len)))


def check_monad_laws(A, rng, count=100, max_len=3,
                     cutoff: AlphaCutoff = COUNTABLE, mu_impl=None):
    """Exact check of associativity and both unit triangles on seeded samples.

    mu_impl optionally substitutes the multiplication (test hook); it gets
    (T2, T1) and must return a functor T2 -> T1.
    """
    make_mu = mu_impl or mu
    T1 = t_of(A, cutoff)
    T2 = t_of(T1, cutoff)
    T3 = t_of(T2, cutoff)
    mu_A = make_mu(T2, T1)
    mu_TA = make_mu(T3, T2)
    t_mu = t_of_functor(mu_A, T3, T2)
    eta_A = eta(A, T1)
    eta_TA = eta(T1, T2)
    t_eta = t_of_functor(eta_A, T1, T2)
    checks = []
    objs = list(A.objects)

    def hom_matrices_equal(Fu, Gu, left, right, src_cat):
        cx = src_cat.hom(Fu, Gu)
        for n in cx.support():
            if left.hom_matrix(Fu, Gu, n) != right.hom_matrix(Fu, Gu, n):
                return n
        return None

    for k in range(count):
        FF3 = _random_nested(rng, objs, 3, max_len)
        GG3 = _random_nested(rng, objs, 3, max_len)
        entry = {"law": "associativity", "sample": repr((FF3, GG3)), "passed": True,
                 "witness": None}
        try:
            left = t_mu.then(mu_A)    # mu . T(mu)
            right = mu_TA.then(mu_A)  # mu . mu_T
            if left.obj(FF3) != right.obj(FF3):
                entry["passed"] = False
                entry["witness"] = {"kind": "object", "left": repr(left.obj(FF3)),
                                    "right": repr(right.obj(FF3))}
            else:
                bad = hom_matrices_equal(FF3, GG3, left, right, T3)
                if bad is not None:
                    entry["passed"] = False
                    entry["witness"] = {"kind": "hom", "degree": bad}
        except RegularityError as exc:
            entry["passed"] = False
            entry["witness"] = {"kind": "regularity", "detail": str(exc)}
        checks.append(entry)

    for k in range(count):
        F1 = _random_family(rng, objs, max_len)
        G1 = _random_family(rng, objs, max_len)
        for law, functor in (("unit.eta_T", eta_TA.then(mu_A)),
                             ("unit.T_eta", t_eta.then(mu_A))):
            entry = {"law": law, "sample": repr((F1, G1)), "passed": True,
                     "witness": None}
            try:
                if functor.obj(F1) != F1:
                    entry["passed"] = False
                    entry["witness"] = {"kind": "object", "got": repr(functor.obj(F1))}
                else:
                    cx = T1.hom(F1, G1)
                    for n in cx.support():
                        if functor.hom_matrix(F1, G1, n) != Matrix.identity(A.field, cx.dim(n)):
                            entry["passed"] = False
                            entry["witness"] = {"kind": "hom", "degree": n}
                            break
            except RegularityError as exc:
                entry["passed"] = False
                entry["witness"] = {"kind": "regularity", "detail": str(exc)}
            checks.append(entry)
    passed = all(c["passed"] for c in checks)
    return {"passed": passed, "checks": checks}


# ---------------------------------------------------------------------------
# algebras


class TAlgebra:
    """A carrier dg category with chosen sums: sum object, injections, cotuple."""

    def __init__(self, carrier, sum_obj, injection, cotuple, object_sampler,
                 name=""):
        self.carrier = carrier
        self.sum_obj = sum_obj
        self.injection = injection
        self.cotuple = cotuple
        self.object_sampler = object_sampler
        self.name = name

    def sample_family(self, rng, max_len=3, min_len=0):
        k = rng.randint(min_len, max_len)
        return tuple(self.object_sampler(rng) for _ in range(k))


def free_algebra(A, cutoff: AlphaCutoff = COUNTABLE) -> TAlgebra:
    """The free algebra on A: carrier T(A), sums by concatenation."""
    T = t_of(A, cutoff)

    def sum_obj(family):
        return flatten_family(family, cutoff)

    def injection(family, x):
        total = sum_obj(family)
        off = sum(len(f) for f in family[:x])
        comps = {}
        for i, obj in enumerate(family[x]):
            comps[(i, off + i)] = identity_element(A, obj)
        return T.from_components(family[x], total, 0, comps)

    def cotuple(family, Z, morphisms):
        total = sum_obj(family)
        comps = {}
        off = 0
        for x, fam in enumerate(family):
            m = morphisms[x]
            if m.source != fam or m.target != Z:
                raise ValueError("cotuple input %d has wrong endpoints" % x)
            for i in range(len(fam)):
                for j in range(len(Z)):
                    comps[(off + i, j)] = T.component(m, i, j)
            off += len(fam)
        degree = morphisms[0].degree if morphisms else 0
        return T.from_components(total, Z, degree, comps)

    objs = list(A.objects)

    def sampler(rng):
        return _random_family(rng, objs, 3)

    return TAlgebra(T, sum_obj, injection, cotuple, sampler,
                    name="free(%s)" % getattr(A, "name", ""))


def additive_hull(A0, cutoff: AlphaCutoff = COUNTABLE) -> TAlgebra:
    """Formal finite sequences of A0-objects with matrix Hom complexes and
    concatenation sums; the canonical witness that chosen sums exist."""
    return free_algebra(A0, cutoff)


def check_algebra(alg: TAlgebra, rng, count=100, max_len=3):
    """Unit and associativity squares plus the exact universal property,
    on seeded samples. Witnesses name the failing family."""
    carrier = alg.carrier
    fld = carrier.field
    checks = []

    for _ in range(count // 3 + 1):
        X = alg.object_sampler(rng)
        entry = {"law": "unit", "sample": repr(X), "passed": True, "witness": None}
        s = alg.sum_obj((X,))
        if s != X:
            entry["passed"] = False
            entry["witness"] = {"kind": "object", "got": repr(s)}
        elif alg.injection((X,), 0) != identity_element(carrier, X):
            entry["passed"] = False
            entry["witness"] = {"kind": "injection"}
        checks.append(entry)

    for _ in range(count // 3 + 1):
        FF = tuple(alg.sample_family(rng, max_len) for _ in range(rng.randint(0, max_len)))
        entry = {"law": "associativity", "sample": repr(FF), "passed": True,
                 "witness": None}
        flat = tuple(itertools.chain.from_iterable(FF))
        lhs = alg.sum_obj(flat)
        rhs = alg.sum_obj(tuple(alg.sum_obj(F) for F in FF))
        if lhs != rhs:
            entry["passed"] = False
            entry["witness"] = {"kind": "object", "left": repr(lhs), "right": repr(rhs)}
        else:
            pos = 0
            for x, F in enumerate(FF):
                outer = alg.injection(tuple(alg.sum_obj(G) for G in FF), x)
                for i in range(len(F)):
                    inner = alg.injection(F, i)
                    via = compose(carrier, outer, inner)
                    direct = alg.injection(flat, pos)
                    if via != direct:
                        entry["passed"] = False
                        entry["witness"] = {"kind": "injection", "index": [x, i]}
                    pos += 1
        checks.append(entry)

    for _ in range(count // 3 + 1):
        F = alg.sample_family(rng, max_len)
        Z = alg.object_sampler(rng)
        entry = {"law": "universal_property", "sample": repr((F, Z)),
                 "passed": True, "witness": None}
        ok = _universal_property_holds(alg, F, Z)
        if not ok:
            entry["passed"] = False
            entry["witness"] = {"kind": "restriction", "family": repr(F)}
        checks.append(entry)

    passed = all(c["passed"] for c in checks)
    return {"passed": passed, "checks": checks}


def _universal_property_holds(alg: TAlgebra, F, Z) -> bool:
    """Hom(sum F, Z) -> prod_x Hom(F_x, Z) by injection precomposition is an
    exact isomorphism of complexes (degreewise bijective chain map)."""
    carrier = alg.carrier
    fld = carrier.field
    S = alg.sum_obj(F)
    hs = carrier.hom(S, Z)
    parts = [carrier.hom(Fx, Z) for Fx in F]
    injections = [alg.injection(F, x) for x in range(len(F))]
    degrees = set(hs.dims)
    for p in parts:
        degrees |= set(p.dims)
    for n in sorted(degrees):
        total = sum(p.dim(n) for p in parts)
        if hs.dim(n) != total:
            return False
        cols = []
        for idx in range(hs.dim(n)):
            coeffs = tuple(fld.one if k == idx else fld.zero for k in range(hs.dim(n)))
            m = MorphismElement(S, Z, n, coeffs)
            col = []
            for x in range(len(F)):
                col.extend(compose(carrier, m, injections[x]).coeffs)
            cols.append(tuple(col))
        M = Matrix.from_cols(fld, cols, rows=total)
        if M.rank() != total:
            return False
        # chain-map condition: restriction commutes with the differentials
        for idx in range(hs.dim(n)):
            coeffs = tuple(fld.one if k == idx else fld.zero for k in range(hs.dim(n)))
            m = MorphismElement(S, Z, n, coeffs)
            dm = differential(carrier, m)
            for x in range(len(F)):
                lhs = compose(carrier, dm, injections[x])
                rhs = differential(carrier, compose(carrier, m, injections[x]))
                if lhs != rhs:
                    return False
    return True


@dataclass
class AlgebraMorphism:
    source: TAlgebra
    target: TAlgebra
    functor: DgFunctor


def check_algebra_morphism(G: AlgebraMorphism, rng, count=50, max_len=3):
    """The defining square: G(sum F) = sum(G . F) with injection compatibility."""
    checks = []
    A, B = G.source, G.target
    for _ in range(count):
        F = A.sample_family(rng, max_len)
        entry = {"law": "preserves_sums", "sample": repr(F), "passed": True,
                 "witness": None}
        lhs = G.functor.obj(A.sum_obj(F))
        GF = tuple(G.functor.obj(x) for x in F)
        rhs = B.sum_obj(GF)
        if lhs != rhs:
            entry["passed"] = False
            entry["witness"] = {"kind": "object", "family": repr(F),
                                "left": repr(lhs), "right": repr(rhs)}
        else:
            for x in range(len(F)):
                img = G.functor.apply(A.injection(F, x))
                if img != B.injection(GF, x):
                    entry["passed"] = False
                    entry["witness"] = {"kind": "injection", "family": repr(F),
                                        "index": x}
                    break
        checks.append(entry)
    passed = all(c["passed"] for c in checks)
    return {"passed": passed, "checks": checks}
