"""Finite dg categories with basis-explicit composition.

A dg category here is: a finite object set, a Hom complex per ordered
pair, structure constants for the degree-0 bilinear composition on the
chosen bases, and an identity 0-cycle per object. Every axiom
(associativity, units, Leibniz, d(id)=0) is an exact matrix identity.

Several lazily-presented categories elsewhere in the package (families,
twisted complexes, path categories) implement the same duck-typed
surface: .field, .hom(X, Y) -> Complex,
.compose_basis(X, Y, Z, gdeg, gidx, fdeg, fidx) -> coefficient tuple,
and .id_coeffs(X). The element-level helpers below work against that
surface, so predicates run unchanged over any of them once the object
set in play is finite.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .complexes import ChainMap, Complex, validate_complex
from .matrix import Matrix


@dataclass(frozen=True)
class MorphismElement:
    source: object
    target: object
    degree: int
    coeffs: tuple

    def is_zero_like(self, field):
        return all(field.is_zero(c) for c in self.coeffs)


# ---------------------------------------------------------------------------
# element-level operations over any dg base


def element(base, source, target, degree, coeffs):
    dim = base.hom(source, target).dim(degree)
    coeffs = tuple(coeffs)
    if len(coeffs) != dim:
        raise ValueError("coefficient length %d, expected %d" % (len(coeffs), dim))
    return MorphismElement(source, target, degree, coeffs)


def zero_element(base, source, target, degree=0):
    dim = base.hom(source, target).dim(degree)
    return MorphismElement(source, target, degree, (base.field.zero,) * dim)


def identity_element(base, x):
    return MorphismElement(x, x, 0, tuple(base.id_coeffs(x)))


def add_elements(base, a, b):
    f = base.field
    if (a.source, a.target, a.degree) != (b.source, b.target, b.degree):
        raise ValueError("cannot add elements of different type")
    return MorphismElement(a.source, a.target, a.degree,
                           tuple(f.add(x, y) for x, y in zip(a.coeffs, b.coeffs)))


def scale_element(base, c, a):
    f = base.field
    return MorphismElement(a.source, a.target, a.degree,
                           tuple(f.mul(c, x) for x in a.coeffs))


def negate_element(base, a):
    return scale_element(base, base.field.neg(base.field.one), a)


def compose(base, g, f):
    """g after f, by bilinear expansion of the structure constants."""
    if f.target != g.source:
        raise ValueError("composition mismatch: %r then %r" % (f, g))
    fld = base.field
    deg = g.degree + f.degree
    out_dim = base.hom(f.source, g.target).dim(deg)
    out = [fld.zero] * out_dim
    for j, gc in enumerate(g.coeffs):
        if fld.is_zero(gc):
            continue
        for i, fc in enumerate(f.coeffs):
            if fld.is_zero(fc):
                continue
            vec = base.compose_basis(f.source, f.target, g.target,
                                     g.degree, j, f.degree, i)
            c = fld.mul(gc, fc)
            for k, v in enumerate(vec):
                if not fld.is_zero(v):
                    out[k] = fld.add(out[k], fld.mul(c, v))
    return MorphismElement(f.source, g.target, deg, tuple(out))


def differential(base, m):
    cx = base.hom(m.source, m.target)
    d = cx.diff(m.degree)
    return MorphismElement(m.source, m.target, m.degree + 1, d.apply(m.coeffs))


def is_closed_element(base, m):
    return differential(base, m).is_zero_like(base.field)


# ---------------------------------------------------------------------------
# the concrete finite dg category


class DgCategory:
    def __init__(self, field, objects, homs, comp, ids, payload=None):
        """homs: (x, y) -> Complex; comp: (x, y, z) -> {(gdeg, gidx, fdeg, fidx): coeffs};
        ids: x -> degree-0 coefficient tuple. payload optionally maps object
        names back to richer values (used by materialized lazy categories)."""
        self.field = field
        self.objects = tuple(objects)
        self._homs = dict(homs)
        self._comp = {k: dict(v) for k, v in comp.items()}
        self._ids = dict(ids)
        self.payload = payload or {}

    def hom(self, x, y) -> Complex:
        cx = self._homs.get((x, y))
        if cx is None:
            from .complexes import zero_complex
            return zero_complex(self.field)
        return cx

    def compose_basis(self, x, y, z, gdeg, gidx, fdeg, fidx):
        table = self._comp.get((x, y, z), {})
        vec = table.get((gdeg, gidx, fdeg, fidx))
        if vec is None:
            return (self.field.zero,) * self.hom(x, z).dim(gdeg + fdeg)
        return vec

    def id_coeffs(self, x):
        return self._ids[x]

    def basis_elements(self, x, y, degree):
        dim = self.hom(x, y).dim(degree)
        fld = self.field
        out = []
        for i in range(dim):
            coeffs = tuple(fld.one if j == i else fld.zero for j in range(dim))
            out.append(MorphismElement(x, y, degree, coeffs))
        return out

    def all_basis_elements(self, x, y):
        out = []
        for n in self.hom(x, y).support():
            out.extend(self.basis_elements(x, y, n))
        return out

    def __repr__(self):
        return "DgCategory(%d objects over %s)" % (len(self.objects), self.field.name)


def validate_dgcat(A, max_issues=50):
    """Every violated axiom instance, as strings. Empty iff A is a dg category."""
    issues = []

    def log(msg):
        if len(issues) < max_issues:
            issues.append(msg)

    for x in A.objects:
        for y in A.objects:
            for msg in validate_complex(A.hom(x, y)):
                log("hom(%s,%s): %s" % (x, y, msg))
    for x in A.objects:
        try:
            idx = identity_element(A, x)
        except Exception as exc:  # missing/ill-sized identity
            log("id(%s): %s" % (x, exc))
            continue
        if not is_closed_element(A, idx):
            log("d(id_%s) != 0" % (x,))
    # units
    for x, y in itertools.product(A.objects, repeat=2):
        idy = identity_element(A, y)
        idx = identity_element(A, x)
        for f in A.all_basis_elements(x, y):
            if compose(A, idy, f) != f:
                log("unit: id_%s . f != f for basis %r" % (y, (x, y, f.degree)))
            if compose(A, f, idx) != f:
                log("unit: f . id_%s != f for basis %r" % (x, (x, y, f.degree)))
    # Leibniz on basis pairs
    fld = A.field
    for x, y, z in itertools.product(A.objects, repeat=3):
        for g in A.all_basis_elements(y, z):
            sign = fld.one if g.degree % 2 == 0 else fld.neg(fld.one)
            dg = differential(A, g)
            for f in A.all_basis_elements(x, y):
                lhs = differential(A, compose(A, g, f))
                rhs = add_elements(A, compose(A, dg, f),
                                   scale_element(A, sign, compose(A, g, differential(A, f))))
                if lhs != rhs:
                    log("Leibniz fails at (%s,%s,%s) degrees (%d,%d)"
                        % (x, y, z, g.degree, f.degree))
    # associativity on basis triples
    for w, x, y, z in itertools.product(A.objects, repeat=4):
        for h in A.all_basis_elements(y, z):
            for g in A.all_basis_elements(x, y):
                hg = compose(A, h, g)
                for f in A.all_basis_elements(w, x):
                    if compose(A, hg, f) != compose(A, h, compose(A, g, f)):
                        log("associativity fails at (%s,%s,%s,%s)" % (w, x, y, z))
    return issues


def validate_dgcat_sampled(A, rng, count=50):
    """Randomized spot-check of the dg axioms for larger materializations."""
    issues = []
    objs = list(A.objects)
    if not objs:
        return issues
    fld = A.field

    def rand_elt(x, y):
        cx = A.hom(x, y)
        degs = cx.support()
        if not degs:
            return None
        n = rng.choice(degs)
        return element(A, x, y, n,
                       tuple(fld.sample(rng) for _ in range(cx.dim(n))))

    for _ in range(count):
        w, x, y, z = (rng.choice(objs) for _ in range(4))
        f, g, h = rand_elt(w, x), rand_elt(x, y), rand_elt(y, z)
        if f is None or g is None or h is None:
            continue
        if compose(A, compose(A, h, g), f) != compose(A, h, compose(A, g, f)):
            issues.append("associativity fails at (%s,%s,%s,%s)" % (w, x, y, z))
        sign = fld.one if g.degree % 2 == 0 else fld.neg(fld.one)
        lhs = differential(A, compose(A, g, f))
        rhs = add_elements(A, compose(A, differential(A, g), f),
                           scale_element(A, sign, compose(A, g, differential(A, f))))
        if lhs != rhs:
            issues.append("Leibniz fails at (%s,%s,%s)" % (w, x, y))
        if compose(A, g, identity_element(A, x)) != g:
            issues.append("unit fails at (%s,%s)" % (x, y))
    return issues


# ---------------------------------------------------------------------------
# H^0 category


class H0Space:
    """H^0 of one Hom complex: chosen cycle representatives and reduction."""

    __slots__ = ("field", "ambient_dim", "reps", "_gens", "_nboundary")

    def __init__(self, field, ambient_dim, boundary_cols, reps):
        self.field = field
        self.ambient_dim = ambient_dim
        self.reps = reps
        cols = boundary_cols + [tuple(r) for r in reps]
        self._nboundary = len(boundary_cols)
        self._gens = Matrix.from_cols(field, cols, rows=ambient_dim)

    @property
    def dim(self):
        return len(self.reps)

    def reduce(self, ambient_vec):
        """Class coordinates of a cycle; None if the vector is no cycle class."""
        if self.dim == 0 and self._nboundary == 0:
            return () if all(self.field.is_zero(c) for c in ambient_vec) else None
        sol = self._gens.solve(tuple(ambient_vec))
        if sol is None:
            return None
        return tuple(sol[self._nboundary:])

    def rep_vector(self, coords):
        f = self.field
        out = [f.zero] * self.ambient_dim
        for c, rep in zip(coords, self.reps):
            for k, v in enumerate(rep):
                out[k] = f.add(out[k], f.mul(c, v))
        return tuple(out)


class H0Category:
    def __init__(self, base, objects):
        self.base = base
        self.field = base.field
        self.objects = tuple(objects)
        self._spaces = {}
        self._iso_cache = {}

    def space(self, x, y) -> H0Space:
        key = (x, y)
        sp = self._spaces.get(key)
        if sp is None:
            cx = self.base.hom(x, y)
            from .complexes import homology
            _, reps = homology(cx, 0)
            bnd = cx.diff(-1)
            cols = [tuple(c) for c in bnd.columns()]
            sp = H0Space(self.field, cx.dim(0), cols, reps)
            self._spaces[key] = sp
        return sp

    def dim(self, x, y):
        return self.space(x, y).dim

    def compose_classes(self, x, y, z, gcoords, fcoords):
        gv = self.space(y, z).rep_vector(gcoords)
        fv = self.space(x, y).rep_vector(fcoords)
        g = MorphismElement(y, z, 0, gv)
        f = MorphismElement(x, y, 0, fv)
        out = compose(self.base, g, f)
        red = self.space(x, z).reduce(out.coeffs)
        if red is None:
            raise ValueError("composition left the cycle space at (%s,%s,%s)" % (x, y, z))
        return red

    def id_class(self, x):
        red = self.space(x, x).reduce(self.base.id_coeffs(x))
        if red is None:
            raise ValueError("identity class missing at %s" % (x,))
        return red

    def is_invertible_class(self, x, y, coords):
        """Two-sided inverse solve in H^0, exact."""
        key = (x, y, tuple(coords))
        hit = self._iso_cache.get(key)
        if hit is not None:
            return hit
        f = self.field
        back = self.space(y, x)
        fv = self.space(x, y).rep_vector(coords)
        felt = MorphismElement(x, y, 0, fv)
        lcols, rcols = [], []
        for k in range(back.dim):
            gk = MorphismElement(y, x, 0, back.rep_vector(
                tuple(f.one if i == k else f.zero for i in range(back.dim))))
            lcols.append(self.space(x, x).reduce(compose(self.base, gk, felt).coeffs))
            rcols.append(self.space(y, y).reduce(compose(self.base, felt, gk).coeffs))
        target = tuple(self.id_class(x)) + tuple(self.id_class(y))
        stacked = Matrix.from_cols(
            f, [tuple(lc) + tuple(rc) for lc, rc in zip(lcols, rcols)],
            rows=len(target))
        ok = stacked.solve(target) is not None
        self._iso_cache[key] = ok
        return ok

    def class_lattice(self, x, y, bound):
        """All class-coordinate tuples from the configured scalar lattice."""
        scalars = self.field.lattice(bound)
        d = self.dim(x, y)
        if d == 0:
            return [()]
        if len(scalars) ** d > 200000:
            raise ValueError("H0 enumeration too large at (%s,%s): %d^%d"
                             % (x, y, len(scalars), d))
        return [tuple(t) for t in itertools.product(scalars, repeat=d)]

    def iso_classes(self, x, y, bound):
        return [c for c in self.class_lattice(x, y, bound)
                if self.is_invertible_class(x, y, c)]

    def iso_exists(self, x, y, bound):
        if x == y:
            return True
        return any(self.is_invertible_class(x, y, c)
                   for c in self.class_lattice(x, y, bound))


def h0(A, check_well_defined=True) -> H0Category:
    """H^0 category of a finite dg category.

    With check_well_defined, verifies on basis representatives that
    boundaries compose to boundaries (so composition descends to classes).
    """
    cat = H0Category(A, A.objects)
    if check_well_defined:
        fld = A.field
        for x, y, z in itertools.product(A.objects, repeat=3):
            bnd_xy = A.hom(x, y).diff(-1)
            cycles_yz = A.hom(y, z).diff(0).kernel_basis()
            for bcol in bnd_xy.columns():
                b = MorphismElement(x, y, 0, tuple(bcol))
                for zc in cycles_yz:
                    g = MorphismElement(y, z, 0, tuple(zc))
                    red = cat.space(x, z).reduce(compose(A, g, b).coeffs)
                    if red is None or any(not fld.is_zero(c) for c in red):
                        raise ValueError("H0 composition ill-defined at (%s,%s,%s)" % (x, y, z))
            bnd_yz = A.hom(y, z).diff(-1)
            cycles_xy = A.hom(x, y).diff(0).kernel_basis()
            for bcol in bnd_yz.columns():
                b = MorphismElement(y, z, 0, tuple(bcol))
                for zc in cycles_xy:
                    g = MorphismElement(x, y, 0, tuple(zc))
                    red = cat.space(x, z).reduce(compose(A, b, g).coeffs)
                    if red is None or any(not fld.is_zero(c) for c in red):
                        raise ValueError("H0 composition ill-defined at (%s,%s,%s)" % (x, y, z))
    return cat


def is_h0_invertible(A, f: MorphismElement, h0cat=None, bound=2):
    """True iff the class of the closed degree-0 element f is an iso in H^0."""
    if f.degree != 0:
        raise ValueError("is_h0_invertible needs a degree-0 element")
    if not is_closed_element(A, f):
        raise ValueError("is_h0_invertible needs a closed element")
    cat = h0cat or h0(A, check_well_defined=False)
    coords = cat.space(f.source, f.target).reduce(f.coeffs)
    if coords is None:
        raise ValueError("element is not a cycle")
    return cat.is_invertible_class(f.source, f.target, coords)


# ---------------------------------------------------------------------------
# dg functors


class DgFunctor:
    def __init__(self, source, target, obj_map, hom_mats, name=""):
        """obj_map: dict or callable; hom_mats: dict (x,y)->{deg: Matrix} or
        callable (x, y, deg) -> Matrix mapping hom_src(x,y)^deg -> hom_tgt(Fx,Fy)^deg."""
        self.source = source
        self.target = target
        self._obj_map = obj_map
        self._hom_mats = hom_mats
        self.name = name

    def obj(self, x):
        if callable(self._obj_map):
            return self._obj_map(x)
        return self._obj_map[x]

    def hom_matrix(self, x, y, degree) -> Matrix:
        if callable(self._hom_mats):
            return self._hom_mats(x, y, degree)
        mats = self._hom_mats.get((x, y), {})
        m = mats.get(degree)
        if m is not None:
            return m
        rows = self.target.hom(self.obj(x), self.obj(y)).dim(degree)
        cols = self.source.hom(x, y).dim(degree)
        return Matrix.zero(self.source.field, rows, cols)

    def apply(self, m: MorphismElement) -> MorphismElement:
        mat = self.hom_matrix(m.source, m.target, m.degree)
        return MorphismElement(self.obj(m.source), self.obj(m.target),
                               m.degree, mat.apply(m.coeffs))

    def hom_chain_map(self, x, y) -> ChainMap:
        src = self.source.hom(x, y)
        tgt = self.target.hom(self.obj(x), self.obj(y))
        comps = {n: self.hom_matrix(x, y, n) for n in src.support()}
        return ChainMap(src, tgt, comps)

    def then(self, other: "DgFunctor") -> "DgFunctor":
        """self followed by other (other . self)."""
        def omap(x):
            return other.obj(self.obj(x))

        def hmats(x, y, deg):
            return other.hom_matrix(self.obj(x), self.obj(y), deg) * self.hom_matrix(x, y, deg)

        return DgFunctor(self.source, other.target, omap, hmats,
                         name="%s;%s" % (self.name, other.name))

    @staticmethod
    def identity(base, objects=None):
        def hmats(x, y, deg):
            return Matrix.identity(base.field, base.hom(x, y).dim(deg))
        return DgFunctor(base, base, lambda x: x, hmats, name="id")


def validate_functor(F: DgFunctor, max_issues=20):
    issues = []
    A, B = F.source, F.target
    for x in A.objects:
        if F.obj(x) not in getattr(B, "objects", (F.obj(x),)):
            issues.append("object %s maps outside the target" % (x,))
    for x, y in itertools.product(A.objects, repeat=2):
        if not F.hom_chain_map(x, y).is_closed():
            issues.append("hom map (%s,%s) does not commute with d" % (x, y))
    for x in A.objects:
        if F.apply(identity_element(A, x)) != identity_element(B, F.obj(x)):
            issues.append("F(id_%s) != id" % (x,))
    for x, y, z in itertools.product(A.objects, repeat=3):
        for g in A.all_basis_elements(y, z):
            for f in A.all_basis_elements(x, y):
                if F.apply(compose(A, g, f)) != compose(B, F.apply(g), F.apply(f)):
                    issues.append("F(g.f) != F(g).F(f) at (%s,%s,%s)" % (x, y, z))
                    if len(issues) >= max_issues:
                        return issues
    return issues


def functors_equal(F, G, pairs=None):
    A = F.source
    if pairs is None:
        pairs = list(itertools.product(A.objects, repeat=2))
    for x in A.objects:
        if F.obj(x) != G.obj(x):
            return False
    for x, y in pairs:
        for n in A.hom(x, y).support():
            if F.hom_matrix(x, y, n) != G.hom_matrix(x, y, n):
                return False
    return True


# ---------------------------------------------------------------------------
# quasi-equivalences and fibrations


def is_quasi_equivalence(F: DgFunctor, bound=2):
    """(verdict, report). Quasi-isomorphisms on all Hom complexes plus
    H^0-essential surjectivity, decided by exact finite search."""
    report = {"hom_quasi_iso": [], "essential_surjectivity": []}
    ok = True
    A, B = F.source, F.target
    for x, y in itertools.product(A.objects, repeat=2):
        qi = F.hom_chain_map(x, y).is_quasi_isomorphism()
        report["hom_quasi_iso"].append({"pair": [str(x), str(y)], "passed": qi})
        if not qi:
            ok = False
    h0b = h0(B, check_well_defined=False)
    images = [F.obj(x) for x in A.objects]
    for y in B.objects:
        hit = any(h0b.iso_exists(img, y, bound) for img in images)
        report["essential_surjectivity"].append({"object": str(y), "passed": hit})
        if not hit:
            ok = False
    report["passed"] = ok
    return ok, report


def is_fibration(F: DgFunctor, bound=2):
    """(verdict, report). Degreewise surjectivity on Hom complexes plus
    lifting of H^0-isomorphisms with prescribed source, by finite search."""
    report = {"hom_surjective": [], "iso_lifting": []}
    ok = True
    A, B = F.source, F.target
    for x, y in itertools.product(A.objects, repeat=2):
        tgt = B.hom(F.obj(x), F.obj(y))
        surj = True
        for n in tgt.support():
            if F.hom_matrix(x, y, n).rank() != tgt.dim(n):
                surj = False
        report["hom_surjective"].append({"pair": [str(x), str(y)], "passed": surj})
        if not surj:
            ok = False
    h0a = h0(A, check_well_defined=False)
    h0b = h0(B, check_well_defined=False)

    # lift tables: for each source pair, the F-image class of every lattice class
    lift_table = {}

    def lifts(x, yp):
        out = []
        for y in A.objects:
            if F.obj(y) != yp:
                continue
            key = (x, y)
            if key not in lift_table:
                entries = []
                mat = F.hom_matrix(x, y, 0)
                for coords in h0a.class_lattice(x, y, bound):
                    rep = h0a.space(x, y).rep_vector(coords)
                    img = h0b.space(F.obj(x), yp).reduce(mat.apply(rep))
                    entries.append((coords, img))
                lift_table[key] = entries
            for coords, img in lift_table[key]:
                out.append((y, coords, img))
        return out

    for x in A.objects:
        for yp in B.objects:
            for v in h0b.iso_classes(F.obj(x), yp, bound):
                found = False
                for y, coords, img in lifts(x, yp):
                    if img == v and h0a.is_invertible_class(x, y, coords):
                        found = True
                        break
                report["iso_lifting"].append(
                    {"object": str(x), "target": str(yp),
                     "iso_class": [B.field.fmt(c) for c in v], "passed": found})
                if not found:
                    ok = False
    report["passed"] = ok
    return ok, report


# ---------------------------------------------------------------------------
# products, terminal object, diagonal


def product(A, B):
    """Product dg category. Returns (AxB, proj_A, proj_B)."""
    if A.field != B.field:
        raise ValueError("mixed fields")
    fld = A.field
    objects = [(a, b) for a in A.objects for b in B.objects]
    homs = {}
    comp = {}
    ids = {}
    from .complexes import direct_sum_over

    offsets = {}
    for (a, b) in objects:
        for (a2, b2) in objects:
            ca, cb = A.hom(a, a2), B.hom(b, b2)
            total, _, _ = direct_sum_over(fld, [ca, cb])
            homs[((a, b), (a2, b2))] = total
            offsets[((a, b), (a2, b2))] = (ca, cb)

    def basis_split(pair_key, deg, idx):
        ca, cb = offsets[pair_key]
        if idx < ca.dim(deg):
            return 0, idx
        return 1, idx - ca.dim(deg)

    for o1 in objects:
        for o2 in objects:
            for o3 in objects:
                table = {}
                ca12, cb12 = offsets[(o1, o2)]
                ca23, cb23 = offsets[(o2, o3)]
                h13 = homs[(o1, o3)]
                ca13, cb13 = offsets[(o1, o3)]
                degs_g = set(ca23.support()) | set(cb23.support())
                degs_f = set(ca12.support()) | set(cb12.support())
                for gdeg in degs_g:
                    for fdeg in degs_f:
                        for gidx in range(homs[(o2, o3)].dim(gdeg)):
                            gside, glocal = basis_split((o2, o3), gdeg, gidx)
                            for fidx in range(homs[(o1, o2)].dim(fdeg)):
                                fside, flocal = basis_split((o1, o2), fdeg, fidx)
                                if gside != fside:
                                    continue
                                cat = A if gside == 0 else B
                                vec = cat.compose_basis(
                                    o1[gside], o2[gside], o3[gside],
                                    gdeg, glocal, fdeg, flocal)
                                if all(fld.is_zero(v) for v in vec):
                                    continue
                                out = [fld.zero] * h13.dim(gdeg + fdeg)
                                off = 0 if gside == 0 else ca13.dim(gdeg + fdeg)
                                for k, v in enumerate(vec):
                                    out[off + k] = v
                                table[(gdeg, gidx, fdeg, fidx)] = tuple(out)
                if table:
                    comp[(o1, o2, o3)] = table
    for (a, b) in objects:
        ids[(a, b)] = tuple(A.id_coeffs(a)) + tuple(B.id_coeffs(b))
    prod_cat = DgCategory(fld, objects, homs, comp, ids)

    def proj_mats(side):
        def mats(x, y, deg):
            ca, cb = offsets[(x, y)]
            part = ca if side == 0 else cb
            rows = part.dim(deg)
            total = homs[(x, y)].dim(deg)
            off = 0 if side == 0 else ca.dim(deg)
            data = [[fld.one if j == off + i else fld.zero for j in range(total)]
                    for i in range(rows)]
            return Matrix.from_rows(fld, data) if rows else Matrix.zero(fld, 0, total)
        return mats

    proj_a = DgFunctor(prod_cat, A, lambda o: o[0], proj_mats(0), name="pr1")
    proj_b = DgFunctor(prod_cat, B, lambda o: o[1], proj_mats(1), name="pr2")
    return prod_cat, proj_a, proj_b


def diagonal(A, prod_cat):
    """The diagonal dg functor A -> A x A over a product built by product(A, A)."""
    fld = A.field

    def mats(x, y, deg):
        d = A.hom(x, y).dim(deg)
        ident = Matrix.identity(fld, d)
        return ident.vstack(ident)

    return DgFunctor(A, prod_cat, lambda x: (x, x), mats, name="diag")


def terminal_category(field) -> DgCategory:
    """One object, zero Hom complex; terminal among these finite dg categories."""
    from .complexes import zero_complex
    obj = "*"
    return DgCategory(field, [obj], {(obj, obj): zero_complex(field)}, {}, {obj: ()})


def to_terminal(A, term=None) -> DgFunctor:
    term = term or terminal_category(A.field)
    star = term.objects[0]

    def mats(x, y, deg):
        return Matrix.zero(A.field, 0, A.hom(x, y).dim(deg))

    return DgFunctor(A, term, lambda x: star, mats, name="!")
