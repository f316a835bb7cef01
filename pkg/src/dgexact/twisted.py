"""One-sided twisted complexes over a dg category.

An object is a finite list of (base object, integer shift) terms with a
strictly lower-triangular twist whose (s, t) entry is a base element of
underlying degree 1 + shift(s) - shift(t), subject to the exact
Maurer-Cartan identity. This finite model carries exactly the objects
needed downstream: representables closed under shifts in both directions
and cones of closed degree-0 morphisms.

Sign conventions, fixed once and validated by the d^2 = 0 / Leibniz
property tests rather than rederived per use:

* Hom(M, N)^n has one block per (target term s, source term t), of
  underlying base degree n + shift(s) - shift(t); blocks are ordered
  s-major, then t, then the base basis.
* D(phi)_{s,t} = (-1)^{shift(s)} d(phi_{s,t}) + (twist_N . phi)_{s,t}
  - (-1)^n (phi . twist_M)_{s,t}; compositions of underlying elements
  carry no extra signs (the graded-module-map dictionary).
* Shifting by s adds s to every term shift and multiplies the twist by
  (-1)^s; the cone of a closed degree-0 f: M -> N has terms M-shifted
  then N and twist [[-twist_M, 0], [-f, twist_N]]. The sign on the f
  block is forced by the Maurer-Cartan identity together with the
  homotopy-pullback and cone conventions used elsewhere, and makes the
  degree -1 component of a path-morphism cone appear verbatim in the
  comparison matrix.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .complexes import Complex, homology_dim
from .dgcat import (
    DgCategory, DgFunctor, MorphismElement, add_elements, compose,
    differential, element, identity_element, is_closed_element,
    scale_element, zero_element,
)
from .matrix import Matrix
from .presets import arrow_category, from_named_basis, point_category


@dataclass(frozen=True)
class TwistedComplex:
    terms: tuple  # tuple of (base object, shift)
    twist: tuple  # sorted tuple of ((s, t), coeffs tuple), s > t, nonzero

    def __repr__(self):
        return "Tw(%s%s)" % (",".join("%r[%d]" % (o, s) for o, s in self.terms),
                             "; twisted" if self.twist else "")


def make_twisted(field, terms, twist_entries):
    """Normalize: drop zero twist rows, sort keys, enforce triangularity."""
    entries = []
    for (s, t), coeffs in twist_entries:
        if s <= t:
            raise ValueError("twist must be strictly lower triangular")
        if any(not field.is_zero(c) for c in coeffs):
            entries.append(((s, t), tuple(coeffs)))
    entries.sort(key=lambda e: e[0])
    return TwistedComplex(tuple(terms), tuple(entries))


class TwistedModel:
    """The dg category of twisted complexes over a base, presented lazily."""

    def __init__(self, base):
        self.base = base
        self.field = base.field
        self._hom_cache = {}
        self._layout_cache = {}

    # -- layout ---------------------------------------------------------

    def block_degree(self, M, N, s, t, degree):
        return degree + N.terms[s][1] - M.terms[t][1]

    def layout(self, M, N, degree):
        key = (M, N, degree)
        lay = self._layout_cache.get(key)
        if lay is None:
            lay = []
            off = 0
            for s in range(len(N.terms)):
                for t in range(len(M.terms)):
                    d = self.base.hom(M.terms[t][0], N.terms[s][0]).dim(
                        self.block_degree(M, N, s, t, degree))
                    if d:
                        lay.append((s, t, d, off))
                        off += d
            self._layout_cache[key] = lay
        return lay

    def decode(self, M, N, degree, idx):
        for (s, t, d, off) in self.layout(M, N, degree):
            if off <= idx < off + d:
                return s, t, idx - off
        raise IndexError("basis index out of range")

    def block_offset(self, M, N, degree, s, t):
        for (ss, tt, d, off) in self.layout(M, N, degree):
            if (ss, tt) == (s, t):
                return off, d
        return None, 0

    def component(self, m: MorphismElement, s, t) -> MorphismElement:
        M, N = m.source, m.target
        bdeg = self.block_degree(M, N, s, t, m.degree)
        cx = self.base.hom(M.terms[t][0], N.terms[s][0])
        off, d = self.block_offset(M, N, m.degree, s, t)
        coeffs = list(m.coeffs[off:off + d]) if off is not None else [self.field.zero] * cx.dim(bdeg)
        return MorphismElement(M.terms[t][0], N.terms[s][0], bdeg, tuple(coeffs))

    def from_components(self, M, N, degree, comps) -> MorphismElement:
        fld = self.field
        dim = self.hom(M, N).dim(degree)
        out = [fld.zero] * dim
        for (s, t), el in comps.items():
            off, d = self.block_offset(M, N, degree, s, t)
            if off is None:
                if any(not fld.is_zero(c) for c in el.coeffs):
                    raise ValueError("nonzero component in an empty block")
                continue
            for k, v in enumerate(el.coeffs):
                out[off + k] = v
        return MorphismElement(M, N, degree, tuple(out))

    def twist_entry(self, M, s, t) -> MorphismElement:
        bdeg = 1 + M.terms[s][1] - M.terms[t][1]
        x, y = M.terms[t][0], M.terms[s][0]
        cx = self.base.hom(x, y)
        for (key, coeffs) in M.twist:
            if key == (s, t):
                return MorphismElement(x, y, bdeg, coeffs)
        return MorphismElement(x, y, bdeg, (self.field.zero,) * cx.dim(bdeg))

    # -- the dg structure ------------------------------------------------

    def hom(self, M, N) -> Complex:
        key = (M, N)
        hit = self._hom_cache.get(key)
        if hit is not None:
            return hit
        fld = self.field
        degrees = set()
        for s in range(len(N.terms)):
            for t in range(len(M.terms)):
                for bdeg in self.base.hom(M.terms[t][0], N.terms[s][0]).dims:
                    degrees.add(bdeg - N.terms[s][1] + M.terms[t][1])
        dims = {n: sum(d for (_, _, d, _) in self.layout(M, N, n)) for n in degrees}
        dims = {n: d for n, d in dims.items() if d}
        diffs = {}
        for n in dims:
            rows = dims.get(n + 1, 0)
            if rows == 0:
                continue
            cols = []
            for idx in range(dims[n]):
                s, t, b = self.decode(M, N, n, idx)
                x, y = M.terms[t][0], N.terms[s][0]
                bdeg = self.block_degree(M, N, s, t, n)
                col = [fld.zero] * rows
                # (-1)^{shift(s)} d_base
                dmat = self.base.hom(x, y).diff(bdeg)
                if dmat.rows:
                    off, _ = self.block_offset(M, N, n + 1, s, t)
                    sign = fld.one if N.terms[s][1] % 2 == 0 else fld.neg(fld.one)
                    for r in range(dmat.rows):
                        col[off + r] = fld.mul(sign, dmat.data[r][b])
                # twist_N composed after phi
                phi = MorphismElement(x, y, bdeg,
                                      tuple(fld.one if k == b else fld.zero
                                            for k in range(self.base.hom(x, y).dim(bdeg))))
                for (key2, _) in N.twist:
                    s2, u = key2
                    if u != s:
                        continue
                    eps = self.twist_entry(N, s2, u)
                    out = compose(self.base, eps, phi)
                    off, d2 = self.block_offset(M, N, n + 1, s2, t)
                    if off is not None:
                        for k, v in enumerate(out.coeffs):
                            col[off + k] = fld.add(col[off + k], v)
                # -(-1)^n phi composed after twist_M
                signn = fld.one if n % 2 == 0 else fld.neg(fld.one)
                for (key2, _) in M.twist:
                    u, t2 = key2
                    if u != t:
                        continue
                    delta = self.twist_entry(M, u, t2)
                    out = compose(self.base, phi, delta)
                    off, d2 = self.block_offset(M, N, n + 1, s, t2)
                    if off is not None:
                        neg = fld.neg(signn)
                        for k, v in enumerate(out.coeffs):
                            col[off + k] = fld.add(col[off + k], fld.mul(neg, v))
                cols.append(tuple(col))
            diffs[n] = Matrix.from_cols(fld, cols, rows=rows) if cols else Matrix.zero(fld, rows, 0)
        cx = Complex(fld, dims, diffs)
        self._hom_cache[key] = cx
        return cx

    def compose_basis(self, M, N, P, gdeg, gidx, fdeg, fidx):
        fld = self.field
        out_dim = self.hom(M, P).dim(gdeg + fdeg)
        out = [fld.zero] * out_dim
        s, u, bg = self.decode(N, P, gdeg, gidx)
        u2, t, bf = self.decode(M, N, fdeg, fidx)
        if u == u2:
            x = M.terms[t][0]
            y = N.terms[u][0]
            z = P.terms[s][0]
            g_bdeg = self.block_degree(N, P, s, u, gdeg)
            f_bdeg = self.block_degree(M, N, u, t, fdeg)
            vec = self.base.compose_basis(x, y, z, g_bdeg, bg, f_bdeg, bf)
            off, _ = self.block_offset(M, P, gdeg + fdeg, s, t)
            if off is not None:
                for k, v in enumerate(vec):
                    out[off + k] = fld.add(out[off + k], v)
        return tuple(out)

    def id_coeffs(self, M):
        fld = self.field
        dim = self.hom(M, M).dim(0)
        out = [fld.zero] * dim
        for t in range(len(M.terms)):
            base_id = self.base.id_coeffs(M.terms[t][0])
            if not base_id:
                continue
            off, _ = self.block_offset(M, M, 0, t, t)
            for k, v in enumerate(base_id):
                out[off + k] = v
        return tuple(out)

    # -- object constructors ---------------------------------------------

    def yoneda(self, x) -> TwistedComplex:
        return TwistedComplex(((x, 0),), ())

    def shift_obj(self, M: TwistedComplex, s: int) -> TwistedComplex:
        fld = self.field
        terms = tuple((o, r + s) for (o, r) in M.terms)
        if s % 2 == 0:
            return TwistedComplex(terms, M.twist)
        twist = tuple((key, tuple(fld.neg(c) for c in coeffs))
                      for (key, coeffs) in M.twist)
        return TwistedComplex(terms, twist)

    def shift_morphism(self, m: MorphismElement, s: int) -> MorphismElement:
        """The same underlying coefficients between shifted objects."""
        return MorphismElement(self.shift_obj(m.source, s),
                               self.shift_obj(m.target, s), m.degree, m.coeffs)

    def reinterpret_target(self, m: MorphismElement, s: int) -> MorphismElement:
        """View M -> N of degree n as M -> N[s] of degree n - s (same blocks)."""
        return MorphismElement(m.source, self.shift_obj(m.target, s),
                               m.degree - s, m.coeffs)

    def reinterpret_source(self, m: MorphismElement, s: int) -> MorphismElement:
        """View M -> N of degree n as M[s] -> N of degree n + s (same blocks)."""
        return MorphismElement(self.shift_obj(m.source, s), m.target,
                               m.degree + s, m.coeffs)

    def shift_unit(self, M) -> MorphismElement:
        """The canonical closed degree -1 strict iso M -> M[1] (underlying id)."""
        return self.reinterpret_target(
            MorphismElement(M, M, 0, tuple(self.id_coeffs(M))), 1)

    def shift_counit(self, M) -> MorphismElement:
        """The canonical closed degree +1 strict iso M[1] -> M."""
        return self.reinterpret_source(
            MorphismElement(M, M, 0, tuple(self.id_coeffs(M))), 1)

    def cone_obj(self, f: MorphismElement):
        """Cone of a closed degree-0 morphism.

        Returns (cone, injection target -> cone, projection cone -> source[1]).
        """
        if f.degree != 0:
            raise ValueError("cone needs a degree-0 morphism")
        if not is_closed_element(self, f):
            raise ValueError("cone needs a closed morphism")
        fld = self.field
        M, N = f.source, f.target
        shifted = self.shift_obj(M, 1)
        nm = len(M.terms)
        terms = shifted.terms + N.terms
        entries = []
        for (key, coeffs) in shifted.twist:
            entries.append((key, coeffs))
        for (key, coeffs) in N.twist:
            (s, t) = key
            entries.append(((s + nm, t + nm), coeffs))
        for s in range(len(N.terms)):
            for t in range(nm):
                comp = self.component(f, s, t)
                if any(not fld.is_zero(c) for c in comp.coeffs):
                    entries.append(((s + nm, t),
                                    tuple(fld.neg(c) for c in comp.coeffs)))
        cone = TwistedComplex(terms, tuple(sorted(entries, key=lambda e: e[0])))
        inj = self.from_components(N, cone, 0, {
            (s + nm, s): identity_element(self.base, N.terms[s][0])
            for s in range(len(N.terms))})
        proj = self.from_components(cone, shifted, 0, {
            (t, t): identity_element(self.base, M.terms[t][0])
            for t in range(nm)})
        return cone, inj, proj

    def cone_null_homotopy(self, f: MorphismElement, cone) -> MorphismElement:
        """sigma: M -> cone(f), degree -1, with D(sigma) = -(inj . f)."""
        return self.from_components(f.source, cone, -1, {
            (t, t): identity_element(self.base, f.source.terms[t][0])
            for t in range(len(f.source.terms))})

    def direct_sum_obj(self, Ms):
        """Concatenated twisted complex with injections and projections."""
        terms = []
        entries = []
        offs = []
        off = 0
        for M in Ms:
            offs.append(off)
            terms.extend(M.terms)
            for ((s, t), coeffs) in M.twist:
                entries.append(((s + off, t + off), coeffs))
            off += len(M.terms)
        total = TwistedComplex(tuple(terms), tuple(sorted(entries, key=lambda e: e[0])))
        injections = []
        projections = []
        for i, M in enumerate(Ms):
            injections.append(self.from_components(M, total, 0, {
                (offs[i] + t, t): identity_element(self.base, M.terms[t][0])
                for t in range(len(M.terms))}))
            projections.append(self.from_components(total, M, 0, {
                (t, offs[i] + t): identity_element(self.base, M.terms[t][0])
                for t in range(len(M.terms))}))
        return total, injections, projections

    def mc_violations(self, M: TwistedComplex):
        """Exact Maurer-Cartan check; empty list iff the twist is admissible."""
        fld = self.field
        issues = []
        for s in range(len(M.terms)):
            for t in range(len(M.terms)):
                if s <= t:
                    continue
                acc = differential(self.base, self.twist_entry(M, s, t))
                sign = fld.one if M.terms[s][1] % 2 == 0 else fld.neg(fld.one)
                acc = scale_element(self.base, sign, acc)
                for u in range(t + 1, s):
                    term = compose(self.base, self.twist_entry(M, s, u),
                                   self.twist_entry(M, u, t))
                    acc = add_elements(self.base, acc, term)
                if not acc.is_zero_like(fld):
                    issues.append("MC fails at (%d,%d)" % (s, t))
        return issues


# ---------------------------------------------------------------------------
# sampling reachable objects (shifts, cones, sums of representables)


def sample_twisted(model: TwistedModel, rng, max_terms=3, depth=2):
    base_objs = list(model.base.objects)

    def go(d, budget):
        choices = ["yoneda"]
        if d > 0:
            choices += ["shift", "cone", "sum"]
        kind = rng.choice(choices)
        if kind == "yoneda" or budget <= 1:
            return model.yoneda(rng.choice(base_objs))
        if kind == "shift":
            return model.shift_obj(go(d - 1, budget), rng.choice([-1, 1]))
        if kind == "sum":
            k = rng.randint(1, max(1, budget - 1))
            parts = []
            left = budget
            for _ in range(k):
                p = go(d - 1, max(1, left // k))
                parts.append(p)
                left -= len(p.terms)
            total, _, _ = model.direct_sum_obj(parts)
            return total if total.terms else model.yoneda(rng.choice(base_objs))
        # cone of a random closed degree-0 morphism
        half = max(1, budget // 2)
        M = go(d - 1, half)
        N = go(d - 1, budget - len(M.terms) if budget - len(M.terms) >= 1 else 1)
        f = sample_closed_morphism(model, rng, M, N, 0)
        cone, _, _ = model.cone_obj(f)
        return cone

    out = go(depth, max_terms)
    while len(out.terms) > max_terms:
        out = go(depth, max_terms)
    return out


def sample_closed_morphism(model, rng, M, N, degree):
    fld = model.field
    cx = model.hom(M, N)
    kernel = cx.diff(degree).kernel_basis()
    coeffs = [fld.zero] * cx.dim(degree)
    for v in kernel:
        c = fld.sample(rng)
        for k, x in enumerate(v):
            coeffs[k] = fld.add(coeffs[k], fld.mul(c, x))
    return MorphismElement(M, N, degree, tuple(coeffs))


def sample_element(model, rng, M, N, degree):
    cx = model.hom(M, N)
    fld = model.field
    return MorphismElement(M, N, degree,
                           tuple(fld.sample(rng) for _ in range(cx.dim(degree))))


# ---------------------------------------------------------------------------
# generator categories: explicit tables plus inclusion functors


def build_generators(field):
    """The five generator categories with their inclusion functors.

    The suspension/cosuspension/cone tables are explicit literals; a
    dedicated test asserts they coincide with the engine-computed twisted
    Hom complexes under the canonical bases.
    """
    P = point_category(field)
    M = arrow_category(field)

    S = from_named_basis(
        field,
        ["Xh", "Xh1"],
        {
            ("Xh", "Xh"): [("s_idX", 0)],
            ("Xh1", "Xh1"): [("s_idX1", 0)],
            ("Xh", "Xh1"): [("s_up", -1)],
            ("Xh1", "Xh"): [("s_down", 1)],
        },
        {},
        {
            ("s_idX", "s_idX"): [(1, "s_idX")],
            ("s_idX1", "s_idX1"): [(1, "s_idX1")],
            ("s_up", "s_idX"): [(1, "s_up")],
            ("s_idX1", "s_up"): [(1, "s_up")],
            ("s_down", "s_idX1"): [(1, "s_down")],
            ("s_idX", "s_down"): [(1, "s_down")],
            ("s_down", "s_up"): [(1, "s_idX")],
            ("s_up", "s_down"): [(1, "s_idX1")],
        },
        {"Xh": "s_idX", "Xh1": "s_idX1"},
    )

    Sinv = from_named_basis(
        field,
        ["Xh", "Xhm1"],
        {
            ("Xh", "Xh"): [("t_idX", 0)],
            ("Xhm1", "Xhm1"): [("t_idXm", 0)],
            ("Xh", "Xhm1"): [("t_down", 1)],
            ("Xhm1", "Xh"): [("t_up", -1)],
        },
        {},
        {
            ("t_idX", "t_idX"): [(1, "t_idX")],
            ("t_idXm", "t_idXm"): [(1, "t_idXm")],
            ("t_down", "t_idX"): [(1, "t_down")],
            ("t_idXm", "t_down"): [(1, "t_down")],
            ("t_up", "t_idXm"): [(1, "t_up")],
            ("t_idX", "t_up"): [(1, "t_up")],
            ("t_up", "t_down"): [(1, "t_idX")],
            ("t_down", "t_up"): [(1, "t_idXm")],
        },
        {"Xh": "t_idX", "Xhm1": "t_idXm"},
    )

    C = from_named_basis(
        field,
        ["0h", "1h", "Kf"],
        {
            ("0h", "0h"): [("c_i0", 0)],
            ("1h", "1h"): [("c_i1", 0)],
            ("0h", "1h"): [("c_f", 0)],
            ("1h", "0h"): [],
            ("0h", "Kf"): [("c_sg", -1), ("c_j", 0)],
            ("1h", "Kf"): [("c_io", 0)],
            ("Kf", "0h"): [("c_pi", 1)],
            ("Kf", "1h"): [("c_rho", 0), ("c_tau", 1)],
            ("Kf", "Kf"): [("c_e0", 0), ("c_e1", 0), ("c_eps", 1)],
        },
        {
            "c_sg": [(-1, "c_j")],
            "c_rho": [(1, "c_tau")],
            "c_e0": [(-1, "c_eps")],
            "c_e1": [(1, "c_eps")],
        },
        {
            # middle 0h
            ("c_i0", "c_i0"): [(1, "c_i0")],
            ("c_i0", "c_pi"): [(1, "c_pi")],
            ("c_f", "c_i0"): [(1, "c_f")],
            ("c_f", "c_pi"): [(1, "c_tau")],
            ("c_sg", "c_i0"): [(1, "c_sg")],
            ("c_sg", "c_pi"): [(1, "c_e0")],
            ("c_j", "c_i0"): [(1, "c_j")],
            ("c_j", "c_pi"): [(1, "c_eps")],
            # middle 1h
            ("c_i1", "c_i1"): [(1, "c_i1")],
            ("c_i1", "c_f"): [(1, "c_f")],
            ("c_i1", "c_rho"): [(1, "c_rho")],
            ("c_i1", "c_tau"): [(1, "c_tau")],
            ("c_io", "c_i1"): [(1, "c_io")],
            ("c_io", "c_f"): [(1, "c_j")],
            ("c_io", "c_rho"): [(1, "c_e1")],
            ("c_io", "c_tau"): [(1, "c_eps")],
            # middle Kf
            ("c_pi", "c_sg"): [(1, "c_i0")],
            ("c_pi", "c_e0"): [(1, "c_pi")],
            ("c_rho", "c_j"): [(1, "c_f")],
            ("c_rho", "c_io"): [(1, "c_i1")],
            ("c_rho", "c_e1"): [(1, "c_rho")],
            ("c_rho", "c_eps"): [(1, "c_tau")],
            ("c_tau", "c_sg"): [(1, "c_f")],
            ("c_tau", "c_e0"): [(1, "c_tau")],
            ("c_e0", "c_sg"): [(1, "c_sg")],
            ("c_e0", "c_e0"): [(1, "c_e0")],
            ("c_e1", "c_j"): [(1, "c_j")],
            ("c_e1", "c_io"): [(1, "c_io")],
            ("c_e1", "c_e1"): [(1, "c_e1")],
            ("c_e1", "c_eps"): [(1, "c_eps")],
            ("c_eps", "c_sg"): [(1, "c_j")],
            ("c_eps", "c_e0"): [(1, "c_eps")],
        },
        {"0h": "c_i0", "1h": "c_i1", "Kf": [(1, "c_e0"), (1, "c_e1")]},
    )

    def incl(src, tgt, omap):
        def hmats(x, y, deg):
            rows = tgt.hom(omap[x], omap[y]).dim(deg)
            cols = src.hom(x, y).dim(deg)
            if rows == cols:
                return Matrix.identity(field, cols)
            # landing inside a larger graded piece: match by name is not
            # needed here; the inclusions below are all dimension-aligned
            m = Matrix.zero(field, rows, cols)
            return m
        return DgFunctor(src, tgt, lambda x: omap[x], hmats)

    S_incl = incl(P, S, {"X": "Xh"})
    Sinv_incl = incl(P, Sinv, {"X": "Xh"})
    C_incl = incl(M, C, {"0": "0h", "1": "1h"})
    return {
        "P": P, "M": M, "S": S, "Sinv": Sinv, "C": C,
        "S_incl": S_incl, "Sinv_incl": Sinv_incl, "C_incl": C_incl,
    }


def generator_engine_objects(field):
    """The engine-side twisted complexes matching the generator tables."""
    P = point_category(field)
    M = arrow_category(field)
    modP = TwistedModel(P)
    modM = TwistedModel(M)
    xh = modP.yoneda("X")
    zero_h = modM.yoneda("0")
    one_h = modM.yoneda("1")
    f_el = element(modM, zero_h, one_h, 0, (field.one,))
    cone_f, _, _ = modM.cone_obj(f_el)
    return {
        "modP": modP, "modM": modM,
        "S": [xh, modP.shift_obj(xh, 1)],
        "Sinv": [xh, modP.shift_obj(xh, -1)],
        "C": [zero_h, one_h, cone_f],
    }


def tables_match_engine(table_cat: DgCategory, model: TwistedModel, objs):
    """Exact comparison of a literal table with the engine: dims,
    differentials, identities and all structure constants."""
    names = list(table_cat.objects)
    pairing = dict(zip(names, objs))
    for x in names:
        if tuple(table_cat.id_coeffs(x)) != tuple(model.id_coeffs(pairing[x])):
            return False, "identity at %s" % x
    for x in names:
        for y in names:
            tc = table_cat.hom(x, y)
            ec = model.hom(pairing[x], pairing[y])
            if tc.dims != ec.dims:
                return False, "dims at (%s,%s): %r vs %r" % (x, y, tc.dims, ec.dims)
            for n in tc.support():
                if tc.diff(n) != ec.diff(n):
                    return False, "differential at (%s,%s) degree %d" % (x, y, n)
    for x in names:
        for y in names:
            for z in names:
                hxy = table_cat.hom(x, y)
                hyz = table_cat.hom(y, z)
                for gdeg in hyz.support():
                    for fdeg in hxy.support():
                        for gidx in range(hyz.dim(gdeg)):
                            for fidx in range(hxy.dim(fdeg)):
                                tvec = table_cat.compose_basis(x, y, z, gdeg, gidx, fdeg, fidx)
                                evec = model.compose_basis(pairing[x], pairing[y], pairing[z],
                                                           gdeg, gidx, fdeg, fidx)
                                if tuple(tvec) != tuple(evec):
                                    return False, ("structure constant at (%s,%s,%s) "
                                                   "g=(%d,%d) f=(%d,%d)" %
                                                   (x, y, z, gdeg, gidx, fdeg, fidx))
    return True, ""


# ---------------------------------------------------------------------------
# functor classification


def classify_functor_from_s(model: TwistedModel, H: DgFunctor):
    """Extract (X, Y, witness, inverse witness) from a functor out of the
    two-object suspension table; witness: X[1] -> Y strict closed iso."""
    X = H.obj("Xh")
    Y = H.obj("Xh1")
    s_el = element(H.source, "Xh", "Xh1", -1, (model.field.one,))
    sp_el = element(H.source, "Xh1", "Xh", 1, (model.field.one,))
    w = model.reinterpret_source(H.apply(s_el), 1)
    w_inv = model.reinterpret_target(H.apply(sp_el), 1)
    _assert_strict_iso(model, w, w_inv)
    return X, Y, w, w_inv


def rebuild_functor_from_s(model: TwistedModel, table, X, Y, w, w_inv) -> DgFunctor:
    images = {
        ("Xh", "Xh"): {0: [identity_element(model, X)]},
        ("Xh1", "Xh1"): {0: [identity_element(model, Y)]},
        ("Xh", "Xh1"): {-1: [model.reinterpret_source(w, -1)]},
        ("Xh1", "Xh"): {1: [model.reinterpret_target(w_inv, -1)]},
    }
    return _functor_from_images(model, table, {"Xh": X, "Xh1": Y}, images)


def classify_functor_from_c(model: TwistedModel, R: DgFunctor):
    """Extract (f, Z, witness, inverse) from a functor out of the cone table;
    witness: Z -> cone(f) strict closed iso."""
    fld = model.field
    f = R.apply(element(R.source, "0h", "1h", 0, (fld.one,)))
    Z = R.obj("Kf")
    cone, inj, proj = model.cone_obj(f)
    pi = R.apply(element(R.source, "Kf", "0h", 1, (fld.one,)))
    rho = R.apply(element(R.source, "Kf", "1h", 0, (fld.one,)))
    sg = R.apply(element(R.source, "0h", "Kf", -1, (fld.one,)))
    io = R.apply(element(R.source, "1h", "Kf", 0, (fld.one,)))
    nm = len(f.source.terms)
    w = _glue_target_blocks(model, Z, cone, 0, model.reinterpret_target(pi, 1), rho, nm)
    w_inv = _glue_source_blocks(model, cone, Z, 0, model.reinterpret_source(sg, 1), io, nm)
    _assert_strict_iso(model, w, w_inv)
    return f, Z, w, w_inv


def rebuild_functor_from_c(model: TwistedModel, table, f, Z, w, w_inv) -> DgFunctor:
    fld = model.field
    X, Y = f.source, f.target
    cone, inj, proj = model.cone_obj(f)
    sigma = model.cone_null_homotopy(f, cone)
    # canonical generators over the cone, then conjugate by the witness
    pi_can = model.reinterpret_target(proj, -1)          # cone -> X, degree 1
    rho_can = model.from_components(cone, Y, 0, {
        (s, len(X.terms) + s): identity_element(model.base, Y.terms[s][0])
        for s in range(len(Y.terms))})
    tau_can = compose(model, f, pi_can)
    j_el = compose(model, inj, f)
    e0_can = compose(model, sigma, pi_can)
    e1_can = compose(model, inj, rho_can)
    eps_can = compose(model, inj, tau_can)

    def conj(m):
        return compose(model, w_inv, compose(model, m, w))

    images = {
        ("0h", "0h"): {0: [identity_element(model, X)]},
        ("1h", "1h"): {0: [identity_element(model, Y)]},
        ("0h", "1h"): {0: [f]},
        ("0h", "Kf"): {-1: [compose(model, w_inv, sigma)],
                       0: [compose(model, w_inv, j_el)]},
        ("1h", "Kf"): {0: [compose(model, w_inv, inj)]},
        ("Kf", "0h"): {1: [compose(model, pi_can, w)]},
        ("Kf", "1h"): {0: [compose(model, rho_can, w)],
                       1: [compose(model, tau_can, w)]},
        ("Kf", "Kf"): {0: [conj(e0_can), conj(e1_can)],
                       1: [conj(eps_can)]},
    }
    return _functor_from_images(model, table, {"0h": X, "1h": Y, "Kf": Z}, images)


def _glue_target_blocks(model, src, cone, degree, a, b, nm):
    """Element src -> cone from a: src -> M[1] part and b: src -> N part."""
    comps = {}
    for s in range(nm):
        for t in range(len(src.terms)):
            comps[(s, t)] = model.component(a, s, t)
    for s in range(len(cone.terms) - nm):
        for t in range(len(src.terms)):
            comps[(nm + s, t)] = model.component(b, s, t)
    return model.from_components(src, cone, degree, comps)


def _glue_source_blocks(model, cone, tgt, degree, a, b, nm):
    """Element cone -> tgt from a: M[1] part -> tgt and b: N part -> tgt."""
    comps = {}
    for s in range(len(tgt.terms)):
        for t in range(nm):
            comps[(s, t)] = model.component(a, s, t)
        for t in range(len(cone.terms) - nm):
            comps[(s, nm + t)] = model.component(b, s, t)
    return model.from_components(cone, tgt, degree, comps)


def _assert_strict_iso(model, w, w_inv):
    if not is_closed_element(model, w) or not is_closed_element(model, w_inv):
        raise ValueError("witness is not closed")
    if compose(model, w, w_inv) != identity_element(model, w.target):
        raise ValueError("witness is not a strict isomorphism (right)")
    if compose(model, w_inv, w) != identity_element(model, w.source):
        raise ValueError("witness is not a strict isomorphism (left)")


def _functor_from_images(model, table, omap, images):
    fld = model.field

    def hmats(x, y, deg):
        tgt = model.hom(omap[x], omap[y])
        cols = []
        imgs = images.get((x, y), {}).get(deg, [])
        src_dim = table.hom(x, y).dim(deg)
        for i in range(src_dim):
            el = imgs[i]
            cols.append(el.coeffs)
        return Matrix.from_cols(fld, cols, rows=tgt.dim(deg))

    return DgFunctor(table, model, lambda x: omap[x], hmats)


def induced_twisted_functor(F0: DgFunctor, model_src: TwistedModel,
                            model_tgt: TwistedModel) -> DgFunctor:
    """Apply a base functor to whole twisted complexes: terms entrywise,
    twist entries and morphisms blockwise."""

    def omap(M):
        terms = tuple((F0.obj(o), r) for (o, r) in M.terms)
        entries = []
        for ((s, t), coeffs) in M.twist:
            src_obj, src_r = M.terms[t]
            tgt_obj, tgt_r = M.terms[s]
            bdeg = 1 + tgt_r - src_r
            img = F0.hom_matrix(src_obj, tgt_obj, bdeg).apply(coeffs)
            if any(not model_tgt.field.is_zero(c) for c in img):
                entries.append(((s, t), tuple(img)))
        return TwistedComplex(terms, tuple(sorted(entries, key=lambda e: e[0])))

    def hmats(M, N, deg):
        src = model_src.hom(M, N)
        tgt = model_tgt.hom(omap(M), omap(N))
        fld = model_src.field
        cols = []
        for idx in range(src.dim(deg)):
            s, t, b = model_src.decode(M, N, deg, idx)
            bdeg = model_src.block_degree(M, N, s, t, deg)
            block = F0.hom_matrix(M.terms[t][0], N.terms[s][0], bdeg)
            col = [fld.zero] * tgt.dim(deg)
            if block.rows:
                off, _ = model_tgt.block_offset(omap(M), omap(N), deg, s, t)
                for r in range(block.rows):
                    col[off + r] = block.data[r][b]
            cols.append(tuple(col))
        return Matrix.from_cols(fld, cols, rows=tgt.dim(deg))

    return DgFunctor(model_src, model_tgt, omap, hmats,
                     name="Tw(%s)" % F0.name)


def functor_agrees_on_basis(F: DgFunctor, G: DgFunctor):
    A = F.source
    for x in A.objects:
        if F.obj(x) != G.obj(x):
            return False
    for x in A.objects:
        for y in A.objects:
            for n in A.hom(x, y).support():
                if F.hom_matrix(x, y, n) != G.hom_matrix(x, y, n):
                    return False
    return True


# ---------------------------------------------------------------------------
# triangle-style checks


def h0_class_is_zero(cx: Complex, vec) -> bool:
    """vec must be a degree-0 cycle; True iff its class vanishes."""
    fld = cx.field
    if any(not fld.is_zero(c) for c in cx.diff(0).apply(vec)):
        raise ValueError("not a cycle")
    if all(fld.is_zero(c) for c in vec):
        return True
    return cx.diff(-1).solve(tuple(vec)) is not None


def check_pretriangulated(A0, rng, count=50, test_objects=3):
    """Sampled exact checks: the three consecutive composites around a cone
    vanish in H^0, and the cone corepresents the shifted mapping cone."""
    model = TwistedModel(A0)
    checks = []
    for k in range(count):
        M = sample_twisted(model, rng, max_terms=2)
        N = sample_twisted(model, rng, max_terms=2)
        f = sample_closed_morphism(model, rng, M, N, 0)
        cone, inj, proj = model.cone_obj(f)
        entry = {"law": "triangle_h0", "sample": repr((M, N)), "passed": True,
                 "witness": None}
        comp1 = compose(model, inj, f)
        if not h0_class_is_zero(model.hom(M, cone), comp1.coeffs):
            entry["passed"] = False
            entry["witness"] = {"kind": "inj.f"}
        comp2 = compose(model, proj, inj)
        if not comp2.is_zero_like(model.field):
            entry["passed"] = False
            entry["witness"] = {"kind": "proj.inj"}
        comp3 = compose(model, model.shift_morphism(f, 1), proj)
        if not h0_class_is_zero(model.hom(cone, model.shift_obj(N, 1)), comp3.coeffs):
            entry["passed"] = False
            entry["witness"] = {"kind": "f[1].proj"}
        checks.append(entry)

        entry = {"law": "corepresentability", "sample": repr((M, N)),
                 "passed": True, "witness": None}
        for _ in range(test_objects):
            Z = sample_twisted(model, rng, max_terms=2)
            if not cone_corepresents(model, f, cone, Z):
                entry["passed"] = False
                entry["witness"] = {"kind": "corepresent", "test_object": repr(Z)}
                break
        checks.append(entry)
    return {"passed": all(c["passed"] for c in checks), "checks": checks}


def cone_corepresents(model, f, cone_of_f, Z) -> bool:
    """H^n Hom(cone f, Z) equals H^{n-1} of the cone of precomposition by f."""
    from .complexes import ChainMap, cone as complex_cone
    homNZ = model.hom(f.target, Z)
    homMZ = model.hom(f.source, Z)
    fld = model.field
    comps = {}
    for n in homNZ.support():
        cols = []
        for idx in range(homNZ.dim(n)):
            m = MorphismElement(f.target, Z, n,
                                tuple(fld.one if k == idx else fld.zero
                                      for k in range(homNZ.dim(n))))
            cols.append(compose(model, m, f).coeffs)
        comps[n] = Matrix.from_cols(fld, cols, rows=homMZ.dim(n))
    precompose = ChainMap(homNZ, homMZ, comps)
    if not precompose.is_closed():
        return False
    mapping_cone, _, _ = complex_cone(precompose)
    hom_cone = model.hom(cone_of_f, Z)
    degrees = set(hom_cone.dims) | {n + 1 for n in mapping_cone.dims} | set(mapping_cone.dims)
    for n in degrees:
        if homology_dim(hom_cone, n) != homology_dim(mapping_cone, n - 1):
            return False
    return True
