"""Small hand-written dg categories and a named-basis builder for them."""

from __future__ import annotations

from .complexes import Complex
from .dgcat import DgCategory
from .matrix import Matrix


def from_named_basis(field, objects, basis, diffs, comp, ids):
    """Build a DgCategory from named basis data.

    basis: (x, y) -> ordered list of (name, degree)
    diffs: name -> list of (int coeff, name)          (omitted = closed)
    comp:  (gname, fname) -> list of (int coeff, name) (omitted = zero)
    ids:   x -> identity: a basis name or a list of (int coeff, name)
    """
    index = {}
    for pair, elems in basis.items():
        per_degree: dict[int, list[str]] = {}
        for name, deg in elems:
            per_degree.setdefault(deg, []).append(name)
        for deg, names in per_degree.items():
            for i, name in enumerate(names):
                if name in index:
                    raise ValueError("duplicate basis name %r" % (name,))
                index[name] = (pair, deg, i, len(names))

    def hom_dims(pair):
        dims: dict[int, int] = {}
        for name, deg in basis.get(pair, []):
            dims[deg] = dims.get(deg, 0) + 1
        return dims

    def vector_of(pair, deg, combo):
        dim = hom_dims(pair).get(deg, 0)
        out = [field.zero] * dim
        for c, name in combo:
            p2, d2, i2, _ = index[name]
            if p2 != pair or d2 != deg:
                raise ValueError("element %r lands in the wrong graded piece" % (name,))
            out[i2] = field.add(out[i2], field.of_int(c))
        return tuple(out)

    homs = {}
    for pair in basis:
        dims = hom_dims(pair)
        dmats = {}
        for deg, dim in dims.items():
            rows = dims.get(deg + 1, 0)
            cols_out = []
            names = [n for n, d in basis[pair] if d == deg]
            for name in names:
                img = diffs.get(name, [])
                cols_out.append(vector_of(pair, deg + 1, img))
            if rows:
                dmats[deg] = Matrix.from_cols(field, [tuple(c) for c in cols_out], rows=rows)
        homs[pair] = Complex(field, dims, dmats)

    comp_tables: dict[tuple, dict] = {}
    for (gname, fname), combo in comp.items():
        (gy, gz), gdeg, gidx, _ = index[gname]
        (fx, fy), fdeg, fidx, _ = index[fname]
        if fy != gy:
            raise ValueError("composition %r . %r is not composable" % (gname, fname))
        table = comp_tables.setdefault((fx, fy, gz), {})
        table[(gdeg, gidx, fdeg, fidx)] = vector_of((fx, gz), gdeg + fdeg, combo)

    id_coeffs = {}
    for x, spec in ids.items():
        combo = [(1, spec)] if isinstance(spec, str) else list(spec)
        for _, name in combo:
            if index[name][1] != 0:
                raise ValueError("identity %r must have degree 0" % (name,))
        id_coeffs[x] = vector_of((x, x), 0, combo)

    return DgCategory(field, objects, homs, comp_tables, id_coeffs)


def point_category(field) -> DgCategory:
    """One object with endomorphisms k in degree 0."""
    return from_named_basis(
        field,
        ["X"],
        {("X", "X"): [("idX", 0)]},
        {},
        {("idX", "idX"): [(1, "idX")]},
        {"X": "idX"},
    )


def arrow_category(field) -> DgCategory:
    """Two objects and one closed degree-0 arrow generating Hom(0, 1)."""
    return from_named_basis(
        field,
        ["0", "1"],
        {
            ("0", "0"): [("id0", 0)],
            ("1", "1"): [("id1", 0)],
            ("0", "1"): [("f", 0)],
            ("1", "0"): [],
        },
        {},
        {
            ("id0", "id0"): [(1, "id0")],
            ("id1", "id1"): [(1, "id1")],
            ("f", "id0"): [(1, "f")],
            ("id1", "f"): [(1, "f")],
        },
        {"0": "id0", "1": "id1"},
    )


def contractible_arrow_category(field) -> DgCategory:
    """Two objects whose connecting Hom is k -> k with d = id (so H^0 = 0)."""
    return from_named_basis(
        field,
        ["X", "Y"],
        {
            ("X", "X"): [("idX", 0)],
            ("Y", "Y"): [("idY", 0)],
            ("X", "Y"): [("e", -1), ("de", 0)],
            ("Y", "X"): [],
        },
        {"e": [(1, "de")]},
        {
            ("idX", "idX"): [(1, "idX")],
            ("idY", "idY"): [(1, "idY")],
            ("e", "idX"): [(1, "e")],
            ("idY", "e"): [(1, "e")],
            ("de", "idX"): [(1, "de")],
            ("idY", "de"): [(1, "de")],
        },
        {"X": "idX", "Y": "idY"},
    )


def duplicated_point_category(field) -> DgCategory:
    """Two objects joined by a strict isomorphism pair (both composites are
    identities); the smallest category with a redundant duplicate object."""
    return from_named_basis(
        field,
        ["u", "v"],
        {
            ("u", "u"): [("idu", 0)],
            ("v", "v"): [("idv", 0)],
            ("u", "v"): [("g", 0)],
            ("v", "u"): [("ginv", 0)],
        },
        {},
        {
            ("idu", "idu"): [(1, "idu")],
            ("idv", "idv"): [(1, "idv")],
            ("g", "idu"): [(1, "g")],
            ("idv", "g"): [(1, "g")],
            ("ginv", "idv"): [(1, "ginv")],
            ("idu", "ginv"): [(1, "ginv")],
            ("ginv", "g"): [(1, "idu")],
            ("g", "ginv"): [(1, "idv")],
        },
        {"u": "idu", "v": "idv"},
    )
