"""Finitely supported cochain complexes over an exact field.

Cohomological convention throughout: the differential has degree +1,
d(n): C^n -> C^{n+1} is a matrix with dim(n) columns and dim(n+1) rows.
Shift is (C[s])^n = C^{n+s} with differential (-1)^s d; the cone of a
closed degree-0 map f is source^{n+1} (+) target^n with differential
[[-d_src, 0], [f, d_tgt]].
"""

from __future__ import annotations

from .matrix import Matrix, complement_pivots


class Complex:
    __slots__ = ("field", "dims", "diffs")

    def __init__(self, field, dims, diffs):
        self.field = field
        self.dims = {n: d for n, d in dims.items() if d > 0}
        # canonical zero differentials are dropped; anything else is kept
        # (malformed shapes included, so validation can report them)
        self.diffs = {}
        for n, m in diffs.items():
            canonical = (m.rows, m.cols) == (self.dims.get(n + 1, 0), self.dims.get(n, 0))
            if canonical and m.is_zero():
                continue
            self.diffs[n] = m

    def dim(self, n: int) -> int:
        return self.dims.get(n, 0)

    def support(self):
        return sorted(self.dims)

    def diff(self, n: int) -> Matrix:
        m = self.diffs.get(n)
        if m is not None:
            return m
        return Matrix.zero(self.field, self.dim(n + 1), self.dim(n))

    def euler_characteristic(self):
        total = 0
        for n, d in self.dims.items():
            total += d if n % 2 == 0 else -d
        return total

    def __eq__(self, other):
        if not isinstance(other, Complex):
            return NotImplemented
        if self.field != other.field or self.dims != other.dims:
            return False
        degrees = set(self.dims) | set(other.dims)
        return all(self.diff(n) == other.diff(n) for n in degrees)

    def __repr__(self):
        return "Complex(%s)" % (", ".join("%d:%d" % (n, self.dim(n)) for n in self.support()) or "0")


def zero_complex(field) -> Complex:
    return Complex(field, {}, {})


def validate_complex(c: Complex):
    """List of violation strings; empty iff c is a valid complex."""
    issues = []
    shapes_ok = True
    for n in sorted(c.diffs):
        d = c.diffs[n]
        if (d.rows, d.cols) != (c.dim(n + 1), c.dim(n)):
            issues.append("degree %d: differential shape %dx%d, expected %dx%d"
                          % (n, d.rows, d.cols, c.dim(n + 1), c.dim(n)))
            shapes_ok = False
    if shapes_ok:
        for n in sorted(c.dims):
            if not (c.diff(n + 1) * c.diff(n)).is_zero():
                issues.append("degree %d: d.d != 0" % n)
    return issues


def homology(c: Complex, n: int):
    """(dimension of H^n, representative cycles whose classes form a basis)."""
    f = c.field
    cycles = c.diff(n).kernel_basis()
    if not cycles:
        return 0, []
    Z = Matrix.from_cols(f, cycles, rows=c.dim(n))
    B = c.diff(n - 1)
    keep = complement_pivots(B if B.cols else Matrix.zero(f, c.dim(n), 0), Z)
    reps = [cycles[j] for j in keep]
    return len(reps), reps


def homology_dim(c: Complex, n: int) -> int:
    return len(c.diff(n).kernel_basis()) - c.diff(n - 1).rank()


def is_acyclic(c: Complex) -> bool:
    return all(homology_dim(c, n) == 0 for n in c.support())


def shift(c: Complex, s: int) -> Complex:
    """(C[s])^n = C^{n+s}, differential (-1)^s d."""
    dims = {n - s: d for n, d in c.dims.items()}
    sign = 1 if s % 2 == 0 else -1
    diffs = {}
    for n in c.diffs:
        m = c.diff(n)
        diffs[n - s] = m if sign == 1 else -m
    return Complex(c.field, dims, diffs)


class ChainMap:
    """Graded map of complexes; degree s means components C^n -> D^{n+s}."""

    __slots__ = ("source", "target", "degree", "comps")

    def __init__(self, source, target, comps, degree=0):
        self.source = source
        self.target = target
        self.degree = degree
        self.comps = {n: m for n, m in comps.items()}

    def comp(self, n: int) -> Matrix:
        m = self.comps.get(n)
        if m is not None:
            return m
        return Matrix.zero(self.source.field, self.target.dim(n + self.degree), self.source.dim(n))

    def is_closed(self) -> bool:
        """d f = (-1)^degree f d, degreewise."""
        sign = 1 if self.degree % 2 == 0 else -1
        for n in set(self.source.dims) | {m - 1 for m in self.source.dims}:
            lhs = self.target.diff(n + self.degree) * self.comp(n)
            rhs = self.comp(n + 1) * self.source.diff(n)
            if sign == -1:
                rhs = -rhs
            if not (lhs - rhs).is_zero():
                return False
        return True

    def compose(self, other: "ChainMap") -> "ChainMap":
        """self after other."""
        if other.target is not self.source and other.target != self.source:
            raise ValueError("composition target/source mismatch")
        comps = {}
        for n in other.source.dims:
            comps[n] = self.comp(n + other.degree) * other.comp(n)
        return ChainMap(other.source, self.target, comps, self.degree + other.degree)

    @staticmethod
    def identity(c: Complex) -> "ChainMap":
        return ChainMap(c, c, {n: Matrix.identity(c.field, d) for n, d in c.dims.items()})

    @staticmethod
    def zero(source: Complex, target: Complex, degree=0) -> "ChainMap":
        return ChainMap(source, target, {}, degree)

    def induced_on_homology(self, n: int):
        """Rank data of H^n(source) -> H^{n+degree}(target)."""
        f = self.source.field
        _, src_reps = homology(self.source, n)
        tdeg = n + self.degree
        tgt_cycles = self.target.diff(tdeg).kernel_basis()
        B = self.target.diff(tdeg - 1)
        images = [self.comp(n).apply(v) for v in src_reps]
        if not tgt_cycles and not images:
            return 0
        cols = B.columns() + images
        base_rank = B.rank()
        M = Matrix.from_cols(f, cols, rows=self.target.dim(tdeg))
        return M.rank() - base_rank

    def is_quasi_isomorphism(self) -> bool:
        if self.degree != 0 or not self.is_closed():
            return False
        degrees = set(self.source.dims) | set(self.target.dims)
        degrees |= {n + 1 for n in degrees}
        for n in degrees:
            hs = homology_dim(self.source, n)
            ht = homology_dim(self.target, n)
            if hs != ht:
                return False
            if self.induced_on_homology(n) != hs:
                return False
        return True


def cone(f: ChainMap):
    """Mapping cone of a closed degree-0 chain map.

    Returns (cone complex, injection target -> cone, projection cone -> source[1]).
    """
    if f.degree != 0:
        raise ValueError("cone needs a degree-0 map")
    if not f.is_closed():
        raise ValueError("cone needs a closed map")
    src, tgt = f.source, f.target
    fld = src.field
    dims = {}
    for n in set(k - 1 for k in src.dims) | set(tgt.dims):
        d = src.dim(n + 1) + tgt.dim(n)
        if d:
            dims[n] = d
    diffs = {}
    for n in dims:
        a = src.dim(n + 1)
        b = tgt.dim(n)
        rows_a = src.dim(n + 2)
        rows_b = tgt.dim(n + 1)
        top = Matrix.block(fld, [[-src.diff(n + 1), Matrix.zero(fld, rows_a, b)]]) \
            if rows_a else Matrix.zero(fld, 0, a + b)
        bot = Matrix.block(fld, [[f.comp(n + 1), tgt.diff(n)]]) \
            if rows_b else Matrix.zero(fld, 0, a + b)
        diffs[n] = top.vstack(bot)
    cn = Complex(fld, dims, diffs)
    inj = ChainMap(tgt, cn, {
        n: Matrix.zero(fld, src.dim(n + 1), tgt.dim(n)).vstack(Matrix.identity(fld, tgt.dim(n)))
        for n in tgt.dims})
    shifted = shift(src, 1)
    proj = ChainMap(cn, shifted, {
        n: Matrix.identity(fld, src.dim(n + 1)).hstack(Matrix.zero(fld, src.dim(n + 1), tgt.dim(n)))
        for n in dims if src.dim(n + 1)})
    return cn, inj, proj


def direct_sum(cs):
    """Degreewise block sum. Returns (complex, injections, projections)."""
    if not cs:
        raise ValueError("direct_sum needs the field; use direct_sum_over")
    fld = cs[0].field
    for c in cs:
        if c.field != fld:
            raise ValueError("mixed fields in direct sum")
    return direct_sum_over(fld, cs)


def direct_sum_over(fld, cs):
    for c in cs:
        if c.field != fld:
            raise ValueError("mixed fields in direct sum")
    degrees = set()
    for c in cs:
        degrees |= set(c.dims)
    dims = {n: sum(c.dim(n) for c in cs) for n in degrees}
    diffs = {}
    for n in degrees:
        blocks = []
        for i, c in enumerate(cs):
            row = []
            for j, c2 in enumerate(cs):
                if i == j:
                    row.append(c.diff(n))
                else:
                    row.append(Matrix.zero(fld, c.dim(n + 1), c2.dim(n)))
            blocks.append(row)
        diffs[n] = Matrix.block(fld, blocks)
    total = Complex(fld, dims, diffs)
    injections = []
    projections = []
    offsets = {}
    for n in degrees:
        off = []
        acc = 0
        for c in cs:
            off.append(acc)
            acc += c.dim(n)
        offsets[n] = off
    for i, c in enumerate(cs):
        inj = {}
        proj = {}
        for n in c.dims:
            rows = total.dim(n)
            off = offsets[n][i]
            data = [[fld.one if (r == off + s) else fld.zero for s in range(c.dim(n))]
                    for r in range(rows)]
            inj[n] = Matrix.from_rows(fld, data) if rows else Matrix.zero(fld, 0, c.dim(n))
        for n in degrees:
            cols = total.dim(n)
            off = offsets[n][i]
            data = [[fld.one if (s == off + r) else fld.zero for s in range(cols)]
                    for r in range(c.dim(n))]
            if c.dim(n):
                proj[n] = Matrix.from_rows(fld, data)
        injections.append(ChainMap(c, total, inj))
        projections.append(ChainMap(total, c, proj))
    return total, injections, projections


def homotopy_pullback(u: ChainMap, v: ChainMap):
    """Homotopy pullback of u: A -> C and v: B -> C (both closed degree 0).

    Result^n = A^n (+) B^n (+) C^{n-1}, d(a, b, c) = (da, db, v(b) - u(a) - dc).
    Returns (complex, projection to A, projection to B).
    """
    if u.degree != 0 or v.degree != 0:
        raise ValueError("homotopy pullback needs degree-0 maps")
    if u.target != v.target:
        raise ValueError("target mismatch")
    if not u.is_closed() or not v.is_closed():
        raise ValueError("maps must be closed")
    A, B, C = u.source, v.source, u.target
    fld = A.field
    degrees = set(A.dims) | set(B.dims) | {n + 1 for n in C.dims}
    dims = {}
    for n in degrees:
        d = A.dim(n) + B.dim(n) + C.dim(n - 1)
        if d:
            dims[n] = d
    diffs = {}
    for n in dims:
        ra, rb, rc = A.dim(n + 1), B.dim(n + 1), C.dim(n)
        ca, cb, cc = A.dim(n), B.dim(n), C.dim(n - 1)
        rows = []
        if ra:
            rows.append([A.diff(n), Matrix.zero(fld, ra, cb), Matrix.zero(fld, ra, cc)])
        if rb:
            rows.append([Matrix.zero(fld, rb, ca), B.diff(n), Matrix.zero(fld, rb, cc)])
        if rc:
            rows.append([-u.comp(n), v.comp(n), -C.diff(n - 1)])
        if rows:
            diffs[n] = Matrix.block(fld, rows)
    total = Complex(fld, dims, diffs)

    def proj_maps(part_dim, before):
        comps = {}
        for n in dims:
            pd = part_dim(n)
            if pd:
                off = before(n)
                data = [[fld.one if s == off + r else fld.zero for s in range(total.dim(n))]
                        for r in range(pd)]
                comps[n] = Matrix.from_rows(fld, data)
        return comps

    proj_a = ChainMap(total, A, proj_maps(A.dim, lambda n: 0))
    proj_b = ChainMap(total, B, proj_maps(B.dim, lambda n: A.dim(n)))
    return total, proj_a, proj_b
