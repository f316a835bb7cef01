"""Dense exact matrices over Q or F_p with rank/kernel/solve.

Column-vector convention: a matrix with r rows and c cols maps c-vectors
to r-vectors. Over F_p the multiply and row-reduction go through the
kernels backend (compiled when available); over Q everything is Fraction
arithmetic. Dimensions stay at desk scale, so matrices are dense tuples.
"""

from __future__ import annotations

from . import _kernels


class Matrix:
    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field, rows, cols, data):
        self.field = field
        self.rows = rows
        self.cols = cols
        self.data = data  # tuple of row tuples

    # construction ------------------------------------------------------

    @staticmethod
    def from_rows(field, rows_list):
        rows = len(rows_list)
        cols = len(rows_list[0]) if rows else 0
        for r in rows_list:
            if len(r) != cols:
                raise ValueError("ragged rows")
        return Matrix(field, rows, cols, tuple(tuple(r) for r in rows_list))

    @staticmethod
    def zero(field, rows, cols):
        z = field.zero
        return Matrix(field, rows, cols, tuple(tuple(z for _ in range(cols)) for _ in range(rows)))

    @staticmethod
    def identity(field, n):
        z, o = field.zero, field.one
        return Matrix(field, n, n, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))

    @staticmethod
    def from_cols(field, cols_list, rows=None):
        if not cols_list:
            return Matrix.zero(field, rows or 0, 0)
        rows = len(cols_list[0])
        return Matrix(field, rows, len(cols_list), tuple(
            tuple(col[i] for col in cols_list) for i in range(rows)))

    def columns(self):
        return [tuple(self.data[i][j] for i in range(self.rows)) for j in range(self.cols)]

    # predicates --------------------------------------------------------

    def is_zero(self):
        f = self.field
        return all(f.is_zero(x) for row in self.data for x in row)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.field == other.field and self.rows == other.rows
                and self.cols == other.cols and self.data == other.data)

    def __hash__(self):
        return hash((self.rows, self.cols, self.data))

    def __repr__(self):
        return "Matrix(%d x %d over %s)" % (self.rows, self.cols, self.field.name)

    # arithmetic --------------------------------------------------------

    def __add__(self, other):
        self._check_same_shape(other)
        f = self.field
        return Matrix(f, self.rows, self.cols, tuple(
            tuple(f.add(a, b) for a, b in zip(ra, rb))
            for ra, rb in zip(self.data, other.data)))

    def __sub__(self, other):
        self._check_same_shape(other)
        f = self.field
        return Matrix(f, self.rows, self.cols, tuple(
            tuple(f.sub(a, b) for a, b in zip(ra, rb))
            for ra, rb in zip(self.data, other.data)))

    def __neg__(self):
        f = self.field
        return Matrix(f, self.rows, self.cols, tuple(
            tuple(f.neg(a) for a in row) for row in self.data))

    def scale(self, c):
        f = self.field
        return Matrix(f, self.rows, self.cols, tuple(
            tuple(f.mul(c, a) for a in row) for row in self.data))

    def __mul__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError("shape mismatch: %dx%d * %dx%d" % (
                self.rows, self.cols, other.rows, other.cols))
        f = self.field
        if self.rows == 0 or other.cols == 0 or self.cols == 0:
            return Matrix.zero(f, self.rows, other.cols)
        if f.kind == "Fp":
            prod = _kernels.mul_mod([list(r) for r in self.data],
                                    [list(r) for r in other.data], f.p)
            return Matrix(f, self.rows, other.cols, tuple(tuple(r) for r in prod))
        bt = list(zip(*other.data))
        out = []
        z = f.zero
        for row in self.data:
            orow = []
            for col in bt:
                acc = z
                for a, b in zip(row, col):
                    acc = f.add(acc, f.mul(a, b))
                orow.append(acc)
            out.append(tuple(orow))
        return Matrix(f, self.rows, other.cols, tuple(out))

    def apply(self, vec):
        """Matrix times column vector (tuple in, tuple out)."""
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        f = self.field
        out = []
        for row in self.data:
            acc = f.zero
            for a, x in zip(row, vec):
                acc = f.add(acc, f.mul(a, x))
            out.append(acc)
        return tuple(out)

    def transpose(self):
        return Matrix(self.field, self.cols, self.rows, tuple(zip(*self.data)) if self.data else tuple(tuple() for _ in range(self.cols)))

    def _check_same_shape(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch")

    # stacking ----------------------------------------------------------

    def hstack(self, other):
        if self.rows != other.rows:
            raise ValueError("row mismatch")
        return Matrix(self.field, self.rows, self.cols + other.cols, tuple(
            ra + rb for ra, rb in zip(self.data, other.data)))

    def vstack(self, other):
        if self.cols != other.cols:
            raise ValueError("col mismatch")
        return Matrix(self.field, self.rows + other.rows, self.cols, self.data + other.data)

    @staticmethod
    def block(field, grid):
        """Assemble from a grid of blocks; each grid row a list of matrices."""
        rows = []
        for brow in grid:
            height = brow[0].rows
            for b in brow:
                if b.rows != height:
                    raise ValueError("block height mismatch")
            for i in range(height):
                rows.append(tuple(x for b in brow for x in b.data[i]))
        cols = len(rows[0]) if rows else sum(b.cols for b in grid[0]) if grid else 0
        return Matrix(field, len(rows), cols, tuple(rows))

    # elimination -------------------------------------------------------

    def rref(self):
        """Reduced row echelon form; returns (Matrix, pivot column list)."""
        f = self.field
        if self.rows == 0 or self.cols == 0:
            return self, []
        if f.kind == "Fp":
            rows, pivots = _kernels.rref_mod([list(r) for r in self.data], f.p)
            return Matrix(f, self.rows, self.cols, tuple(tuple(r) for r in rows)), pivots
        rows = [list(r) for r in self.data]
        n, m = self.rows, self.cols
        pivots = []
        r = 0
        for col in range(m):
            piv = next((i for i in range(r, n) if not f.is_zero(rows[i][col])), None)
            if piv is None:
                continue
            rows[r], rows[piv] = rows[piv], rows[r]
            inv = f.inv(rows[r][col])
            rows[r] = [f.mul(inv, x) for x in rows[r]]
            for i in range(n):
                if i != r and not f.is_zero(rows[i][col]):
                    c = rows[i][col]
                    rows[i] = [f.sub(x, f.mul(c, y)) for x, y in zip(rows[i], rows[r])]
            pivots.append(col)
            r += 1
            if r == n:
                break
        return Matrix(f, n, m, tuple(tuple(row) for row in rows)), pivots

    def rank(self):
        return len(self.rref()[1])

    def kernel_basis(self):
        """Basis of the right null space, as column vectors (tuples)."""
        f = self.field
        R, pivots = self.rref()
        pivset = set(pivots)
        free = [j for j in range(self.cols) if j not in pivset]
        basis = []
        for j in free:
            v = [f.zero] * self.cols
            v[j] = f.one
            for r, pc in enumerate(pivots):
                v[pc] = f.neg(R.data[r][j])
            basis.append(tuple(v))
        return basis

    def solve(self, b):
        """One solution x of self @ x = b, or None if inconsistent."""
        if len(b) != self.rows:
            raise ValueError("rhs length mismatch")
        f = self.field
        aug = self.hstack(Matrix.from_cols(f, [tuple(b)], rows=self.rows))
        R, pivots = aug.rref()
        if self.cols in pivots:
            return None
        x = [f.zero] * self.cols
        for r, pc in enumerate(pivots):
            x[pc] = R.data[r][self.cols]
        return tuple(x)

    def solve_matrix(self, B):
        """X with self @ X = B, or None. Solves all columns at once."""
        if B.rows != self.rows:
            raise ValueError("rhs row mismatch")
        f = self.field
        aug = self.hstack(B)
        R, pivots = aug.rref()
        if any(pc >= self.cols for pc in pivots):
            return None
        cols = []
        for j in range(B.cols):
            x = [f.zero] * self.cols
            for r, pc in enumerate(pivots):
                x[pc] = R.data[r][self.cols + j]
            cols.append(tuple(x))
        return Matrix.from_cols(f, cols, rows=self.cols)

    def inverse(self):
        if self.rows != self.cols:
            return None
        X = self.solve_matrix(Matrix.identity(self.field, self.rows))
        if X is None:
            return None
        if not (self * X == Matrix.identity(self.field, self.rows)):
            return None
        return X


def complement_pivots(B: Matrix, Z: Matrix):
    """Indices j of columns of Z that extend the column span of B.

    Requires nothing about containment; used to pick quotient
    representatives when the columns of B span a subspace of span(Z).
    """
    stacked = B.hstack(Z)
    _, pivots = stacked.rref()
    return [pc - B.cols for pc in pivots if pc >= B.cols]


def coords_in_span(gens: Matrix, v):
    """Coordinates of v over the columns of gens, or None if outside."""
    return gens.solve(v)
