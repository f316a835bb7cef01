# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Dense matrix kernels over a prime field, compiled path.

Matrices are lists of row lists of canonical residues in [0, p).
The pure-Python twin (_modp_py) implements the same API; callers
select one at import via dgexact._kernels.
"""

from cpython.mem cimport PyMem_Malloc, PyMem_Free


cdef long _inv_mod(long a, long p):
    # extended Euclid; a != 0 mod p
    cdef long g = a, x = 1, ng = p, nx = 0, q, t
    while ng:
        q = g / ng
        t = g - q * ng; g = ng; ng = t
        t = x - q * nx; x = nx; nx = t
    x %= p
    if x < 0:
        x += p
    return x


def mul_mod(list a, list b, long p):
    """Return a @ b with entries reduced mod p."""
    cdef Py_ssize_t n = len(a)
    cdef Py_ssize_t k = len(b)
    if n == 0:
        return []
    cdef Py_ssize_t m = len(a[0])
    if m != k:
        raise ValueError("shape mismatch")
    cdef Py_ssize_t c = len(b[0]) if k else 0
    cdef Py_ssize_t i, j, t
    cdef long acc
    cdef long *bf
    cdef long *row
    out = []
    if c == 0 or k == 0:
        for i in range(n):
            out.append([0] * c)
        return out
    bf = <long *> PyMem_Malloc(k * c * sizeof(long))
    row = <long *> PyMem_Malloc(k * sizeof(long))
    if bf == NULL or row == NULL:
        if bf != NULL:
            PyMem_Free(bf)
        if row != NULL:
            PyMem_Free(row)
        raise MemoryError()
    try:
        for i in range(k):
            bi = b[i]
            for j in range(c):
                bf[i * c + j] = bi[j]
        for i in range(n):
            ai = a[i]
            for t in range(k):
                row[t] = ai[t]
            orow = [0] * c
            for j in range(c):
                acc = 0
                for t in range(k):
                    acc = (acc + row[t] * bf[t * c + j]) % p
                orow[j] = acc
            out.append(orow)
    finally:
        PyMem_Free(bf)
        PyMem_Free(row)
    return out


def rref_mod(list a, long p):
    """Reduced row echelon form mod p.

    Returns (rows, pivots) where rows is a new list-of-lists and pivots
    the pivot column index per nonzero row, ascending.
    """
    cdef Py_ssize_t n = len(a)
    cdef Py_ssize_t m = len(a[0]) if n else 0
    cdef Py_ssize_t i, j, r, col, piv
    cdef long inv, factor, v
    cdef long *buf
    if n == 0 or m == 0:
        return [list(row) for row in a], []
    buf = <long *> PyMem_Malloc(n * m * sizeof(long))
    if buf == NULL:
        raise MemoryError()
    pivots = []
    try:
        for i in range(n):
            ai = a[i]
            for j in range(m):
                buf[i * m + j] = ai[j] % p
        r = 0
        for col in range(m):
            piv = -1
            for i in range(r, n):
                if buf[i * m + col] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(m):
                    v = buf[r * m + j]
                    buf[r * m + j] = buf[piv * m + j]
                    buf[piv * m + j] = v
            inv = _inv_mod(buf[r * m + col], p)
            for j in range(col, m):
                buf[r * m + j] = (buf[r * m + j] * inv) % p
            for i in range(n):
                if i == r:
                    continue
                factor = buf[i * m + col]
                if factor:
                    for j in range(col, m):
                        buf[i * m + j] = (buf[i * m + j] - factor * buf[r * m + j]) % p
                        if buf[i * m + j] < 0:
                            buf[i * m + j] += p
            pivots.append(col)
            r += 1
            if r == n:
                break
        out = []
        for i in range(n):
            out.append([buf[i * m + j] for j in range(m)])
    finally:
        PyMem_Free(buf)
    return out, pivots
