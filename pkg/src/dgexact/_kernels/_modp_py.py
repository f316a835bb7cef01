"""Pure-Python twin of the compiled mod-p matrix kernels."""


def _inv_mod(a, p):
    g, x, ng, nx = a, 1, p, 0
    while ng:
        q = g // ng
        g, ng = ng, g - q * ng
        x, nx = nx, x - q * nx
    return x % p


def mul_mod(a, b, p):
    """Return a @ b with entries reduced mod p."""
    n = len(a)
    k = len(b)
    if n == 0:
        return []
    m = len(a[0])
    if m != k:
        raise ValueError("shape mismatch")
    c = len(b[0]) if k else 0
    if c == 0 or k == 0:
        return [[0] * c for _ in range(n)]
    bt = [[b[t][j] for t in range(k)] for j in range(c)]
    out = []
    for ai in a:
        out.append([sum(x * y for x, y in zip(ai, bj)) % p for bj in bt])
    return out


def rref_mod(a, p):
    """Reduced row echelon form mod p; returns (rows, pivots)."""
    n = len(a)
    m = len(a[0]) if n else 0
    rows = [[x % p for x in row] for row in a]
    pivots = []
    r = 0
    for col in range(m):
        piv = next((i for i in range(r, n) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = _inv_mod(rows[r][col], p)
        rows[r] = [(x * inv) % p for x in rows[r]]
        for i in range(n):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == n:
            break
    return rows, pivots
