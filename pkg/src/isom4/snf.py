"""Exact linear algebra over Z, GF(p), and Z/p^k.

Integer Smith normal form is pure Python with arbitrary precision
arithmetic and is only meant for small matrices.  The mod-p and mod-p^k
routines are vectorized with numpy; they are the workhorses behind the
cohomology computations, where relation matrices reach a few thousand
rows and columns.
"""

from __future__ import annotations

import numpy as np

from .errors import InvalidInputError, InvalidParametersError

__all__ = [
    "smith_normal_form",
    "det_exact",
    "rref_mod_p",
    "rank_mod_p",
    "kernel_mod_p",
    "kernel_mod_prime_power",
    "solve_mod_prime_power",
    "module_presentation_local",
]


def _as_int_matrix(a):
    mat = [[int(x) for x in row] for row in a]
    if not mat or not mat[0]:
        raise InvalidInputError("matrix must be nonempty")
    width = len(mat[0])
    if any(len(row) != width for row in mat):
        raise InvalidInputError("matrix rows have unequal lengths")
    return mat


def _require_prime(p):
    if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
        raise InvalidParametersError(f"modulus {p} is not prime")


def _inverse_table(p):
    inv = np.zeros(p, dtype=np.int64)
    inv[1:] = [pow(x, p - 2, p) for x in range(1, p)]
    return inv


def _imatmul(x, y):
    """Exact integer matrix product, through BLAS when bounds allow."""
    x = np.asarray(x, dtype=np.int64)
    y = np.asarray(y, dtype=np.int64)
    if x.size == 0 or y.size == 0:
        return np.zeros((x.shape[0], y.shape[1]), dtype=np.int64)
    bound = float(np.abs(x).max()) * float(np.abs(y).max()) * x.shape[1]
    if bound < 2.0**52:
        prod = x.astype(np.float64) @ y.astype(np.float64)
        return np.rint(prod).astype(np.int64)
    return x @ y


def smith_normal_form(a):
    """Diagonalize an integer matrix over Z.

    Returns ``(d, u, v)`` with ``u @ a @ v == d``, where ``u`` and ``v``
    are unimodular and the diagonal of ``d`` is nonnegative with each
    entry dividing the next.  All three are object-dtype arrays so the
    identity can be checked without overflow.
    """
    mat = _as_int_matrix(a)
    m, n = len(mat), len(mat[0])
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    v = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        if i != j:
            mat[i], mat[j] = mat[j], mat[i]
            u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        if i != j:
            for row in mat:
                row[i], row[j] = row[j], row[i]
            for row in v:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):
        rd, rs = mat[dst], mat[src]
        for j in range(n):
            rd[j] += c * rs[j]
        rd, rs = u[dst], u[src]
        for j in range(m):
            rd[j] += c * rs[j]

    def add_col(dst, src, c):
        for row in mat:
            row[dst] += c * row[src]
        for row in v:
            row[dst] += c * row[src]

    def negate_row(i):
        mat[i] = [-x for x in mat[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    while t < min(m, n):
        while True:
            # re-pivot every round: smallest nonzero entry of the block
            pivot, best = None, 0
            for i in range(t, m):
                row = mat[i]
                for j in range(t, n):
                    x = row[j]
                    if x and (pivot is None or abs(x) < best):
                        pivot, best = (i, j), abs(x)
            if pivot is None:
                return _finish(mat, u, v, t)
            swap_rows(t, pivot[0])
            swap_cols(t, pivot[1])
            if mat[t][t] < 0:
                negate_row(t)
            d = mat[t][t]
            # balanced remainders: any leftover has magnitude <= d/2, so
            # the next round's pivot at least halves and entries stay small
            cleared = True
            for i in range(t + 1, m):
                if mat[i][t]:
                    add_row(i, t, -((mat[i][t] + d // 2) // d))
                    cleared = cleared and mat[i][t] == 0
            for j in range(t + 1, n):
                if mat[t][j]:
                    add_col(j, t, -((mat[t][j] + d // 2) // d))
                    cleared = cleared and mat[t][j] == 0
            if not cleared:
                continue
            # the pivot must divide the whole trailing block before we
            # can move on, otherwise d_t | d_{t+1} can fail later
            bad = None
            for i in range(t + 1, m):
                if any(x % d for x in mat[i][t + 1 :]):
                    bad = i
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        t += 1

    return _finish(mat, u, v, t)


def _finish(mat, u, v, rank):
    for i in range(rank):
        if mat[i][i] < 0:
            mat[i] = [-x for x in mat[i]]
            u[i] = [-x for x in u[i]]
    d = np.array(mat, dtype=object)
    return d, np.array(u, dtype=object), np.array(v, dtype=object)


def det_exact(a):
    """Fraction-free (Bareiss) determinant of a square integer matrix."""
    mat = _as_int_matrix(a)
    n = len(mat)
    if any(len(row) != n for row in mat):
        raise InvalidInputError("determinant requires a square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if mat[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if mat[i][k]), None)
            if swap is None:
                return 0
            mat[k], mat[swap] = mat[swap], mat[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                mat[i][j] = (mat[i][j] * mat[k][k] - mat[i][k] * mat[k][j]) // prev
            mat[i][k] = 0
        prev = mat[k][k]
    return sign * mat[n - 1][n - 1]


def rref_mod_p(a, p):
    """Row echelon form over GF(p).

    Returns ``(r, pivot_cols)``.  Forward elimination only: pivots are
    normalized to 1 and cleared below, not above.
    """
    _require_prime(p)
    r = np.asarray(a, dtype=np.int64) % p
    # products below stay within (p-1)^2, so int16 is safe for small p
    r = r.astype(np.int16 if p < 128 else np.int64)
    m, n = r.shape
    inv = _inverse_table(p)
    pivots = []
    row = 0
    for col in range(n):
        if row == m:
            break
        nz = np.nonzero(r[row:, col])[0]
        if nz.size == 0:
            continue
        i = row + int(nz[0])
        if i != row:
            r[[row, i]] = r[[i, row]]
        piv = int(r[row, col])
        if piv != 1:
            r[row, col:] = (r[row, col:] * inv[piv]) % p
        below = np.nonzero(r[row + 1 :, col])[0]
        if below.size:
            idx = below + row + 1
            r[idx, col:] = (r[idx, col:] - np.outer(r[idx, col], r[row, col:])) % p
        pivots.append(col)
        row += 1
    return r, pivots


def rank_mod_p(a, p):
    return len(rref_mod_p(a, p)[1])


def _drop_redundant_rows(a):
    if a.size == 0:
        return a
    a = a[np.any(a != 0, axis=1)]
    if a.shape[0] > 1:
        a = np.unique(a, axis=0)
    return a


def kernel_mod_p(a, p):
    """Basis of the right kernel over GF(p), as columns with entries in
    [0, p)."""
    _require_prime(p)
    a = np.asarray(a, dtype=np.int64) % p
    if p == 2:
        return _kernel_gf2(a)
    a = _drop_redundant_rows(a)
    r, pivots = rref_mod_p(a, p)
    n = r.shape[1]
    pivot_set = set(pivots)
    free = [j for j in range(n) if j not in pivot_set]
    k = len(free)
    ker = np.zeros((n, k), dtype=np.int64)
    if k == 0:
        return ker
    ker[free, np.arange(k)] = 1
    nr = len(pivots)
    if nr:
        rr = r.astype(np.int64)
        pc = np.array(pivots, dtype=np.int64)
        x = np.zeros((nr, k), dtype=np.int64)
        for i in range(nr - 1, -1, -1):
            acc = rr[i, free].copy()
            if i + 1 < nr:
                acc += rr[i, pc[i + 1 :]] @ x[i + 1 :]
            x[i] = (-acc) % p
        ker[pc] = x
    return ker


def _kernel_gf2(a):
    """GF(2) kernel with rows packed into bytes; XOR elimination."""
    a = _drop_redundant_rows(a % 2)
    m, n = a.shape
    if m == 0 or n == 0:
        ker = np.eye(n, dtype=np.int64)
        return ker
    words = np.packbits(a.astype(np.uint8), axis=1)
    pivots = []
    row = 0
    for col in range(n):
        if row == m:
            break
        byte, bit = divmod(col, 8)
        shift = 7 - bit
        colbits = (words[row:, byte] >> shift) & 1
        nz = np.nonzero(colbits)[0]
        if nz.size == 0:
            continue
        i = row + int(nz[0])
        if i != row:
            words[[row, i]] = words[[i, row]]
        carriers = (words[:, byte] >> shift) & 1
        carriers[row] = 0
        idx = np.nonzero(carriers)[0]
        if idx.size:
            words[idx] ^= words[row]
        pivots.append(col)
        row += 1
    pivot_set = set(pivots)
    free = [j for j in range(n) if j not in pivot_set]
    k = len(free)
    ker = np.zeros((n, k), dtype=np.int64)
    if k == 0:
        return ker
    ker[free, np.arange(k)] = 1
    if pivots:
        # fully reduced rows: kernel entries are read off directly
        piv_rows = np.unpackbits(words[: len(pivots)], axis=1, count=n)
        ker[np.array(pivots, dtype=np.int64)] = piv_rows[:, free]
    return ker


def _exact_div(a, p):
    q, r = np.divmod(a, p)
    if np.any(r):
        raise InvalidInputError("matrix entries are not divisible as required")
    return q


def kernel_mod_prime_power(a, p, k):
    """Generating set for {x : a @ x == 0 mod p^k}, as columns.

    The columns generate the solution module over Z/p^k but are not in
    general independent.  Recursion on k: solutions mod p^k are lifts
    x = f c + p y of mod-p kernel vectors, where (c, y) runs over the
    kernel of [g | a] mod p^{k-1} with g = (a @ f) / p, plus the
    multiples p^{k-1} f.
    """
    _require_prime(p)
    if k < 1:
        raise InvalidParametersError("exponent must be at least 1")
    mod = p**k
    a = np.asarray(a, dtype=np.int64) % mod
    if k == 1:
        return kernel_mod_p(a, p)
    f = kernel_mod_p(a, p)
    n = a.shape[1]
    if f.shape[1] == 0 and n == 0:
        return np.zeros((0, 0), dtype=np.int64)
    g = _exact_div(_imatmul(a, f) % (p * p ** (k - 1)), p) if f.shape[1] else np.zeros((a.shape[0], 0), dtype=np.int64)
    inner = kernel_mod_prime_power(np.hstack([g, a]), p, k - 1)
    c, y = inner[: f.shape[1]], inner[f.shape[1] :]
    lifted = (_imatmul(f, c) + p * y) % mod
    extra = (p ** (k - 1) * f) % mod
    gens = np.hstack([lifted, extra])
    if gens.shape[1]:
        gens = gens[:, np.any(gens != 0, axis=0)]
    return gens


def solve_mod_prime_power(a, b, p, k):
    """One solution of a @ x == b mod p^k, or None if none exists."""
    mod = p**k
    a = np.asarray(a, dtype=np.int64) % mod
    b = np.asarray(b, dtype=np.int64).reshape(-1) % mod
    aug = np.hstack([a, (-b.reshape(-1, 1)) % mod])
    gens = kernel_mod_prime_power(aug, p, k)
    for j in range(gens.shape[1]):
        t = int(gens[-1, j])
        if t % p:
            return (gens[:-1, j] * pow(t, -1, mod)) % mod
    return None


def module_presentation_local(rel, p, k, dim=None):
    """Cyclic decomposition of (Z/p^k)^d modulo the column span of rel.

    ``rel`` is a d x r integer matrix whose columns are relations; pass
    ``dim`` instead when there are no relations.  Returns
    ``(orders, gens)`` where orders[i] > 1 is the size of the i-th
    cyclic factor, ascending, and gens[:, i] generates it in the
    original coordinates.

    Diagonalization over the local ring Z/p^k pivots on entries of
    minimal p-adic valuation, so unit inverses always exist and the
    running entries stay reduced mod p^k.  Row operations are mirrored
    as column operations on the inverse transform, whose columns are
    exactly the factor generators.
    """
    _require_prime(p)
    mod = p**k
    rel = np.asarray(rel, dtype=np.int64) if rel is not None else np.zeros((dim, 0), dtype=np.int64)
    d, r = rel.shape
    m = [[int(x) % mod for x in row] for row in rel]
    pinv = [[int(i == j) for j in range(d)] for i in range(d)]

    def valuation(x):
        if x == 0:
            return k
        v = 0
        while x % p == 0:
            x //= p
            v += 1
        return v

    t = 0
    while t < min(d, r):
        pivot, best = None, k
        for i in range(t, d):
            row = m[i]
            for j in range(t, r):
                if row[j]:
                    v = valuation(row[j])
                    if v < best:
                        pivot, best = (i, j), v
                        if v == 0:
                            break
            if best == 0:
                break
        if pivot is None:
            break
        i0, j0 = pivot
        if i0 != t:
            m[i0], m[t] = m[t], m[i0]
            for row in pinv:
                row[i0], row[t] = row[t], row[i0]
        if j0 != t:
            for row in m:
                row[j0], row[t] = row[t], row[j0]
        v = best
        unit = m[t][t] // p**v
        uinv = pow(unit, -1, mod)
        m[t] = [(uinv * x) % mod for x in m[t]]
        for row in pinv:
            row[t] = (row[t] * unit) % mod
        for i in range(t + 1, d):
            if m[i][t]:
                f = m[i][t] // p**v
                mi, mt = m[i], m[t]
                for j in range(t, r):
                    mi[j] = (mi[j] - f * mt[j]) % mod
                for row in pinv:
                    row[t] = (row[t] + f * row[i]) % mod
        mt = m[t]
        for j in range(t + 1, r):
            if mt[j]:
                f = mt[j] // p**v
                for row in m:
                    row[j] = (row[j] - f * row[t]) % mod
        t += 1

    orders = []
    cols = []
    for i in range(d):
        v = valuation(m[i][i]) if i < t else k
        if v > 0:
            orders.append(p**v)
            cols.append([pinv[row][i] for row in range(d)])
    gens = np.array(cols, dtype=np.int64).T if cols else np.zeros((d, 0), dtype=np.int64)
    return orders, gens
