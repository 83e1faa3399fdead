"""Exact linear algebra over the integers.

Everything here works with arbitrary-precision Python ints; there is no
floating point and no modular shortcut.  The normal form conventions are
fixed once and used by every caller:

  * Hermite form is row-style: ``H = U A`` with ``U`` unimodular, pivots
    positive, entries above each pivot reduced into ``[0, pivot)``, zero
    rows last.
  * Smith form is ``D = U A V`` with nonnegative diagonal entries forming
    a divisibility chain ``d1 | d2 | ...``.

Kernels are returned as saturated row lattices in Hermite form, so equal
lattices always produce identical bases.
"""

from __future__ import annotations

from math import gcd, prod


class IntMatrix:
    """Immutable dense integer matrix, row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries):
        data = tuple(tuple(int(x) for x in row) for row in entries)
        if not data:
            raise ValueError("matrix needs at least one row")
        width = len(data[0])
        if any(len(row) != width for row in data):
            raise ValueError("ragged rows")
        object.__setattr__(self, "rows", len(data))
        object.__setattr__(self, "cols", width)
        object.__setattr__(self, "entries", data)

    def __setattr__(self, name, value):
        raise AttributeError("IntMatrix is immutable")

    @classmethod
    def identity(cls, n):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows, cols):
        return cls([[0] * cols for _ in range(rows)])

    def __getitem__(self, key):
        i, j = key
        return self.entries[i][j]

    def row(self, i):
        return self.entries[i]

    def column(self, j):
        return tuple(r[j] for r in self.entries)

    def transpose(self):
        return IntMatrix([self.column(j) for j in range(self.cols)])

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        cols = [other.column(j) for j in range(other.cols)]
        return IntMatrix(
            [[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.entries]
        )

    def apply(self, vector):
        """Matrix times column vector, returned as a tuple."""
        if len(vector) != self.cols:
            raise ValueError("length mismatch")
        return tuple(sum(a * b for a, b in zip(r, vector)) for r in self.entries)

    def __eq__(self, other):
        return isinstance(other, IntMatrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"IntMatrix({[list(r) for r in self.entries]})"

    def to_lists(self):
        return [list(r) for r in self.entries]


def det(matrix):
    """Determinant by fraction-free (Bareiss) elimination."""
    if matrix.rows != matrix.cols:
        raise ValueError("determinant needs a square matrix")
    n = matrix.rows
    a = [list(r) for r in matrix.entries]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def hnf(matrix):
    """Row Hermite normal form.

    Returns ``(H, U)`` with ``H = U A``, ``U`` unimodular, pivots positive,
    entries above each pivot in ``[0, pivot)``, and zero rows collected at
    the bottom.
    """
    m, n = matrix.rows, matrix.cols
    h = [list(r) for r in matrix.entries]
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]

    def addmul(dst, src, q):
        hd, hs = h[dst], h[src]
        for j in range(n):
            hd[j] += q * hs[j]
        ud, us = u[dst], u[src]
        for j in range(m):
            ud[j] += q * us[j]

    r = 0
    for c in range(n):
        # gcd elimination below row r in column c
        while True:
            nz = [i for i in range(r, m) if h[i][c] != 0]
            if not nz:
                break
            pivot_row = min(nz, key=lambda i: abs(h[i][c]))
            if pivot_row != r:
                h[r], h[pivot_row] = h[pivot_row], h[r]
                u[r], u[pivot_row] = u[pivot_row], u[r]
            if len(nz) == 1:
                break
            for i in range(r + 1, m):
                if h[i][c] != 0:
                    addmul(i, r, -(h[i][c] // h[r][c]))
        if not any(h[i][c] for i in range(r, m)):
            continue
        if h[r][c] < 0:
            h[r] = [-x for x in h[r]]
            u[r] = [-x for x in u[r]]
        for i in range(r):
            q = h[i][c] // h[r][c]
            if q:
                addmul(i, r, -q)
        r += 1
        if r == m:
            break
    return IntMatrix(h), IntMatrix(u)


def snf(matrix):
    """Smith normal form.

    Returns ``(D, U, V)`` with ``D = U A V``, both transforms unimodular,
    diagonal nonnegative and forming a divisibility chain.
    """
    m, n = matrix.rows, matrix.cols
    d = [list(r) for r in matrix.entries]
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    v = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def row_addmul(dst, src, q):
        for j in range(n):
            d[dst][j] += q * d[src][j]
        for j in range(m):
            u[dst][j] += q * u[src][j]

    def col_addmul(dst, src, q):
        for i in range(m):
            d[i][dst] += q * d[i][src]
        for i in range(n):
            v[i][dst] += q * v[i][src]

    def row_swap(a, b):
        d[a], d[b] = d[b], d[a]
        u[a], u[b] = u[b], u[a]

    def col_swap(a, b):
        for i in range(m):
            d[i][a], d[i][b] = d[i][b], d[i][a]
        for i in range(n):
            v[i][a], v[i][b] = v[i][b], v[i][a]

    t = 0
    while t < min(m, n):
        # locate smallest nonzero entry in the trailing block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if d[i][j] != 0 and (best is None or abs(d[i][j]) < abs(d[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        row_swap(t, best[0])
        col_swap(t, best[1])
        while True:
            for i in range(t + 1, m):
                if d[i][t] != 0:
                    row_addmul(i, t, -(d[i][t] // d[t][t]))
            if any(d[i][t] for i in range(t + 1, m)):
                i = min(
                    (i for i in range(t, m) if d[i][t] != 0),
                    key=lambda i: abs(d[i][t]),
                )
                row_swap(t, i)
                continue
            for j in range(t + 1, n):
                if d[t][j] != 0:
                    col_addmul(j, t, -(d[t][j] // d[t][t]))
            if any(d[t][j] for j in range(t + 1, n)):
                j = min(
                    (j for j in range(t, n) if d[t][j] != 0),
                    key=lambda j: abs(d[t][j]),
                )
                col_swap(t, j)
                continue
            break
        t += 1

    k = min(m, n)
    for i in range(k):
        if d[i][i] < 0:
            for j in range(n):
                d[i][j] = -d[i][j]
            for j in range(m):
                u[i][j] = -u[i][j]

    # enforce the divisibility chain with 2x2 fixes
    changed = True
    while changed:
        changed = False
        for i in range(k - 1):
            a, b = d[i][i], d[i + 1][i + 1]
            if b == 0 or a == 0 or b % a == 0:
                if a == 0 and b != 0:
                    row_swap(i, i + 1)
                    col_swap(i, i + 1)
                    changed = True
                continue
            col_addmul(i, i + 1, 1)
            g, x, y = _xgcd(a, b)
            # rows i, i+1 on column i hold (a, b); mix them to (g, 0)
            ri, rj = d[i], d[i + 1]
            new_i = [x * p + y * q for p, q in zip(ri, rj)]
            new_j = [(-b // g) * p + (a // g) * q for p, q in zip(ri, rj)]
            d[i], d[i + 1] = new_i, new_j
            ui, uj = u[i], u[i + 1]
            u[i] = [x * p + y * q for p, q in zip(ui, uj)]
            u[i + 1] = [(-b // g) * p + (a // g) * q for p, q in zip(ui, uj)]
            if d[i][i + 1]:
                col_addmul(i + 1, i, -(d[i][i + 1] // d[i][i]))
            if d[i + 1][i + 1] < 0:
                for j in range(n):
                    d[i + 1][j] = -d[i + 1][j]
                for j in range(m):
                    u[i + 1][j] = -u[i + 1][j]
            changed = True
    return IntMatrix(d), IntMatrix(u), IntMatrix(v)


def _xgcd(a, b):
    """Extended gcd: returns (g, x, y) with g = ax + by, g >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def elementary_divisors(matrix):
    """Nonzero diagonal of the Smith form."""
    d, _, _ = snf(matrix)
    return tuple(d[i, i] for i in range(min(d.rows, d.cols)) if d[i, i] != 0)


def saturated_kernel(matrix):
    """Basis of the right kernel lattice {v : A v = 0}, in Hermite form.

    The lattice returned is saturated in Z^cols: any integer vector with a
    rational multiple in the kernel already lies in the row span of the
    basis.  Rows of the result are primitive.  Returns a matrix with zero
    rows count when the kernel is trivial, namely None.
    """
    h, u = hnf(matrix.transpose())
    rank = sum(1 for i in range(h.rows) if any(h.row(i)))
    if rank == u.rows:
        return None
    kernel_rows = [u.row(i) for i in range(rank, u.rows)]
    canonical, _ = hnf(IntMatrix(kernel_rows))
    return canonical


def lattice_index(vectors):
    """Index in Z^n of the lattice spanned by the given vectors.

    Returns the integer index when the span has full rank n, and the string
    "infinite" otherwise.
    """
    mat = vectors if isinstance(vectors, IntMatrix) else IntMatrix(vectors)
    divisors = elementary_divisors(mat)
    if len(divisors) < mat.cols:
        return "infinite"
    return prod(divisors)


def solve_in_lattice(basis, target):
    """Integer coordinates of ``target`` in a Hermite-form row basis.

    ``basis`` must be in row Hermite form with no zero rows.  Returns a
    tuple of coefficients, or None when the vector is outside the lattice.
    """
    residual = [int(x) for x in target]
    if len(residual) != basis.cols:
        raise ValueError("length mismatch")
    coeffs = []
    for i in range(basis.rows):
        row = basis.row(i)
        pivot_col = next((j for j, x in enumerate(row) if x), None)
        if pivot_col is None:
            raise ValueError("zero row in basis")
        value = residual[pivot_col]
        q, rem = divmod(value, row[pivot_col])
        if rem != 0:
            return None
        if q:
            for j in range(basis.cols):
                residual[j] -= q * row[j]
        coeffs.append(q)
    if any(residual):
        return None
    return tuple(coeffs)


def content(vector):
    """Gcd of the entries, 0 for the zero vector."""
    g = 0
    for x in vector:
        g = gcd(g, abs(int(x)))
    return g


def primitive_part(vector):
    """Divide out the content and make the first nonzero entry positive."""
    g = content(vector)
    if g == 0:
        raise ValueError("zero vector has no primitive part")
    scaled = [int(x) // g for x in vector]
    lead = next(x for x in scaled if x)
    if lead < 0:
        scaled = [-x for x in scaled]
    return tuple(scaled)
