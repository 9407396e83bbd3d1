"""Exact integer linear algebra: Smith normal form, solves, kernels.

Everything works on plain lists of Python ints, so there is no overflow
and no floating point anywhere.  Sizes here are desk scale (presentations
of finite abelian groups, relation matrices of small diagrams), so the
classical pivoting algorithms are plenty.
"""

from __future__ import annotations

from fractions import Fraction


def identity_matrix(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    if not a:
        return []
    rows, inner = len(a), len(a[0])
    cols = len(b[0]) if b else 0
    out = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        ai = a[i]
        for k in range(inner):
            x = ai[k]
            if x == 0:
                continue
            bk = b[k]
            oi = out[i]
            for j in range(cols):
                oi[j] += x * bk[j]
    return out


def mat_vec(a, v):
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def transpose(a):
    if not a:
        return []
    return [list(col) for col in zip(*a)]


def smith_normal_form(mat):
    """Return (S, U, V) with U*mat*V = S, U and V unimodular, S diagonal
    with nonnegative entries s1 | s2 | ... along the diagonal."""
    a = [list(row) for row in mat]
    m = len(a)
    n = len(a[0]) if m else 0
    u = identity_matrix(m)
    v = identity_matrix(n)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):
        # row[dst] += q * row[src]
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, q):
        for row in a:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    while t < min(m, n):
        # locate a pivot of smallest absolute value in the trailing block
        piv = None
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = a[i][j]
                if x != 0 and (best is None or abs(x) < best):
                    best = abs(x)
                    piv = (i, j)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        if a[t][t] < 0:
            negate_row(t)

        dirty = False
        for i in range(t + 1, m):
            if a[i][t] != 0:
                q = a[i][t] // a[t][t]
                add_row(t, i, -q)
                if a[i][t] != 0:
                    dirty = True
        for j in range(t + 1, n):
            if a[t][j] != 0:
                q = a[t][j] // a[t][t]
                add_col(t, j, -q)
                if a[t][j] != 0:
                    dirty = True
        if dirty:
            continue

        # divisibility fix-up: pivot must divide every remaining entry
        fixed = True
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if a[i][j] % a[t][t] != 0:
                    add_row(i, t, 1)
                    fixed = False
                    break
            if not fixed:
                break
        if fixed:
            t += 1

    return a, u, v


def invariant_factors(mat):
    """Diagonal of the Smith form, without the transform matrices."""
    s, _, _ = smith_normal_form(mat)
    return [s[i][i] for i in range(min(len(s), len(s[0]) if s else 0))]


def invert_unimodular(mat):
    """Exact inverse of a unimodular integer matrix."""
    n = len(mat)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(mat)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        scale = aug[col][col]
        aug[col] = [x / scale for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    out = []
    for row in aug:
        vals = row[n:]
        assert all(x.denominator == 1 for x in vals), "matrix was not unimodular"
        out.append([int(x) for x in vals])
    return out


class LinearSolver:
    """Precomputed Smith form of a matrix, for repeated solves of A x = b."""

    def __init__(self, mat):
        self.m = len(mat)
        self.n = len(mat[0]) if self.m else 0
        self.s, self.u, self.v = smith_normal_form(mat)

    def solve(self, rhs):
        ub = mat_vec(self.u, rhs)
        y = [0] * self.n
        for i in range(self.m):
            si = self.s[i][i] if i < self.n else 0
            if si == 0:
                if ub[i] != 0:
                    return None
            else:
                if ub[i] % si != 0:
                    return None
                y[i] = ub[i] // si
        return mat_vec(self.v, y)


def solve_integer(mat, rhs):
    """One integer solution x of mat*x = rhs, or None if there is none."""
    return LinearSolver(mat).solve(rhs)


def kernel_basis(mat):
    """Basis (list of vectors) of {x in Z^n : mat*x = 0}."""
    m = len(mat)
    n = len(mat[0]) if m else 0
    s, _, v = smith_normal_form(mat)
    cols = []
    for j in range(n):
        sj = s[j][j] if j < m else 0
        if sj == 0:
            cols.append([v[i][j] for i in range(n)])
    return cols
