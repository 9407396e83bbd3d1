"""Independent brute-force oracles shared by the test modules."""

from itertools import combinations


def det_int(mat):
    n = len(mat)
    if n == 1:
        return mat[0][0]
    return sum((-1) ** j * mat[0][j] * det_int([row[:j] + row[j + 1:]
                                                for row in mat[1:]])
               for j in range(n))


def gcd_int(a, b):
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


def minors_gcd_invariants(mat):
    """Invariant factors via gcds of i x i minors (classical, independent
    of the Smith normal form pivoting path)."""
    m, n = len(mat), len(mat[0]) if mat else 0
    r = min(m, n)
    dets = [1]
    for size in range(1, r + 1):
        g = 0
        for rows in combinations(range(m), size):
            for cols in combinations(range(n), size):
                g = gcd_int(g, det_int([[mat[i][j] for j in cols]
                                        for i in rows]))
        dets.append(abs(g))
    out = []
    for i in range(1, r + 1):
        out.append(0 if dets[i] == 0 else dets[i] // dets[i - 1])
    return out
