"""Matrix groups over nonunital rings and truncated KV_1.

GL_n of a nonunital ring A is the set of matrices I + M whose inverse is
again of that shape; we store only the M part, so membership is a
quasi-inverse witness N with M + N + MN = 0 = N + M + NM and the group
law is the circle product M o M' = M + M' + MM'.  This recovers the
kernel of GL_n on the unitalization without ever building unbounded
integer matrices.

pi_0 of GL(A[Delta]) is approximated from the 1-skeleton: matrices over
A[t] with P(0) = 0 contribute their value P(1) to the identified
subgroup.  The 1-skeleton suffices for pi_0 because the components of a
simplicial set are the coequalizer of the two face maps out of level 1;
higher simplices only witness relations between relations.  Skipping a
candidate whose quasi-invertibility we cannot settle only
under-identifies, so the computed quotient always surjects onto the
true pi_0 at its size level and is monotone in the degree bound.
"""

from __future__ import annotations

import itertools

from .errors import BudgetExceeded, VerificationFailure
from .intlin import smith_normal_form
from .poly import PolyLike, PolyRing, constant_of, evaluate
from .rings import FiniteRing


# ---------------------------------------------------------------------------
# matrices over an arbitrary ring


def mat_zero(ring, n):
    return tuple(tuple(ring.zero() for _ in range(n)) for _ in range(n))


def mat_add(ring, a, b):
    return tuple(tuple(ring.add(x, y) for x, y in zip(ra, rb))
                 for ra, rb in zip(a, b))


def mat_neg(ring, a):
    return tuple(tuple(ring.neg(x) for x in row) for row in a)


def mat_mul(ring, a, b):
    n = len(a)
    return tuple(tuple(ring.sum(ring.mul(a[i][k], b[k][j]) for k in range(n))
                       for j in range(n)) for i in range(n))


def circle(ring, a, b):
    """The group law on M parts: (I+a)(I+b) = I + (a o b)."""
    return mat_add(ring, mat_add(ring, a, b), mat_mul(ring, a, b))


def is_circle_witness(ring, m, n_mat):
    z = mat_zero(ring, len(m))
    return circle(ring, m, n_mat) == z and circle(ring, n_mat, m) == z


class QiMatrix:
    """A matrix with its quasi-inverse witness; the identity is exact."""

    def __init__(self, ring, entries, witness):
        self.ring = ring
        self.n = len(entries)
        self.entries = entries
        self.witness = witness
        if not is_circle_witness(ring, entries, witness):
            raise VerificationFailure("quasi-inverse witness fails",
                                      witness=(entries, witness))

    def compose(self, other):
        return QiMatrix(self.ring, circle(self.ring, self.entries, other.entries),
                        circle(self.ring, other.witness, self.witness))

    def inverse(self):
        return QiMatrix(self.ring, self.witness, self.entries)


class QiResult:
    def __init__(self, status, witness=None, trace=()):
        self.status = status        # "ok" | "not_qi" | "unknown"
        self.witness = witness
        self.trace = list(trace)

    def __bool__(self):
        return self.status == "ok"

    def __repr__(self):
        return f"<qi {self.status}; trace {self.trace}>"


# ---------------------------------------------------------------------------
# quasi-inverse strategy cascade


def _scalar_base(ring):
    return ring.scalar_base if isinstance(ring, PolyLike) else ring


def _is_commutative(ring):
    for i in range(ring.ngens):
        for j in range(i + 1, ring.ngens):
            if ring.table[i][j] != ring.table[j][i]:
                return False
    return True


def _det(ring, mat):
    n = len(mat)
    if n == 1:
        return mat[0][0]
    acc = ring.zero()
    for perm in itertools.permutations(range(n)):
        sign = _perm_sign(perm)
        prod = None
        for i in range(n):
            prod = mat[i][perm[i]] if prod is None else ring.mul(prod, mat[i][perm[i]])
        acc = ring.add(acc, ring.scalar(sign, prod))
    return acc


def _perm_sign(perm):
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _minor(mat, i, j):
    return tuple(tuple(x for c, x in enumerate(row) if c != j)
                 for r, row in enumerate(mat) if r != i)


def _adjugate(ring, mat):
    n = len(mat)
    if n == 1:
        raise AssertionError("adjugate of 1x1 handled by caller")
    cof = [[ring.scalar(_minor_sign(i, j), _det(ring, _minor(mat, j, i)))
            for j in range(n)] for i in range(n)]
    return tuple(tuple(row) for row in cof)


def _minor_sign(i, j):
    return 1 if (i + j) % 2 == 0 else -1


def _unit_matrix_shift(ring, m, sign=1):
    """I + sign*M over a ring that really has a unit element."""
    base = _scalar_base(ring)
    unit = base.unit
    n = len(m)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            e = m[i][j] if sign == 1 else ring.neg(m[i][j])
            if i == j:
                u = ring.const(unit) if isinstance(ring, PolyLike) else unit
                e = ring.add(e, u)
            row.append(e)
        out.append(tuple(row))
    return tuple(out)


def _is_nilpotent_element(ring, x):
    seen = set()
    p = x
    while p not in seen:
        if ring.is_zero(p):
            return True
        seen.add(p)
        p = ring.mul(p, x)
    return False


def _invert_in_unital(ring, u):
    """Multiplicative inverse of u in a finite commutative unital ring or
    in its polynomial extension; None when u is not a unit.  Complete for
    commutative bases: a polynomial is a unit exactly when its constant
    term is a unit and every higher coefficient is nilpotent."""
    base = _scalar_base(ring)
    if not isinstance(ring, PolyLike):
        for v in base.elements():
            if ring.mul(u, v) == base.unit and ring.mul(v, u) == base.unit:
                return v
        return None
    var = ring.vars[-1]
    u0_poly = evaluate(base, u, var, 0)
    u0 = constant_of(base, u0_poly)
    inv0 = None
    for v in base.elements():
        if base.mul(u0, v) == base.unit and base.mul(v, u0) == base.unit:
            inv0 = v
            break
    if inv0 is None:
        return None
    w = ring.sub(u, ring.const(u0))
    for _, c in w.terms:
        if not _is_nilpotent_element(base, c):
            return None
    inv0p = ring.const(inv0)
    term = ring.const(base.unit)
    acc = ring.zero()
    while term != ring.zero():
        acc = ring.add(acc, term)
        term = ring.neg(ring.mul(term, ring.mul(inv0p, w)))
    return ring.mul(inv0p, acc)


def quasi_inverse(ring, m, witness_degree=None, budget=200_000):
    """Strategy cascade for a quasi-inverse of the square matrix m.

    (a) nilpotent coefficient ring: alternating geometric series;
    (b) commutative unital coefficient ring: classical inversion of I + M
        by adjugate and determinant (complete: not_qi answers are final);
    (c) bounded enumeration up to witness_degree;
    otherwise unknown, with the strategy trace attached.
    """
    trace = []
    base = _scalar_base(ring)
    n = len(m)

    if isinstance(base, FiniteRing):
        e = base.nilpotency_class()
        if e is not None:
            trace.append(f"nilpotent(class={e})")
            power = m
            acc = mat_zero(ring, n)
            sign = -1
            for _ in range(1, e):
                acc = mat_add(ring, acc, power if sign == 1 else mat_neg(ring, power))
                power = mat_mul(ring, power, m)
                sign = -sign
            if is_circle_witness(ring, m, acc):
                return QiResult("ok", acc, trace)
            trace.append("series failed verification")

        if base.unit is not None and _is_commutative(base):
            trace.append("unital-commutative")
            shifted = _unit_matrix_shift(ring, m)
            det = _det(ring, shifted)
            inv_det = _invert_in_unital(ring, det)
            if inv_det is None:
                return QiResult("not_qi", None, trace + ["determinant not a unit"])
            if n == 1:
                inverse = ((ring.mul(inv_det,
                                     ring.const(base.unit)
                                     if isinstance(ring, PolyLike)
                                     else base.unit),),)
            else:
                adj = _adjugate(ring, shifted)
                inverse = tuple(tuple(ring.mul(inv_det, x) for x in row)
                                for row in adj)
            identity = _unit_matrix_shift(ring, mat_zero(ring, n), sign=1)
            witness = mat_add(ring, inverse, mat_neg(ring, identity))
            if is_circle_witness(ring, m, witness):
                return QiResult("ok", witness, trace)
            trace.append("classical inverse failed verification")

    # (c) bounded enumeration
    if isinstance(ring, FiniteRing):
        count = ring.size() ** (n * n)
        if count <= budget:
            trace.append(f"enumeration({count})")
            for cand in itertools.product(ring.elements(), repeat=n * n):
                w = tuple(tuple(cand[i * n + j] for j in range(n))
                          for i in range(n))
                if is_circle_witness(ring, m, w):
                    return QiResult("ok", w, trace)
            return QiResult("not_qi", None, trace)
    elif isinstance(ring, PolyRing) and isinstance(base, FiniteRing) \
            and witness_degree is not None:
        var = ring.vars[-1]
        count = base.size() ** (n * n * (witness_degree + 1))
        if count <= budget:
            trace.append(f"enumeration(deg<={witness_degree})")
            coeff_space = list(base.elements())
            for cand in itertools.product(coeff_space,
                                          repeat=n * n * (witness_degree + 1)):
                w = []
                for i in range(n):
                    row = []
                    for j in range(n):
                        off = (i * n + j) * (witness_degree + 1)
                        p = ring.zero()
                        for e in range(witness_degree + 1):
                            p = ring.add(p, ring.monomial(cand[off + e],
                                                          ((var, e),)))
                        row.append(p)
                    w.append(tuple(row))
                w = tuple(w)
                if is_circle_witness(ring, m, w):
                    return QiResult("ok", w, trace)
            return QiResult("not_qi", None, trace)

    return QiResult("unknown", None, trace + ["no strategy applied"])


# ---------------------------------------------------------------------------
# the finite circle group GL_n(A)


class CircleGroup:
    """Full table of (GL_n(A), o) with quasi-inverse witnesses."""

    def __init__(self, ring, n, elements, witnesses):
        self.ring = ring
        self.n = n
        self.elements = elements      # sorted list of M parts
        self.witnesses = witnesses    # M -> N
        self.index = {m: i for i, m in enumerate(elements)}

    def op(self, a, b):
        return circle(self.ring, a, b)

    def inv(self, a):
        return self.witnesses[a]

    def identity(self):
        return mat_zero(self.ring, self.n)

    def order(self):
        return len(self.elements)

    def verify_group_axioms(self):
        z = self.identity()
        assert z in self.index, "identity missing"
        for a in self.elements:
            assert self.op(a, z) == a and self.op(z, a) == a
            assert self.op(a, self.inv(a)) == z
            assert self.op(self.inv(a), a) == z
        for a in self.elements:
            for b in self.elements:
                assert self.op(a, b) in self.index, "not closed"
        for a in self.elements:
            for b in self.elements:
                ab = self.op(a, b)
                for c in self.elements:
                    if self.op(ab, c) != self.op(a, self.op(b, c)):
                        raise AssertionError("associativity fails")
        return True

    def subgroup_closure(self, gens):
        seen = {self.identity()}
        frontier = list(gens)
        while frontier:
            g = frontier.pop()
            if g in seen:
                continue
            seen.add(g)
            frontier.append(self.inv(g))
            for h in list(seen):
                frontier.append(self.op(g, h))
                frontier.append(self.op(h, g))
        return sorted(seen)

    def is_normal(self, subgroup):
        sub = set(subgroup)
        for g in self.elements:
            gi = self.inv(g)
            for h in subgroup:
                if self.op(self.op(g, h), gi) not in sub:
                    return False
        return True


_GL_CACHE = {}


def gl_group(ring, n, budget=200_000):
    """Enumerate GL_n over a finite ring, with witnesses."""
    key = (id(ring), n)
    if key in _GL_CACHE:
        return _GL_CACHE[key]
    count = ring.size() ** (n * n)
    if count > budget:
        raise BudgetExceeded(count, budget)
    elements = []
    witnesses = {}
    for cand in itertools.product(ring.elements(), repeat=n * n):
        m = tuple(tuple(cand[i * n + j] for j in range(n)) for i in range(n))
        res = quasi_inverse(ring, m, budget=budget)
        if res.status == "ok":
            elements.append(m)
            witnesses[m] = res.witness
        elif res.status == "unknown":
            raise VerificationFailure(
                f"quasi-invertibility undecided for {m} over {ring.label}")
    group = CircleGroup(ring, n, sorted(elements), witnesses)
    _GL_CACHE[key] = group
    return group


# ---------------------------------------------------------------------------
# pi_0 of GL(A[Delta]) at a truncation level


class Pi0Presentation:
    def __init__(self, level, group, subgroup, generators, reps, class_map,
                 invariant_factors):
        self.level = level                  # (n, d)
        self.group = group
        self.subgroup = subgroup
        self.generators = generators
        self.reps = reps
        self.class_map = class_map          # M part -> class index
        self.order = len(reps)
        self.invariant_factors = invariant_factors

    def class_of(self, m):
        return self.class_map[m]

    def summary(self):
        return {
            "level": list(self.level),
            "gl_order": self.group.order(),
            "identified_subgroup_order": len(self.subgroup),
            "classes": self.order,
            "invariant_factors": self.invariant_factors,
        }


def _poly_matrix(ring, var, coeff_mats):
    n = len(coeff_mats[0])
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            p = ring.zero()
            for e, mat in enumerate(coeff_mats, start=1):
                c = mat[i][j]
                p = ring.add(p, ring.monomial(c, ((var, e),)))
            row.append(p)
        rows.append(tuple(row))
    return tuple(rows)


def _eval_matrix(base, pm, var, value):
    return tuple(tuple(constant_of(base, evaluate(base, p, var, value))
                       for p in row) for row in pm)


def kv1_approx(ring, n, degree, budget=200_000, witness_degree=None):
    """Classes of GL_n(A) modulo ends of degree <= degree polynomial paths.

    H is the subgroup generated by {P(1) : P in GL_n(A[t]), deg P <= d,
    P(0) = 0}; the returned quotient GL_n(A)/H surjects onto the true
    pi_0(GL_n(A[Delta])) and is monotone in the degree bound.
    """
    group = gl_group(ring, n, budget=budget)
    if witness_degree is None:
        witness_degree = 2 * degree
    pring = PolyRing(ring, ("t",))

    count = ring.size() ** (n * n * degree)
    if count > budget:
        raise BudgetExceeded(count, budget)

    mats = [tuple(tuple(cand[i * n + j] for j in range(n)) for i in range(n))
            for cand in itertools.product(ring.elements(), repeat=n * n)]
    gens = set()
    for coeffs in itertools.product(mats, repeat=degree):
        if all(m == mat_zero(ring, n) for m in coeffs):
            continue
        pm = _poly_matrix(pring, "t", list(coeffs))
        res = quasi_inverse(pring, pm, witness_degree=witness_degree,
                            budget=budget)
        if res.status != "ok":
            continue            # skipping only under-identifies
        end = _eval_matrix(ring, pm, "t", 1)
        if end != mat_zero(ring, n):
            gens.add(end)

    gens = sorted(gens)
    subgroup = group.subgroup_closure(gens)
    if not group.is_normal(subgroup):
        raise VerificationFailure("identified subgroup is not normal")

    sub = set(subgroup)
    class_map = {}
    reps = []
    for m in group.elements:
        if m in class_map:
            continue
        coset = sorted(group.op(m, h) for h in sub)
        idx = len(reps)
        reps.append(coset[0])
        for x in coset:
            class_map[x] = idx

    inv_factors = _quotient_invariants(group, reps, class_map)
    return Pi0Presentation((n, degree), group, subgroup, gens, reps,
                           class_map, inv_factors)


def _quotient_invariants(group, reps, class_map):
    """Invariant factors of the quotient when it is abelian, else None."""
    k = len(reps)
    table = [[class_map[group.op(reps[i], reps[j])] for j in range(k)]
             for i in range(k)]
    for i in range(k):
        for j in range(k):
            if table[i][j] != table[j][i]:
                return None
    rows = []
    for i in range(k):
        for j in range(k):
            row = [0] * k
            row[i] += 1
            row[j] += 1
            row[table[i][j]] -= 1
            rows.append(row)
    if not rows:
        return []
    s, _, _ = smith_normal_form(rows)
    diag = [s[i][i] for i in range(min(len(rows), k))]
    return sorted(d for d in diag if d not in (0, 1))


def stabilize(ring, m, bigger):
    """diag(M, 0) embedding GL_n -> GL_bigger."""
    n = len(m)
    z = ring.zero()
    return tuple(tuple(m[i][j] if i < n and j < n else z
                       for j in range(bigger)) for i in range(bigger))


def circle_determinant(ring, m):
    """det(I + M) over a commutative unital coefficient ring."""
    return _det(ring, _unit_matrix_shift(ring, m))


def determinant_certificate(pres):
    """Side certificate against over-collapse for commutative unital bases.

    Every subgroup generator must have det(I+P(1)) = 1, so the true
    quotient is at least as large as the determinant image; returns the
    comparison data."""
    ring = pres.group.ring
    assert ring.unit is not None and _is_commutative(ring)
    dets_sub = {circle_determinant(ring, h) for h in pres.subgroup}
    dets_all = {circle_determinant(ring, g) for g in pres.group.elements}
    return {
        "subgroup_determinants": sorted(dets_sub),
        "determinant_image_order": len(dets_all),
        "subgroup_in_kernel": dets_sub == {ring.unit},
        "lower_bound_matches": len(dets_all) <= pres.order,
    }


# ---------------------------------------------------------------------------
# generic strict homotopization of a finite set along verified edges


def strict_pi0(elements, edges):
    """Partition of elements by the reflexive-symmetric-transitive closure
    of the given edges; deterministic class labels (sorted by least
    member)."""
    elements = list(elements)
    index = {x: i for i, x in enumerate(elements)}
    parent = list(range(len(elements)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for a, b in edges:
        ra, rb = find(index[a]), find(index[b])
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    buckets = {}
    for i, x in enumerate(elements):
        buckets.setdefault(find(i), []).append(x)
    return [sorted(buckets[r]) for r in sorted(buckets)]
