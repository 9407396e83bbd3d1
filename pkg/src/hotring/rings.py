"""Finite nonunital associative rings given by structure constants.

A ring is a finite abelian group ``Z/d_1 x ... x Z/d_k`` together with a
k x k table of coordinate vectors recording the products of generators.
Elements are coordinate tuples reduced modulo the orders.  Multiplication
of arbitrary elements is the bilinear extension of the table, so checking
ring axioms on generators suffices.

Also here: ring homomorphisms (determined by generator images when the
source is finite), hom enumeration, ideals and quotients, fibre products,
and kernel subrings.  Presentations of subgroups and quotients go through
integer kernels and Smith normal form (see ``intlin``).
"""

from __future__ import annotations

import itertools

from .errors import (BadUnit, BudgetExceeded, IllDefined, NotAssociative)
from .intlin import (LinearSolver, invert_unimodular, kernel_basis, mat_vec,
                     smith_normal_form)


class Ring:
    """Minimal interface every ring in the library implements.

    Elements are plain hashable values; the ring object owns the
    arithmetic.  ``scalar`` is the integral action n.x, which exists in any
    ring and replaces multiplication by units we may not have.
    """

    label = "ring"

    def zero(self):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def scalar(self, n, a):
        raise NotImplementedError

    def contains(self, a):
        raise NotImplementedError

    def sample(self, rng):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def sum(self, xs):
        acc = self.zero()
        for x in xs:
            acc = self.add(acc, x)
        return acc

    def is_zero(self, a):
        return a == self.zero()

    def __repr__(self):
        return f"<{type(self).__name__} {self.label}>"


class IntegerRing(Ring):
    """The ring of integers; the coefficient domain for substitutions."""

    label = "Z"

    def zero(self):
        return 0

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def scalar(self, n, a):
        return n * a

    def contains(self, a):
        return isinstance(a, int)

    def sample(self, rng):
        return rng.randrange(-3, 4)


ZZ = IntegerRing()


class FiniteRing(Ring):
    """Use ``validate_ring`` to construct one; it enforces the axioms."""

    def __init__(self, orders, table, unit=None, label="R"):
        self.orders = tuple(int(d) for d in orders)
        self.ngens = len(self.orders)
        self.table = tuple(tuple(self._reduce_raw(v) for v in row) for row in table)
        self.unit = self._reduce_raw(unit) if unit is not None else None
        self.label = label

    def _reduce_raw(self, v):
        return tuple(int(c) % d for c, d in zip(v, self.orders))

    def element(self, coords):
        return self._reduce_raw(coords)

    def gen(self, i):
        return tuple(1 if j == i else 0 for j in range(self.ngens))

    def zero(self):
        return (0,) * self.ngens

    def add(self, a, b):
        return tuple((x + y) % d for x, y, d in zip(a, b, self.orders))

    def neg(self, a):
        return tuple((-x) % d for x, d in zip(a, self.orders))

    def scalar(self, n, a):
        return tuple((n * x) % d for x, d in zip(a, self.orders))

    def mul(self, a, b):
        out = [0] * self.ngens
        for i, x in enumerate(a):
            if x == 0:
                continue
            row = self.table[i]
            for j, y in enumerate(b):
                if y == 0:
                    continue
                c = x * y
                for l, t in enumerate(row[j]):
                    out[l] += c * t
        return tuple(x % d for x, d in zip(out, self.orders))

    def contains(self, a):
        return (isinstance(a, tuple) and len(a) == self.ngens
                and all(isinstance(x, int) and 0 <= x < d
                        for x, d in zip(a, self.orders)))

    def size(self):
        n = 1
        for d in self.orders:
            n *= d
        return n

    def elements(self):
        return (tuple(c) for c in itertools.product(*(range(d) for d in self.orders)))

    def sample(self, rng):
        return tuple(rng.randrange(d) for d in self.orders)

    def nilpotency_class(self, cap=64):
        """Smallest e with all e-fold products zero, or None.

        Left-normed products of generators span the span of all m-fold
        products, so the chain is computed from generator words only.
        """
        words = [self.gen(i) for i in range(self.ngens)]
        seen = None
        for m in range(1, cap + 1):
            span = additive_closure(self, words)
            if span == {self.zero()}:
                return m
            if span == seen:
                return None
            seen = span
            words = [self.mul(self.gen(i), w)
                     for i in range(self.ngens) for w in words]
            words = sorted(set(words))
        return None


def zero_ring(label="0"):
    return FiniteRing((), (), unit=(), label=label)


def validate_ring(orders, table, unit=None, label="R"):
    """Build a FiniteRing after checking all its invariants.

    Raises IllDefined when a product is incompatible with the generator
    orders, NotAssociative with the offending triple, BadUnit when a
    claimed identity fails on some generator.
    """
    orders = tuple(int(d) for d in orders)
    if any(d <= 0 for d in orders):
        raise ValueError("generator orders must be positive")
    k = len(orders)
    if len(table) != k or any(len(row) != k for row in table):
        raise ValueError("structure constant table must be k x k")
    for row in table:
        for v in row:
            if len(v) != k:
                raise ValueError("structure constant entries must have length k")

    ring = FiniteRing(orders, table, unit=None, label=label)

    # d_i * (g_i g_j) and d_j * (g_i g_j) must vanish, otherwise the
    # bilinear extension is not well defined on Z/d_i x Z/d_j
    for i in range(k):
        for j in range(k):
            v = ring.table[i][j]
            for d in (orders[i], orders[j]):
                if any((d * c) % dl != 0 for c, dl in zip(v, orders)):
                    raise IllDefined(i, j)

    # associativity on generator triples suffices by bilinearity
    for i in range(k):
        gi = ring.gen(i)
        for j in range(k):
            gj = ring.gen(j)
            left_ij = ring.table[i][j]
            for l in range(k):
                gl = ring.gen(l)
                left = ring.mul(left_ij, gl)
                right = ring.mul(gi, ring.mul(gj, gl))
                if left != right:
                    raise NotAssociative(i, j, l, left, right)

    if unit is not None:
        e = ring.element(unit)
        for i in range(k):
            g = ring.gen(i)
            if ring.mul(e, g) != g or ring.mul(g, e) != g:
                raise BadUnit(f"claimed unit {e} fails on generator {i}")
        ring.unit = e
    return ring


# ---------------------------------------------------------------------------
# homomorphisms


class Hom:
    def __init__(self, source, target, label=""):
        self.source = source
        self.target = target
        self.label = label

    def apply(self, x):
        raise NotImplementedError

    def __call__(self, x):
        return self.apply(x)

    def __repr__(self):
        name = self.label or type(self).__name__
        return f"<{name}: {self.source.label} -> {self.target.label}>"


class RingHom(Hom):
    """Hom out of a finite ring, stored as generator images."""

    def __init__(self, source, target, images, label=""):
        super().__init__(source, target, label)
        self.images = tuple(images)

    def apply(self, x):
        t = self.target
        acc = t.zero()
        for c, img in zip(x, self.images):
            if c:
                acc = t.add(acc, t.scalar(c, img))
        return acc

    def is_valid(self):
        try:
            self.validate()
            return True
        except AssertionError:
            return False

    def validate(self):
        src, t = self.source, self.target
        assert len(self.images) == src.ngens
        for i, img in enumerate(self.images):
            assert t.contains(img), f"image of generator {i} not in target"
            assert t.is_zero(t.scalar(src.orders[i], img)), \
                f"order of generator {i} not respected"
        for i in range(src.ngens):
            for j in range(src.ngens):
                lhs = self.apply(src.table[i][j])
                rhs = t.mul(self.images[i], self.images[j])
                assert lhs == rhs, f"multiplicativity fails on generators {i},{j}"

    def key(self):
        return self.images

    def __eq__(self, other):
        return (isinstance(other, RingHom) and self.source is other.source
                and self.target is other.target and self.images == other.images)

    def __hash__(self):
        return hash((id(self.source), id(self.target), self.images))


class FuncHom(Hom):
    """Hom given by a function; used for maps out of intensional rings."""

    def __init__(self, source, target, fn, label=""):
        super().__init__(source, target, label)
        self.fn = fn

    def apply(self, x):
        return self.fn(x)


def compose(g, f, label=""):
    assert f.target is g.source or f.target.label == g.source.label, \
        f"cannot compose {f} with {g}"
    if isinstance(f, RingHom):
        return RingHom(f.source, g.target, [g.apply(x) for x in f.images],
                       label=label or f"{g.label}*{f.label}")
    return FuncHom(f.source, g.target, lambda x: g.apply(f.apply(x)),
                   label=label or f"{g.label}*{f.label}")


def identity_hom(ring):
    if isinstance(ring, FiniteRing):
        return RingHom(ring, ring, [ring.gen(i) for i in range(ring.ngens)],
                       label=f"id_{ring.label}")
    return FuncHom(ring, ring, lambda x: x, label=f"id_{ring.label}")


def zero_hom(source, target):
    if isinstance(source, FiniteRing):
        return RingHom(source, target, [target.zero()] * source.ngens, label="0")
    return FuncHom(source, target, lambda x: target.zero(), label="0")


def enumerate_homs(source, target, budget=1_000_000):
    """All ring homomorphisms source -> target, in lexicographic order of
    generator image coordinates.  Both rings finite."""
    k = source.ngens
    candidates = []
    for i in range(k):
        d = source.orders[i]
        candidates.append([x for x in target.elements()
                           if target.is_zero(target.scalar(d, x))])
    total = 1
    for c in candidates:
        total *= len(c)
    if total > budget:
        raise BudgetExceeded(total, budget)

    # a pair (i, j) can be checked once images for i, j and the support of
    # g_i * g_j are all assigned
    checks_at = [[] for _ in range(k)]
    for i in range(k):
        for j in range(k):
            support = [l for l, c in enumerate(source.table[i][j]) if c]
            step = max([i, j] + support)
            checks_at[step].append((i, j))

    found = []
    images = [None] * k

    def extend(step):
        if step == k:
            found.append(RingHom(source, target, list(images)))
            return
        for x in candidates[step]:
            images[step] = x
            ok = True
            for (i, j) in checks_at[step]:
                lhs = target.zero()
                for l, c in enumerate(source.table[i][j]):
                    if c:
                        lhs = target.add(lhs, target.scalar(c, images[l]))
                if lhs != target.mul(images[i], images[j]):
                    ok = False
                    break
            if ok:
                extend(step + 1)
        images[step] = None

    extend(0)
    return found


def is_surjective(hom):
    """Surjectivity for a RingHom with finite source and target: the image
    is the additive span of the generator images."""
    img = additive_closure(hom.target, list(hom.images))
    return len(img) == hom.target.size()


# ---------------------------------------------------------------------------
# subgroups, quotients, presentations


def additive_closure(ring, elements):
    """The additive subgroup generated by the given elements (as a set)."""
    closed = {ring.zero()}
    frontier = list(elements)
    while frontier:
        x = frontier.pop()
        if x in closed:
            continue
        closed.add(x)
        for y in list(closed):
            s = ring.add(x, y)
            if s not in closed:
                frontier.append(s)
    return closed


def ideal_closure(ring, gens):
    """Two-sided ideal generated by gens, by worklist saturation."""
    current = additive_closure(ring, gens)
    while True:
        extra = set()
        for h in current:
            for i in range(ring.ngens):
                g = ring.gen(i)
                for p in (ring.mul(g, h), ring.mul(h, g)):
                    if p not in current:
                        extra.add(p)
        if not extra:
            return current
        current = additive_closure(ring, current | extra)


class SubgroupPresentation:
    """Smith-normal-form presentation of a subgroup of ⊕ Z/d_i.

    ``orders`` are the invariant factors, ``gens`` the corresponding
    elements of the ambient group, and ``coords`` maps a subgroup element
    to its coordinates in the new basis (or None when not a member).
    """

    def __init__(self, ambient_orders, vectors):
        self.ambient_orders = tuple(ambient_orders)
        k = len(self.ambient_orders)
        vectors = [tuple(v) for v in vectors]
        if not vectors:
            vectors = [(0,) * k] if k else []
        m = len(vectors)
        if k == 0 or m == 0:
            self.orders, self.gens = (), []
            self._u, self._s, self._solver, self._m = None, (), None, 0
            self._keep = []
            return
        stacked = [[vectors[j][i] for j in range(m)]
                   + [self.ambient_orders[i] if c == i else 0 for c in range(k)]
                   for i in range(k)]
        rel = [col[:m] for col in kernel_basis(stacked)]
        rel_mat = [[rel[r][i] for r in range(len(rel))] for i in range(m)]
        s, u, _ = smith_normal_form(rel_mat)
        uinv = invert_unimodular(u)
        diag = [s[i][i] for i in range(m)]
        keep = [i for i in range(m) if diag[i] != 1]
        self._m = m
        self._u = u
        self._s = diag
        self._solver = LinearSolver(stacked)
        self._keep = keep
        self.orders = tuple(diag[i] for i in keep)
        gens = []
        for i in keep:
            w = [uinv[r][i] for r in range(m)]
            v = [0] * k
            for r, c in enumerate(w):
                for l in range(k):
                    v[l] += c * vectors[r][l]
            gens.append(tuple(x % d for x, d in zip(v, self.ambient_orders)))
        self.gens = gens

    def size(self):
        n = 1
        for d in self.orders:
            n *= d
        return n

    def coords(self, v):
        """Coordinates of ambient element v in the subgroup basis."""
        if self._m == 0:
            return () if all(x == 0 for x in v) else None
        sol = self._solver.solve(list(v))
        if sol is None:
            return None
        w = sol[:self._m]
        uw = mat_vec(self._u, w)
        return tuple(uw[i] % self._s[i] for i in self._keep)

    def element_of(self, coords):
        k = len(self.ambient_orders)
        v = [0] * k
        for c, g in zip(coords, self.gens):
            for l in range(k):
                v[l] += c * g[l]
        return tuple(x % d for x, d in zip(v, self.ambient_orders))


class QuotientPresentation:
    """Presentation of (⊕ Z/d_i) / H with H a subgroup given by vectors."""

    def __init__(self, ambient_orders, sub_vectors):
        self.ambient_orders = tuple(ambient_orders)
        k = len(self.ambient_orders)
        cols = [[self.ambient_orders[i] if c == i else 0 for c in range(k)]
                for i in range(k)]
        cols += [list(v) for v in sub_vectors]
        mat = [[cols[j][i] for j in range(len(cols))] for i in range(k)]
        if k == 0:
            self.orders, self.lifts, self._u, self._s, self._keep = (), [], None, (), []
            return
        s, u, _ = smith_normal_form(mat)
        uinv = invert_unimodular(u)
        diag = [s[i][i] for i in range(k)]
        keep = [i for i in range(k) if diag[i] != 1]
        self._u = u
        self._s = diag
        self._keep = keep
        self.orders = tuple(diag[i] for i in keep)
        self.lifts = [tuple(uinv[r][i] % self.ambient_orders[r] for r in range(k))
                      for i in keep]

    def project(self, v):
        if not self._keep:
            return ()
        uv = mat_vec(self._u, list(v))
        return tuple(uv[i] % self._s[i] for i in self._keep)


def _ring_from_group(orders, gen_elements, host_mul, coords, unit_coords=None,
                     label="R"):
    """Assemble a FiniteRing on a presented abelian group.

    gen_elements live in some host structure with multiplication host_mul;
    coords maps host elements back to presentation coordinates.
    """
    k = len(orders)
    table = []
    for i in range(k):
        row = []
        for j in range(k):
            prod = host_mul(gen_elements[i], gen_elements[j])
            c = coords(prod)
            assert c is not None, "product escaped the presented subgroup"
            row.append(c)
        table.append(tuple(row))
    return validate_ring(orders, table, unit=unit_coords, label=label)


def quotient(ring, ideal_gens, label=None):
    """Quotient by the two-sided ideal generated by ideal_gens.

    Returns (Q, proj, ideal_elements) with proj a surjective RingHom and
    ideal_elements the saturated closure (the kernel of proj).
    """
    ideal = ideal_closure(ring, list(ideal_gens))
    pres = QuotientPresentation(ring.orders, sorted(ideal))
    k = len(pres.orders)
    lifts = pres.lifts
    table = []
    for i in range(k):
        row = []
        for j in range(k):
            row.append(pres.project(ring.mul(lifts[i], lifts[j])))
        table.append(tuple(row))
    unit_coords = pres.project(ring.unit) if ring.unit is not None else None
    q = validate_ring(pres.orders, table, unit=unit_coords,
                      label=label or f"{ring.label}/I")
    proj = RingHom(ring, q, [pres.project(ring.gen(i)) for i in range(ring.ngens)],
                   label="proj")
    proj.validate()
    return q, proj, ideal


def pullback(f, g, label=None):
    """Fibre product of f: A -> C and g: B -> C.

    Returns (D, rho, sigma, embed) where rho, sigma are the projections to
    A and B and embed maps a pair (a, b) with f(a) = g(b) to its element
    of D (None when the pair is not in the fibre product).
    """
    a_ring, b_ring, c_ring = f.source, g.source, f.target
    assert g.target is c_ring, "pullback legs must share their target"
    ka, kb, kc = a_ring.ngens, b_ring.ngens, c_ring.ngens
    orders = a_ring.orders + b_ring.orders

    # integer kernel of (a, b) -> f(a) - g(b) modulo the orders of C
    cols = [list(f.images[i]) for i in range(ka)]
    cols += [list(c_ring.neg(g.images[j])) for j in range(kb)]
    cols += [[c_ring.orders[i] if c == i else 0 for c in range(kc)]
             for i in range(kc)]
    mat = [[cols[j][i] for j in range(len(cols))] for i in range(kc)]
    vecs = [tuple(col[l] % orders[l] for l in range(ka + kb))
            for col in (c[:ka + kb] for c in kernel_basis(mat))] if kc else \
           [tuple(1 if l == t else 0 for l in range(ka + kb))
            for t in range(ka + kb)]
    pres = SubgroupPresentation(orders, vecs)

    def host_mul(x, y):
        return (a_ring.mul(x[:ka], y[:ka]) + b_ring.mul(x[ka:], y[ka:]))

    unit_coords = None
    if a_ring.unit is not None and b_ring.unit is not None:
        cand = a_ring.unit + b_ring.unit
        if f.apply(a_ring.unit) == g.apply(b_ring.unit):
            unit_coords = pres.coords(cand)

    d_ring = _ring_from_group(pres.orders, pres.gens, host_mul, pres.coords,
                              unit_coords=unit_coords,
                              label=label or f"{a_ring.label}x_{c_ring.label}{b_ring.label}")
    rho = RingHom(d_ring, a_ring, [gv[:ka] for gv in pres.gens], label="rho")
    sigma = RingHom(d_ring, b_ring, [gv[ka:] for gv in pres.gens], label="sigma")
    rho.validate()
    sigma.validate()

    def embed(a, b):
        if f.apply(a) != g.apply(b):
            return None
        return pres.coords(tuple(a) + tuple(b))

    return d_ring, rho, sigma, embed


def product_ring(a_ring, b_ring, label=None):
    z = zero_ring()
    return pullback(zero_hom(a_ring, z), zero_hom(b_ring, z),
                    label=label or f"{a_ring.label}x{b_ring.label}")


def canonicalize(ring, label=None):
    """Isomorphic presentation in invariant-factor form.

    Optional: user-supplied presentations are kept readable, but derived
    constructions sometimes want the canonical shape.  Returns
    (canonical_ring, to_canonical, from_canonical) with both direction
    maps validated.
    """
    vecs = [ring.gen(i) for i in range(ring.ngens)]
    pres = SubgroupPresentation(ring.orders, vecs)
    can = _ring_from_group(pres.orders, pres.gens, ring.mul, pres.coords,
                           unit_coords=(pres.coords(ring.unit)
                                        if ring.unit is not None else None),
                           label=label or f"{ring.label}#")
    fwd = RingHom(ring, can, [pres.coords(ring.gen(i))
                              for i in range(ring.ngens)], label="canon")
    back = RingHom(can, ring, list(pres.gens), label="canon^-1")
    fwd.validate()
    back.validate()
    return can, fwd, back


def kernel_subring(f, label=None):
    """Kernel of a RingHom between finite rings, as a ring of its own.

    Returns (K, incl, coords) with incl the inclusion into the source and
    coords the partial inverse (None off the kernel).
    """
    src, tgt = f.source, f.target
    k, kt = src.ngens, tgt.ngens
    cols = [list(f.images[i]) for i in range(k)]
    cols += [[tgt.orders[i] if c == i else 0 for c in range(kt)]
             for i in range(kt)]
    mat = [[cols[j][i] for j in range(len(cols))] for i in range(kt)]
    if kt:
        vecs = [tuple(col[l] % src.orders[l] for l in range(k))
                for col in (c[:k] for c in kernel_basis(mat))]
    else:
        vecs = [src.gen(i) for i in range(k)]
    pres = SubgroupPresentation(src.orders, vecs)
    kr = _ring_from_group(pres.orders, pres.gens, src.mul, pres.coords,
                          label=label or f"ker({f.label or f'{src.label}->{tgt.label}'})")
    incl = RingHom(kr, src, pres.gens, label="incl")
    incl.validate()

    def coords(a):
        if not tgt.is_zero(f.apply(a)):
            return None
        return pres.coords(a)

    return kr, incl, coords
