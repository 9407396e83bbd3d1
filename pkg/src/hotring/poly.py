"""Exact sparse multivariate polynomials over an arbitrary base ring.

A ``Poly`` is a canonical, hashable value: a sorted tuple of
``(monomial, coefficient)`` pairs, where a monomial is a sorted tuple of
``(variable, exponent)`` pairs with positive exponents and coefficients
are nonzero elements of a base ring.  Variables are central, so products
of coefficients happen in the base ring and integer polynomials act on
ring polynomials by the Z-action.

Polynomial rings, path rings (polynomials vanishing at 0) and loop rings
(vanishing at 0 and 1) share this flat representation: a nested
construction like the double loop ring of R is a set of polynomials in
two variables over R cut out by endpoint conditions.  That keeps
substitutions such as x -> 1-x or the x/y swap one-step operations.

Affine expressions like 1 - x never live in a nonunital R[x]; they are
integer polynomials (polys over the ZZ ring) and enter only through
substitution and the integer action.
"""

from __future__ import annotations

from .errors import MembershipViolation, UnknownVariable
from .rings import FuncHom, Ring, ZZ


class Poly:
    """Canonical sparse polynomial value; arithmetic lives on the ring."""

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        self.terms = tuple(terms)

    def __eq__(self, other):
        return isinstance(other, Poly) and self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def is_zero_poly(self):
        return not self.terms

    def variables(self):
        out = set()
        for mono, _ in self.terms:
            for v, _ in mono:
                out.add(v)
        return out

    def degree_in(self, var):
        d = 0
        for mono, _ in self.terms:
            for v, e in mono:
                if v == var and e > d:
                    d = e
        return d

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for mono, c in self.terms:
            mono_s = "*".join(f"{v}^{e}" if e > 1 else v for v, e in mono)
            bits.append(f"{c!r}*{mono_s}" if mono_s else f"{c!r}")
        return " + ".join(bits)


def _canon(base, acc):
    terms = [(m, c) for m, c in acc.items() if not base.is_zero(c)]
    terms.sort(key=lambda t: t[0])
    return Poly(terms)


def _mono_mul(m1, m2):
    d = dict(m1)
    for v, e in m2:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def poly_add(base, p, q):
    acc = dict(p.terms)
    for m, c in q.terms:
        acc[m] = base.add(acc[m], c) if m in acc else c
    return _canon(base, acc)


def poly_neg(base, p):
    return Poly(tuple((m, base.neg(c)) for m, c in p.terms))


def poly_sub(base, p, q):
    return poly_add(base, p, poly_neg(base, q))


def poly_mul(base, p, q):
    acc = {}
    for m1, c1 in p.terms:
        for m2, c2 in q.terms:
            c = base.mul(c1, c2)
            if base.is_zero(c):
                continue
            m = _mono_mul(m1, m2)
            acc[m] = base.add(acc[m], c) if m in acc else c
    return _canon(base, acc)


def poly_scalar(base, n, p):
    acc = {}
    for m, c in p.terms:
        nc = base.scalar(n, c)
        if not base.is_zero(nc):
            acc[m] = nc
    return _canon(base, acc)


def const_poly(base, c):
    if base.is_zero(c):
        return Poly()
    return Poly((((), c),))


def monomial(base, c, mono):
    if base.is_zero(c):
        return Poly()
    mono = tuple(sorted((v, e) for v, e in mono if e))
    return Poly(((mono, c),))


def shift_poly(base, p, var, k):
    """Multiply by var^k."""
    if k == 0:
        return p
    acc = {}
    for m, c in p.terms:
        acc[_mono_mul(m, ((var, k),))] = c
    return _canon(base, acc)


def slices(p, var):
    """Decompose p = sum_e slice[e] * var^e; slices do not contain var."""
    out = {}
    for m, c in p.terms:
        e = 0
        rest = []
        for v, ex in m:
            if v == var:
                e = ex
            else:
                rest.append((v, ex))
        out.setdefault(e, []).append((tuple(rest), c))
    return {e: Poly(sorted(ts)) for e, ts in out.items()}


def constant_of(base, p):
    """The coefficient of the empty monomial; p must be constant."""
    if not p.terms:
        return base.zero()
    assert len(p.terms) == 1 and p.terms[0][0] == (), f"{p!r} is not constant"
    return p.terms[0][1]


# integer polynomials (substitution images, affine reparametrizations)

def iconst(n):
    return const_poly(ZZ, n)


def ivar(name):
    return monomial(ZZ, 1, ((name, 1),))


def iadd(p, q):
    return poly_add(ZZ, p, q)


def isub(p, q):
    return poly_sub(ZZ, p, q)


def imul(p, q):
    return poly_mul(ZZ, p, q)


def ipow(p, k):
    out = iconst(1)
    for _ in range(k):
        out = imul(out, p)
    return out


def one_minus(name):
    return isub(iconst(1), ivar(name))


def loop_unit_ipoly(name):
    # x^2 - x, the generator of loop conditions
    return isub(ipow(ivar(name), 2), ivar(name))


def int_action(base, ip, p):
    """Product of an integer polynomial with a ring polynomial."""
    acc = {}
    for m1, n in ip.terms:
        for m2, c in p.terms:
            nc = base.scalar(n, c)
            if base.is_zero(nc):
                continue
            m = _mono_mul(m1, m2)
            acc[m] = base.add(acc[m], nc) if m in acc else nc
    return _canon(base, acc)


def substitute(base, p, assignment):
    """Substitute integer polynomials for variables, simultaneously.

    Central variables make this a ring homomorphism: coefficients commute
    with every substituted expression.
    """
    for v in assignment:
        if not isinstance(v, str):
            raise UnknownVariable(str(v))
    acc = {}
    for mono, c in p.terms:
        kept = tuple((v, e) for v, e in mono if v not in assignment)
        ip = iconst(1)
        for v, e in mono:
            if v in assignment:
                ip = imul(ip, ipow(assignment[v], e))
        for m2, n in ip.terms:
            nc = base.scalar(n, c)
            if base.is_zero(nc):
                continue
            m = _mono_mul(kept, m2)
            acc[m] = base.add(acc[m], nc) if m in acc else nc
    return _canon(base, acc)


def evaluate(base, p, var, value):
    """Evaluate one variable at 0, 1, an integer, or an integer polynomial."""
    if isinstance(value, int):
        value = iconst(value)
    return substitute(base, p, {var: value})


# ---------------------------------------------------------------------------
# polynomial-shaped rings


class PolyLike(Ring):
    """Common behaviour of R[vars] and its path/loop subrings.

    ``scalar_base`` is the non-polynomial coefficient ring at the root,
    ``vars`` the full ordered variable tuple of the flat representation.
    """

    def __init__(self, scalar_base, vars, label):
        assert not isinstance(scalar_base, PolyLike)
        self.scalar_base = scalar_base
        self.vars = tuple(vars)
        self.label = label

    def zero(self):
        return Poly()

    def add(self, a, b):
        return poly_add(self.scalar_base, a, b)

    def neg(self, a):
        return poly_neg(self.scalar_base, a)

    def mul(self, a, b):
        return poly_mul(self.scalar_base, a, b)

    def scalar(self, n, a):
        return poly_scalar(self.scalar_base, n, a)

    def const(self, c):
        return const_poly(self.scalar_base, c)

    def monomial(self, c, mono):
        return monomial(self.scalar_base, c, mono)

    def evaluate(self, p, var, value):
        if var not in self.vars:
            raise UnknownVariable(var)
        return evaluate(self.scalar_base, p, var, value)

    def substitute(self, p, assignment):
        for v in assignment:
            if v not in self.vars:
                raise UnknownVariable(v)
        return substitute(self.scalar_base, p, assignment)

    def _coeffs_ok(self, p):
        allowed = set(self.vars)
        for mono, c in p.terms:
            if not self.scalar_base.contains(c):
                return False
            for v, e in mono:
                if v not in allowed or e <= 0:
                    return False
        return True


class PolyRing(PolyLike):
    """The full polynomial ring scalar_base[vars]."""

    def __init__(self, scalar_base, vars, label=None):
        if isinstance(scalar_base, PolyLike):
            vars = tuple(scalar_base.vars) + tuple(vars)
            scalar_base = scalar_base.scalar_base
        super().__init__(scalar_base, vars,
                         label or f"{scalar_base.label}[{','.join(vars)}]")

    def contains(self, p):
        return isinstance(p, Poly) and self._coeffs_ok(p)

    def sample(self, rng, n_terms=3, max_exp=2):
        acc = self.zero()
        for _ in range(rng.randrange(1, n_terms + 1)):
            c = self.scalar_base.sample(rng)
            mono = tuple((v, rng.randrange(1, max_exp + 1))
                         for v in self.vars if rng.random() < 0.5)
            acc = self.add(acc, self.monomial(c, mono))
        return acc


def _base_contains(base, q):
    """Is the slice polynomial q an element of the coefficient ring?"""
    if isinstance(base, PolyLike):
        return base.contains(q)
    if q.is_zero_poly():
        return True
    return len(q.terms) == 1 and q.terms[0][0] == () and base.contains(q.terms[0][1])


def _base_sample_poly(base, rng):
    if isinstance(base, PolyLike):
        return base.sample(rng)
    return const_poly(base, base.sample(rng))


class PathRing(PolyLike):
    """ER: polynomials over R in a fresh variable with zero constant term."""

    def __init__(self, base, var="x", label=None):
        self.base = base
        self.var = var
        scalar = base.scalar_base if isinstance(base, PolyLike) else base
        vars = (tuple(base.vars) if isinstance(base, PolyLike) else ()) + (var,)
        super().__init__(scalar, vars, label or f"E({base.label};{var})")

    def contains(self, p):
        if not (isinstance(p, Poly) and self._coeffs_ok(p)):
            return False
        for e, q in slices(p, self.var).items():
            if e == 0:
                return False
            if not _base_contains(self.base, q):
                return False
        return True

    def sample(self, rng):
        acc = self.zero()
        for k in (1, 2):
            acc = self.add(acc, shift_poly(self.scalar_base,
                                           _base_sample_poly(self.base, rng),
                                           self.var, k))
        return acc


class LoopRing(PolyLike):
    """Omega R: kernel of both endpoint evaluations, equal to (x^2-x)R[x]."""

    def __init__(self, base, var="x", label=None):
        self.base = base
        self.var = var
        scalar = base.scalar_base if isinstance(base, PolyLike) else base
        vars = (tuple(base.vars) if isinstance(base, PolyLike) else ()) + (var,)
        super().__init__(scalar, vars, label or f"Omega({base.label};{var})")

    def contains(self, p):
        if not (isinstance(p, Poly) and self._coeffs_ok(p)):
            return False
        sl = slices(p, self.var)
        if 0 in sl:
            return False
        total = Poly()
        for e, q in sl.items():
            if not _base_contains(self.base, q):
                return False
            total = poly_add(self.scalar_base, total, q)
        return total.is_zero_poly()

    def from_factor(self, q):
        """(var^2 - var) * q; always a member when q has base coefficients."""
        sb = self.scalar_base
        return poly_sub(sb, shift_poly(sb, q, self.var, 2),
                        shift_poly(sb, q, self.var, 1))

    def factor(self, p):
        """The unique q with p = (var^2 - var) q; exact synthetic division."""
        sb = self.scalar_base
        sl = slices(p, self.var)
        if 0 in sl:
            raise MembershipViolation(f"{p!r} has a constant term in {self.var}")
        g = {e - 1: q for e, q in sl.items()}          # divided by var
        h = {}
        carry = Poly()
        for e in range(max(g) if g else 0, 0, -1):     # divide by (var - 1)
            carry = poly_add(sb, g.get(e, Poly()), carry)
            h[e - 1] = carry
        expect = poly_neg(sb, g.get(0, Poly()))
        if carry != expect:
            raise MembershipViolation(f"{p!r} does not vanish at {self.var}=1")
        acc = Poly()
        for e, q in h.items():
            acc = poly_add(sb, acc, shift_poly(sb, q, self.var, e))
        return acc

    def sample(self, rng):
        return self.from_factor(_base_sample_poly(self.base, rng))


def path_ring(base, var="x"):
    return PathRing(base, var)


def loop_ring(base, var="x"):
    return LoopRing(base, var)


def double_loop_ring(base, inner="x", outer="y"):
    return LoopRing(LoopRing(base, inner), outer)


def coefficient_map(hom, source, target, label=None):
    """Extend a hom of coefficient rings to polynomials, variable-wise."""
    sb = target.scalar_base

    def fn(p):
        acc = Poly()
        for mono, c in p.terms:
            img = hom.apply(c)
            if isinstance(img, Poly):
                acc = poly_add(sb, acc, Poly(tuple(
                    (_mono_mul(mono, m2), c2) for m2, c2 in img.terms)))
            elif not sb.is_zero(img):
                acc = poly_add(sb, acc, Poly(((mono, img),)))
        return acc

    return FuncHom(source, target, fn, label or f"{hom.label}[...]")


def substitution_hom(source, target, assignment, label=None):
    def fn(p):
        return substitute(target.scalar_base, p, assignment)
    return FuncHom(source, target, fn, label or f"subst{sorted(assignment)}")


def sigma_hom(loop):
    """The involution a(x) -> a(1-x) of a loop ring."""
    return substitution_hom(loop, loop, {loop.var: one_minus(loop.var)},
                            label=f"sigma_{loop.var}")


def tau_hom(loop2):
    """Swap the two loop variables of a double loop ring."""
    x = loop2.base.var
    y = loop2.var
    return substitution_hom(loop2, loop2, {x: ivar(y), y: ivar(x)},
                            label="tau")


def swap_homotopy(loop2, tvar="t"):
    """The explicit interpolation between the x/y swap and the identity.

    f = (x^2-x)(y^2-y) f'(x, y) is sent to
    (x^2-x)(y^2-y) f'(tx + (1-t)y, (1-t)x + ty).

    Evaluation at ``tvar`` = 0 gives the swap, at 1 the identity, and the
    map is additive with every value a member of the double loop ring over
    base[t].  It is multiplicative only when products of base coefficients
    vanish (square-zero style bases); see the test suite for the exact
    boundary of that property.
    """
    x = loop2.base.var
    y = loop2.var
    inner = loop2.base
    sb = loop2.scalar_base
    target = PolyRing(sb, loop2.vars + (tvar,))
    unit = imul(loop_unit_ipoly(x), loop_unit_ipoly(y))
    mix = {
        x: iadd(imul(ivar(tvar), ivar(x)), imul(one_minus(tvar), ivar(y))),
        y: iadd(imul(one_minus(tvar), ivar(x)), imul(ivar(tvar), ivar(y))),
    }

    def fn(f):
        fprime = inner.factor(loop2.factor(f))
        return int_action(sb, unit, substitute(sb, fprime, mix))

    return FuncHom(loop2, target, fn, label="swap_homotopy")
