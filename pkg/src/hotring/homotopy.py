"""Elementary homotopies between ring maps, with machine-checkable witnesses.

A certificate for f0 ~ f1 (both S -> R) is a homomorphism h into R with a
fresh central variable adjoined whose evaluations at 0 and 1 are f0 and
f1.  Soundness is unconditional: every certificate re-verifies, exactly
on generators when S is finite and on sampled probes otherwise.  The
search procedure is a semi-decision: a miss at a degree bound says
nothing about homotopy in general, and the library never claims a
negative beyond "not found at this bound".
"""

from __future__ import annotations

import itertools

from .errors import BudgetExceeded
from .poly import (PolyLike, PolyRing, coefficient_map, constant_of,
                   evaluate, one_minus, slices, substitute)
from .rings import FuncHom, RingHom, compose, identity_hom, zero_hom
from .virtual import PairRing


# ---------------------------------------------------------------------------
# carriers: the ring R with one homotopy variable adjoined


def carrier_ring(ring, var):
    """Arithmetic carrier for R[var]; membership is handled separately."""
    if isinstance(ring, PairRing):
        return PairRing(carrier_ring(ring.left, var),
                        carrier_ring(ring.right, var),
                        label=f"{ring.label}[{var}]")
    if isinstance(ring, PolyLike):
        return PolyRing(ring.scalar_base, ring.vars + (var,),
                        label=f"{ring.label}[{var}]")
    return PolyRing(ring, (var,), label=f"{ring.label}[{var}]")


def eval_endpoint(ring, value, var, bit):
    """Evaluate an element of R[var] at var = bit, landing back in R.

    Supports both carrier shapes for a pair ring R: a pair of carriers
    (component-wise construction) and a polynomial with R coefficients.
    """
    if isinstance(ring, PairRing) and isinstance(value, tuple):
        return (eval_endpoint(ring.left, value[0], var, bit),
                eval_endpoint(ring.right, value[1], var, bit))
    if isinstance(ring, PolyLike):
        return evaluate(ring.scalar_base, value, var, bit)
    return constant_of(ring, evaluate(ring, value, var, bit))


def element_slices(ring, value, var):
    """Decompose an element of the carrier R[var] into {exp: element of R};
    None when some slice fails to be an element of R at all."""
    if isinstance(ring, PairRing) and isinstance(value, tuple):
        ls = element_slices(ring.left, value[0], var)
        rs = element_slices(ring.right, value[1], var)
        if ls is None or rs is None:
            return None
        return {e: (ls.get(e, ring.left.zero()), rs.get(e, ring.right.zero()))
                for e in set(ls) | set(rs)}
    if isinstance(ring, PolyLike):
        return slices(value, var)
    out = {}
    for e, q in slices(value, var).items():
        c = _scalar_slice(ring, q)
        if c is None:
            return None
        out[e] = c
    return out


def slicewise_member(ring, value, var):
    """Is this element of the carrier a genuine element of R[var], i.e.
    does every var-slice lie in R?"""
    sl = element_slices(ring, value, var)
    if sl is None:
        return False
    return all(ring.contains(x) for x in sl.values())


def _scalar_slice(ring, q):
    if q is None or q.is_zero_poly():
        return ring.zero()
    if len(q.terms) == 1 and q.terms[0][0] == () and ring.contains(q.terms[0][1]):
        return q.terms[0][1]
    return None


# ---------------------------------------------------------------------------
# certificates


class CertificateReport:
    def __init__(self, valid, mode, checked, failure=None):
        self.valid = valid
        self.mode = mode
        self.checked = checked
        self.failure = failure

    def __bool__(self):
        return self.valid

    def __repr__(self):
        verdict = "valid" if self.valid else f"INVALID ({self.failure})"
        return f"<certificate {verdict}, {self.mode}, {self.checked} checks>"


class HomotopyCertificate:
    """h : S -> R[var] with evaluations f0 and f1.

    ``carrier`` fixes the arithmetic model of R[var] (needed when R is a
    pair ring, which has two equivalent carrier shapes)."""

    def __init__(self, hom, f0, f1, var, carrier=None):
        self.hom = hom
        self.f0 = f0
        self.f1 = f1
        self.var = var
        self.carrier = carrier

    @property
    def source(self):
        return self.f0.source

    @property
    def target(self):
        return self.f0.target

    def endpoint(self, bit):
        ring = self.target
        if isinstance(self.hom, RingHom):
            images = [eval_endpoint(ring, img, self.var, bit)
                      for img in self.hom.images]
            return RingHom(self.hom.source, ring, images,
                           label=f"d{bit}(h)")
        return FuncHom(self.hom.source, ring,
                       lambda x: eval_endpoint(ring, self.hom.apply(x),
                                               self.var, bit),
                       label=f"d{bit}(h)")

    def __repr__(self):
        return (f"<homotopy {self.f0.label or 'f0'} ~ {self.f1.label or 'f1'}"
                f" via {self.var}>")


def verify_certificate(cert, probes=50, rng=None):
    """Check the certificate: h is a homomorphism into R[var] and its
    endpoints are f0 and f1.  Exact on generators for a finite source,
    probe-based otherwise."""
    ring = cert.target
    carrier = cert.carrier or carrier_ring(ring, cert.var)
    h = cert.hom

    if isinstance(h, RingHom):
        src = h.source
        checked = 0
        for i, img in enumerate(h.images):
            checked += 1
            if not slicewise_member(ring, img, cert.var):
                return CertificateReport(False, "exact", checked,
                                         ("membership", i))
            if not carrier.is_zero(carrier.scalar(src.orders[i], img)):
                return CertificateReport(False, "exact", checked,
                                         ("order", i))
            if eval_endpoint(ring, img, cert.var, 0) != cert.f0.apply(src.gen(i)):
                return CertificateReport(False, "exact", checked,
                                         ("endpoint0", i))
            if eval_endpoint(ring, img, cert.var, 1) != cert.f1.apply(src.gen(i)):
                return CertificateReport(False, "exact", checked,
                                         ("endpoint1", i))
        for i in range(src.ngens):
            for j in range(src.ngens):
                checked += 1
                lhs = carrier.zero()
                for l, c in enumerate(src.table[i][j]):
                    if c:
                        lhs = carrier.add(lhs, carrier.scalar(c, h.images[l]))
                if lhs != carrier.mul(h.images[i], h.images[j]):
                    return CertificateReport(False, "exact", checked,
                                             ("multiplicative", (i, j)))
        return CertificateReport(True, "exact", checked)

    import random
    rng = rng or random.Random(0)
    src = h.source
    checked = 0
    for _ in range(probes):
        a = src.sample(rng)
        b = src.sample(rng)
        ha, hb = h.apply(a), h.apply(b)
        checked += 1
        if not slicewise_member(ring, ha, cert.var):
            return CertificateReport(False, "probes", checked,
                                     ("membership", a))
        if h.apply(src.add(a, b)) != carrier.add(ha, hb):
            return CertificateReport(False, "probes", checked,
                                     ("additive", (a, b)))
        if h.apply(src.mul(a, b)) != carrier.mul(ha, hb):
            return CertificateReport(False, "probes", checked,
                                     ("multiplicative", (a, b)))
        if eval_endpoint(ring, ha, cert.var, 0) != cert.f0.apply(a):
            return CertificateReport(False, "probes", checked,
                                     ("endpoint0", a))
        if eval_endpoint(ring, ha, cert.var, 1) != cert.f1.apply(a):
            return CertificateReport(False, "probes", checked,
                                     ("endpoint1", a))
    return CertificateReport(True, "probes", checked)


def flip_certificate(cert):
    """Reverse orientation through var -> 1 - var (the sigma substitution)."""
    ring = cert.target
    sub = {cert.var: one_minus(cert.var)}

    def flip_value(v):
        if isinstance(ring, PairRing):
            raise NotImplementedError("flip on pair targets not needed")
        sb = ring.scalar_base if isinstance(ring, PolyLike) else ring
        return substitute(sb, v, sub)

    if isinstance(cert.hom, RingHom):
        h = RingHom(cert.hom.source, cert.hom.target,
                    [flip_value(img) for img in cert.hom.images],
                    label=f"flip({cert.hom.label})")
    else:
        h = FuncHom(cert.hom.source, cert.hom.target,
                    lambda x: flip_value(cert.hom.apply(x)),
                    label=f"flip({cert.hom.label})")
    return HomotopyCertificate(h, cert.f1, cert.f0, cert.var)


def precompose_certificate(cert, f):
    """From g ~ g' obtain g f ~ g' f; constructed, not searched."""
    return HomotopyCertificate(compose(cert.hom, f),
                               compose(cert.f0, f), compose(cert.f1, f),
                               cert.var)


def postcompose_certificate(h, cert):
    """From g ~ g' obtain h g ~ h g' by applying h to coefficients."""
    lifted = coefficient_map(h, carrier_ring(cert.target, cert.var),
                             carrier_ring(h.target, cert.var),
                             label=f"{h.label}[{cert.var}]")
    return HomotopyCertificate(compose(lifted, cert.hom),
                               compose(h, cert.f0), compose(h, cert.f1),
                               cert.var)


def constant_certificate(f, var="t"):
    ring = f.target
    carrier = carrier_ring(ring, var)

    def embed(x):
        if isinstance(ring, PolyLike):
            return x
        return carrier.const(x)

    if isinstance(f, RingHom):
        h = RingHom(f.source, carrier, [embed(img) for img in f.images],
                    label="const")
    else:
        h = FuncHom(f.source, carrier, lambda x: embed(f.apply(x)),
                    label="const")
    return HomotopyCertificate(h, f, f, var)


class HomotopyChain:
    """A composable list of certificates realizing the transitive closure."""

    def __init__(self, start, certs):
        self.start = start
        self.certs = list(certs)

    @property
    def end(self):
        return self.certs[-1].f1 if self.certs else self.start

    def validate(self, probes=20, rng=None):
        current = self.start
        for cert in self.certs:
            if _hom_key(cert.f0) != _hom_key(current):
                return False
            if not verify_certificate(cert, probes=probes, rng=rng):
                return False
            current = cert.f1
        return True

    def __len__(self):
        return len(self.certs)


def _hom_key(f):
    if isinstance(f, RingHom):
        return f.images
    raise TypeError("chain endpoints must be finite-source homs")


# ---------------------------------------------------------------------------
# bounded search


class NotFoundAtBound:
    """Explicit verdict: nothing of degree <= degree exists; says nothing
    about higher degrees."""

    def __init__(self, degree, searched):
        self.degree = degree
        self.searched = searched

    def __bool__(self):
        return False

    def __repr__(self):
        return f"<not found at degree {self.degree}; {self.searched} candidates>"


def _annihilator(ring, order):
    return sorted(x for x in ring.elements()
                  if ring.is_zero(ring.scalar(order, x)))


def search_elementary(f0, f1, degree, budget=200_000, var="x"):
    """Search for a certificate f0 ~ f1 with images of degree <= degree.

    The endpoint constraints pin the constant and top coefficients, so the
    free choices per generator are the middle coefficients, drawn from the
    annihilator of the generator order.  Returns a verified certificate or
    a NotFoundAtBound verdict.
    """
    src, ring = f0.source, f0.target
    assert f1.source is src and f1.target is ring
    carrier = carrier_ring(ring, var)

    per_gen = []
    for i in range(src.ngens):
        lo = f0.images[i]
        hi = f1.images[i]
        if degree == 0:
            options = [(lo,)] if lo == hi else []
        else:
            ann = _annihilator(ring, src.orders[i])
            options = []
            for mid in itertools.product(ann, repeat=degree - 1):
                top = ring.sub(hi, lo)
                for c in mid:
                    top = ring.sub(top, c)
                options.append((lo,) + mid + (top,))
        per_gen.append(options)

    total = 1
    for options in per_gen:
        total *= len(options)
    if total > budget:
        raise BudgetExceeded(total, budget)

    def to_poly(coeffs):
        acc = carrier.zero()
        for e, c in enumerate(coeffs):
            acc = carrier.add(acc, carrier.monomial(c, ((var, e),))
                              if e else carrier.const(c))
        return acc

    checks_at = [[] for _ in range(src.ngens)]
    for i in range(src.ngens):
        for j in range(src.ngens):
            support = [l for l, c in enumerate(src.table[i][j]) if c]
            checks_at[max([i, j] + support)].append((i, j))

    images = [None] * src.ngens
    searched = 0

    def extend(step):
        nonlocal searched
        if step == src.ngens:
            return list(images)
        for coeffs in per_gen[step]:
            searched += 1
            images[step] = to_poly(coeffs)
            ok = True
            for (i, j) in checks_at[step]:
                lhs = carrier.zero()
                for l, c in enumerate(src.table[i][j]):
                    if c:
                        lhs = carrier.add(lhs, carrier.scalar(c, images[l]))
                if lhs != carrier.mul(images[i], images[j]):
                    ok = False
                    break
            if ok:
                result = extend(step + 1)
                if result is not None:
                    return result
        images[step] = None
        return None

    found = extend(0)
    if found is None:
        return NotFoundAtBound(degree, searched)
    cert = HomotopyCertificate(RingHom(src, carrier, found, label="h"),
                               f0, f1, var)
    report = verify_certificate(cert)
    assert report.valid, f"search produced an invalid certificate: {report}"
    return cert


def search_up_to(f0, f1, degree, budget=200_000, var="x"):
    """Try degrees 0..degree in order; first hit wins (deterministic)."""
    searched = 0
    for d in range(degree + 1):
        outcome = search_elementary(f0, f1, d, budget=budget, var=var)
        if isinstance(outcome, HomotopyCertificate):
            return outcome
        searched += outcome.searched
    return NotFoundAtBound(degree, searched)


# ---------------------------------------------------------------------------
# homotopy classes


class ClassesResult:
    def __init__(self, homs, parent, edges, degree):
        self.homs = homs
        self.parent = parent
        self.edges = edges          # (i, j) with i < j -> certificate
        self.degree = degree

    def find(self, i):
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def classes(self):
        buckets = {}
        for i in range(len(self.homs)):
            buckets.setdefault(self.find(i), []).append(i)
        return [sorted(b) for _, b in sorted(buckets.items())]

    def same_class(self, i, j):
        return self.find(i) == self.find(j)

    def chain_between(self, i, j):
        """Shortest chain of certificates linking hom i to hom j."""
        if i == j:
            return HomotopyChain(self.homs[i], [])
        adj = {}
        for (a, b), cert in self.edges.items():
            adj.setdefault(a, []).append((b, cert, False))
            adj.setdefault(b, []).append((a, cert, True))
        frontier = [(i, [])]
        seen = {i}
        while frontier:
            node, path = frontier.pop(0)
            for (nxt, cert, reverse) in sorted(adj.get(node, []),
                                               key=lambda t: t[0]):
                if nxt in seen:
                    continue
                step = flip_certificate(cert) if reverse else cert
                if nxt == j:
                    return HomotopyChain(self.homs[i], path + [step])
                seen.add(nxt)
                frontier.append((nxt, path + [step]))
        return None

    def index_of(self, hom):
        if not hasattr(self, "_index"):
            self._index = {h.images: i for i, h in enumerate(self.homs)}
        return self._index.get(hom.images)


def homotopy_classes(homs, degree, budget=200_000, var="x"):
    """Union-find closure over elementary homotopies of degree <= degree.

    Every merge carries a verified certificate; the partition refines the
    true homotopy relation (only genuine identifications are made)."""
    homs = sorted(homs, key=lambda h: h.images)
    parent = list(range(len(homs)))
    edges = {}

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    remaining = len(homs)
    for i in range(len(homs)):
        if remaining <= 1:
            break
        for j in range(i + 1, len(homs)):
            if find(i) == find(j):
                continue
            outcome = search_up_to(homs[i], homs[j], degree, budget=budget,
                                   var=var)
            if isinstance(outcome, HomotopyCertificate):
                edges[(i, j)] = outcome
                ri, rj = find(i), find(j)
                parent[max(ri, rj)] = min(ri, rj)
                remaining -= 1
                if remaining <= 1:
                    break
    return ClassesResult(homs, parent, edges, degree)


def search_homotopy_equivalence(f, candidates, degree, budget=200_000,
                                chain_cap=4):
    """Find g with f g ~ id and g f ~ id among the candidate homs S -> R.

    Uses the class closure on both endomorphism sets; chains longer than
    chain_cap are rejected.  Returns (g, chain_fg, chain_gf) or
    NotFoundAtBound."""
    from .rings import enumerate_homs

    r_ring, s_ring = f.source, f.target
    end_s = homotopy_classes(enumerate_homs(s_ring, s_ring), degree,
                             budget=budget)
    end_r = homotopy_classes(enumerate_homs(r_ring, r_ring), degree,
                             budget=budget)
    id_s = end_s.index_of(identity_hom(s_ring))
    id_r = end_r.index_of(identity_hom(r_ring))
    searched = 0
    for g in sorted(candidates, key=lambda h: h.images):
        searched += 1
        fg = end_s.index_of(compose(f, g))
        gf = end_r.index_of(compose(g, f))
        if fg is None or gf is None:
            continue
        if end_s.same_class(fg, id_s) and end_r.same_class(gf, id_r):
            chain_fg = end_s.chain_between(fg, id_s)
            chain_gf = end_r.chain_between(gf, id_r)
            if len(chain_fg) <= chain_cap and len(chain_gf) <= chain_cap:
                return g, chain_fg, chain_gf
    return NotFoundAtBound(degree, searched)


# ---------------------------------------------------------------------------
# stock certificates


def path_contraction_certificate(paths, yvar="y"):
    """id ~ 0 on ER via p(x) -> p(xy); witnesses contractibility of ER."""
    from .poly import imul, ivar

    var = paths.var
    carrier = carrier_ring(paths, yvar)
    h = FuncHom(paths, carrier,
                lambda p: substitute(paths.scalar_base, p,
                                     {var: imul(ivar(var), ivar(yvar))}),
                label="E-contraction")
    return HomotopyCertificate(h, zero_hom(paths, paths),
                               identity_hom(paths), yvar)


def graded_certificate(ring, degrees, tvar="t"):
    """For an N-graded ring: homogeneous a_n -> a_n t^n connects the
    projection onto degree 0 with the identity."""
    carrier = carrier_ring(ring, tvar)
    images = []
    f0_images = []
    for i in range(ring.ngens):
        n = degrees[i]
        g = ring.gen(i)
        images.append(carrier.monomial(g, ((tvar, n),)) if n
                      else carrier.const(g))
        f0_images.append(g if n == 0 else ring.zero())
    h = RingHom(ring, carrier, images, label="graded")
    f0 = RingHom(ring, ring, f0_images, label="proj0")
    return HomotopyCertificate(h, f0, identity_hom(ring), tvar)
