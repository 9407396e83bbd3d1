import random

import pytest

from hotring import (DepthExceeded, FibrationFamily, K0Diagram, LoopRing,
                     NotSurjective, PathRing, Poly, RingHom, check_axioms,
                     compose, corpus, enumerate_homs, factorize,
                     gl_fibration_flag, identity_hom, k0_presentation,
                     mapping_path, octahedron, puppe, rotate,
                     rotation_witness, standard_triangle, tower_homs,
                     verify_certificate, zero_hom, zero_ring, TruncatedPuppe,
                     truncated_path_ring)
from hotring.homotopy import eval_endpoint
from hotring.triangle import minus_omega_hom, omega_hom

from oracles import minors_gcd_invariants

RINGS = corpus()
H_TOWER, K_TOWER = tower_homs(RINGS)


# ---------------------------------------------------------------------------
# factorization


def test_factorize_identity():
    r = RINGS["two_z8"]
    fac = factorize(identity_hom(r))
    result = fac.verify()
    assert result["ok"], result
    # preimage witness (0, a x) maps back to a under p
    for a in r.elements():
        assert fac.p.apply(fac.section.apply(a)) == a


def test_factorize_zero_map():
    # u = 0: the middle object is {(a, p) : p(0) = 0} = A x EB
    a, b = RINGS["sq0_z2"], RINGS["sq0_z3"]
    fac = factorize(zero_hom(a, b))
    rng = random.Random(0)
    eb = PathRing(b, "x")
    for _ in range(50):
        pair = fac.middle.sample(rng)
        assert a.contains(pair[0]) and eb.contains(pair[1])
    assert fac.verify()["ok"]


def test_factorize_surjection_no_shortcut():
    fac = factorize(H_TOWER)
    assert fac.verify()["ok"]


def test_factorize_certificate_is_elementary_homotopy():
    fac = factorize(K_TOWER)
    report = verify_certificate(fac.certificate, probes=60)
    assert report.valid


def test_factorize_all_corpus_endomorphism_homs():
    rng = random.Random(1)
    checked = 0
    for label in ("sq0_z2", "z2_unital", "graded_dual"):
        r = RINGS[label]
        for hom in enumerate_homs(r, r):
            fac = factorize(hom)
            assert fac.verify(probes=20, rng=rng)["ok"], (label, hom.images)
            checked += 1
    assert checked >= 6


# ---------------------------------------------------------------------------
# mapping path rings


def test_mapping_path_membership_probe():
    # (b, g(b) x) always lies in P(g)
    g = H_TOWER
    mp = mapping_path(g, var="x1")
    for b in g.source.elements():
        gb = g.apply(b)
        p = Poly((((("x1", 1),), gb),)) if gb != g.target.zero() else Poly()
        assert mp.ring.contains((b, p))


def test_mapping_path_identity_collapses_to_paths():
    # g = id: (p(1), p) <-> p identifies P(id) with EC
    c = RINGS["two_z8"]
    mp = mapping_path(identity_hom(c), var="x1")
    rng = random.Random(2)
    ec = PathRing(c, "x1")
    for _ in range(50):
        b, p = mp.ring.sample(rng)
        assert ec.contains(p)
        assert eval_endpoint(c, p, "x1", 1) == b


def test_mapping_path_zero_map_splits():
    # g = 0: P(g) = B x Omega C
    b, c = RINGS["sq0_z2"], RINGS["sq0_z3"]
    mp = mapping_path(zero_hom(b, c), var="x1")
    rng = random.Random(3)
    loops = LoopRing(c, "x1")
    for _ in range(50):
        x, p = mp.ring.sample(rng)
        assert b.contains(x) and loops.contains(p)
    assert mp.ring.contains((b.zero(), loops.sample(rng)))


def test_mapping_path_structure_maps():
    rng = random.Random(4)
    mp = mapping_path(K_TOWER, var="x1")
    for _ in range(50):
        c_loop = mp.loops.sample(rng)
        v = mp.j.apply(c_loop)
        assert mp.ring.contains(v)
        assert mp.g1.apply(v) == K_TOWER.source.zero()


# ---------------------------------------------------------------------------
# Puppe sequences


def test_puppe_verifies_on_tower():
    seq = puppe(H_TOWER, 3)
    result = seq.verify(probes=15)
    assert result["ok"], result["failures"][:3]


def test_puppe_identity_stages_contract():
    # g = id: the null homotopies and kernel composites still verify
    seq = puppe(identity_hom(RINGS["sq0_z2"]), 2)
    assert seq.verify(probes=15)["ok"]


def test_puppe_depth_cap():
    with pytest.raises(DepthExceeded):
        puppe(H_TOWER, 9, depth_cap=8)


def test_truncated_path_ring_reduction():
    # E(C)/((x^2-x)^m) is finite with both endpoint evaluations factoring
    c = RINGS["sq0_z2"]
    ring, eval1, include = truncated_path_ring(c, 2)
    assert ring.size() == c.size() ** 3        # exponents 1, 2, 3
    x1 = include(0, 1)
    assert eval1.apply(x1) == c.gen(0)
    # (x^2-x)^2 = x^4 - 2x^3 + x^2 reduces to zero: x^4 = 2x^3 - x^2
    assert include(0, 4) == ring.add(ring.scalar(2, include(0, 3)),
                                     ring.neg(include(0, 2)))


def test_truncated_puppe_kernel_exactness_tower():
    tp = TruncatedPuppe(H_TOWER, 3, m=2)
    result = tp.verify_kernel_exactness()
    assert result["ok"], result


# ---------------------------------------------------------------------------
# fibration family axioms


def _tower_family():
    rings = {"tower3": RINGS["tower3"], "tower2": RINGS["tower2"],
             "sq0_z2": RINGS["sq0_z2"], "0": zero_ring()}
    homs = {"h": H_TOWER, "k": K_TOWER,
            "kh": compose(K_TOWER, H_TOWER, label="kh")}
    for label, ring in list(rings.items()):
        if label != "0":
            homs[f"{label}->0"] = zero_hom(ring, rings["0"])
    return rings, homs


def test_axioms_all_surjective_family_passes():
    rings, homs = _tower_family()
    fam = FibrationFamily(rings, homs, all_surjective=True)
    report = check_axioms(fam, probes=10)
    assert report["ok"], report


def test_axioms_missing_terminal_map_flagged():
    rings, homs = _tower_family()
    fam = FibrationFamily(rings, homs,
                          fibration_names=["h", "k", "kh", "tower3->0",
                                           "tower2->0"])
    report = check_axioms(fam, probes=5)
    assert not report["Ax1"]["ok"]
    assert any("sq0_z2" in v for v in report["Ax1"]["violations"])


def test_marking_non_surjective_map_rejected_at_ingestion():
    rings, homs = _tower_family()
    homs["bad"] = zero_hom(RINGS["sq0_z2"], RINGS["tower2"])
    with pytest.raises(NotSurjective):
        FibrationFamily(rings, homs, fibration_names=["bad"])


# ---------------------------------------------------------------------------
# triangles and rotation


def test_standard_triangle_consecutive_kernel_composites():
    rng = random.Random(5)
    tri, mp = standard_triangle(K_TOWER)
    for _ in range(1000):
        loop = mp.loops.sample(rng)
        assert mp.g1.apply(mp.j.apply(loop)) == K_TOWER.source.zero()
    null = mp.null_homotopy()
    assert verify_certificate(null, probes=30).valid


def test_rotation_shifts_objects():
    tri, _ = standard_triangle(K_TOWER)
    rot = rotate(tri)
    assert rot.objects[1:] == tri.objects[:3]
    assert rot.provenance[0] == "rotated"


def test_rotation_witness_endpoints():
    # y = 0 recovers kappa, y = 1 recovers nu o Omega g o sigma; the
    # homotopy itself is a verified certificate between them
    cert, mp, mp1 = rotation_witness(K_TOWER)
    report = verify_certificate(cert, probes=60)
    assert report.valid, report.failure


def test_rotation_witness_on_unital_ring():
    g = zero_hom(RINGS["z2_unital"], RINGS["z2_unital"])
    cert, _, _ = rotation_witness(g)
    assert verify_certificate(cert, probes=40).valid


def test_double_rotation_sign_bookkeeping():
    # -Omega(-Omega g) equals Omega^2 g conjugated by both involutions,
    # exactly on elements; with sigma^2 = id this is the rotation sign rule
    rng = random.Random(6)
    g = K_TOWER
    b_ring, c_ring = g.source, g.target
    lb1 = LoopRing(b_ring, "u")
    lc1 = LoopRing(c_ring, "u")
    lb2 = LoopRing(lb1, "v")
    lc2 = LoopRing(lc1, "v")
    m1 = minus_omega_hom(g, lb1, lc1)
    m2 = minus_omega_hom(m1, lb2, lc2)
    o2 = omega_hom(omega_hom(g, lb1, lc1), lb2, lc2)
    from hotring import one_minus, substitute
    for _ in range(60):
        p = lb2.sample(rng)
        direct = m2.apply(p)
        swapped = substitute(lc2.scalar_base, o2.apply(p),
                             {"u": one_minus("u"), "v": one_minus("v")})
        assert direct == swapped


# ---------------------------------------------------------------------------
# octahedron


def test_octahedron_tower_passes():
    report = octahedron(H_TOWER, K_TOWER, probes=40)
    assert report.ok, report.data["failures"][:3]
    assert report.data["orders"]["A"] == 2     # ker(tower3 -> tower2)
    assert report.data["orders"]["F"] == 4     # ker(tower3 -> sq0_z2)
    assert report.data["orders"]["E"] == 2     # ker(tower2 -> sq0_z2)


def test_octahedron_degenerate_k_identity():
    report = octahedron(H_TOWER, identity_hom(RINGS["tower2"]), probes=20)
    assert report.ok
    assert report.data["orders"]["E"] == 1


def test_octahedron_degenerate_h_identity():
    report = octahedron(identity_hom(RINGS["tower2"]), K_TOWER, probes=20)
    assert report.ok
    assert report.data["orders"]["A"] == 1


def test_octahedron_requires_surjections():
    with pytest.raises(NotSurjective):
        octahedron(zero_hom(RINGS["sq0_z2"], RINGS["tower2"]), K_TOWER)


# ---------------------------------------------------------------------------
# K_0 presentations


def test_k0_free_when_no_relations():
    d = K0Diagram(["A", "B", "C"])
    res = k0_presentation(d)
    assert res.rank == 3 and res.torsion == []


def test_k0_loop_relation():
    d = K0Diagram(["A", "OA", "0"],
                  fib_seq=[("OA", "0", "A"), ("0", "0", "0")])
    res = k0_presentation(d)
    assert res.rank == 1 and res.torsion == []
    assert res.classes["0"] == (0,)
    (a,) = res.classes["A"]
    (oa,) = res.classes["OA"]
    assert oa == -a and a != 0


def test_k0_shuffle_invariance():
    rng = random.Random(7)
    base = K0Diagram(["A", "B", "C", "D", "F"],
                     weq=[("A", "B")],
                     fib_seq=[("F", "A", "C"), ("F", "B", "D")])
    expect = k0_presentation(base)
    for _ in range(10):
        weq = list(base.weq)
        fib = list(base.fib_seq)
        rng.shuffle(weq)
        rng.shuffle(fib)
        weq = [(b, a) if rng.random() < 0.5 else (a, b) for a, b in weq]
        res = k0_presentation(K0Diagram(base.objects, weq=weq, fib_seq=fib))
        assert res.rank == expect.rank and res.torsion == expect.torsion


def test_k0_milnor_square_against_minor_gcd_oracle():
    d = K0Diagram(["A", "B", "C", "D", "F"],
                  fib_seq=[("F", "A", "C"), ("F", "B", "D")])
    res = k0_presentation(d)
    rows = d.relation_rows()
    oracle = [s for s in minors_gcd_invariants(rows) if s not in (0, 1)]
    assert res.torsion == oracle
    rank_oracle = len(d.objects) - len(
        [s for s in minors_gcd_invariants(rows) if s != 0])
    assert res.rank == rank_oracle
    assert res.rank == 3


def test_k0_unknown_object_rejected():
    with pytest.raises(AssertionError):
        K0Diagram(["A"], weq=[("A", "B")])


# ---------------------------------------------------------------------------
# GL-fibration flag


def test_gl_fibration_flag_cases():
    assert gl_fibration_flag(H_TOWER)["flag"] == "Verified"
    assert gl_fibration_flag(
        zero_hom(RINGS["sq0_z2"], RINGS["tower2"]))["flag"] == "Counterexample"
    unital = RingHom(RINGS["z2_unital"], RINGS["z2_unital"], [(1,)])
    unital.validate()
    assert gl_fibration_flag(unital)["flag"] == "Unknown"
