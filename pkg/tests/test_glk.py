import random

import pytest

from hotring import (PolyRing, QiMatrix, VerificationFailure, circle,
                     circle_determinant, corpus, determinant_certificate,
                     gl_group, kv1_approx, quasi_inverse, stabilize,
                     strict_pi0)
from hotring.glk import is_circle_witness, mat_zero

RINGS = corpus()


def _mat(ring, rows):
    return tuple(tuple(ring.element(x) for x in row) for row in rows)


def test_square_zero_witness_is_negation():
    r = RINGS["sq0_z2"]
    m = _mat(r, [[(1,), (0,)], [(1,), (1,)]])
    res = quasi_inverse(r, m)
    assert res.status == "ok"
    assert res.witness == tuple(tuple(r.neg(x) for x in row) for row in m)


def test_zero_matrix_witness_is_zero():
    for r in RINGS.values():
        z = mat_zero(r, 2)
        res = quasi_inverse(r, z)
        assert res.status == "ok"
        assert res.witness == z


def test_unital_z3_classical_witness():
    r = RINGS["z3_unital"]
    # I + M = [[1+1, 0], [0, 1+0]] = diag(2, 1): invertible over F3
    m = _mat(r, [[(1,), (0,)], [(0,), (0,)]])
    res = quasi_inverse(r, m)
    assert res.status == "ok"
    assert is_circle_witness(r, m, res.witness)
    # a = 2 = -1 is not quasi-invertible: 1 + a = 0
    bad = _mat(r, [[(2,)]])
    assert quasi_inverse(r, bad).status == "not_qi"


def test_nilpotent_series_on_upper_triangular():
    rng = random.Random(0)
    r = RINGS["upper3_z2"]
    for _ in range(30):
        m = tuple(tuple(r.sample(rng) for _ in range(2)) for _ in range(2))
        res = quasi_inverse(r, m)
        assert res.status == "ok"


def test_qi_matrix_class_and_circle_composition():
    r = RINGS["sq0_z3"]
    rng = random.Random(1)
    for _ in range(30):
        m1 = tuple(tuple(r.sample(rng) for _ in range(2)) for _ in range(2))
        m2 = tuple(tuple(r.sample(rng) for _ in range(2)) for _ in range(2))
        q1 = QiMatrix(r, m1, quasi_inverse(r, m1).witness)
        q2 = QiMatrix(r, m2, quasi_inverse(r, m2).witness)
        q = q1.compose(q2)
        assert is_circle_witness(r, q.entries, q.witness)
        assert q1.inverse().entries == q1.witness
    with pytest.raises(VerificationFailure):
        QiMatrix(r, m1, m1 if m1 != mat_zero(r, 2) else m2)


def test_gl1_square_zero_is_the_additive_group():
    r = RINGS["sq0_z2"]
    g = gl_group(r, 1)
    assert g.order() == 2
    # circle = plus when all products vanish
    for a in g.elements:
        for b in g.elements:
            assert g.op(a, b) == ((r.add(a[0][0], b[0][0]),),)
    assert g.verify_group_axioms()


def test_gl_of_zero_ring_trivial():
    from hotring import zero_ring
    g = gl_group(zero_ring(), 2)
    assert g.order() == 1


def test_gl1_unital_z3():
    # quasi-invertible a iff 1 + a invertible: a in {0, 1}, group of order 2
    g = gl_group(RINGS["z3_unital"], 1)
    assert g.order() == 2
    assert g.verify_group_axioms()


def test_gl2_f3_order():
    g = gl_group(RINGS["z3_unital"], 2)
    assert g.order() == 48          # |GL_2(F_3)|


def test_kv1_square_zero_trivial_any_size():
    for label in ("sq0_z2", "sq0_z3"):
        for n in (1, 2):
            pres = kv1_approx(RINGS[label], n, 1)
            assert pres.order == 1
            assert pres.invariant_factors == []


def test_kv1_f3_matches_k1():
    pres = kv1_approx(RINGS["z3_unital"], 2, 1)
    assert pres.order == 2
    assert pres.invariant_factors == [2]
    cert = determinant_certificate(pres)
    assert cert["subgroup_in_kernel"]
    assert cert["determinant_image_order"] == 2
    assert cert["lower_bound_matches"]


def test_kv1_f2_trivial():
    pres = kv1_approx(RINGS["z2_unital"], 2, 1)
    assert pres.order == 1


def test_kv1_monotone_in_degree():
    for label in ("sq0_z2", "sq0_z3"):
        r = RINGS[label]
        orders = [kv1_approx(r, 2, d).order for d in (1, 2)]
        assert orders[0] >= orders[1]


def test_kv1_higher_degree_is_a_further_quotient():
    # the identified subgroup grows with the degree bound, so the level
    # (n, d') presentation is literally a quotient of the level (n, d) one
    for label in ("sq0_z2", "z3_unital"):
        r = RINGS[label]
        p1 = kv1_approx(r, 2, 1)
        p2 = kv1_approx(r, 2, 2)
        assert set(p1.subgroup) <= set(p2.subgroup)
        # same-class at d=1 implies same-class at d=2
        for m in p1.group.elements:
            for h in p1.subgroup:
                assert p2.class_of(p2.group.op(m, h)) == p2.class_of(m)


def test_stabilization_preserves_identified_subgroup():
    # generators identified with the identity at size n stay identified
    # after the diag(M, 0) embedding into size n+1
    r = RINGS["sq0_z2"]
    small = kv1_approx(r, 1, 1)
    big = kv1_approx(r, 2, 1)
    zero_class = big.class_of(mat_zero(r, 2))
    for h in small.subgroup:
        embedded = stabilize(r, h, 2)
        assert big.class_of(embedded) == zero_class


def test_elementary_matrices_land_in_identity_class():
    # e_12(a) has M part a E_12; the path (a t) E_12 pins it to the class
    # of the identity at degree 1
    r = RINGS["z3_unital"]
    pres = kv1_approx(r, 2, 1)
    zero_class = pres.class_of(mat_zero(r, 2))
    for a in r.elements():
        m = ((r.zero(), a), (r.zero(), r.zero()))
        assert pres.class_of(m) == zero_class


def test_stabilization_embedding_is_a_group_hom():
    rng = random.Random(2)
    r = RINGS["sq0_z3"]
    g2 = gl_group(r, 2)
    for _ in range(40):
        a = g2.elements[rng.randrange(len(g2.elements))]
        b = g2.elements[rng.randrange(len(g2.elements))]
        big_ab = stabilize(r, g2.op(a, b), 3)
        assert big_ab == circle(r, stabilize(r, a, 3), stabilize(r, b, 3))


def test_kv1_monotone_under_stabilization():
    r = RINGS["sq0_z2"]
    p1 = kv1_approx(r, 1, 1)
    p2 = kv1_approx(r, 2, 1)
    assert p2.order <= p1.order


def test_polynomial_matrix_quasi_inverse():
    # over a square-zero base every polynomial matrix is quasi-invertible
    r = RINGS["sq0_z2"]
    pring = PolyRing(r, ("t",))
    m = ((pring.monomial(r.gen(0), (("t", 1),)),),)
    res = quasi_inverse(pring, m)
    assert res.status == "ok"


def test_circle_determinant_multiplicative():
    rng = random.Random(3)
    r = RINGS["z3_unital"]
    g = gl_group(r, 2)
    for _ in range(50):
        a = g.elements[rng.randrange(len(g.elements))]
        b = g.elements[rng.randrange(len(g.elements))]
        assert circle_determinant(r, g.op(a, b)) == r.mul(
            circle_determinant(r, a), circle_determinant(r, b))


def test_strict_pi0_partitions():
    assert strict_pi0(["a", "b", "c"], []) == [["a"], ["b"], ["c"]]
    assert strict_pi0(["a", "b", "c"], [("a", "b"), ("b", "c")]) == [
        ["a", "b", "c"]]
    assert strict_pi0([1, 2, 3, 4], [(1, 2), (3, 4)]) == [[1, 2], [3, 4]]
