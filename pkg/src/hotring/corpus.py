"""The bundled desk-scale ring corpus used by tests and demos."""

from __future__ import annotations

from .rings import RingHom, validate_ring


def _sq0(p, k, label):
    zero = tuple(0 for _ in range(k))
    table = tuple(tuple(zero for _ in range(k)) for _ in range(k))
    return validate_ring((p,) * k, table, label=label)


def corpus():
    """Label -> ring; every entry validates on construction."""
    rings = {}
    rings["sq0_z2"] = _sq0(2, 1, "sq0_z2")
    rings["sq0_z3"] = _sq0(3, 1, "sq0_z3")
    rings["two_z8"] = validate_ring((4,), (((2,),),), label="two_z8")
    # strictly upper triangular 3x3 over Z/2 on e12, e13, e23: e12 e23 = e13
    rings["upper3_z2"] = validate_ring(
        (2, 2, 2),
        (((0, 0, 0), (0, 0, 0), (0, 1, 0)),
         ((0, 0, 0), (0, 0, 0), (0, 0, 0)),
         ((0, 0, 0), (0, 0, 0), (0, 0, 0))),
        label="upper3_z2")
    rings["z2_unital"] = validate_ring((2,), (((1,),),), unit=(1,),
                                       label="z2_unital")
    rings["z3_unital"] = validate_ring((3,), (((1,),),), unit=(1,),
                                       label="z3_unital")
    rings["z4_unital"] = validate_ring((4,), (((1,),),), unit=(1,),
                                       label="z4_unital")
    # N-graded: degree 0 part Z/2 e with unit e, degree 1 part Z/2 v, v^2 = 0
    rings["graded_dual"] = validate_ring(
        (2, 2),
        (((1, 0), (0, 1)), ((0, 1), (0, 0))),
        unit=(1, 0), label="graded_dual")
    rings["tower3"] = _sq0(2, 3, "tower3")
    rings["tower2"] = _sq0(2, 2, "tower2")
    return rings


GRADING = {"graded_dual": (0, 1)}


def tower_homs(rings=None):
    """The square-zero surjection tower (Z/2)^3 -> (Z/2)^2 -> Z/2."""
    rings = rings or corpus()
    t3, t2, t1 = rings["tower3"], rings["tower2"], rings["sq0_z2"]
    h = RingHom(t3, t2, [(1, 0), (0, 1), (0, 0)], label="drop3")
    k = RingHom(t2, t1, [(1,), (0,)], label="drop2")
    h.validate()
    k.validate()
    return h, k
