"""Finite nonunital rings, their maps, and machine-checked homotopies.

Walk through the bundled corpus, enumerate homomorphisms, search for
elementary homotopies, and watch two maps that genuinely cannot be
connected stay apart.
"""

import random

from hotring import (corpus, enumerate_homs, graded_certificate,
                     homotopy_classes, identity_hom, search_elementary,
                     search_homotopy_equivalence, verify_certificate,
                     zero_hom, GRADING, RingHom)

rings = corpus()

# A ring here is a finite abelian group with a structure-constant table.
# 2Z/8Z has one generator g = 2 of additive order 4 with g*g = 2g.
two_z8 = rings["two_z8"]
print("2Z/8Z:", two_z8.orders, "g*g =", two_z8.mul((1,), (1,)))

# Hom sets are computed exactly.  For the square-zero ring Z/2 there are
# just the zero map and the identity.
sq0 = rings["sq0_z2"]
homs = enumerate_homs(sq0, sq0)
print("Hom(sq0_z2, sq0_z2):", [h.images for h in homs])

# An elementary homotopy between f0 and f1 is a homomorphism into R[x]
# evaluating to f0 at x=0 and f1 at x=1.  For the square-zero ring the
# identity is homotopic to zero: h(g) = g x does it.
cert = search_elementary(identity_hom(sq0), zero_hom(sq0, sq0), 1)
print("id ~ 0 on sq0_z2:", cert.hom.images, verify_certificate(cert))

# Over the unital Z/2 no such certificate can exist at any degree: the
# image of the idempotent generator would be an idempotent of F2[x]
# interpolating 1 and 0, and the only idempotents are the constants.
z2 = rings["z2_unital"]
for degree in (1, 2, 3):
    outcome = search_elementary(identity_hom(z2), zero_hom(z2, z2), degree)
    print(f"unital Z/2, degree {degree}:", outcome)

# Homotopy classes: the partition of a hom set by the searched relation.
result = homotopy_classes(enumerate_homs(z2, z2), 3)
print("[z2_unital, z2_unital] has", len(result.classes()), "classes")

# The graded example: the degree-0 part of a graded ring includes as a
# homotopy equivalence, with the projection as inverse.  The certificate
# sends a homogeneous element of degree n to itself times t^n.
graded = rings["graded_dual"]
cert = graded_certificate(graded, GRADING["graded_dual"])
print("graded certificate:", verify_certificate(cert))

incl = RingHom(z2, graded, [(1, 0)], label="incl")
incl.validate()
g, chain_fg, chain_gf = search_homotopy_equivalence(
    incl, enumerate_homs(graded, z2), 2)
print("homotopy inverse of the inclusion:", g.images,
      "| chains of length", len(chain_fg), "and", len(chain_gf))

# Certificates survive composition (transported, then re-verified).
rng = random.Random(0)
print("all stored merges re-verify:",
      all(verify_certificate(c, rng=rng).valid
          for c in result.edges.values()))
