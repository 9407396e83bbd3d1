"""JSON formats for rings, homs, polynomials and certificates.

Ring:        {"label": str, "orders": [int], "mul": [[[int]]], "unit": [int]|null}
Hom:         {"source": label, "target": label, "images": [[int]]}
Polynomial:  [{"mono": {var: exp}, "coeff": [int]}]
Certificate: {"source": label, "target": label, "var": str,
              "images": [polynomial], "f0": [[int]], "f1": [[int]]}
K0 diagram:  {"objects": [label], "weq": [[a, b]], "fib_seq": [[f, e, b]]}
"""

from __future__ import annotations

import json

from .homotopy import HomotopyCertificate, carrier_ring
from .poly import Poly
from .rings import RingHom, validate_ring
from .triangle import K0Diagram


def ring_to_json(ring):
    return {
        "label": ring.label,
        "orders": list(ring.orders),
        "mul": [[list(v) for v in row] for row in ring.table],
        "unit": list(ring.unit) if ring.unit is not None else None,
    }


def ring_from_json(data):
    return validate_ring(data["orders"],
                         [[tuple(v) for v in row] for row in data["mul"]],
                         unit=tuple(data["unit"]) if data.get("unit") else None,
                         label=data.get("label", "R"))


def hom_to_json(hom):
    return {
        "source": hom.source.label,
        "target": hom.target.label,
        "images": [list(img) for img in hom.images],
    }


def hom_from_json(data, registry):
    src = registry[data["source"]]
    tgt = registry[data["target"]]
    hom = RingHom(src, tgt, [tuple(img) for img in data["images"]],
                  label=data.get("label", ""))
    hom.validate()
    return hom


def poly_to_json(p):
    return [{"mono": {v: e for v, e in mono}, "coeff": list(c)}
            for mono, c in p.terms]


def poly_from_json(data):
    terms = []
    for t in data:
        mono = tuple(sorted((v, int(e)) for v, e in t["mono"].items()))
        terms.append((mono, tuple(t["coeff"])))
    return Poly(sorted(terms))


def certificate_to_json(cert):
    assert isinstance(cert.hom, RingHom), "only finite-source certificates serialize"
    return {
        "source": cert.source.label,
        "target": cert.target.label,
        "var": cert.var,
        "images": [poly_to_json(img) for img in cert.hom.images],
        "f0": [list(img) for img in cert.f0.images],
        "f1": [list(img) for img in cert.f1.images],
    }


def certificate_from_json(data, registry):
    src = registry[data["source"]]
    tgt = registry[data["target"]]
    carrier = carrier_ring(tgt, data["var"])
    hom = RingHom(src, carrier, [poly_from_json(p) for p in data["images"]],
                  label="h")
    f0 = RingHom(src, tgt, [tuple(v) for v in data["f0"]], label="f0")
    f1 = RingHom(src, tgt, [tuple(v) for v in data["f1"]], label="f1")
    return HomotopyCertificate(hom, f0, f1, data["var"])


def k0_diagram_from_json(data):
    return K0Diagram(data["objects"], weq=data.get("weq", ()),
                     fib_seq=data.get("fib_seq", ()))


def load_json(path):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def dump_json(path, data):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(data, fh, indent=2, sort_keys=True)
        fh.write("\n")
