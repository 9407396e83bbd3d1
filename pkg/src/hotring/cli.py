"""Command line front door.

Every command reads JSON inputs, runs a library operation, prints one
JSON record to stdout and persists it in a content-addressed store;
rerunning with identical inputs is a cache hit with byte-identical
output.  Exit codes: 0 success, 1 malformed input or unknown label,
2 verification failure, 3 budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time

from .corpus import corpus, tower_homs
from .errors import BudgetExceeded, HotringError, VerificationFailure
from .glk import determinant_certificate, kv1_approx
from .homotopy import (HomotopyCertificate, homotopy_classes, search_up_to,
                       verify_certificate)
from .rings import enumerate_homs
from .serialize import (certificate_to_json, dump_json, hom_from_json,
                        hom_to_json, k0_diagram_from_json, load_json,
                        ring_from_json, ring_to_json)
from .simplicial import check_simplicial_identities
from .store import (ResultStore, content_hash, default_store_root, file_hash,
                    TOOL_VERSION)
from .triangle import (check_axioms, factorize, k0_presentation, octahedron,
                       puppe, rotation_witness, standard_triangle,
                       FibrationFamily)


class CliError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


def _load_registry(args):
    """corpus rings plus every ring file the command mentions, by label."""
    registry = dict(corpus())
    paths = []
    for attr in ("ring", "source", "target", "ring_extra"):
        val = getattr(args, attr, None)
        if val is None:
            continue
        paths.extend(val if isinstance(val, list) else [val])
    for path in paths:
        if not (isinstance(path, str) and os.path.exists(path)):
            continue
        data = _read_json(path)
        if isinstance(data, dict) and "orders" in data:
            ring = ring_from_json(data)
            registry[ring.label] = ring
    return registry


def _read_json(path):
    try:
        return load_json(path)
    except FileNotFoundError:
        raise CliError(f"no such file: {path}", 1)
    except json.JSONDecodeError as exc:
        raise CliError(f"malformed JSON in {path} at line {exc.lineno} "
                       f"column {exc.colno}", 1)


def _get_ring(registry, label):
    if label not in registry:
        raise CliError(f"unknown ring label: {label}", 1)
    return registry[label]


def _load_hom(path, registry):
    data = _read_json(path)
    for side in ("source", "target"):
        if data[side] not in registry:
            raise CliError(f"unknown ring label: {data[side]}", 1)
    try:
        return hom_from_json(data, registry)
    except AssertionError as exc:
        raise CliError(f"invalid homomorphism in {path}: {exc}", 1)


# ---------------------------------------------------------------------------
# command payloads


def cmd_check_ring(args, registry):
    ring = ring_from_json(_read_json(args.path))
    return 0, {"valid": True, "label": ring.label, "orders": list(ring.orders),
               "order": ring.size(),
               "unit": list(ring.unit) if ring.unit is not None else None}


def cmd_homs(args, registry):
    src = ring_from_json(_read_json(args.source))
    tgt = ring_from_json(_read_json(args.target))
    homs = enumerate_homs(src, tgt, budget=args.budget)
    return 0, {"count": len(homs),
               "homs": [[list(i) for i in h.images] for h in homs]}


def cmd_homotopy(args, registry):
    registry = dict(registry)
    for path in (args.source, args.target):
        ring = ring_from_json(_read_json(path))
        registry[ring.label] = ring
    f0 = _load_hom(args.f0, registry)
    f1 = _load_hom(args.f1, registry)
    outcome = search_up_to(f0, f1, args.degree, budget=args.budget)
    if isinstance(outcome, HomotopyCertificate):
        report = verify_certificate(outcome)
        return 0, {"found": True, "verified": report.valid,
                   "certificate": certificate_to_json(outcome)}
    return 0, {"found": False, "degree": outcome.degree,
               "searched": outcome.searched}


def cmd_classes(args, registry):
    src = ring_from_json(_read_json(args.source))
    tgt = ring_from_json(_read_json(args.target))
    homs = enumerate_homs(src, tgt, budget=args.budget)
    result = homotopy_classes(homs, args.degree, budget=args.budget)
    classes = [[[list(i) for i in result.homs[ix].images] for ix in cls]
               for cls in result.classes()]
    for (i, j), cert in sorted(result.edges.items()):
        rep = verify_certificate(cert)
        if not rep.valid:
            raise VerificationFailure(f"stored chain {i}-{j} fails")
    return 0, {"degree": args.degree, "count": len(classes),
               "classes": classes,
               "merges": sorted(list(e) for e in result.edges)}


def cmd_kv1(args, registry):
    if args.degree < 1 or args.size < 1:
        raise CliError("kv1 needs --size >= 1 and --degree >= 1", 1)
    ring = ring_from_json(_read_json(args.ring))
    history = []
    pres = None
    for d in range(1, args.degree + 1):
        pres = kv1_approx(ring, args.size, d, budget=args.budget)
        history.append(pres.order)
    payload = pres.summary()
    payload["monotone_history"] = history
    if ring.unit is not None:
        payload["determinant_certificate"] = {
            k: (v if not isinstance(v, list) else [list(x) for x in v])
            for k, v in determinant_certificate(pres).items()
            if k in ("determinant_image_order", "subgroup_in_kernel",
                     "lower_bound_matches")}
    return 0, payload


def cmd_factorize(args, registry):
    u = _load_hom(args.hom, registry)
    fac = factorize(u)
    rng = random.Random(args.seed)
    result = fac.verify(probes=args.probes, rng=rng)
    code = 0 if result["ok"] else 2
    return code, {"ok": result["ok"],
                  "failures": [str(f) for f in result["failures"]],
                  "certificate_mode": result["certificate"].mode}


def cmd_puppe(args, registry):
    g = _load_hom(args.hom, registry)
    seq = puppe(g, args.length, depth_cap=args.depth_cap)
    rng = random.Random(args.seed)
    result = seq.verify(probes=args.probes, rng=rng)
    code = 0 if result["ok"] else 2
    return code, {"ok": result["ok"], "length": args.length,
                  "failures": [str(f) for f in result["failures"]]}


def cmd_triangle(args, registry):
    g = _load_hom(args.hom, registry)
    tri, _ = standard_triangle(g)
    cert, _, _ = rotation_witness(g)
    rng = random.Random(args.seed)
    report = verify_certificate(cert, probes=args.probes, rng=rng)
    code = 0 if report.valid else 2
    return code, {"objects": [r.label for r in tri.objects],
                  "rotation_witness_valid": report.valid,
                  "checks": report.checked}


def cmd_octahedron(args, registry):
    h = _load_hom(args.h, registry)
    k = _load_hom(args.k, registry)
    rng = random.Random(args.seed)
    report = octahedron(h, k, probes=args.probes, rng=rng)
    code = 0 if report.ok else 2
    return code, report.data


def cmd_k0(args, registry):
    diagram = k0_diagram_from_json(_read_json(args.diagram))
    result = k0_presentation(diagram)
    return 0, result.summary()


def cmd_simplicial_check(args, registry):
    ring = ring_from_json(_read_json(args.ring))
    rng = random.Random(args.seed)
    checks, failures = check_simplicial_identities(ring, args.levels,
                                                   args.probes, rng)
    code = 0 if not failures else 2
    return code, {"checks": checks, "failures": len(failures),
                  "levels": args.levels}


def cmd_corpus(args, registry):
    rings = corpus()
    outdir = args.dir or os.path.join(args.out or default_store_root(),
                                      "corpus")
    os.makedirs(outdir, exist_ok=True)
    written = []
    for label in sorted(rings):
        path = os.path.join(outdir, f"{label}.json")
        dump_json(path, ring_to_json(rings[label]))
        written.append(path)
    h, k = tower_homs(rings)
    for name, hom in (("tower_h", h), ("tower_k", k)):
        path = os.path.join(outdir, f"{name}.json")
        dump_json(path, hom_to_json(hom))
        written.append(path)
    return 0, {"labels": sorted(rings), "written": written}


def cmd_axioms(args, registry):
    rings = {}
    homs = {}
    for path in args.ring_extra or []:
        ring = ring_from_json(_read_json(path))
        rings[ring.label] = ring
    local = dict(registry)
    local.update(rings)
    for path in args.hom_extra or []:
        hom = _load_hom(path, local)
        homs[os.path.basename(path)] = hom
        rings.setdefault(hom.source.label, hom.source)
        rings.setdefault(hom.target.label, hom.target)
    family = FibrationFamily(rings, homs, all_surjective=True)
    rng = random.Random(args.seed)
    report = check_axioms(family, probes=args.probes, rng=rng)
    code = 0 if report["ok"] else 2
    return code, {"ok": report["ok"],
                  "axioms": {ax: report[ax]["ok"]
                             for ax in ("Ax1", "Ax2", "Ax3", "Ax4")}}


COMMANDS = {
    "check-ring": cmd_check_ring,
    "homs": cmd_homs,
    "homotopy": cmd_homotopy,
    "classes": cmd_classes,
    "kv1": cmd_kv1,
    "factorize": cmd_factorize,
    "puppe": cmd_puppe,
    "triangle": cmd_triangle,
    "octahedron": cmd_octahedron,
    "k0": cmd_k0,
    "simplicial-check": cmd_simplicial_check,
    "corpus": cmd_corpus,
    "axioms": cmd_axioms,
}


def _add_common(p):
    p.add_argument("--budget", type=int, default=200_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--probes", type=int, default=60)
    p.add_argument("--out", default=None, help="result store directory")
    p.add_argument("--json", action="store_true", help="compact output")
    p.add_argument("--no-store", action="store_true")


def build_parser():
    parser = argparse.ArgumentParser(prog="hotring")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-ring")
    p.add_argument("path")
    _add_common(p)

    p = sub.add_parser("homs")
    p.add_argument("--source", required=True)
    p.add_argument("--target", required=True)
    _add_common(p)

    p = sub.add_parser("homotopy")
    p.add_argument("--source", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--f0", required=True)
    p.add_argument("--f1", required=True)
    p.add_argument("--degree", type=int, required=True)
    _add_common(p)

    p = sub.add_parser("classes")
    p.add_argument("--source", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--degree", type=int, required=True)
    _add_common(p)

    p = sub.add_parser("kv1")
    p.add_argument("--ring", required=True)
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--degree", type=int, required=True)
    _add_common(p)

    for name in ("factorize", "puppe", "triangle"):
        p = sub.add_parser(name)
        p.add_argument("--hom", required=True)
        p.add_argument("--source", default=None)
        p.add_argument("--target", default=None)
        if name == "puppe":
            p.add_argument("--length", type=int, default=3)
            p.add_argument("--depth-cap", type=int, default=8)
        _add_common(p)

    p = sub.add_parser("octahedron")
    p.add_argument("--h", required=True)
    p.add_argument("--k", required=True)
    p.add_argument("--ring", action="append", dest="ring_extra")
    _add_common(p)

    p = sub.add_parser("k0")
    p.add_argument("--diagram", required=True)
    _add_common(p)

    p = sub.add_parser("simplicial-check")
    p.add_argument("--ring", required=True)
    p.add_argument("--levels", type=int, default=4)
    _add_common(p)

    p = sub.add_parser("corpus")
    p.add_argument("--dir", default=None)
    _add_common(p)

    p = sub.add_parser("axioms")
    p.add_argument("--ring", action="append", dest="ring_extra")
    p.add_argument("--hom", action="append", dest="hom_extra")
    _add_common(p)

    return parser


def _input_hashes(args):
    hashes = {}
    for attr in ("path", "source", "target", "f0", "f1", "hom", "ring",
                 "h", "k", "diagram"):
        val = getattr(args, attr, None)
        if isinstance(val, str) and os.path.exists(val):
            hashes[attr] = file_hash(val)
    for attr in ("ring_extra", "hom_extra"):
        for i, val in enumerate(getattr(args, attr, None) or []):
            if os.path.exists(val):
                hashes[f"{attr}{i}"] = file_hash(val)
    return hashes


def _params(args):
    skip = {"command", "out", "json", "no_store", "func"}
    out = {}
    for key, val in sorted(vars(args).items()):
        if key in skip or callable(val):
            continue
        if isinstance(val, (int, str, bool, type(None))):
            out[key] = val
        elif isinstance(val, list):
            out[key] = list(val)
    return out


def main(argv=None):
    args = build_parser().parse_args(argv)
    store_root = args.out or default_store_root()
    store = ResultStore(store_root) if not args.no_store else None

    try:
        registry = _load_registry(args)
        key = content_hash({"command": args.command,
                            "inputs": _input_hashes(args),
                            "params": _params(args),
                            "version": TOOL_VERSION})
        if store is not None:
            cached = store.load(key)
            if cached is not None:
                _emit(cached, args.json)
                return int(cached.get("exit_code", 0))
        code, payload = COMMANDS[args.command](args, registry)
        record = {
            "command": args.command,
            "inputs": _input_hashes(args),
            "params": _params(args),
            "payload": payload,
            "exit_code": code,
            "timestamp": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
            "version": TOOL_VERSION,
        }
        if store is not None:
            store.save(key, record)
            record = store.load(key)
        _emit(record, args.json)
        return code
    except CliError as exc:
        _emit({"error": str(exc)}, args.json, err=True)
        return exc.code
    except BudgetExceeded as exc:
        _emit({"error": str(exc), "required": exc.required,
               "budget": exc.budget}, args.json, err=True)
        return 3
    except VerificationFailure as exc:
        _emit({"error": str(exc)}, args.json, err=True)
        return 2
    except HotringError as exc:
        _emit({"error": str(exc)}, args.json, err=True)
        return 1


def _emit(obj, compact, err=False):
    stream = sys.stderr if err else sys.stdout
    if compact:
        stream.write(json.dumps(obj, sort_keys=True, separators=(",", ":")))
        stream.write("\n")
    else:
        stream.write(json.dumps(obj, sort_keys=True, indent=2))
        stream.write("\n")


if __name__ == "__main__":
    sys.exit(main())
