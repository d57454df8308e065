"""Command-line front end.

Exit status: 0 success, 1 input/schema error, 2 computation error,
3 a checked inequality was violated.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import serial
from .barcode import barcode_svg, decompose
from .core import INF, CobarError, ChainMap, as_chain_map
from .cones import cone, totalize
from .energy import ActionData, delta_simple, delta_uniform, lift_tower, map_energy, max_lift_shift
from .interleave import DEFAULT_CAP, DEFAULT_EPSILON, interleaving_distance
from .scenario import check_distance_vs_shadow, check_rigidity, slope_split
from .shadow import arrangement_svg, compress, end_shifts, shadow_area

VERBS = ("validate", "barcode", "cone", "totalize", "distance", "energy", "lifts", "shadow",
         "shifts", "compress", "split", "check-distance", "check-rigidity", "batch")

SCHEMA, COMPUTE, VIOLATED = 1, 2, 3


class _Violation(Exception):
    def __init__(self, payload):
        self.payload = payload


def _expect(kind, obj, *allowed):
    if kind not in allowed:
        raise serial.SchemaError(f"expected a {' or '.join(allowed)} document, got {kind}")
    return obj


def _add_decimal(obj, k):
    if isinstance(obj, dict):
        out = {}
        for key, v in obj.items():
            out[key] = _add_decimal(v, k)
            if isinstance(v, str) and "/" in v:
                try:
                    out[f"{key}_decimal"] = f"{float(Fraction(v)):.{k}f}"
                except ValueError:
                    pass
        return out
    if isinstance(obj, list):
        return [_add_decimal(v, k) for v in obj]
    return obj


def _run_verb(args, docs):
    verb = args.verb
    svg = None
    if verb == "validate":
        return {"kind": docs[0][0], "valid": True}, svg
    if verb == "barcode":
        F = _expect(*docs[0], "complex")
        B = decompose(F)
        if args.svg:
            svg = barcode_svg(B)
        return serial.barcode_to_json(B), svg
    if verb == "cone":
        phi = as_chain_map(_expect(*docs[0], "map"))
        C = cone(phi)
        B = decompose(C)
        if args.svg:
            svg = barcode_svg(B)
        return {"complex": serial.complex_to_json(C), "barcode": serial.barcode_to_json(B)}, svg
    if verb == "totalize":
        T = _expect(*docs[0], "twisted")
        C = totalize(T)
        B = decompose(C)
        if args.svg:
            svg = barcode_svg(B)
        return {"complex": serial.complex_to_json(C), "barcode": serial.barcode_to_json(B)}, svg
    if verb == "distance":
        F = _expect(*docs[0], "complex")
        G = _expect(*docs[1], "complex")
        res = interleaving_distance(F, G, cap=args.cap, detail=True)
        return {"total": res.total, "a": res.a, "b": res.b}, svg
    if verb == "energy":
        kind, obj = docs[0]
        if kind == "actions":
            return {"delta_simple": delta_simple(obj), "delta_uniform": delta_uniform(obj)}, svg
        phi = _expect(kind, obj, "map")
        cert = max_lift_shift(phi)
        return {"energy": map_energy(phi), "max_lift_shift": cert.b,
                "lift_entries": sorted(map(list, cert.representative))}, svg
    if verb == "lifts":
        L = lift_tower(_expect(*docs[0], "twisted"))
        return {"shifts": L.shifts, "caps": L.caps, "lifted": L.lifted}, svg
    if verb in ("shadow", "shifts", "compress"):
        kind, R = docs[0]
        if kind == "scenario":
            R = R.shadow
        _expect(kind if kind != "scenario" else "shadow", R, "shadow")
        if args.svg:
            svg = arrangement_svg(R)
        if verb == "shadow":
            return {"area": shadow_area(R)}, svg
        if verb == "shifts":
            c, cp = end_shifts(R)
            return {"c_minus": c, "c_plus": cp}, svg
        res = compress(R, args.epsilon)
        return {"area": res.area, "cover_area": res.cover_area, "shadow_area": shadow_area(R),
                "sigma_plus": [[s, v] for s, v in res.sigma_plus]}, svg
    if verb == "split":
        F = _expect(*docs[0], "complex")
        sp = slope_split(F, order=args.order)
        return {"slopes": sp.slopes, "twisted": sp.twisted,
                "normalized": [serial.complex_to_json(P) for P in sp.normalized]}, svg
    if verb == "check-distance":
        sc = _expect(*docs[0], "scenario")
        if args.epsilon_given:
            sc.epsilon = args.epsilon
        rep = check_distance_vs_shadow(sc)
        payload = serial.to_jsonable(rep)
        if not rep.holds:
            raise _Violation(payload)
        return payload, svg
    if verb == "check-rigidity":
        sc = _expect(*docs[0], "scenario")
        rep = check_rigidity(sc)
        payload = serial.to_jsonable(rep)
        if rep.verdict == "violated":
            raise _Violation(payload)
        return payload, svg
    raise AssertionError(verb)


def run_scenario_file(path: str, epsilon=None, cap=None) -> dict:
    """Every applicable check on one scenario file, as a JSON-ready dict."""
    out = {"path": path}
    try:
        _, sc = serial.load(path, "scenario")
    except (CobarError, OSError, KeyError, TypeError, ValueError) as exc:
        return {"path": path, "status": SCHEMA, "error": str(exc)}
    if epsilon is not None:
        sc.epsilon = epsilon
    if cap is not None:
        sc.cap = cap
    status = 0
    try:
        if sc.movie is not None:
            rep = check_distance_vs_shadow(sc)
            out["distance"] = serial.to_jsonable(rep)
            if not rep.holds:
                status = VIOLATED
        if sc.hom_minus:
            rep = check_rigidity(sc)
            out["rigidity"] = serial.to_jsonable(rep)
            if rep.verdict == "violated":
                status = VIOLATED
    except CobarError as exc:
        out["error"] = str(exc)
        status = COMPUTE
    out["status"] = status
    return out


def _batch(args) -> tuple:
    paths = sorted(args.inputs)
    eps = args.epsilon if args.epsilon_given else None
    if args.jobs > 1 and len(paths) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            results = list(ex.map(run_scenario_file, paths, [eps] * len(paths), [args.cap] * len(paths)))
    else:
        results = [run_scenario_file(p, eps, args.cap) for p in paths]
    return results, max((r["status"] for r in results), default=0)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cobar", description=__doc__.splitlines()[0])
    p.add_argument("verb", choices=VERBS)
    p.add_argument("inputs", nargs="+")
    p.add_argument("--output", "-o")
    p.add_argument("--epsilon", default=None, help="positive rational p/q")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--svg")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--decimal", type=int, default=None)
    p.add_argument("--order", choices=("ascending", "descending"), default="ascending")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return SCHEMA if exc.code else 0
    try:
        args.epsilon_given = args.epsilon is not None
        args.epsilon = serial.parse_rat(args.epsilon) if args.epsilon_given else DEFAULT_EPSILON
        if args.epsilon == INF or args.epsilon <= 0:
            raise serial.SchemaError("--epsilon must be a positive rational")
    except CobarError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return SCHEMA
    status = 0
    svg = None
    if args.verb == "batch":
        payload, status = _batch(args)
    else:
        need = 2 if args.verb == "distance" else 1
        if len(args.inputs) != need:
            print(f"error: {args.verb} takes {need} input file(s)", file=sys.stderr)
            return SCHEMA
        try:
            docs = [serial.load(p) for p in args.inputs]
        except (CobarError, OSError, KeyError, TypeError, ValueError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return SCHEMA
        try:
            payload, svg = _run_verb(args, docs)
        except _Violation as v:
            payload, status = v.payload, VIOLATED
        except serial.SchemaError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return SCHEMA
        except CobarError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return COMPUTE
    data = serial.to_jsonable(payload)
    if args.decimal is not None:
        data = _add_decimal(data, args.decimal)
    text = json.dumps(data, indent=2) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if svg is not None and args.svg:
        with open(args.svg, "w") as fh:
            fh.write(svg)
    return status


if __name__ == "__main__":
    sys.exit(main())
