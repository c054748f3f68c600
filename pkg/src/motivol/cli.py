"""Command-line front end.

Every command reads one JSON document and writes one JSON document (or a
human-readable summary with ``--format human``). Exit status: 0 success,
1 schema error, 2 mathematical precondition failure, 3 internal invariant
violation.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
from typing import Callable

from . import __version__
from .errors import InvariantViolation, MotivicError, SchemaError
from .motivic_ring import MotivicClass, chi_y, euler
from .tropical import (
    PuiseuxPoly,
    bg_multiplicity,
    mikhalkin_multiplicity,
    motivic_volume_curve,
    schoen_sanity,
    tropicalize,
    vertex_multiplicity,
    vf_class_of_curve,
)
from .rational import fmt_q
from .vf_classes import StratifiedSpecialFiber, VFClass, semistable_class, semistable_volume, vol
from .zeta import MotivicSeries, hilb_from_refined, refined_from_hilb

COMMANDS = ("trop", "volume", "semistable", "vfvol", "zeta-extract", "zeta-roundtrip", "bg", "chi")


def class_doc(c: MotivicClass) -> dict:
    return {
        "records": c.to_records(),
        "text": str(c),
        "chi_y": {"records": chi_y(c).to_records(), "text": str(chi_y(c))},
        "euler": str(euler(c)),
    }


def subdivision_doc(sub) -> dict:
    pts = sub.points
    return {
        "degenerate": sub.degenerate,
        "cells": [
            {
                "vertices": [list(v) for v in c.vertices],
                "support": [list(pts[k].m) for k in c.support],
                "dual_position": [fmt_q(x) for x in c.dual_position],
            }
            for c in sub.cells
        ],
        "edges": [
            {
                "endpoints": [list(p) for p in e.endpoints],
                "support": [list(pts[k].m) for k in e.support],
                "cells": list(e.cells),
                "lattice_length": e.lattice_length,
                "boundary": e.is_boundary,
            }
            for e in sub.edges
        ],
    }


# commands ------------------------------------------------------------------------
# each returns (parameters, result)

def _genus(args, doc_g):
    g = args.genus if args.genus is not None else doc_g
    if g is None:
        raise SchemaError("g", "genus missing (give it in the file or with --genus)")
    if g < 0:
        raise SchemaError("g", "genus must be nonnegative")
    return g


def cmd_chi(doc, args):
    if not isinstance(doc, dict) or "class" not in doc:
        raise SchemaError("class", "missing")
    c = MotivicClass.from_records(doc["class"], "class")
    return {}, class_doc(c)


def cmd_trop(doc, args):
    f = PuiseuxPoly.from_json(doc)
    curve, sub = tropicalize(f)
    return {}, {
        "curve": curve.to_json(),
        "subdivision": subdivision_doc(sub),
        "schoen": schoen_sanity(f).to_json(),
    }


def cmd_volume(doc, args):
    f = PuiseuxPoly.from_json(doc)
    report = schoen_sanity(f)
    v = motivic_volume_curve(f, assume_schoen=args.assume_schoen, threads=args.threads)
    via_theta = vol(vf_class_of_curve(f, assume_schoen=args.assume_schoen))
    if via_theta != v:
        raise InvariantViolation(f"cell sum {v} differs from vol of the Theta expansion {via_theta}")
    return {"assume_schoen": args.assume_schoen}, {"schoen": report.to_json(), "volume": class_doc(v)}


def cmd_semistable(doc, args):
    F = StratifiedSpecialFiber.from_json(doc)
    v = semistable_volume(F)
    cls = semistable_class(F)
    if vol(cls) != v:
        raise InvariantViolation(f"closed formula {v} differs from vol of the Theta expansion {vol(cls)}")
    return {"d": F.d, "components": F.components}, {"volume": class_doc(v), "vf_class": cls.to_json()}


def cmd_vfvol(doc, args):
    x = VFClass.from_json(doc, "$")
    return {}, {"volume": class_doc(vol(x))}


def cmd_zeta_extract(doc, args):
    series, doc_g = MotivicSeries.from_json(doc)
    g = _genus(args, doc_g)
    if args.truncation is not None:
        series = series.truncate(args.truncation)
    inv = refined_from_hilb(series, g)
    return {"g": g, "M": series.M}, inv.to_json()


def cmd_zeta_roundtrip(doc, args):
    if not isinstance(doc, dict) or not isinstance(doc.get("N"), list):
        raise SchemaError("N", "expected a list of classes")
    N = [MotivicClass.from_records(c, f"N[{k}]") for k, c in enumerate(doc["N"])]
    g = _genus(args, doc.get("g"))
    M = args.truncation if args.truncation is not None else doc.get("M", len(N) - 1)
    if not isinstance(M, int) or isinstance(M, bool) or M < 0:
        raise SchemaError("M", "must be a nonnegative integer")
    series = hilb_from_refined(N, g, M)
    back = refined_from_hilb(series, g)
    expected = (N + [MotivicClass()] * (M + 1))[: M + 1]
    if list(back.N) != expected:
        raise InvariantViolation("refined -> zeta -> refined did not return the input")
    return {"g": g, "M": M}, {"series": series.to_json(g), "refined": back.to_json(), "roundtrip": True}


def cmd_bg(doc, args):
    f = PuiseuxPoly.from_json(doc)
    curve, _ = tropicalize(f)
    n = mikhalkin_multiplicity(curve)
    N = bg_multiplicity(curve)
    if N.at_one() != n:
        raise InvariantViolation(f"refined multiplicity {N} does not specialize to {n}")
    return {}, {
        "vertex_multiplicities": [vertex_multiplicity(curve, v) for v in range(len(curve.vertices))],
        "mikhalkin": str(n),
        "block_goettsche": {"records": N.to_records(), "text": str(N)},
        "integral": N.is_integral(),
    }


HANDLERS: dict[str, Callable] = {
    "trop": cmd_trop,
    "volume": cmd_volume,
    "semistable": cmd_semistable,
    "vfvol": cmd_vfvol,
    "zeta-extract": cmd_zeta_extract,
    "zeta-roundtrip": cmd_zeta_roundtrip,
    "bg": cmd_bg,
    "chi": cmd_chi,
}


def _human(doc: dict, indent: str = "") -> list[str]:
    lines = []
    for key in sorted(doc):
        val = doc[key]
        if isinstance(val, dict) and "text" in val:
            lines.append(f"{indent}{key}: {val['text']}")
            rest = {k: v for k, v in val.items() if k not in ("text", "records")}
            lines.extend(_human(rest, indent + "  "))
        elif isinstance(val, dict):
            lines.append(f"{indent}{key}:")
            lines.extend(_human(val, indent + "  "))
        elif isinstance(val, list) and val and isinstance(val[0], (dict, list)):
            lines.append(f"{indent}{key}: [{len(val)} entries]")
        else:
            lines.append(f"{indent}{key}: {val}")
    return lines


def render(doc: dict, fmt: str) -> str:
    if fmt == "human":
        return "\n".join(_human(doc)) + "\n"
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="motivol", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--input", required=True, help="input JSON file ('-' for stdin)")
    p.add_argument("--output", help="output file (default: stdout)")
    p.add_argument("--genus", type=int)
    p.add_argument("--truncation", type=int)
    p.add_argument("--assume-schoen", action="store_true")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--format", choices=("document", "human"), default="document")
    return p


def run(argv=None) -> tuple[int, str]:
    """Execute one invocation; returns (exit status, text for stdout)."""
    args = build_parser().parse_args(argv)
    try:
        raw = sys.stdin.buffer.read() if args.input == "-" else open(args.input, "rb").read()
    except OSError as exc:
        return _fail(1, "schema", "input", str(exc))
    try:
        doc = json.loads(raw.decode("utf-8"))
        params, result = HANDLERS[args.command](doc, args)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        return _fail(1, "schema", "$", f"not valid JSON: {exc}")
    except SchemaError as exc:
        return _fail(1, "schema", exc.field, str(exc))
    except InvariantViolation as exc:
        return _fail(3, "invariant", None, str(exc))
    except MotivicError as exc:
        return _fail(2, "precondition", type(exc).__name__, str(exc))
    out = {
        "artifact": {"name": "motivol", "version": __version__},
        "command": args.command,
        "input_sha256": hashlib.sha256(raw).hexdigest(),
        "parameters": params,
        "result": result,
    }
    text = render(out, args.format)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        return 0, ""
    return 0, text


def _fail(code: int, kind: str, field, message: str) -> tuple[int, str]:
    err = {"error": {"kind": kind, "field": field, "message": message}}
    sys.stderr.write(json.dumps(err, sort_keys=True) + "\n")
    return code, ""


def main(argv=None) -> int:
    code, text = run(argv)
    if text:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
