"""Command line interface.

Exit status: 0 on success, 1 on input errors, 2 when a size guard refuses
the computation.  Exact rationals are written as ``"p/q"`` strings.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from .density import density
from .errors import ParseError, SizeLimitError
from .groebner import IdealHandle, groebner_basis, ideal_member, radical_member
from .hadamard import hadamard_closed_form, hadamard_graphon, is_hadamard, map_probability, sylvester
from .hom import hom_poly
from .kernels import kernel_to_json, load_kernel
from .parser import format_expr, parse_expr
from .polynomial import MAX_INVARIANCE_Q, is_sq_invariant, parse_polynomial
from .quantum import unlabel
from .variety import (
    VarietyConstraint,
    closure_check,
    hnak_audit,
    in_variety,
    intersection_constraint,
    union_constraint,
)

CACHE_ENV = "GRAPHON_ALGEBRA_CACHE"


class _InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _read_lines(path: str) -> list[str]:
    lines = []
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise _InputError(f"{path}: no expressions found")
    return lines


def _s(x) -> str | None:
    if x is None:
        return None
    if isinstance(x, Fraction):
        return str(x)
    return repr(float(x))


# -- Groebner cache -----------------------------------------------------------------------


def _cache_path(h: IdealHandle) -> Path | None:
    root = os.environ.get(CACHE_ENV)
    if not root:
        return None
    blob = json.dumps([h.q, h.order, [g.to_text() for g in h.generators]])
    return Path(root) / (hashlib.sha256(blob.encode()).hexdigest() + ".json")


def _cached_basis(h: IdealHandle, verify: bool) -> IdealHandle:
    path = _cache_path(h)
    if path is not None and path.exists():
        cached = IdealHandle.from_json(path.read_text())
        if cached.basis is not None and cached.generators == h.generators:
            if verify:
                fresh = groebner_basis(h)
                if list(fresh.basis) != list(cached.basis):
                    raise _InputError(f"cached basis at {path} does not match recomputation")
            return cached
    h = groebner_basis(h)
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(h.to_json())
    return h


# -- subcommands ----------------------------------------------------------------------------


def cmd_density(args):
    g = parse_expr(args.graph)
    W = load_kernel(args.kernel)
    r = density(g, W, args.route, args.samples, args.seed)
    row = {
        "graph": format_expr(unlabel(g)),
        "kernel": args.kernel,
        "route": r.route,
        "value": _s(r.value),
        "error": _s(r.stderr),
    }
    if r.samples is not None:
        row["samples"] = r.samples
    return row, [row]


def cmd_hompoly(args):
    g = parse_expr(args.expr)
    p = hom_poly(unlabel(g), args.q)
    out = {"expr": format_expr(unlabel(g)), "q": args.q, "polynomial": str(p), "text": p.to_text()}
    if args.q <= MAX_INVARIANCE_Q:
        out["sq_invariant"] = is_sq_invariant(p)
    return out, [out]


def _generators(args) -> IdealHandle:
    polys = []
    if args.generators:
        polys += [hom_poly(unlabel(parse_expr(t)), args.q) for t in _read_lines(args.generators)]
    if args.poly_generators:
        polys += [parse_polynomial(t, args.q) for t in _read_lines(args.poly_generators)]
    if not polys:
        raise _InputError("give --generators and/or --poly-generators")
    return IdealHandle(args.q, polys, args.order)


def cmd_ideal(args):
    h = _cached_basis(_generators(args), args.verify_cache)
    out = {
        "q": h.q,
        "order": h.order,
        "generators": [g.to_text() for g in h.generators],
        "basis": [b.to_text() for b in h.basis],
    }
    f = None
    if args.member:
        f = hom_poly(unlabel(parse_expr(args.member)), args.q)
    elif args.member_poly:
        f = parse_polynomial(args.member_poly, args.q)
    if f is not None:
        out["member_polynomial"] = f.to_text()
        out["member"] = ideal_member(f, h)
        out["radical_member"] = radical_member(f, h)
    return out, [{"basis_element": b} for b in out["basis"]]


def cmd_variety(args):
    cs = [VarietyConstraint(parse_expr(t)) for t in args.constraint]
    if len(cs) == 1:
        c = cs[0]
    elif args.union:
        c = cs[0]
        for other in cs[1:]:
            c = union_constraint(c, other)
    else:
        c = intersection_constraint(cs)
    rows = []
    for path in args.kernel:
        W = load_kernel(path)
        rows.append({"kernel": path, "density": _s(density(c.g, W).value), "member": in_variety(W, c)})
    out = {"constraint": format_expr(c.g), "provenance": c.provenance, "results": rows}
    return out, rows


def cmd_closure(args):
    W = load_kernel(args.kernel)
    rep = closure_check(W, parse_expr(args.expr), (args.max_vertices, args.max_edges), kernel_id=args.kernel)
    out = rep.to_dict()
    return out, [{"violation": v} for v in rep.violations]


def cmd_hadamard(args):
    if args.matrix:
        B = np.array(json.loads(Path(args.matrix).read_text()), dtype=np.int64)
    else:
        n = args.order
        if n < 1 or n & (n - 1):
            raise _InputError(f"--order must be a power of two for the doubling construction, got {n}")
        B = sylvester(n.bit_length() - 1)
    out = {"matrix": B.tolist(), "is_hadamard": is_hadamard(B)}
    if not out["is_hadamard"]:
        return out, [out]
    U = hadamard_graphon(B)
    out["graphon"] = json.loads(kernel_to_json(U))
    rows = []
    if args.graph:
        g = unlabel(parse_expr(args.graph))
        out["graph"] = format_expr(g)
        out["density"] = str(density(g, U).value)
        out["constituents"] = [
            {"graph": format_expr(type(g).of(F)), "coefficient": str(c), "map_probability": str(map_probability(B, F))}
            for c, F in g.terms()
        ]
        if args.compare_closed_form:
            cf = hadamard_closed_form(g, B)
            out["closed_form"] = str(cf)
            out["closed_form_matches_density"] = cf == density(g, U).value
        rows = [dict(r, density=out["density"]) for r in out["constituents"]]
    return out, rows


def cmd_hnak(args):
    Q = [parse_expr(t) for t in _read_lines(args.generators)]
    cands = [parse_expr(t) for t in args.candidate]
    kernels = [load_kernel(p) for p in args.kernels]
    rep = hnak_audit(args.q, Q, cands, kernels, kernel_ids=args.kernels)
    out = rep.to_dict()
    return out, out["entries"]


# -- driver -----------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="graphon-algebra", description="Exact graph-limit algebra toolkit.")
    p.add_argument("--seed", type=int, default=0, help="seed for all randomness")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--output", "-o", help="write to this file instead of stdout")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("density", help="homomorphism density t(g, W)")
    s.add_argument("--graph", required=True)
    s.add_argument("--kernel", required=True)
    s.add_argument("--route", choices=("auto", "step", "spectral", "mc"), default="auto")
    s.add_argument("--samples", type=int, default=100_000)
    s.set_defaults(func=cmd_density)

    s = sub.add_parser("hompoly", help="homomorphism polynomial hom(g, X)")
    s.add_argument("--expr", required=True)
    s.add_argument("--q", type=int, required=True)
    s.set_defaults(func=cmd_hompoly)

    s = sub.add_parser("ideal", help="Groebner basis and (radical) membership")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--generators", help="file of quantum-graph expressions, one per line")
    s.add_argument("--poly-generators", help="file of polynomials in x[i][j] text form")
    s.add_argument("--member", help="quantum graph whose hom polynomial is tested")
    s.add_argument("--member-poly", help="polynomial in x[i][j] text form to test")
    s.add_argument("--order", choices=("grevlex", "grlex", "lex"), default="grevlex")
    s.add_argument("--verify-cache", action="store_true")
    s.set_defaults(func=cmd_ideal)

    s = sub.add_parser("variety", help="kernel variety membership")
    s.add_argument("--constraint", action="append", required=True)
    s.add_argument("--union", action="store_true", help="combine constraints by union (default: intersection)")
    s.add_argument("--kernel", action="append", required=True)
    s.set_defaults(func=cmd_variety)

    s = sub.add_parser("closure", help="closure of a vanishing quantum graph under gluing")
    s.add_argument("--expr", required=True)
    s.add_argument("--kernel", required=True)
    s.add_argument("--max-vertices", type=int, default=4)
    s.add_argument("--max-edges", type=int, default=4)
    s.set_defaults(func=cmd_closure)

    s = sub.add_parser("hadamard", help="Hadamard graphons and P(B, F)")
    grp = s.add_mutually_exclusive_group(required=True)
    grp.add_argument("--order", type=int)
    grp.add_argument("--matrix", help="JSON integer matrix file")
    s.add_argument("--graph")
    s.add_argument("--compare-closed-form", action="store_true")
    s.set_defaults(func=cmd_hadamard)

    s = sub.add_parser("hnak", help="Nullstellensatz audit of candidates against kernels")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--generators", required=True)
    s.add_argument("--candidate", action="append", required=True)
    s.add_argument("--kernels", nargs="+", required=True)
    s.set_defaults(func=cmd_hnak)
    return p


def _render(fmt: str, obj: dict, rows: list[dict]) -> str:
    if fmt == "json":
        return json.dumps(obj, sort_keys=True, indent=2) + "\n"
    buf = io.StringIO()
    fields: list[str] = []
    for r in rows:
        for k in r:
            if k not in fields:
                fields.append(k)
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for r in rows:
        writer.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v for k, v in r.items()})
    return buf.getvalue()


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        obj, rows = args.func(args)
    except SizeLimitError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 2
    except (ParseError, ValueError, _InputError, OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    text = _render(args.format, obj, rows)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
