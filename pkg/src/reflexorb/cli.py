"""Command-line front end.

Input is a vertex matrix file (or weighted-projective-space weights) read
as the fan-side polytope by default, `--dual` to read the dual side.
Output is JSON with sorted keys (default) or TSV; exact rationals are
rendered as "p/q" strings, integers stay integers. Exit codes: 0 success,
2 not reflexive (or unsupported weights), 3 fan not simplicial, 4 parse
or usage error, 5 dimension hypothesis violated without --force.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
from fractions import Fraction

from . import __version__
from .errors import (
    HypothesisError,
    NotFullDimensionalError,
    NotReflexiveError,
    NotSimplicialError,
    VertexFileError,
)
from .fan import normal_fan, toric_twisted_sectors
from .hodge import cy_twisted_sectors, hodge_report, mirror_check
from .jacobian import jacobian_rank_check
from .polytope import (
    LatticePolytope,
    ReflexivePair,
    format_vertex_matrix,
    parse_vertex_matrix,
)

EXIT_OK = 0
EXIT_NOT_REFLEXIVE = 2
EXIT_NOT_SIMPLICIAL = 3
EXIT_PARSE = 4
EXIT_HYPOTHESIS = 5


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    # argparse reserves status 2 for usage errors; that slot means
    # "not reflexive" here, so usage problems report as parse errors
    def error(self, message):
        raise CliError(message, EXIT_PARSE)


def wps_polytope(weights) -> LatticePolytope:
    """Fan-side polytope of a weighted projective space.

    Weights are rotated so a minimal weight sits first and must be
    well-formed (each weight coprime to the gcd of the others). The
    construction uses the standard basis rays plus the negative weighted
    sum; it needs the leading weight to be 1, and the hull must come out
    reflexive with every ray a vertex.
    """
    if len(weights) < 3:
        raise CliError("need at least three weights", EXIT_PARSE)
    if any(w < 1 for w in weights):
        raise CliError("weights must be positive integers", EXIT_PARSE)
    for i in range(len(weights)):
        rest = weights[:i] + weights[i + 1 :]
        if math.gcd(*rest) != 1:
            raise CliError(
                "weights are not well-formed: dropping one leaves a common factor",
                EXIT_PARSE,
            )
    pivot = weights.index(min(weights))
    weights = weights[pivot:] + weights[:pivot]
    if weights[0] != 1:
        raise CliError(
            "unsupported weights: no weight equals 1", EXIT_NOT_REFLEXIVE
        )
    n = len(weights) - 1
    rays = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    rays.append(tuple(-w for w in weights[1:]))
    try:
        poly = LatticePolytope.from_vertices(rays)
    except NotFullDimensionalError:
        raise CliError("weights give a degenerate hull", EXIT_PARSE) from None
    if len(poly.vertices) != n + 1:
        raise CliError("unsupported weights: a ray is not a vertex", EXIT_NOT_REFLEXIVE)
    if not poly.is_reflexive():
        raise CliError("weights give a non-reflexive hull", EXIT_NOT_REFLEXIVE)
    return poly


def _load_polytope(args) -> LatticePolytope:
    """Resolve the single input source to a polytope (fan side unless --dual)."""
    has_file = getattr(args, "input", None) is not None
    has_weights = getattr(args, "wps", None) is not None
    if has_file == has_weights:
        raise CliError("exactly one input source: a vertex file or --wps", EXIT_PARSE)
    if has_weights:
        if getattr(args, "dual", False):
            raise CliError("--wps already builds the fan side; drop --dual", EXIT_PARSE)
        try:
            weights = [int(x) for x in args.wps.split(",")]
        except ValueError:
            raise CliError("--wps expects comma-separated integers", EXIT_PARSE) from None
        return wps_polytope(weights)
    try:
        with open(args.input, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {args.input}: {exc.strerror}", EXIT_PARSE) from None
    return LatticePolytope.from_vertices(parse_vertex_matrix(text))


def _pair_from(poly: LatticePolytope, dual: bool) -> ReflexivePair:
    if dual:
        return ReflexivePair.from_delta(poly)
    return ReflexivePair.from_polar(poly)


def _input_hash(poly: LatticePolytope) -> str:
    return hashlib.sha256(format_vertex_matrix(poly.vertices).encode()).hexdigest()


def _frac(x):
    """Exact JSON-safe scalar: int when integral, \"p/q\" string otherwise."""
    f = Fraction(x)
    if f.denominator == 1:
        return int(f)
    return f"{f.numerator}/{f.denominator}"


def _toric_sector_obj(s):
    return {
        "generators": [list(g) for g in s.cone.generators],
        "point": list(s.element.point),
        "coefficients": [_frac(c) for c in s.element.coefficients],
        "age": _frac(s.age),
        "group_order": s.group_order,
        "support_dim": s.support_dim,
    }


def _cy_sector_obj(pair, s):
    polar = pair.delta_polar
    return {
        "face_dim": s.face_dim,
        "face_vertices": [list(polar.vertices[i]) for i in s.face_ids],
        "point": list(s.element.point),
        "coefficients": [_frac(c) for c in s.element.coefficients],
        "age": _frac(s.age),
        "group_order": s.group_order,
        "components": s.components,
        "h_top": s.h_top,
    }


# -- subcommand payloads ---------------------------------------------------------


def _cmd_info(args):
    poly = _load_polytope(args)
    pair = _pair_from(poly, args.dual)
    fan = normal_fan(pair)
    polar = pair.delta_polar
    counts = [len(polar.faces(d)) for d in range(polar.n)]
    payload = {
        "reflexive": True,
        "simplicial": fan.is_simplicial(),
        "l_delta": len(pair.delta.lattice_points()),
        "l_polar": len(polar.lattice_points()),
        "face_counts": counts,
        "vertices_delta": len(pair.delta.vertices),
    }
    return payload, poly, pair, EXIT_OK


def _cmd_reflexive(args):
    poly = _load_polytope(args)
    if not poly.is_reflexive():
        return {"reflexive": False}, poly, None, EXIT_NOT_REFLEXIVE
    pair = _pair_from(poly, args.dual)
    return {"reflexive": True}, poly, pair, EXIT_OK


def _cmd_dual(args):
    poly = _load_polytope(args)
    pair = _pair_from(poly, args.dual)
    dual = poly.polar_dual()
    payload = {"vertices": [list(v) for v in dual.vertices]}
    if args.format == "tsv":
        return format_vertex_matrix(dual.vertices), poly, pair, EXIT_OK
    return payload, poly, pair, EXIT_OK


def _cmd_faces(args):
    poly = _load_polytope(args)
    pair = _pair_from(poly, args.dual)
    faces = []
    counts = []
    for d in range(poly.n):
        layer = poly.faces(d)
        counts.append(len(layer))
        for f in layer:
            faces.append(
                {
                    "dim": f.dim,
                    "vertex_ids": list(f.vertex_ids),
                    "n_points": len(f.lattice_points()),
                    "n_interior": len(f.interior_lattice_points()),
                }
            )
    return {"counts": counts, "faces": faces}, poly, pair, EXIT_OK


def _cmd_points(args):
    poly = _load_polytope(args)
    pair = _pair_from(poly, args.dual)
    k = args.dilate
    if k < 1:
        raise CliError("--dilate must be a positive integer", EXIT_PARSE)
    pts = poly.lattice_points(k)
    if args.interior_only:
        pts = tuple(
            p
            for p in pts
            if all(
                sum(a * b for a, b in zip(p, f.normal)) + k * f.offset > 0
                for f in poly.facets
            )
        )
    payload = {
        "dilate": k,
        "interior_only": bool(args.interior_only),
        "count": len(pts),
        "points": [list(p) for p in pts],
    }
    return payload, poly, pair, EXIT_OK


def _cmd_sectors_toric(args):
    poly = _load_polytope(args)
    pair = _pair_from(poly, args.dual)
    sectors = toric_twisted_sectors(normal_fan(pair))
    return {"sectors": [_toric_sector_obj(s) for s in sectors]}, poly, pair, EXIT_OK


def _cmd_sectors_cy(args):
    poly = _load_polytope(args)
    pair = _pair_from(poly, args.dual)
    sectors = cy_twisted_sectors(pair, force=args.force)
    return (
        {"sectors": [_cy_sector_obj(pair, s) for s in sectors]},
        poly,
        pair,
        EXIT_OK,
    )


def _cmd_hodge(args):
    poly = _load_polytope(args)
    pair = _pair_from(poly, args.dual)
    rep = hodge_report(pair, force=args.force)
    payload = {
        "h11": rep.h11_untwisted,
        "h11_orb": rep.h11_orb,
        "h21": rep.hn21_untwisted,
        "h21_orb": rep.hn21_orb,
        "l_delta": rep.l_delta,
        "l_polar": rep.l_polar,
        "age1_components": rep.age1_components,
        "n_sectors_cy": len(rep.sectors),
        "euler": rep.euler,
        "diamond": [list(row) for row in rep.diamond] if rep.diamond else None,
        "forced": rep.forced,
    }
    return payload, poly, pair, EXIT_OK


def _cmd_mirror(args):
    poly = _load_polytope(args)
    pair = _pair_from(poly, args.dual)
    rep = mirror_check(pair, force=args.force)
    payload = {
        "hypothesis_met": rep.hypothesis_met,
        "reason": rep.reason,
        "primary": list(rep.primary) if rep.primary else None,
        "swapped": list(rep.swapped) if rep.swapped else None,
        "match": rep.match,
    }
    return payload, poly, pair, EXIT_OK


def _cmd_oracle_jacobian(args):
    poly = _load_polytope(args)
    pair = _pair_from(poly, args.dual)
    rep = jacobian_rank_check(pair, seed=args.seed, force=args.force)
    payload = {
        "seed": rep.seed,
        "seed_used": rep.seed_used,
        "attempts": rep.attempts,
        "rank": rep.rank,
        "gamma": rep.gamma,
        "l_delta": rep.l_delta,
        "quotient": rep.quotient,
        "formula": rep.formula,
        "agrees": rep.agrees,
        "generic": rep.generic,
    }
    return payload, poly, pair, EXIT_OK


def _cmd_wps(args):
    poly = wps_polytope(list(args.weights))
    pair = ReflexivePair.from_polar(poly)
    if args.format == "tsv" or args.format == "vertices":
        return format_vertex_matrix(poly.vertices), poly, pair, EXIT_OK
    payload = {"vertices": [list(v) for v in poly.vertices]}
    return payload, poly, pair, EXIT_OK


_COMMANDS = {
    "info": _cmd_info,
    "reflexive": _cmd_reflexive,
    "dual": _cmd_dual,
    "faces": _cmd_faces,
    "points": _cmd_points,
    "sectors-toric": _cmd_sectors_toric,
    "sectors-cy": _cmd_sectors_cy,
    "hodge": _cmd_hodge,
    "mirror": _cmd_mirror,
    "oracle-jacobian": _cmd_oracle_jacobian,
    "wps": _cmd_wps,
}


# -- output rendering --------------------------------------------------------------


def _render_json(payload, poly, pair) -> str:
    obj = {
        "tool_version": __version__,
        "input_hash": _input_hash(poly),
        "n": poly.n,
        "r": len(pair.delta_polar.vertices) if pair is not None else None,
    }
    obj.update(payload)
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _tsv_scalar(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "null"
    if isinstance(value, (list, tuple, dict)):
        return json.dumps(value, sort_keys=True)
    return str(value)


def _render_tsv(payload, poly, pair) -> str:
    rows = {
        "tool_version": __version__,
        "input_hash": _input_hash(poly),
        "n": poly.n,
        "r": len(pair.delta_polar.vertices) if pair is not None else None,
    }
    rows.update(payload)
    table_key = None
    for key in ("points", "faces", "sectors"):
        if key in rows and isinstance(rows[key], list):
            table_key = key
            break
    lines = []
    for key in sorted(rows):
        if key == table_key:
            continue
        lines.append(f"{key}\t{_tsv_scalar(rows[key])}")
    if table_key is not None:
        table = rows[table_key]
        if table and isinstance(table[0], dict):
            cols = sorted(table[0])
            lines.append("\t".join([table_key] + cols))
            for entry in table:
                lines.append(
                    "\t".join([table_key] + [_tsv_scalar(entry[c]) for c in cols])
                )
        else:
            for entry in table:
                lines.append("\t".join(str(x) for x in entry))
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="reflexorb",
        description="Twisted sectors and orbifold Hodge numbers of reflexive polytopes.",
    )
    parser.add_argument("--version", action="version", version=f"reflexorb {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text, *, seed=False, force=False, points=False):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("input", nargs="?", help="vertex matrix file")
        p.add_argument("--wps", help="comma-separated weights instead of a file")
        p.add_argument(
            "--dual",
            action="store_true",
            help="read the input as the dual-side polytope",
        )
        p.add_argument("--format", choices=("json", "tsv"), default="json")
        if seed:
            p.add_argument("--seed", type=int, default=0)
        if force:
            p.add_argument(
                "--force",
                action="store_true",
                help="compute even when the ambient dimension is below 4",
            )
        if points:
            p.add_argument("--interior-only", action="store_true")
            p.add_argument("--dilate", type=int, default=1)
        return p

    add("info", "structural summary")
    add("reflexive", "test reflexivity (exit 2 when false)")
    add("dual", "polar dual vertices (tsv output is a reusable vertex file)")
    add("faces", "face lattice with point counts")
    add("points", "lattice points of a dilate", points=True)
    add("sectors-toric", "twisted sectors of the ambient toric variety")
    add("sectors-cy", "twisted sectors of the anticanonical hypersurface", force=True)
    add("hodge", "orbifold Hodge numbers with audits", force=True)
    add("mirror", "compare against the vertex-swapped pair", force=True)
    add("oracle-jacobian", "independent rank check", seed=True, force=True)

    wps = sub.add_parser("wps", help="emit the fan-side polytope of weighted projective space")
    wps.add_argument("weights", nargs="+", type=int)
    wps.add_argument(
        "--format",
        choices=("json", "tsv", "vertices"),
        default="vertices",
        help="default is a reusable vertex matrix file",
    )
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        payload, poly, pair, code = _COMMANDS[args.command](args)
        if isinstance(payload, str):  # preformatted vertex matrix text
            sys.stdout.write(payload)
            return code
        fmt = getattr(args, "format", "json")
        if fmt == "tsv":
            sys.stdout.write(_render_tsv(payload, poly, pair))
        else:
            sys.stdout.write(_render_json(payload, poly, pair))
        return code
    except CliError as exc:
        print(f"reflexorb: {exc}", file=sys.stderr)
        return exc.code
    except VertexFileError as exc:
        print(f"reflexorb: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except NotFullDimensionalError as exc:
        print(f"reflexorb: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except NotReflexiveError as exc:
        print(f"reflexorb: {exc}", file=sys.stderr)
        return EXIT_NOT_REFLEXIVE
    except NotSimplicialError as exc:
        print(f"reflexorb: {exc}", file=sys.stderr)
        return EXIT_NOT_SIMPLICIAL
    except HypothesisError as exc:
        print(f"reflexorb: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS


if __name__ == "__main__":
    sys.exit(main())
