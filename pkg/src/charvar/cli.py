"""Command-line front end: subcommand routing and JSON/CSV report emission.

Exit codes: 0 success, 2 invalid input or usage, 3 internal consistency
failure (a diagnostic report is still emitted).  All sampling-based
computations draw from the single seeded generator selected by --seed, so
reruns with the same arguments are byte-identical; wall time is only
recorded under --timing for the same reason.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import __version__
from .arith import chain_bounds
from .bending import SplittingRep, bending_constancy
from .errors import ConsistencyError, InvalidInputError
from .mat2 import Mat2
from .polys import ROOT_CLUSTER_RADIUS
from .scalars import REL_TOL
from .triangle import euclidean_epi_search, hyperbolic_epi_scan
from .twobridge import (TwoBridgeKnot, alexander, build_presentation,
                        character_poly, cs_degree, dihedral_census,
                        normalized_knots)
from .words import Word


def _json_value(v):
    """Exact values as decimal strings, floats as shortest round-trip."""
    if isinstance(v, bool) or v is None:
        return v
    if isinstance(v, int):
        return v
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, float):
        return v
    if isinstance(v, complex):
        return {"re": v.real, "im": v.imag}
    if isinstance(v, (list, tuple)):
        return [_json_value(u) for u in v]
    if isinstance(v, dict):
        return {k: _json_value(u) for k, u in v.items()}
    return str(v)


def make_report(command: str, inputs: dict, results, args) -> dict:
    return {
        "command": command,
        "inputs": _json_value(inputs),
        "results": _json_value(results),
        "version": __version__,
        "wall_time_s": None,   # populated only under --timing (keeps runs byte-identical)
        "tolerances": {
            "rel": args.tol_rel,
            "root_cluster": args.tol_root_cluster,
        },
        "seed": args.seed,
    }


def emit(report: dict, args, out=None):
    out = out or sys.stdout
    if args.timing:
        report["wall_time_s"] = round(time.perf_counter() - args._t0, 6)
    if args.json:
        json.dump(report, out, indent=2)
        out.write("\n")
    else:
        _emit_text(report, out)


def _emit_text(report: dict, out):
    out.write(f"# {report['command']}\n")
    for k, v in report["inputs"].items():
        out.write(f"{k} = {v}\n")
    out.write(json.dumps(report["results"], indent=2))
    out.write("\n")


# ---------------------------------------------------------------------------
# subcommand handlers
# ---------------------------------------------------------------------------


def _knot_from_args(args) -> TwoBridgeKnot:
    if args.p is None or args.q is None:
        raise InvalidInputError("--p and --q are required")
    return TwoBridgeKnot(args.p, args.q)


def cmd_twobridge(args) -> dict:
    knot = _knot_from_args(args)
    sub = args.operation
    if sub == "info":
        pres = build_presentation(knot)
        results = {
            "p": knot.p, "q": knot.q,
            "class_rep": list(knot.schubert_class()),
            "torus_knot": knot.is_torus_knot,
            "hyperbolic": knot.is_hyperbolic,
            "relator_word": str(pres.w),
            "epsilon": list(pres.eps),
        }
    elif sub == "alexander":
        d = alexander(knot)
        results = {
            "terms": [[k, d.terms[k]] for k in sorted(d.terms)],
            "determinant": abs(d.eval(Fraction(-1))),
            "p": knot.p, "q": knot.q,
        }
    elif sub == "charpoly":
        curve = character_poly(knot)
        results = {
            "p": knot.p, "q": knot.q,
            "polynomial": curve.poly.to_json_obj(),
            "deg_z": curve.z_degree,
            "dihedral_count": len(dihedral_census(knot)),
            "torus_knot": knot.is_torus_knot,
            "square_free": curve.square_free,
            "provenance": curve.provenance,
        }
    elif sub == "dihedral":
        roots = dihedral_census(knot)
        results = {
            "p": knot.p, "q": knot.q,
            "count": len(roots),
            "z_values": roots,
            "expected": knot.meridian_degree_target(),
        }
    elif sub == "csdegree":
        w = Word.from_string(args.word)
        deg = cs_degree(knot, w, seed=args.seed)
        results = {"p": knot.p, "q": knot.q, "word": str(w), "degree": deg}
    else:
        raise InvalidInputError(f"unknown twobridge operation {sub!r}")
    return make_report(f"twobridge {sub}", {"p": knot.p, "q": knot.q}, results, args)


def cmd_twist(args) -> dict:
    n_values = [n for n in range(args.n_min, args.n_max + 1) if n != 0]
    if not n_values:
        raise InvalidInputError("empty n range")
    if args.hyperbolic:
        reports = hyperbolic_epi_scan(n_values, max_order=args.max_order)
        sat = [r for r in reports if r.satisfied]
        results = {
            "mode": "hyperbolic",
            "n_range": [args.n_min, args.n_max],
            "max_order": args.max_order,
            "checked": len(reports),
            "satisfied": [
                {"n": r.n, "scenario": r.scenario, "pqr": list(r.pqr),
                 "s": r.s, "residual": r.residual} for r in sat
            ],
            "solutions": sorted({r.n for r in sat}),
        }
    else:
        hits = euclidean_epi_search(n_values)
        results = {
            "mode": "euclidean",
            "n_range": [args.n_min, args.n_max],
            "solutions": sorted(hits),
        }
    return make_report("twist epi-search",
                       {"n_min": args.n_min, "n_max": args.n_max}, results, args)


def _parse_entry(v):
    if isinstance(v, str):
        return Fraction(v)
    if isinstance(v, (int, float)):
        return v
    if isinstance(v, list) and len(v) == 2:
        return complex(float(v[0]), float(v[1]))
    raise InvalidInputError(f"cannot parse matrix entry {v!r}")


def _parse_matrix(rows) -> Mat2:
    (a, b), (c, d) = rows
    return Mat2(_parse_entry(a), _parse_entry(b), _parse_entry(c), _parse_entry(d))


def rep_from_json(obj: dict) -> SplittingRep:
    variant = obj.get("variant")
    gens1 = tuple(_parse_matrix(m) for m in obj.get("gens1", []))
    edge1 = tuple(Word.from_string(w) for w in obj.get("edge1", []))
    edge2 = tuple(Word.from_string(w) for w in obj.get("edge2", []))
    if variant == "amalgam":
        gens2 = tuple(_parse_matrix(m) for m in obj.get("gens2", []))
        return SplittingRep("amalgam", gens1, gens2,
                            edge_words_1=edge1, edge_words_2=edge2)
    if variant == "hnn":
        stable = _parse_matrix(obj["stable"])
        return SplittingRep("hnn", gens1, stable=stable,
                            edge_words_1=edge1, edge_words_2=edge2)
    raise InvalidInputError(f"unknown splitting variant {variant!r}")


def cmd_bend(args) -> dict:
    with open(args.input, "r", encoding="utf-8") as fh:
        obj = json.load(fh)
    rep = rep_from_json(obj)
    verdict = bending_constancy(rep, seed=args.seed)
    results = {
        "constant": verdict.constant,
        "case": verdict.case,
        "witness_word": str(verdict.witness_word) if verdict.witness_word else None,
        "witness_gap": verdict.witness_gap,
    }
    return make_report("bend check", {"input": args.input}, results, args)


def cmd_bounds(args) -> dict:
    knot = _knot_from_args(args)
    rep = chain_bounds(knot)
    results = {
        "p": rep.p, "q": rep.q,
        "class_rep": list(rep.class_rep),
        "strict_epi_bound": rep.strict_epi_bound,
        "strict": rep.strict_epi_bound_is_strict,
        "dom_bound": rep.dom_bound,
        "dom_bound_chain_reading": rep.dom_bound_chain_reading,
        "deg1_bound": rep.deg1_bound,
        "minimality": rep.minimality,
        "prime_power_degree_one_rigid": rep.prime_power_degree_one_rigid,
    }
    return make_report("bounds", {"p": knot.p, "q": knot.q}, results, args)


SWEEP_CAP = 30


def _sweep_rows(p_max: int, command: str, seed: int):
    seen = set()
    for knot in normalized_knots(p_max):
        rep = knot.schubert_class()
        if rep in seen:
            continue
        seen.add(rep)
        row = {"p": knot.p, "q": rep[1], "failure": ""}
        try:
            if command == "dihedral":
                row["count"] = len(dihedral_census(TwoBridgeKnot(*rep)))
            elif command == "alexander":
                row["determinant"] = abs(alexander(TwoBridgeKnot(*rep)).eval(Fraction(-1)))
            elif command == "charpoly":
                row["deg_z"] = character_poly(TwoBridgeKnot(*rep)).z_degree
            elif command == "csdegree":
                row["degree"] = cs_degree(TwoBridgeKnot(*rep), Word.from_string("a"),
                                          seed=seed)
            elif command == "bounds":
                row["dom_bound"] = chain_bounds(TwoBridgeKnot(*rep)).dom_bound
            else:
                raise InvalidInputError(f"unknown sweep command {command!r}")
        except ConsistencyError as exc:   # per-knot failures do not abort the sweep
            row["failure"] = str(exc).splitlines()[0]
        yield row


def cmd_sweep(args) -> tuple[str, list[dict]]:
    if args.p_max > SWEEP_CAP:
        raise InvalidInputError(f"--p-max exceeds the cap of {SWEEP_CAP}")
    rows = list(_sweep_rows(args.p_max, args.command, args.seed))
    return args.command, rows


def _emit_csv(rows: list[dict], out):
    if not rows:
        out.write("\n")
        return
    keys = [k for k in rows[0] if k != "failure"] + ["failure"]
    out.write(",".join(keys) + "\n")
    for row in rows:
        out.write(",".join(str(row.get(k, "")) for k in keys) + "\n")


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="charvar",
        description="character-variety computations for two-generator knot groups")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p):
        p.add_argument("--json", action="store_true", help="emit a JSON report")
        p.add_argument("--csv", action="store_true", help="emit CSV (sweep only)")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--tol-rel", type=float, default=REL_TOL)
        p.add_argument("--tol-root-cluster", type=float, default=ROOT_CLUSTER_RADIUS)
        p.add_argument("--timing", action="store_true",
                       help="record wall time in the report (breaks byte-determinism)")

    p2b = sub.add_parser("twobridge", help="two-bridge knot computations")
    p2b.add_argument("operation",
                     choices=["info", "alexander", "charpoly", "dihedral", "csdegree"])
    p2b.add_argument("--p", type=int)
    p2b.add_argument("--q", type=int)
    p2b.add_argument("--word", type=str, default="a",
                     help="word for csdegree, letters a/A/b/B")
    common(p2b)
    p2b.set_defaults(handler=cmd_twobridge)

    ptw = sub.add_parser("twist", help="twist-knot epimorphism searches")
    ptw.add_argument("operation", choices=["epi-search"])
    ptw.add_argument("--n-min", type=int, required=True)
    ptw.add_argument("--n-max", type=int, required=True)
    group = ptw.add_mutually_exclusive_group()
    group.add_argument("--euclidean", action="store_true", default=True)
    group.add_argument("--hyperbolic", action="store_true", default=False)
    ptw.add_argument("--max-order", type=int, default=12)
    common(ptw)
    ptw.set_defaults(handler=cmd_twist)

    pbe = sub.add_parser("bend", help="bending constancy checks")
    pbe.add_argument("operation", choices=["check"])
    pbe.add_argument("--input", required=True, help="path to a SplittingRep JSON file")
    common(pbe)
    pbe.set_defaults(handler=cmd_bend)

    pbo = sub.add_parser("bounds", help="domination-chain bounds")
    pbo.add_argument("--p", type=int, required=True)
    pbo.add_argument("--q", type=int, required=True)
    common(pbo)
    pbo.set_defaults(handler=cmd_bounds)

    psw = sub.add_parser("sweep", help="batch run over all normalized (p, q)")
    psw.add_argument("command",
                     choices=["dihedral", "alexander", "charpoly", "csdegree", "bounds"])
    psw.add_argument("--p-max", type=int, default=9)
    common(psw)
    psw.set_defaults(handler=cmd_sweep)

    return parser


def run(argv: list[str], out=None) -> int:
    """Entry point suited to tests: returns the exit code, writes to ``out``."""
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    args._t0 = time.perf_counter()
    try:
        result = args.handler(args)
        if args.subcommand == "sweep":
            command, rows = result
            if args.csv or not args.json:
                _emit_csv(rows, out)
            else:
                emit(make_report(f"sweep {command}",
                                 {"p_max": args.p_max, "command": command},
                                 {"rows": rows}, args), args, out)
        else:
            emit(result, args, out)
        return 0
    except (InvalidInputError, FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ConsistencyError as exc:
        diag = make_report("internal-consistency-failure",
                           {"argv": argv}, {"error": str(exc)}, args)
        emit(diag, args, out)
        return 3


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
