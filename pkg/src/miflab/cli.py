"""Command-line interface.

Exit codes: 0 success or positive verdict, 1 negative mathematical
verdict (not maximal, covered pair, invalid set-pair system), 2 usage or
input error, 3 node-budget exhaustion.  The MIFLAB_BUDGET environment
variable overrides the default node budget of the search commands.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import bounds as bounds_mod
from .errors import (BudgetExceededError, CoveredPairError, InvalidIspError,
                     MiflabError, NotMifError, VerificationError)
from .family import DEFAULT_MAX_UNIVERSE, Family
from .constructions import bg_family, complete_family, projective_plane
from .isp import SetPairSystem, bollobas_sum, extract_isp, validate_isp
from .mif import chromatic_class, collapse, is_mif, merge
from .search import enumerate_mifs, search_isp
from .transversal import INFINITE_TAU, tau_with_nodes, transversal_family
from .verify import build_report, render_json, render_text

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
DEFAULT_SEARCH_BUDGET = 10 ** 9


def _emit(text: str, out_path: str | None) -> None:
    if out_path and out_path != "-":
        Path(out_path).write_text(text)
    else:
        sys.stdout.write(text)


def _read_source(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _load_family(path: str, max_universe: int) -> Family:
    text = _read_source(path)
    if text.lstrip().startswith("{"):
        return Family.from_json(text, max_universe=max_universe)
    return Family.from_text(text, max_universe=max_universe)


def _load_isp(path: str) -> SetPairSystem:
    return SetPairSystem.from_json(_read_source(path))


def _tau_json_value(t):
    return "infinity" if t == INFINITE_TAU else t


def _default_budget(args) -> int | None:
    if args.budget is not None:
        return args.budget
    env = os.environ.get("MIFLAB_BUDGET")
    if env is not None:
        return int(env)
    return DEFAULT_SEARCH_BUDGET


# -- command handlers -----------------------------------------------------

def cmd_gen(args) -> int:
    if args.construction == "bg":
        if args.k is None or args.t is None:
            raise MiflabError("gen bg needs --k and --t")
        fam = bg_family(args.k, args.t, max_universe=args.max_universe).family
    elif args.construction == "plane":
        if args.q is None:
            raise MiflabError("gen plane needs --q")
        fam = projective_plane(args.q)
    else:
        if args.k is None:
            raise MiflabError("gen complete needs --k")
        fam = complete_family(args.k, max_universe=args.max_universe)
    text = fam.to_json() + "\n" if args.format == "json" else fam.to_text()
    _emit(text, args.out)
    return EXIT_OK


def cmd_tau(args) -> int:
    fam = _load_family(args.family, args.max_universe)
    t, nodes = tau_with_nodes(fam)
    if args.format == "json":
        print(json.dumps({"tau": _tau_json_value(t), "nodes": nodes},
                         separators=(",", ":")))
    else:
        print(f"tau {_tau_json_value(t)}")
    return EXIT_OK


def cmd_transversals(args) -> int:
    fam = _load_family(args.family, args.max_universe)
    report = transversal_family(fam)
    if args.format == "json":
        obj = {"tau": _tau_json_value(report.tau),
               "transversals": [list(b) for b in report.transversals.blocks],
               "nodes": report.nodes}
        print(json.dumps(obj, separators=(",", ":")))
    else:
        print(f"tau {report.tau}")
        sys.stdout.write(report.transversals.to_text())
        print(f"nodes {report.nodes}")
    return EXIT_OK


def cmd_check_mif(args) -> int:
    fam = _load_family(args.family, args.max_universe)
    cert = is_mif(fam)
    if args.format == "json":
        obj = {"ok": cert.ok, "k": cert.k, "tau": _tau_json_value(cert.tau),
               "transversal_match": cert.transversal_match, "reason": cert.reason}
        print(json.dumps(obj, separators=(",", ":")))
    elif cert.ok:
        print(f"maximal intersecting family, k={cert.k}")
    else:
        print(f"not maximal: {cert.reason}")
    return EXIT_OK if cert.ok else EXIT_NEGATIVE


def cmd_merge(args) -> int:
    fam = _load_family(args.family, args.max_universe)
    result = merge(fam, args.alpha, args.beta)
    text = result.to_json() + "\n" if args.format == "json" else result.to_text()
    _emit(text, args.out)
    return EXIT_OK


def cmd_collapse(args) -> int:
    fam = _load_family(args.family, args.max_universe)
    trace = collapse(fam, args.alpha)
    if args.format == "json":
        print(trace.to_json())
    else:
        print(f"alpha {trace.alpha}")
        print(f"betas {' '.join(map(str, trace.betas))}")
        print(f"steps {trace.n_steps}")
        print(f"g_top_points {trace.g_top_points}")
        print(f"isp_pairs {len(trace.isp.pairs)}")
    return EXIT_OK


def cmd_chromatic(args) -> int:
    fam = _load_family(args.family, args.max_universe)
    value = chromatic_class(fam)
    if args.format == "json":
        print(json.dumps({"chromatic_class": value}, separators=(",", ":")))
    else:
        print(f"chromatic {value}")
    return EXIT_OK


def cmd_isp_validate(args) -> int:
    system = _load_isp(args.isp)
    verdict = validate_isp(system)
    total: Fraction | None = bollobas_sum(system) if verdict.ok else None
    if args.format == "json":
        obj = {"ok": verdict.ok, "n_pairs": verdict.n_pairs,
               "points": verdict.point_count,
               "violation": list(verdict.violation) if verdict.violation else None,
               "message": verdict.message,
               "bollobas_sum": str(total) if total is not None else None}
        print(json.dumps(obj, separators=(",", ":")))
    elif verdict.ok:
        print(f"valid: {verdict.n_pairs} pairs, {verdict.point_count} points, "
              f"sum {total}")
    else:
        print(f"invalid: {verdict.message}")
    return EXIT_OK if verdict.ok else EXIT_NEGATIVE


def cmd_isp_extract(args) -> int:
    fam = _load_family(args.family, args.max_universe)
    system = extract_isp(fam)
    _emit(system.to_json() + "\n", args.out)
    return EXIT_OK


def _bounds_text(args) -> str:
    table = bounds_mod.eval_bounds(args.k)
    rows = [("el_lower", table.el_lower),
            ("tuza_Nk_upper", table.tuza_nk_upper),
            ("improved_upper", table.improved_upper),
            ("half_central_binomial", table.half_central_binomial),
            ("conjectured_N", table.conjectured_N),
            ("main_upper", table.main_upper_expr)]
    lines = [f"k = {table.k}"]
    lines += [f"  {name:<24} {value}" for name, value in rows]
    if args.t is not None:
        k, t = args.k, args.t
        lines.append(f"t = {t}")
        lines.append(f"  {'bollobas_pair_bound':<24} {bounds_mod.bollobas_pair_bound(k, t)}")
        if k >= t >= 1:
            lines.append(f"  {'tuza_nkt_upper':<24} {bounds_mod.tuza_nkt_upper(k, t)}")
        if k >= t + 2:
            lines.append(f"  {'tuza_conjecture':<24} {bounds_mod.tuza_conjecture_value(k, t)}")
        known = bounds_mod.TUZA_NKT_BOUNDARY_CASES.get((k, t))
        if known is not None:
            lines.append(f"  note: an explicit system with {known} points exists at "
                         f"({k},{t}); the simplified sum is below it at this boundary")
    return "\n".join(lines) + "\n"


def cmd_bounds(args) -> int:
    if args.json or args.format == "json":
        table = bounds_mod.eval_bounds(args.k)
        obj = table.to_json_obj()
        if args.t is not None:
            k, t = args.k, args.t
            sub: dict = {"t": t, "bollobas_pair_bound": bounds_mod.bollobas_pair_bound(k, t)}
            if k >= t >= 1:
                sub["tuza_nkt_upper"] = bounds_mod.tuza_nkt_upper(k, t)
            if k >= t + 2:
                sub["tuza_conjecture"] = bounds_mod.tuza_conjecture_value(k, t)
            known = bounds_mod.TUZA_NKT_BOUNDARY_CASES.get((k, t))
            if known is not None:
                sub["boundary_witness_points"] = known
            obj["t_section"] = sub
        print(json.dumps(obj, separators=(",", ":")))
    else:
        sys.stdout.write(_bounds_text(args))
    return EXIT_OK


def cmd_search(args) -> int:
    budget = _default_budget(args)
    if args.what == "mif":
        p_max = args.max_points
        if p_max is None:
            p_max = bounds_mod.improved_upper(args.k)
            if p_max < bounds_mod.el_lower(args.k):
                p_max = bounds_mod.tuza_nk_upper(args.k)
        result = enumerate_mifs(args.k, p_max, budget=budget,
                                checkpoint_path=args.checkpoint,
                                resume_path=args.resume, workers=args.workers)
        if args.format == "json":
            print(result.to_json())
        else:
            print(f"k {result.k}")
            print(f"universe_bound {result.universe_bound}")
            print(f"classes {len(result.families)}")
            print(f"max_points {result.max_points}")
            for v, c in sorted(result.counts_by_point_count.items()):
                print(f"  on {v} points: {c}")
            print(f"nodes {result.nodes}")
    else:
        if args.t is None:
            raise MiflabError("search isp needs --t")
        result = search_isp(args.k, args.t, budget=budget)
        if args.format == "json":
            print(result.to_json())
        else:
            print(f"n({result.k},{result.t}) {result.max_points}")
            print(f"witness_pairs {len(result.witness.pairs)}")
            print(f"nodes {result.nodes}")
    return EXIT_OK


def cmd_verify_paper(args) -> int:
    report = build_report(skip=tuple(args.skip), workers=args.workers,
                          fixtures_dir=args.fixtures)
    if args.format == "json":
        print(render_json(report))
    else:
        sys.stdout.write(render_text(report))
    return EXIT_OK if report.all_pass else EXIT_NEGATIVE


# -- parser ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="miflab",
        description="Exact computations on maximal intersecting families of k-sets")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, family_arg=True, out=False, default_format="text"):
        if family_arg:
            p.add_argument("family", help="family file (JSON or 'b ...' text), or - for stdin")
        p.add_argument("--format", choices=("text", "json"), default=default_format,
                       help="output format (default %(default)s)")
        p.add_argument("--max-universe", type=int, default=DEFAULT_MAX_UNIVERSE,
                       help="largest accepted universe size (default %(default)s)")
        if out:
            p.add_argument("-o", "--out", default=None, help="output file (default stdout)")

    p = sub.add_parser("gen", help="generate a named family")
    p.add_argument("--construction", choices=("bg", "plane", "complete"), required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--q", type=int)
    common(p, family_arg=False, out=True, default_format="json")
    p.set_defaults(handler=cmd_gen)

    p = sub.add_parser("tau", help="minimum blocking-set size")
    common(p, default_format="json")
    p.set_defaults(handler=cmd_tau)

    p = sub.add_parser("transversals", help="all minimum blocking sets")
    common(p, default_format="json")
    p.set_defaults(handler=cmd_transversals)

    p = sub.add_parser("check-mif", help="verify maximality (family equals its transversals)")
    common(p)
    p.set_defaults(handler=cmd_check_mif)

    p = sub.add_parser("merge", help="merge away one point of an uncovered pair")
    common(p, out=True, default_format="json")
    p.add_argument("--alpha", type=int, required=True)
    p.add_argument("--beta", type=int, required=True)
    p.set_defaults(handler=cmd_merge)

    p = sub.add_parser("collapse", help="merge points toward alpha and certify the chain")
    common(p, default_format="json")
    p.add_argument("--alpha", type=int, required=True)
    p.set_defaults(handler=cmd_collapse)

    p = sub.add_parser("chromatic", help="2- or 3-chromatic classification")
    common(p)
    p.set_defaults(handler=cmd_chromatic)

    p = sub.add_parser("isp-validate", help="validate a set-pair system")
    p.add_argument("isp", help="set-pair system JSON file, or - for stdin")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(handler=cmd_isp_validate)

    p = sub.add_parser("isp-extract", help="extract a set-pair system from a family")
    common(p, out=True, default_format="json")
    p.set_defaults(handler=cmd_isp_extract)

    p = sub.add_parser("bounds", help="exact bound and conjecture values")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--t", type=int)
    p.add_argument("--json", action="store_true", help="emit the table as JSON")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(handler=cmd_bounds)

    p = sub.add_parser("search", help="exhaustive searches")
    p.add_argument("what", choices=("mif", "isp"))
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--t", type=int)
    p.add_argument("--max-points", type=int, default=None,
                   help="point cap for the family search (default: proven bound)")
    p.add_argument("--budget", type=int, default=None,
                   help="node budget (default MIFLAB_BUDGET or 10^9)")
    p.add_argument("--checkpoint", default=None, help="checkpoint file to write")
    p.add_argument("--resume", default=None, help="checkpoint file to resume from")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--format", choices=("text", "json"), default="json")
    p.set_defaults(handler=cmd_search)

    p = sub.add_parser("verify-paper", help="run the acceptance suite")
    p.add_argument("--skip", action="append", default=[], choices=("search",),
                   help="skip a criterion group (repeatable)")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--fixtures", default=None, help="fixtures directory override")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(handler=cmd_verify_paper)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except BudgetExceededError as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (NotMifError, CoveredPairError, InvalidIspError) as exc:
        print(f"negative: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    except VerificationError:
        raise  # internal cross-check failure: crash with the traceback
    except MiflabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
