"""Command-line front end.

Exit codes: 0 pass or feasible, 1 fail or infeasible, 2 usage or I/O error.
Results go to stdout, diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from typing import Optional, Sequence

import numpy as np

from . import cost_engine, fusion_data, graph_model, ktheory, morphism_checker, presentation

DEFAULT_TOLERANCE = 1e-9
TOL_ENV = "QHS_TOLERANCE"


class UsageError(Exception):
    pass


def _float_arg(text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")


def _plain(obj):
    """Convert to JSON-ready values, floats rounded to 12 significant digits."""
    if isinstance(obj, dict):
        return {str(k) if not isinstance(k, tuple) else ",".join(map(str, k)): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [_plain(obj.real), _plain(obj.imag)]
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        x = float(f"{x:.12g}")
        return 0.0 if x == 0 else x
    if isinstance(obj, frozenset):
        return sorted(_plain(v) for v in obj)
    return obj


def emit_report(result, fmt: str = "json") -> str:
    """Serialize a result deterministically in the requested format."""
    if fmt == "json":
        data = result.to_dict() if hasattr(result, "to_dict") else result
        return json.dumps(_plain(data), sort_keys=True, ensure_ascii=False)
    if fmt == "dot":
        if isinstance(result, tuple) and isinstance(result[0], graph_model.OrientedGraph):
            return graph_model.to_dot(*result).rstrip("\n")
        if isinstance(result, graph_model.OrientedGraph):
            return graph_model.to_dot(result).rstrip("\n")
        raise UsageError("dot output is only available for graphs")
    if fmt == "text":
        if isinstance(result, tuple) and len(result) == 2 and all(isinstance(r, ktheory.AbelianGroup) for r in result):
            return ktheory.format_k_groups(*result)
        if isinstance(result, str):
            return result
        data = result.to_dict() if hasattr(result, "to_dict") else result
        if isinstance(data, dict):
            return "\n".join(f"{k}: {json.dumps(_plain(v), sort_keys=True, ensure_ascii=False)}"
                             for k, v in sorted(data.items()))
        return str(data)
    raise UsageError(f"unsupported format {fmt!r}")


def resolve_tolerance(flag: Optional[float]) -> float:
    """Flag, then QHS_TOLERANCE, then the built-in default."""
    if flag is not None:
        tol = flag
    elif os.environ.get(TOL_ENV):
        try:
            tol = float(os.environ[TOL_ENV])
        except ValueError:
            raise UsageError(f"{TOL_ENV} is not a number: {os.environ[TOL_ENV]!r}")
    else:
        tol = DEFAULT_TOLERANCE
    if not tol > 0 or not math.isfinite(tol):
        raise UsageError("tolerance must be positive")
    return tol


def _catalog_params(args) -> dict:
    p = {}
    for key in ("q", "x", "n", "window", "loops"):
        val = getattr(args, key, None)
        if val is not None:
            p[key] = val
    return p


def _deformation(args, doc_q=None, doc_T=None, fallback=None) -> graph_model.DeformationParameter:
    if args.q is not None and args.T is not None:
        raise UsageError("give only one of --q and --T")
    try:
        if args.q is not None:
            return graph_model.DeformationParameter(args.q)
        if args.T is not None:
            return graph_model.DeformationParameter.from_T(args.T)
        if doc_q is not None:
            return graph_model.DeformationParameter(doc_q)
        if doc_T is not None:
            return graph_model.DeformationParameter.from_T(doc_T)
    except ValueError as exc:
        raise UsageError(str(exc))
    if fallback is not None:
        return fallback
    raise UsageError("a deformation parameter is required (--q or --T)")


def load_input(args, need_cost: bool = True):
    """(graph, cost or None, DeformationParameter or None) from --catalog or --file."""
    if bool(args.catalog) == bool(args.file):
        raise UsageError("exactly one of --catalog and --file is required")
    if args.catalog:
        if not need_cost:
            # shape only, so any q may be paired with it
            params = {k: v for k, v in _catalog_params(args).items() if k not in ("q", "x")}
            try:
                g = graph_model.catalog_shape(args.catalog, **params)
            except ValueError as exc:
                raise UsageError(str(exc))
            dp = _deformation(args) if args.q is not None or args.T is not None else None
            return g, None, dp
        try:
            g, w, dp = graph_model.catalog(args.catalog, **_catalog_params(args))
        except ValueError as exc:
            raise UsageError(str(exc))
        if args.T is not None:
            dp = _deformation(args)
        return g, w, dp
    try:
        with open(args.file, encoding="utf-8") as fh:
            doc = graph_model.load_document(fh.read())
    except OSError as exc:
        raise UsageError(f"cannot read {args.file}: {exc}")
    except ValueError as exc:
        raise UsageError(f"{args.file}: {exc}")
    if need_cost and doc["cost"] is None:
        raise UsageError(f"{args.file}: the graph carries no weights")
    try:
        dp = _deformation(args, doc["q"], doc["T"])
    except UsageError:
        dp = None
    return doc["graph"], doc["cost"], dp


def _require_dp(dp):
    if dp is None:
        raise UsageError("a deformation parameter is required (--q or --T)")
    return dp


# ---------------------------------------------------------------- commands


def cmd_verify(args, tol):
    g, w, dp = load_input(args)
    rep = cost_engine.verify_fair_balanced(g, w, _require_dp(dp), tol)
    return rep, rep.passed


def cmd_solve_cost(args, tol):
    g, _, dp = load_input(args, need_cost=False)
    res = cost_engine.solve_cost(g, _require_dp(dp), max_solutions=args.max_solutions)
    if args.format == "text":
        return res.status, res.feasible
    return res, res.feasible


def cmd_norm(args, tol):
    g, _, dp = load_input(args, need_cost=False)
    out = {"norm": cost_engine.graph_norm(g, tol)}
    if args.T is not None or args.q is not None:
        pc = cost_engine.perron_cost(g, _require_dp(dp).T, tol)
        out["perron_cost"] = pc
    return out, True


def cmd_classify(args, tol):
    g, _, _ = load_input(args, need_cost=False)
    out = {"ade": cost_engine.classify_ade(g)}
    try:
        out["coideal_type"] = cost_engine.is_coideal_type(g, tol)
    except ValueError as exc:
        out["coideal_type"] = None
        print(f"coideal type undecided: {exc}", file=sys.stderr)
    return out, True


def cmd_nstep(args, tol):
    g, w, dp = load_input(args)
    dp = _require_dp(dp)
    try:
        g2, w2, T2 = graph_model.n_step(g, w, args.steps, dp.T)
    except ValueError as exc:
        raise UsageError(str(exc))
    if args.format == "dot":
        return (g2, w2), True
    rep = cost_engine.verify_fair_balanced(g2, w2, graph_model.DeformationParameter.from_T(T2), tol)
    doc = graph_model.graph_to_dict(g2, w2, T=T2)
    doc["fairness"] = rep.to_dict()
    return doc, rep.passed


def _is_solution_file(path: str) -> bool:
    """Solution documents carry "blocks"; graph documents carry "edges"."""
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read {path}: {exc}")
    return isinstance(doc, dict) and "blocks" in doc


def cmd_solution(args, tol):
    if args.action == "verify" and args.file and _is_solution_file(args.file):
        try:
            with open(args.file, encoding="utf-8") as fh:
                s = fusion_data.FundamentalSolution.from_dict(json.load(fh))
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise UsageError(f"cannot load solution from {args.file}: {exc}")
        dp = _deformation(args)
        rep = fusion_data.verify_solution(s, dp, tol)
        return rep, rep.passed
    g, w, dp = load_input(args)
    dp = _require_dp(dp)
    try:
        s = fusion_data.build_solution(g, w, dp, tol)
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return {"verdict": "fail", "reason": str(exc)}, False
    if args.action == "build":
        return s, True
    rep = fusion_data.verify_solution(s, dp, tol, g.boundary)
    if args.action == "verify":
        return rep, rep.passed
    g2, w2 = fusion_data.solution_to_graph(s, dp, tol, g.boundary)
    phi = graph_model.find_isomorphism(g, w, g2, w2, tol=1e-8)
    return {"isomorphic": phi is not None, "vertex_map": phi, "verify": rep.to_dict()}, phi is not None


def cmd_presentation(args, tol):
    g, w, dp = load_input(args)
    dp = _require_dp(dp)
    try:
        s = fusion_data.build_solution(g, w, dp, tol)
        pres = presentation.emit_presentation(s, dp, tol, g.boundary)
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return {"verdict": "fail", "reason": str(exc)}, False
    return pres, True


def cmd_morphism(args, tol):
    if args.action == "example":
        if not args.name:
            raise UsageError(f"--name is required; one of {', '.join(morphism_checker.EXAMPLE_NAMES)}")
        params = {}
        if args.name in ("podles_into_suq2", "rp2_into_podles0", "ainf_prime_coideal"):
            if args.q is not None:
                params["q"] = args.q
            if args.window is not None:
                params["window"] = args.window
        if args.name == "podles_into_suq2":
            if args.x is not None:
                params["x"] = args.x
            if args.lam is not None:
                params["lam"] = complex(math.cos(args.lam), math.sin(args.lam))
        if args.name.startswith("d3prime") and args.beta is not None:
            params["beta"] = complex(math.cos(args.beta), math.sin(args.beta))
        try:
            m = morphism_checker.example_embedding(args.name, **params)
        except ValueError as exc:
            raise UsageError(str(exc))
    else:
        if not args.file:
            raise UsageError("morphism verify needs --file")
        try:
            with open(args.file, encoding="utf-8") as fh:
                m = morphism_checker.MorphismData.from_dict(json.load(fh))
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise UsageError(f"cannot load morphism data from {args.file}: {exc}")
    try:
        rep = morphism_checker.verify_psi(m, tol=tol)
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return {"verdict": "fail", "reason": str(exc)}, False
    if args.action == "example":
        return {"data": m.to_dict(), "report": rep.to_dict()}, rep.passed
    return rep, rep.passed


def cmd_ktheory(args, tol):
    g, _, _ = load_input(args, need_cost=False)
    try:
        k0, k1 = ktheory.k_groups(g)
    except ValueError as exc:
        raise UsageError(str(exc))
    if args.format == "text":
        return (k0, k1), True
    return {"K0": k0.to_dict(), "K1": k1.to_dict()}, True


def cmd_catalog(args, tol):
    if args.action == "list":
        if args.format == "text":
            return "\n".join(graph_model.CATALOG_NAMES), True
        return {"names": list(graph_model.CATALOG_NAMES)}, True
    if not args.catalog:
        raise UsageError("catalog emit needs --catalog NAME")
    g, w, dp = load_input(args)
    if args.format == "dot":
        return (g, w), True
    return graph_model.graph_to_dict(g, w, q=dp.q), True


COMMANDS = {
    "verify": cmd_verify,
    "solve-cost": cmd_solve_cost,
    "norm": cmd_norm,
    "classify": cmd_classify,
    "nstep": cmd_nstep,
    "solution": cmd_solution,
    "presentation": cmd_presentation,
    "morphism": cmd_morphism,
    "ktheory": cmd_ktheory,
    "catalog": cmd_catalog,
}

ACTIONS = {
    "solution": ("build", "verify", "roundtrip"),
    "morphism": ("verify", "example"),
    "catalog": ("list", "emit"),
}


def _x_arg(text: str) -> float:
    if text.strip().lower() in ("inf", "infinity", "∞"):
        return math.inf
    return _float_arg(text)


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--catalog", metavar="NAME")
    p.add_argument("--file", metavar="PATH")
    p.add_argument("--q", type=_float_arg)
    p.add_argument("--T", type=_float_arg)
    p.add_argument("--x", type=_x_arg)
    p.add_argument("--n", "--size", dest="n", type=int, help="size parameter of a catalog family")
    p.add_argument("--window", type=int)
    p.add_argument("--loops", type=int)
    p.add_argument("--tol", type=_float_arg)
    p.add_argument("--format", choices=("json", "dot", "text"), default="json")
    p.add_argument("--max-solutions", dest="max_solutions", type=int, default=4)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qhs", description="Graphs, costs and fundamental solutions for SU_q(2) homogeneous spaces.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    for name in COMMANDS:
        p = sub.add_parser(name)
        if name in ACTIONS:
            p.add_argument("action", choices=ACTIONS[name])
        _add_common(p)
        if name == "nstep":
            p.add_argument("--steps", type=int, default=2, help="path length n")
        if name == "morphism":
            p.add_argument("--name", help="example embedding name")
            p.add_argument("--lam", type=_float_arg, help="phase angle of lambda")
            p.add_argument("--beta", type=_float_arg, help="phase angle of beta")
    return parser


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    old_err = sys.stderr
    sys.stderr = stderr
    try:
        try:
            args = parser.parse_args(list(argv) if argv is not None else None)
        except SystemExit as exc:
            return 0 if exc.code == 0 else 2
        if not args.command:
            parser.print_usage(stderr)
            return 2
        tol = resolve_tolerance(args.tol)
        result, ok = COMMANDS[args.command](args, tol)
        print(emit_report(result, args.format), file=stdout)
        return 0 if ok else 1
    except UsageError as exc:
        print(f"error: {exc}", file=stderr)
        return 2
    finally:
        sys.stderr = old_err


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
