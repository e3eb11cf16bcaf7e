"""Command line entry point.

Exit codes for the search commands (find, rainbow, permute, verify):
0 found / valid, 1 none / invalid, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .apfamily import DifferenceFamily, Progression
from .extremal import (
    SearchBudget,
    exists_coloring_without_rainbow,
    exists_permutation_without_free_ap,
    is_free,
    n0_probe,
    sr_exact,
    tk_probe,
)
from .finder import (
    FinderConfig,
    certified_edge_budget,
    empirical_probe,
    find_independent_ap,
    find_rainbow_ap,
    find_unmapped_ap,
    n0_upper_bound,
    regime_family,
    scan_order,
    sr_upper_bound,
    tk_upper_bound,
)
from .graphcore import (
    FixedPointMode,
    InputError,
    direct_independent,
    from_coloring,
    from_permutation,
    read_coloring,
    read_edge_list,
    read_permutation,
)
from .sieve import build_sieve

EXIT_FOUND, EXIT_NONE, EXIT_ERROR = 0, 1, 2


def _config(args) -> FinderConfig:
    kw = {}
    if args.eta is not None:
        kw["eta"] = args.eta
    if args.epsilon is not None:
        kw["epsilon"] = args.epsilon
    return FinderConfig(**kw)


def _budget(args) -> SearchBudget:
    return SearchBudget(node_limit=args.budget_nodes, time_limit=args.budget_secs)


def _families(name: str, k: int):
    if name == "auto":
        return None
    return [{"coprime": DifferenceFamily.coprime(k), "prime": DifferenceFamily.prime(), "all": DifferenceFamily.all()}[name]]


def _family_names(fams) -> list[str]:
    return [f.label() for f in fams]


def _emit(payload: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(payload, sort_keys=True, indent=2))
        return
    def walk(obj, prefix=""):
        if isinstance(obj, dict):
            for key in sorted(obj):
                walk(obj[key], f"{prefix}{key}.")
        else:
            print(f"{prefix[:-1]}: {json.dumps(obj) if isinstance(obj, list) else obj}")
    walk(payload)


def _witness_result(w) -> dict:
    if w is None:
        return {"found": False, "witness": None}
    return {"found": True, "witness": w.to_dict()}


# ------------------------------------------------------------------ commands


def cmd_find(args) -> int:
    cfg = _config(args)
    g = read_edge_list(args.graph, n=args.n)
    if args.k < 1:
        raise InputError("k must be >= 1")
    fams = _families(args.family, args.k)
    order = fams if fams is not None else scan_order(g.n, args.k, cfg)
    table = build_sieve(max(g.n, 2))
    w = find_independent_ap(g, args.k, cfg, table, families=fams)
    config = {
        "command": "find",
        "input": str(args.graph),
        "n": g.n,
        "k": args.k,
        "edge_count": g.edge_count,
        "forbidden": g.forbidden_vertices(),
        "family": args.family,
        "scan_order": _family_names(order),
        **cfg.to_dict(),
    }
    if args.k >= 2 and g.n >= args.k:
        config["certified_edge_budget"] = certified_edge_budget(g.n, args.k, order[0], table)
    _emit({"config": config, "result": _witness_result(w)}, args.format)
    return EXIT_FOUND if w else EXIT_NONE


def cmd_rainbow(args) -> int:
    cfg = _config(args)
    c = read_coloring(args.coloring)
    w = find_rainbow_ap(c, args.k, cfg)
    config = {
        "command": "rainbow",
        "input": str(args.coloring),
        "n": c.n,
        "k": args.k,
        "colors": len(c.multiplicity),
        "max_multiplicity": c.max_multiplicity,
        "edge_count": from_coloring(c).edge_count,
        **cfg.to_dict(),
    }
    _emit({"config": config, "result": _witness_result(w)}, args.format)
    return EXIT_FOUND if w else EXIT_NONE


def cmd_permute(args) -> int:
    cfg = _config(args)
    p = read_permutation(args.permutation)
    mode = FixedPointMode(args.mode)
    w = find_unmapped_ap(p, args.k, mode, cfg)
    fixed = [i for i in range(1, p.n + 1) if p(i) == i]
    config = {
        "command": "permute",
        "input": str(args.permutation),
        "n": p.n,
        "k": args.k,
        "mode": mode.value,
        "fixed_points": fixed,
        "edge_count": from_permutation(p, mode).edge_count,
        **cfg.to_dict(),
    }
    result = _witness_result(w)
    if w is None:
        if mode is FixedPointMode.STRICT and fixed and len(fixed) == p.n:
            result["reason"] = "strict mode: every vertex is a fixed point, so every progression meets its image"
        else:
            result["reason"] = "every k-term progression in [n] contains some i with pi(i) in it"
    _emit({"config": config, "result": result}, args.format)
    return EXIT_FOUND if w else EXIT_NONE


def cmd_bounds(args) -> int:
    cfg = _config(args)
    result = {
        "sr_upper_bound": sr_upper_bound(args.m, args.k, cfg),
        "tk_upper_bound": tk_upper_bound(args.k, cfg),
        "n0_upper_bound": n0_upper_bound(args.k, cfg),
    }
    config = {"command": "bounds", "m": args.m, "k": args.k, **cfg.to_dict()}
    _emit({"config": config, "result": result}, args.format)
    return 0


def cmd_exact(args) -> int:
    cfg = _config(args)
    budget = _budget(args)
    config = {"command": f"exact {args.what}", **cfg.to_dict(), "budget_nodes": budget.node_limit, "budget_secs": budget.time_limit}
    if args.what == "sr":
        res = sr_exact(args.m, args.k, args.n_max, budget)
        config.update(m=args.m, k=args.k, n_max=args.n_max)
        result = res.to_dict()
        if args.k >= 3:
            result["sr_upper_bound"] = sr_upper_bound(args.m, args.k, cfg)
    elif args.what == "coloring":
        config.update(n=args.n, m=args.m, k=args.k)
        result = exists_coloring_without_rainbow(args.n, args.m, args.k, budget).to_dict()
    else:
        mode = FixedPointMode(args.mode)
        config.update(n=args.n, k=args.k, mode=mode.value)
        result = exists_permutation_without_free_ap(args.n, args.k, mode, budget).to_dict()
    _emit({"config": config, "result": result}, args.format)
    return 0


def cmd_probe(args) -> int:
    cfg = _config(args)
    config = {"command": f"probe {args.what}", **cfg.to_dict()}
    if args.what == "tightness":
        fam = regime_family(args.n, args.k, cfg)
        budget = certified_edge_budget(args.n, args.k, fam)
        e = budget if args.e is None else args.e
        config.update(n=args.n, k=args.k, e=e, trials=args.trials, seed=args.seed)
        result = {
            "fraction": empirical_probe(args.n, args.k, e, args.trials, args.seed),
            "certified_edge_budget": budget,
            "budget_family": fam.label(),
        }
    elif args.what == "n0":
        mode = FixedPointMode(args.mode)
        config.update(k=args.k, mode=mode.value, n_max=args.n_max)
        result = n0_probe(args.k, mode, args.n_max, _budget(args), n0_bound=n0_upper_bound(args.k, cfg))
    else:
        config.update(t=args.t, k=args.k, m_max=args.m_max)
        result = tk_probe(args.t, args.k, args.m_max, _budget(args))
    _emit({"config": config, "result": result}, args.format)
    return 0


def _load_witness(path: str) -> tuple[Progression, dict]:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read witness: {exc}") from None
    if isinstance(data, dict) and "result" in data:
        data = data["result"].get("witness")
    if not isinstance(data, dict) or not {"start", "diff", "length"} <= data.keys():
        raise InputError("witness JSON lacks start/diff/length")
    try:
        p = Progression(int(data["diff"]), int(data["start"]), int(data["length"]))
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if "elements" in data and list(data["elements"]) != p.elements():
        raise InputError("witness elements disagree with start/diff/length")
    return p, data


def cmd_verify(args) -> int:
    p, _ = _load_witness(args.witness)
    if args.k is not None and p.length != args.k:
        valid, why = False, f"length {p.length} != k {args.k}"
    elif args.what == "graph":
        g = read_edge_list(args.input, n=args.n)
        valid = p.last <= g.n and direct_independent(g, p.elements())
        why = "independent" if valid else "not an independent progression in [n]"
    elif args.what == "coloring":
        c = read_coloring(args.input)
        valid = p.last <= c.n and c.is_rainbow(p)
        why = "rainbow" if valid else "not a rainbow progression in [n]"
    else:
        perm = read_permutation(args.input)
        valid = p.last <= perm.n and is_free(perm, p, FixedPointMode(args.mode))
        why = "free of its images" if valid else "meets its own image"
    config = {"command": f"verify {args.what}", "input": str(args.input), "witness": str(args.witness)}
    if args.what == "permutation":
        config["mode"] = args.mode
    _emit({"config": config, "result": {"valid": valid, "elements": p.elements(), "reason": why}}, args.format)
    return EXIT_FOUND if valid else EXIT_NONE


def cmd_report(args) -> int:
    from .report import build_report

    cfg = _config(args)
    ks = tuple(int(x) for x in args.ks.split(","))
    summary = build_report(args.outdir, ks, probe_n=args.n, probe_k=args.k, trials=args.trials, seed=args.seed, cfg=cfg)
    config = {"command": "report", "ks": list(ks), "n": args.n, "k": args.k, "trials": args.trials, "seed": args.seed, **cfg.to_dict()}
    _emit({"config": config, "result": summary}, args.format)
    return 0


# -------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--eta", type=float, default=None, help="sieve density constant (default 0.1)")
    common.add_argument("--epsilon", type=float, default=None, help="edge density constant (default: pinned)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget-nodes", type=int, default=10_000_000)
    common.add_argument("--budget-secs", type=float, default=60.0)

    parser = argparse.ArgumentParser(prog="indap", description="Independent arithmetic progressions in graphs on [n].")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("find", parents=[common], help="independent k-AP in an edge-list graph")
    p.add_argument("graph")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, default=None, help="vertex count (default: largest vertex in file)")
    p.add_argument("--family", choices=("auto", "coprime", "prime", "all"), default="auto")
    p.set_defaults(func=cmd_find)

    p = sub.add_parser("rainbow", parents=[common], help="rainbow k-AP in a coloring")
    p.add_argument("coloring")
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_rainbow)

    p = sub.add_parser("permute", parents=[common], help="k-AP disjoint from its image under a permutation")
    p.add_argument("permutation")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--mode", choices=("strict", "weak"), default="strict")
    p.set_defaults(func=cmd_permute)

    p = sub.add_parser("bounds", parents=[common], help="sr, T_k and n0 upper bounds")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("exact", parents=[common], help="exhaustive small-instance oracles")
    p.add_argument("what", choices=("sr", "coloring", "permutation"))
    p.add_argument("m_pos", nargs="?", type=int, help="m for 'exact sr M K'")
    p.add_argument("k_pos", nargs="?", type=int, help="k for 'exact sr M K'")
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--n-max", type=int, default=30)
    p.add_argument("--mode", choices=("strict", "weak"), default="strict")
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("probe", parents=[common], help="random tightness probe, n0 and T_k probes")
    p.add_argument("what", choices=("tightness", "n0", "tk"))
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--e", type=int, default=None, help="edge count (default: certified budget)")
    p.add_argument("--t", type=int)
    p.add_argument("--m-max", type=int, default=3)
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--mode", choices=("strict", "weak"), default="weak")
    p.set_defaults(func=cmd_probe)

    p = sub.add_parser("verify", parents=[common], help="re-check a witness JSON against its input")
    p.add_argument("what", choices=("graph", "coloring", "permutation"))
    p.add_argument("input")
    p.add_argument("witness")
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--mode", choices=("strict", "weak"), default="strict")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("report", parents=[common], help="CSV tables and figures into a directory")
    p.add_argument("--outdir", required=True)
    p.add_argument("--ks", default="3,4,5")
    p.add_argument("--n", type=int, default=60)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--trials", type=int, default=20)
    p.set_defaults(func=cmd_report)
    return parser


def _check_required(args, parser) -> None:
    if args.command == "exact":
        if args.what == "sr":
            args.m = args.m if args.m is not None else args.m_pos
            args.k = args.k if args.k is not None else args.k_pos
            missing = [x for x in ("m", "k") if getattr(args, x) is None]
        elif args.what == "coloring":
            missing = [x for x in ("n", "m", "k") if getattr(args, x) is None]
        else:
            missing = [x for x in ("n", "k") if getattr(args, x) is None]
    elif args.command == "probe":
        need = {"tightness": ("n",), "n0": (), "tk": ("t",)}[args.what]
        missing = [x for x in need if getattr(args, x) is None]
    else:
        missing = []
    if missing:
        parser.error(f"{args.command} {args.what}: missing " + ", ".join(f"--{m}" for m in missing))


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _check_required(args, parser)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else 0
    try:
        return args.func(args)
    except (InputError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
