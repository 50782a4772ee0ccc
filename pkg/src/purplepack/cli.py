"""Command line entry point: ``purplepack <subcommand> ...``.

Exit status is 0 when every checked property held, 1 when a property
violation was found, and 2 for usage or I/O errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import asdict
from pathlib import Path
from typing import Optional, Sequence

from .analyzer import PreconditionError, audit_claim41, thresholds, thresholds_precise
from .campaign import ConfigError, ExperimentConfig, default_output_dir, make_record, run_campaign
from .formats import FormatError, emit_graph, graph_digest, parse_perm, read_instance
from .generators import GenSpec, generate_with_status
from .graph import GraphError
from .model import Labelling, PackingInstance
from .oracle import OracleSizeError, exact_pack, min_purple_labellings
from .solver import solve, solve_multistart

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


def _t_list(text: str) -> list[int]:
    try:
        values = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad t list {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("empty t list")
    return values


def _write(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _load(path: str) -> tuple[PackingInstance, Optional[Labelling]]:
    blue, red, perm = read_instance(path)
    inst = PackingInstance(blue, red)
    if perm is None:
        return inst, None
    lab = Labelling(tuple(perm))
    # After a role exchange the old blue graph is the one being moved; its
    # labelling is the inverse of the given one, with the same purple count.
    return inst, (Labelling(lab.inv) if inst.swapped else lab)


def cmd_gen(args) -> int:
    spec = GenSpec(args.n, args.delta_cap, args.forbid_girth, args.seed, args.edge_budget)
    res = generate_with_status(spec)
    _write(args.output, emit_graph(res.graph, args.format))
    if res.shortfall:
        print(f"edge budget {args.edge_budget} not reached: {res.graph.m} edges", file=sys.stderr)
    return EXIT_OK


def cmd_pack(args) -> int:
    inst, given = _load(args.instance)
    trace_fh = open(args.emit_trace, "w") if args.emit_trace else None

    def on_swap(cycle, count):
        if trace_fh is not None:
            trace_fh.write(json.dumps({"kind": "swap", "labels": list(cycle.labels), "purple": count}) + "\n")

    try:
        if args.restarts is not None:
            out = solve_multistart(
                inst, args.restarts, args.seed, policy=args.policy, max_swaps=args.max_swaps, on_swap=on_swap
            )
        else:
            out = solve(inst, given, policy=args.policy, max_swaps=args.max_swaps, on_swap=on_swap)
    finally:
        if trace_fh is not None:
            trace_fh.close()
    cert = asdict(out.stuck_certificate) if out.stuck_certificate else None
    payload = {
        "status": out.status,
        "purple": out.purple_final.count,
        "max_purple_degree": out.purple_final.max_purple_degree,
        "swaps": len(out.swap_trace),
        "roles_swapped": inst.swapped,
        "capped": out.capped,
        "final_perm": list(out.final_labelling.perm),
        "certificate": cert,
    }
    params = {"restarts": args.restarts, "seed": args.seed, "policy": args.policy}
    print(json.dumps(make_record("pack", graph_digest(inst.blue, inst.red), params, payload, 0.0)))
    if args.certify and cert is not None:
        Path(args.certify).write_text(json.dumps({"kind": "stuck_certificate", **cert}) + "\n")
    finished = not out.capped
    if finished and cert is not None and args.policy == "full" and not (cert["claim31_ok"] and cert["claim32_ok"]):
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_pack_exact(args) -> int:
    inst, _ = _load(args.instance)
    res = exact_pack(inst, limit=args.limit, max_nodes=args.max_nodes)
    payload = {
        "packable": res.packable,
        "min_purple": res.min_purple,
        "lower_bound": res.lower_bound,
        "complete": res.complete,
        "nodes_explored": res.nodes_explored,
        "witness": list(res.witness.perm) if res.witness else None,
    }
    if args.enumerate_optima:
        best, optima = min_purple_labellings(inst, limit=args.limit)
        payload["optima"] = [list(lab.perm) for lab in optima]
    params = {"limit": args.limit, "roles_swapped": inst.swapped}
    print(json.dumps(make_record("pack-exact", graph_digest(inst.blue, inst.red), params, payload, 0.0)))
    return EXIT_OK


def cmd_audit(args) -> int:
    inst, given = _load(args.instance)
    if args.labelling:
        lab = Labelling(tuple(parse_perm(Path(args.labelling).read_text().strip())))
    elif args.from_solver:
        lab = solve(inst, given).final_labelling
    else:
        lab = given or Labelling.identity(inst.n)
    if inst.n < 2:
        raise GraphError("audit needs at least two vertices")
    digest = graph_digest(inst.blue, inst.red)
    rng = random.Random(args.seed)
    failed = False
    for _ in range(args.pairs):
        a, b = rng.sample(range(inst.n), 2)
        for t in args.t:
            audit = audit_claim41(inst, lab, a, b, t)
            failed |= not audit.all_ok
            params = {"a": a, "b": b, "t": t, "seed": args.seed}
            print(json.dumps(make_record("claim41_audit", digest, params, audit.to_dict(), 0.0)))
    return EXIT_VIOLATION if failed else EXIT_OK


def cmd_constants(args) -> int:
    for t in args.t:
        rep = thresholds(t)
        precise = thresholds_precise(t)
        rec = {"kind": "constants", **asdict(rep)}
        rec["extended_precision"] = {k: str(v) for k, v in asdict(precise).items()}
        print(json.dumps(rec))
    return EXIT_OK


def cmd_campaign(args) -> int:
    cfg = ExperimentConfig.load(args.config)
    if args.workers is not None:
        cfg.workers = args.workers
    out_path = args.output or cfg.output or str(default_output_dir() / "campaign.jsonl")
    with open(out_path, "w") as fh:
        summary, _ = run_campaign(cfg, sink=fh)
    print(json.dumps(summary))
    return EXIT_OK if summary["ok"] else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="purplepack", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a random bounded-degree graph")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--delta-cap", type=int, required=True)
    g.add_argument("--forbid-girth", action="store_true", help="forbid 4-, 6- and 8-cycles")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--edge-budget", type=int)
    g.add_argument("--output", "-o")
    g.add_argument("--format", choices=("graph6", "edgelist"), default="graph6")
    g.set_defaults(func=cmd_gen)

    k = sub.add_parser("pack", help="purple descent on an instance file")
    k.add_argument("instance")
    k.add_argument("--restarts", type=int)
    k.add_argument("--seed", type=int, default=0)
    k.add_argument("--max-swaps", type=int)
    k.add_argument("--policy", choices=("full", "eaton"), default="full")
    k.add_argument("--emit-trace", metavar="PATH")
    k.add_argument("--certify", metavar="PATH")
    k.set_defaults(func=cmd_pack)

    e = sub.add_parser("pack-exact", help="exact packing decision for small instances")
    e.add_argument("instance")
    e.add_argument("--limit", type=int, default=12)
    e.add_argument("--max-nodes", type=int)
    e.add_argument("--enumerate-optima", action="store_true")
    e.set_defaults(func=cmd_pack_exact)

    a = sub.add_parser("audit", help="audit the mixed second-neighbourhood bounds")
    a.add_argument("instance")
    src = a.add_mutually_exclusive_group()
    src.add_argument("--labelling", metavar="PATH")
    src.add_argument("--from-solver", action="store_true")
    a.add_argument("--t", type=_t_list, default=[2, 5, 15])
    a.add_argument("--pairs", type=int, default=100)
    a.add_argument("--seed", type=int, default=0)
    a.set_defaults(func=cmd_audit)

    c = sub.add_parser("constants", help="threshold constants for given t")
    c.add_argument("--t", type=_t_list, default=[15])
    c.set_defaults(func=cmd_constants)

    m = sub.add_parser("campaign", help="run an experiment campaign from a JSON config")
    m.add_argument("--config", required=True)
    m.add_argument("--output", "-o")
    m.add_argument("--workers", type=int)
    m.set_defaults(func=cmd_campaign)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, FormatError, ConfigError, GraphError, OracleSizeError, PreconditionError) as exc:
        print(f"purplepack: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
