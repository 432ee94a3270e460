"""Command-line surface: graph generation/analysis, landscape reports,
chain simulation, constructive paths, and condition verification.

Exit codes: 0 success, 2 parameter error, 3 capacity-cap error.
"""

from __future__ import annotations

import argparse
import csv
import datetime
import json
import statistics
import sys
from fractions import Fraction

from . import __version__
from .dynamics import run_replicas
from .errors import CapacityError, MetaisingError, ParameterError
from .graphs import (
    generate_random_regular,
    graph_hash,
    isoperimetric_exact,
    isoperimetric_heuristic,
    read_edge_list,
    write_edge_list,
)
from .landscape import full_landscape, sublevel_cycle
from .model import EnergyParams, all_minus, all_plus, config_to_hex, hex_to_config
from .paths import ascend_lemma_path, descend_lemma_path, reference_path
from .verify import AsymptoticConstants, sandwich_experiment, verify_conditions

SCHEMA_VERSION = 1


def _envelope(config: dict, results: dict, graph_digest: str | None = None) -> dict:
    return {
        "tool": "metaising",
        "version": __version__,
        "schema_version": SCHEMA_VERSION,
        "created": datetime.datetime.now(datetime.timezone.utc).isoformat(),
        "config": config,
        "graph_hash": graph_digest,
        "results": results,
    }


def _write_json(path: str | None, payload: dict) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True)
    if path is None or path == "-":
        print(text)
    else:
        with open(path, "w") as fh:
            fh.write(text + "\n")


def _load_graph(path: str):
    with open(path) as fh:
        return read_edge_list(fh)


def cmd_graph_gen(args) -> int:
    G = generate_random_regular(args.n, args.r, args.seed)
    with open(args.out, "w") as fh:
        write_edge_list(G, fh)
    print(f"wrote {G!r} (hash {graph_hash(G)}) to {args.out}")
    return 0


def cmd_graph_iso(args) -> int:
    G = _load_graph(args.graph)
    if args.heuristic:
        res = isoperimetric_heuristic(G, seed=args.seed, effort=args.effort)
    else:
        res = isoperimetric_exact(G)
    results = {
        "exact": res.exact,
        "i_e": str(res.i_e),
        "i_e_witness": config_to_hex(res.witness, G.n),
        "i_e_prime": str(res.i_e_prime),
        "i_e_prime_witness": config_to_hex(res.witness_prime, G.n),
    }
    _write_json(args.out, _envelope(vars(args) | {"func": None}, results, graph_hash(G)))
    return 0


def cmd_landscape(args) -> int:
    G = _load_graph(args.graph)
    params = EnergyParams.parse(args.h)
    report = full_landscape(G, params)
    results = {
        "gamma": str(report.gamma),
        "phi_minus_to_plus": str(report.phi_minus_to_plus),
        "barrier": str(report.barrier),
        "h_minus": str(report.energy(all_minus(G))),
        "h_plus": str(report.energy(all_plus(G))),
        "metastable_states": [config_to_hex(s, G.n) for s in report.metastable_states],
        "unique_metastable_minus": report.metastable_states == [all_minus(G)],
    }
    if G.n <= 16:
        results["stability"] = {
            config_to_hex(s, G.n): (
                "inf" if report.stability(s) == float("inf") else str(report.stability(s))
            )
            for s in range(1 << G.n)
        }
    if args.anchor is not None and args.level is not None:
        cyc = sublevel_cycle(
            G, params, hex_to_config(args.anchor, G.n), Fraction(args.level)
        )
        results["cycle"] = {
            "members": sorted(config_to_hex(s, G.n) for s in cyc.members),
            "external_boundary": sorted(
                config_to_hex(s, G.n) for s in cyc.external_boundary
            ),
            "depth": None if cyc.depth is None else str(cyc.depth),
            "connected": cyc.connected,
            "nontrivial": cyc.nontrivial,
        }
    _write_json(args.out, _envelope(vars(args) | {"func": None}, results, graph_hash(G)))
    return 0


def cmd_simulate(args) -> int:
    G = _load_graph(args.graph)
    params = EnergyParams.parse(args.h, beta=args.beta)
    start = hex_to_config(args.start, G.n) if args.start else all_minus(G)
    target = hex_to_config(args.target, G.n) if args.target else all_plus(G)
    seeds = [args.seed + k for k in range(args.replicas)]
    samples = run_replicas(G, params, start, target, args.max_steps, seeds)
    hits = [s.steps for s in samples if s.hit]
    summary = {
        "replicas": len(samples),
        "hit_count": len(hits),
        "mean": statistics.mean(hits) if hits else None,
        "stderr": (
            statistics.stdev(hits) / len(hits) ** 0.5 if len(hits) > 1 else None
        ),
    }
    results = {
        "samples": [
            {"seed": s.seed, "steps": s.steps, "hit": s.hit} for s in samples
        ],
        "summary": summary,
    }
    _write_json(args.out, _envelope(vars(args) | {"func": None}, results, graph_hash(G)))
    return 0


def cmd_path(args) -> int:
    G = _load_graph(args.graph)
    params = EnergyParams.parse(args.h)
    if args.mode == "reference":
        record = reference_path(G, params, seed=args.seed)
        endpoint = None
    else:
        if args.set is None:
            raise ParameterError("--set HEX is required for descend/ascend")
        A = hex_to_config(args.set, G.n)
        fn = descend_lemma_path if args.mode == "descend" else ascend_lemma_path
        endpoint, record = fn(G, params, A, seed=args.seed)
    results = {
        "mode": args.mode,
        "states": [config_to_hex(s, G.n) for s in record.states],
        "energies": [str(e) for e in record.energies],
        "max_height": str(record.max_height),
        "bound": str(record.bound),
        "certified": record.certified,
        "endpoint": None if endpoint is None else config_to_hex(endpoint, G.n),
    }
    _write_json(args.out, _envelope(vars(args) | {"func": None}, results, graph_hash(G)))
    return 0


def cmd_verify(args) -> int:
    constants = AsymptoticConstants(c0=args.c0)
    h = Fraction(args.h)
    result = sandwich_experiment(
        args.r,
        [args.n],
        h,
        list(range(args.seed, args.seed + args.seeds)),
        constants=constants,
    )
    # instance-level condition reports on landscape-feasible rows
    for row in result["rows"]:
        if "gamma_l" in row and "gamma" in row:
            G = generate_random_regular(row["n"], row["r"], row["seed"])
            rep = verify_conditions(
                G, h, Fraction(row["gamma_l"]), Fraction(row["gamma_u"])
            )
            row["conditions"] = {
                "cond1": rep.cond1,
                "cond2": rep.cond2,
                "cond3a": rep.cond3a,
                "cond3b": rep.cond3b,
                "unique_metastable": rep.unique_metastable,
            }
    _write_json(args.out, _envelope(vars(args) | {"func": None}, result, None))
    return 0


def cmd_report(args) -> int:
    with open(args.input) as fh:
        payload = json.load(fh)
    if payload.get("version") != __version__:
        print(
            f"warning: report version {payload.get('version')} != tool {__version__}",
            file=sys.stderr,
        )
    results = payload.get("results", {})
    print(f"report from {payload.get('tool')} {payload.get('version')}")
    if payload.get("graph_hash"):
        print(f"graph: {payload['graph_hash']}")
    if "gamma" in results:
        print(f"Gamma = {results['gamma']}")
    if "metastable_states" in results:
        states = results["metastable_states"]
        unique = " (unique)" if len(states) == 1 else ""
        print(f"metastable: {', '.join(states)}{unique}")
    if "summary" in results:
        summary = results["summary"]
        if not results.get("samples"):
            print("no samples")
        else:
            print(f"samples: {summary.get('replicas')} ({summary.get('hit_count')} hit)")
            print(f"mean hitting time: {summary.get('mean')}")
    if "rows" in results:
        print(f"instances: {len(results['rows'])}")
        s = results.get("summary", {})
        if s.get("sandwich_pass_fraction") is not None:
            print(f"sandwich pass fraction: {s['sandwich_pass_fraction']}")
        print(f"bollobas bound fraction: {s.get('bollobas_fraction')}")
    if args.csv and "samples" in results:
        with open(args.csv, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["seed", "steps", "hit"])
            for s in results["samples"]:
                writer.writerow([s["seed"], s["steps"], s["hit"]])
        print(f"wrote {args.csv}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="metaising")
    sub = parser.add_subparsers(dest="command", required=True)

    graph = sub.add_parser("graph", help="generate or analyze regular graphs")
    gsub = graph.add_subparsers(dest="graph_command", required=True)
    gen = gsub.add_parser("gen", help="sample a uniform random r-regular graph")
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--r", type=int, required=True)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", required=True)
    gen.set_defaults(func=cmd_graph_gen)
    iso = gsub.add_parser("iso", help="isoperimetric numbers with witnesses")
    iso.add_argument("--graph", "--in", dest="graph", required=True)
    group = iso.add_mutually_exclusive_group()
    group.add_argument("--exact", action="store_true")
    group.add_argument("--heuristic", action="store_true")
    iso.add_argument("--seed", type=int, default=0)
    iso.add_argument("--effort", type=int, default=20)
    iso.add_argument("--out", default=None)
    iso.set_defaults(func=cmd_graph_iso)

    land = sub.add_parser("landscape", help="exact landscape report")
    land.add_argument("--graph", required=True)
    land.add_argument("--h", required=True, help="field as exact rational, e.g. 1/2")
    land.add_argument("--anchor", default=None, help="cycle anchor (hex)")
    land.add_argument("--level", default=None, help="cycle level (rational)")
    land.add_argument("--out", default=None)
    land.set_defaults(func=cmd_landscape)

    sim = sub.add_parser("simulate", help="Monte Carlo hitting-time replicas")
    sim.add_argument("--graph", required=True)
    sim.add_argument("--h", required=True)
    sim.add_argument("--beta", type=float, required=True)
    sim.add_argument("--start", default=None, help="hex, default all-minus")
    sim.add_argument("--target", default=None, help="hex, default all-plus")
    sim.add_argument("--max-steps", type=int, default=10**7)
    sim.add_argument("--replicas", type=int, default=10)
    sim.add_argument("--seed", type=int, default=0)
    sim.add_argument("--out", default=None)
    sim.set_defaults(func=cmd_simulate)

    path = sub.add_parser("path", help="constructive spin-flip paths")
    path.add_argument("--graph", required=True)
    path.add_argument("--h", required=True)
    path.add_argument("--mode", choices=["descend", "ascend", "reference"], required=True)
    path.add_argument("--set", default=None, help="starting plus-set (hex)")
    path.add_argument("--seed", type=int, default=0)
    path.add_argument("--out", default=None)
    path.set_defaults(func=cmd_path)

    ver = sub.add_parser("verify", help="condition + exponent verification")
    ver.add_argument("--n", type=int, required=True)
    ver.add_argument("--r", type=int, required=True)
    ver.add_argument("--h", required=True)
    ver.add_argument("--c0", type=float, default=0.02)
    ver.add_argument("--seeds", type=int, default=1, help="number of graph seeds")
    ver.add_argument("--seed", type=int, default=0, help="first graph seed")
    ver.add_argument("--out", default=None)
    ver.set_defaults(func=cmd_verify)

    rep = sub.add_parser("report", help="render a report JSON")
    rep.add_argument("--in", dest="input", required=True)
    rep.add_argument("--csv", default=None)
    rep.set_defaults(func=cmd_report)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (MetaisingError, OSError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
