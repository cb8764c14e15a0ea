"""Command-line front end: solve, greedy, gen, oracle, verify.

One solve per invocation. Exit codes: 0 when the reported family
re-certifies, 1 on input errors, 2 when values that must agree do not.
JSON output omits wall-clock timings so identical inputs give identical
bytes.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Optional, Sequence

from . import adversarial, greedy, networks, oracle
from .dagcore import (
    Antichain,
    Chain,
    Dag,
    Family,
    build_dag,
    certify_antichain,
    certify_chain,
    certify_path,
    knorm_collection,
    knorm_partition,
)
from .errors import (
    BudgetExceeded,
    CycleError,
    DomainError,
    MismatchError,
    ParseError,
)


def parse_dag(text: str) -> tuple[Dag, list[str]]:
    """Parse the dag file format: vertex count, then one 'u v' per line.

    '#' starts a comment; vertex tokens are arbitrary and map to dense
    ids in order of first appearance.
    """
    n: Optional[int] = None
    ids: dict[str, int] = {}
    edges: list[tuple[int, int]] = []

    def vertex(tok: str, lineno: int) -> int:
        if tok not in ids:
            if n is not None and len(ids) >= n:
                raise ParseError(f"more than {n} distinct vertex names", lineno)
            ids[tok] = len(ids)
        return ids[tok]

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if n is None:
            if len(toks) != 1:
                raise ParseError("expected the vertex count alone on the first line", lineno)
            try:
                n = int(toks[0])
            except ValueError:
                raise ParseError(f"vertex count {toks[0]!r} is not an integer", lineno)
            if n < 0:
                raise ParseError("vertex count must be non-negative", lineno)
            continue
        if len(toks) != 2:
            raise ParseError(f"expected 'u v', got {len(toks)} tokens", lineno)
        edges.append((vertex(toks[0], lineno), vertex(toks[1], lineno)))
    if n is None:
        raise ParseError("empty input: missing the vertex count", 1)
    names = [str(v) for v in range(n)]
    for tok, v in ids.items():
        names[v] = tok
    return build_dag(n, edges), names


def format_dag(dag: Dag) -> str:
    lines = [str(dag.n)]
    lines.extend(f"{u} {v}" for u, v in dag.edges)
    return "\n".join(lines) + "\n"


def _member_list(member, names: list[str]) -> list[str]:
    if isinstance(member, Antichain):
        return [names[v] for v in sorted(member.vertices)]
    return [names[v] for v in member.vertices]


def _family_lists(family: Family, names: list[str]) -> list[list[str]]:
    return [_member_list(m, names) for m in family.members]


def _certify_family(dag: Dag, family: Family) -> None:
    for m in family.members:
        if isinstance(m, Antichain):
            certify_antichain(dag, m.vertices)
        elif isinstance(m, Chain):
            certify_chain(dag, m.vertices)
        else:
            certify_path(dag, m.vertices)


def _emit(report: dict, as_json: bool) -> None:
    if as_json:
        report = {k: v for k, v in report.items() if k != "timings_ms"}
        print(json.dumps(report, indent=2, sort_keys=True))
        return
    for key, value in report.items():
        if key == "families":
            for name, members in value.items():
                print(f"{name}:")
                for m in members:
                    print("  " + " ".join(m))
        else:
            print(f"{key}: {value}")


SOLVE_PROBLEMS = ("ma-k", "mc-k", "mp-k", "mcp-k", "map-k", "mas-k", "mps-k")


def _cmd_solve(args: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    with open(args.file) as fh:
        dag, names = parse_dag(fh.read())
    t1 = time.perf_counter()
    alpha_side = args.problem in ("ma-k", "mps-k", "mcp-k")
    if alpha_side:
        res = networks.solve_alpha(dag, args.k, warm=True)
        sol = {"ma-k": res.ma, "mps-k": res.mps, "mcp-k": res.mcp}[args.problem]
        stats = res.stats
    else:
        res = networks.solve_beta(dag, args.k, warm=args.warm)
        sol = {"mc-k": res.mc, "mp-k": res.mp, "mas-k": res.mas, "map-k": res.map}[args.problem]
        stats = res.stats
    t2 = time.perf_counter()
    _certify_family(dag, sol.family)
    recomputed = networks.recompute_value(dag, sol)
    certificate = "verified" if recomputed == sol.value else "value mismatch"
    t3 = time.perf_counter()
    report = {
        "problem": sol.problem,
        "k": args.k,
        "value": sol.value,
        "families": {sol.problem: _family_lists(sol.family, names)},
        "synthetic_members": list(sol.synthetic_members),
        "iterations": {
            "cycle_cancels": stats.iterations,
            "initial_cost": stats.initial_cost,
            "final_cost": stats.final_cost,
        },
        "timings_ms": {
            "parse": round(1000 * (t1 - t0), 3),
            "solve": round(1000 * (t2 - t1), 3),
            "certify": round(1000 * (t3 - t2), 3),
        },
        "certificate": certificate,
    }
    _emit(report, args.json)
    if certificate != "verified":
        raise MismatchError(f"recomputed value {recomputed} != reported {sol.value}")
    return 0


GREEDY_KINDS = ("chains", "antichains", "chain-cover", "antichain-cover")


def _cmd_greedy(args: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    with open(args.file) as fh:
        dag, names = parse_dag(fh.read())
    t1 = time.perf_counter()
    iterations: dict[str, int] = {}
    families: dict[str, Family] = {}
    if args.kind == "chains":
        fam, trace = greedy.greedy_k_chains(dag, args.k)
        value = fam.coverage()
        families["chains"] = fam
    elif args.kind == "antichains":
        fam, trace = greedy.greedy_k_antichains(dag, args.k)
        value = fam.coverage()
        families["antichains"] = fam
        iterations["decrementing_searches"] = sum(r.searches for r in trace.rounds)
    elif args.kind == "chain-cover":
        paths, partition, trace = greedy.greedy_weighted_chain_cover(dag, args.k)
        value = knorm_collection(paths.members, dag.n, args.k)
        families["paths"] = paths
        families["partition"] = partition
    else:
        taken, partition, trace = greedy.greedy_antichain_cover(dag, args.k)
        value = len(partition)
        families["antichains"] = taken
        families["partition"] = partition
        iterations["decrementing_searches"] = sum(r.searches for r in trace.rounds)
    iterations["rounds"] = len(trace.rounds)
    t2 = time.perf_counter()
    for fam in families.values():
        _certify_family(dag, fam)
    t3 = time.perf_counter()
    report = {
        "problem": f"greedy-{args.kind}",
        "k": args.k,
        "value": value,
        "gains": trace.gains(),
        "stop_reason": trace.stop_reason,
        "families": {name: _family_lists(f, names) for name, f in families.items()},
        "iterations": iterations,
        "timings_ms": {
            "parse": round(1000 * (t1 - t0), 3),
            "solve": round(1000 * (t2 - t1), 3),
            "certify": round(1000 * (t3 - t2), 3),
        },
        "certificate": "verified",
    }
    _emit(report, args.json)
    return 0


GEN_FAMILIES = ("chain-ratio", "antichain-ratio", "gc", "ga")


def _check_instance(inst: adversarial.AdversarialInstance) -> dict:
    """Compare the actual solvers and greedies against the expected record."""
    exp = inst.expected
    actual: dict[str, int] = {}
    if inst.family == "ChainRatio":
        fam, _ = greedy.greedy_k_chains(inst.dag, inst.param)
        actual = {"optimal": networks.solve_beta(inst.dag, inst.param).beta,
                  "greedy": fam.coverage(), "greedy_members": len(fam)}
    elif inst.family == "AntichainRatio":
        fam, _ = greedy.greedy_k_antichains(inst.dag, inst.param)
        actual = {"optimal": networks.solve_alpha(inst.dag, inst.param).alpha,
                  "greedy": fam.coverage(), "greedy_members": len(fam)}
    elif inst.family == "GreedyPathLower":
        # minimization family: the greedy objective is how many paths it
        # takes to cover everything, against the optimal cover size
        _, partition, trace = greedy.greedy_weighted_chain_cover(inst.dag, 0)
        rounds = len(trace.rounds)
        mpc, _ = greedy.minimum_path_cover(inst.dag)
        actual = {"optimal": mpc, "greedy": rounds, "greedy_members": rounds}
    else:
        _, partition, _ = greedy.greedy_antichain_cover(inst.dag, 1)
        actual = {"optimal": networks.solve_beta(inst.dag, 1).map.value,
                  "greedy": partition.coverage(), "greedy_members": len(partition)}
    mismatches = []
    for key, got in actual.items():
        want = getattr(exp, key)
        if got != want:
            mismatches.append(f"{key}: expected {want}, got {got}")
    if mismatches:
        raise MismatchError(
            f"{inst.family}({inst.param}) check failed: " + "; ".join(mismatches))
    return actual


def _cmd_gen(args: argparse.Namespace) -> int:
    if args.family in ("chain-ratio", "antichain-ratio"):
        if args.k is None:
            raise DomainError(f"gen {args.family} needs --k")
        param = args.k
        inst = (adversarial.gen_chain_ratio(param) if args.family == "chain-ratio"
                else adversarial.gen_antichain_ratio(param))
    else:
        if args.i is None:
            raise DomainError(f"gen {args.family} needs --i")
        param = args.i
        inst = adversarial.gen_gc(param) if args.family == "gc" else adversarial.gen_ga(param)
    text = format_dag(inst.dag)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    report = {
        "problem": f"gen-{args.family}",
        "k": param,
        "n": inst.dag.n,
        "edges": len(inst.dag.edges),
        "expected": {
            "optimal": inst.expected.optimal,
            "greedy": inst.expected.greedy,
            "greedy_members": inst.expected.greedy_members,
            "optimal_members": inst.expected.optimal_members,
        },
        "output": args.output or "-",
        "certificate": "generated",
    }
    if args.check:
        report["actual"] = _check_instance(inst)
        report["certificate"] = "verified"
    if args.output:
        _emit(report, args.json)
    elif args.json:
        _emit(report, True)
    else:
        sys.stdout.write(text)
    return 0


ORACLE_PROBLEMS = ("alpha", "beta", "chain-partition", "antichain-partition")


def _cmd_oracle(args: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    with open(args.file) as fh:
        dag, names = parse_dag(fh.read())
    budget = oracle.OracleBudget.from_env()
    t1 = time.perf_counter()
    fn = {
        "alpha": oracle.brute_alpha,
        "beta": oracle.brute_beta,
        "chain-partition": oracle.brute_min_knorm_chain_partition,
        "antichain-partition": oracle.brute_min_knorm_antichain_partition,
    }[args.problem]
    value, family = fn(dag, args.k, budget)
    t2 = time.perf_counter()
    _certify_family(dag, family)
    if args.problem in ("alpha", "beta"):
        recomputed = family.coverage()
    else:
        recomputed = knorm_partition(family, dag.n, args.k)
    certificate = "verified" if recomputed == value else "value mismatch"
    t3 = time.perf_counter()
    report = {
        "problem": f"oracle-{args.problem}",
        "k": args.k,
        "value": value,
        "families": {args.problem: _family_lists(family, names)},
        "timings_ms": {
            "parse": round(1000 * (t1 - t0), 3),
            "solve": round(1000 * (t2 - t1), 3),
            "certify": round(1000 * (t3 - t2), 3),
        },
        "certificate": certificate,
    }
    _emit(report, args.json)
    if certificate != "verified":
        raise MismatchError(f"recomputed value {recomputed} != reported {value}")
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    result = oracle.run_verification_sweep(
        args.n, args.trials, args.seed, args.kmax, workers=args.workers)
    report = {
        "problem": "verify",
        "n_max": args.n,
        "trials": args.trials,
        "seed": args.seed,
        "kmax": args.kmax,
        "checks": len(result.reports),
        "mismatches": result.mismatches,
        "certificate": "verified" if not result.mismatches else "mismatch",
    }
    _emit(report, args.json)
    if result.mismatches:
        raise MismatchError(f"{len(result.mismatches)} trial(s) mismatched")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gkcover",
        description="Chain/antichain coverage solvers on DAGs (exact, greedy, oracle).")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="exact solve via min-cost circulation")
    p.add_argument("problem", choices=SOLVE_PROBLEMS)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--warm", action="store_true",
                   help="seed the circulation with greedy paths")
    p.add_argument("--json", action="store_true")
    p.add_argument("file")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("greedy", help="greedy approximations")
    p.add_argument("kind", choices=GREEDY_KINDS)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.add_argument("file")
    p.set_defaults(func=_cmd_greedy)

    p = sub.add_parser("gen", help="adversarial instance generators")
    p.add_argument("family", choices=GEN_FAMILIES)
    p.add_argument("--k", type=int)
    p.add_argument("--i", type=int)
    p.add_argument("--check", action="store_true",
                   help="run solvers and compare against the expected record")
    p.add_argument("-o", "--output")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("oracle", help="brute-force reference values")
    p.add_argument("problem", choices=ORACLE_PROBLEMS)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.add_argument("file")
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("verify", help="cross-check solvers against oracles on random DAGs")
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--kmax", type=int, default=3)
    p.add_argument("--workers", type=int, default=4)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except MismatchError as exc:
        print(f"mismatch: {exc}", file=sys.stderr)
        return 2
    except (ParseError, CycleError, DomainError, BudgetExceeded, IndexError,
            OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
