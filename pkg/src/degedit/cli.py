"""Command-line entry point.

Exit codes: 0 for YES or success, 1 for NO, 2 for errors, failed
verification and exhausted resource guards.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .generators import MODELS, GenParams, generate, reduce_hamiltonicity
from .graph import EditInstance, EditSet, GraphError, verify_solution
from .instance_io import (ParseError, format_trace, parse_graph, parse_instance,
                          parse_solution, relabel, solution_json, write_instance,
                          write_solution)
from .kernel import KernelTrace, kernelize
from .oracle import GuardExceeded, brute_force_solve
from .regular import DEFAULT_MAX_RECORDS, solve_regular

EXIT_YES, EXIT_NO, EXIT_ERROR = 0, 1, 2


def solve_instance(inst: EditInstance, oracle: bool = False,
                   max_records: int = DEFAULT_MAX_RECORDS) -> tuple[EditSet | None, KernelTrace]:
    """Full pipeline; returns the solution (or None) and the kernel trace."""
    kernel, trace = kernelize(inst)
    if oracle:
        return brute_force_solve(inst), trace
    if kernel is None:
        return None, trace
    if all(x == inst.d for x in inst.delta.values()):
        return solve_regular(inst.graph, inst.d, inst.k, max_records=max_records), trace
    sol = brute_force_solve(kernel)
    if sol is None:
        return None, trace
    if kernel.graph == inst.graph and kernel.delta == inst.delta:
        return sol, trace
    return brute_force_solve(inst), trace


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="ascii") as fh:
        return fh.read()


def _write_trace(path: str | None, trace: KernelTrace) -> None:
    if path:
        with open(path, "w", encoding="ascii") as fh:
            fh.write(format_trace(trace))


def _cmd_solve(args) -> int:
    inst = parse_instance(_read(args.instance))
    sol, trace = solve_instance(inst, args.oracle, args.max_records)
    _write_trace(args.trace, trace)
    if args.json:
        print(solution_json(sol))
    else:
        print(write_solution(sol), end="")
    return EXIT_NO if sol is None else EXIT_YES


def _cmd_kernelize(args) -> int:
    inst = parse_instance(_read(args.instance))
    kernel, trace = kernelize(inst)
    _write_trace(args.trace, trace)
    if args.json:
        out = {"answer": "NO" if kernel is None else "KERNEL", "trace": [
            json.loads(line) for line in format_trace(trace).splitlines()]}
        if kernel is not None:
            dense, names = relabel(kernel)
            out["kernel"] = write_instance(dense)
            out["map"] = {str(new): old for new, old in names.items()}
        print(json.dumps(out, sort_keys=True))
        return EXIT_NO if kernel is None else EXIT_YES
    if kernel is None:
        print("s NO")
        if not args.trace:
            print("".join(f"c t {line}\n" for line in format_trace(trace).splitlines()), end="")
        return EXIT_NO
    dense, names = relabel(kernel)
    comments = [f"map {new} {old}" for new, old in sorted(names.items())]
    if not args.trace:
        comments += [f"t {line}" for line in format_trace(trace).splitlines()]
    print(write_instance(dense, comments), end="")
    return EXIT_YES


def _cmd_verify(args) -> int:
    inst = parse_instance(_read(args.instance))
    sol = parse_solution(_read(args.solution))
    if sol is None:
        print("solution claims NO; nothing to verify")
        return EXIT_NO
    try:
        report = verify_solution(inst, sol)
    except GraphError as exc:
        print(f"invalid edits: {exc}")
        return EXIT_ERROR
    if args.json:
        print(json.dumps({"ok": report.ok, "degrees_ok": report.degrees_ok,
                          "connected": report.connected, "within_budget": report.within_budget,
                          "mismatches": [[v, h, w] for v, (h, w) in sorted(report.mismatches.items())]}))
    else:
        print(f"degrees {'ok' if report.degrees_ok else 'WRONG'}")
        for v, (have, want) in sorted(report.mismatches.items()):
            print(f"  vertex {v}: degree {have}, target {want}")
        print(f"connected {'yes' if report.connected else 'NO'}")
        print(f"budget {'ok' if report.within_budget else 'EXCEEDED'} ({sol.cost} of {inst.k})")
    return EXIT_YES if report.ok else EXIT_ERROR


def _cmd_gen(args) -> int:
    inst, witness = generate(GenParams(args.n, args.d, args.k, args.seed, args.model))
    comments = [f"model {args.model} seed {args.seed}"]
    print(write_instance(inst, comments), end="")
    if args.witness and witness is not None:
        with open(args.witness, "w", encoding="ascii") as fh:
            fh.write(write_solution(witness))
    return EXIT_YES


def _cmd_reduce_ham(args) -> int:
    inst = reduce_hamiltonicity(parse_graph(_read(args.graph)))
    print(write_instance(inst, ["hamiltonicity reduction"]), end="")
    return EXIT_YES


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="degedit",
                                 description="Edit a graph into a connected graph with prescribed degrees.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve an instance and print a solution file")
    p.add_argument("instance")
    p.add_argument("--json", action="store_true")
    p.add_argument("--oracle", action="store_true", help="force exhaustive search")
    p.add_argument("--max-records", type=int, default=DEFAULT_MAX_RECORDS)
    p.add_argument("--trace", help="write the kernel trace to this path")
    p.add_argument("--seed", type=int, default=0, help="accepted for uniformity; solving is deterministic")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("kernelize", help="print the kernel and its trace")
    p.add_argument("instance")
    p.add_argument("--json", action="store_true")
    p.add_argument("--trace")
    p.set_defaults(func=_cmd_kernelize)

    p = sub.add_parser("verify", help="check a solution file against an instance")
    p.add_argument("instance")
    p.add_argument("solution")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("gen", help="generate an instance")
    p.add_argument("--model", choices=MODELS, default="planted")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--witness", help="write the planted witness to this path")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("reduce-ham", help="Hamiltonicity instance for a graph file")
    p.add_argument("graph")
    p.set_defaults(func=_cmd_reduce_ham)
    return ap


def cli_main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_YES
    try:
        return args.func(args)
    except (ParseError, GraphError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except GuardExceeded as exc:
        print(f"guard: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def main() -> None:
    sys.exit(cli_main())
