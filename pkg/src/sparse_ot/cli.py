"""``sparse-ot`` command line: solve, gen, verify, figure, oracle, bench.

Exit codes: 0 ok, 1 internal error, 2 parse error, 3 atom budget exceeded,
4 verification failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from pathlib import Path

from . import __version__
from .expansion import DEFAULT_MAX_ATOMS, AtomBudgetExceeded, expand
from .formats import (
    FormatError,
    dumps,
    instance_to_dict,
    load_instance,
    load_plan,
    plan_to_dict,
    with_cost,
)
from .generate import random_instance
from .measures import InvalidMeasure, format_rational
from .oracle import OracleBudgetExceeded, brute_force_assignment, brute_force_transport
from .plan import plan_stats, verify_plan
from .solver import atom_cost_matrix, ground_cost
from .svg import plan_svg
from .transport import solve

EXIT_OK, EXIT_INTERNAL, EXIT_PARSE, EXIT_BUDGET, EXIT_VERIFY = 0, 1, 2, 3, 4


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _seed(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _write(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _load_instance(args):
    return with_cost(load_instance(args.input), args.cost)


def cmd_solve(args) -> int:
    inst = _load_instance(args)
    sol = solve(inst.mu, inst.nu, inst.cost, path=args.path, max_atoms=args.max_atoms)
    report = verify_plan(sol.plan, inst.mu, inst.nu, inst.cost)
    if not report.passed:
        raise CliError(EXIT_INTERNAL, f"produced plan failed its own checks:\n{report}")
    stats = plan_stats(sol.plan, inst.mu, inst.nu)
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["i", "j", "mass"])
        writer.writerows([i, j, format_rational(q)] for i, j, q in sol.plan.entries)
        text = buf.getvalue()
    else:
        text = dumps(plan_to_dict(sol.plan))
    _write(text, args.output)
    summary = f"m={sol.plan.m} n={sol.plan.n} N={sol.instance.N} path={sol.path} {stats.summary()}\n"
    # keep stdout parseable when the plan itself goes there
    (sys.stderr if args.output in (None, "-") else sys.stdout).write(summary)
    return EXIT_OK


def cmd_gen(args) -> int:
    try:
        inst = random_instance(
            args.m,
            args.n,
            dim=args.dim,
            weights=args.weights,
            max_denominator=args.max_denominator,
            seed=args.seed,
            cost=args.cost if args.cost not in (None, "matrix") else "euclidean",
        )
    except ValueError as exc:
        raise CliError(EXIT_PARSE, str(exc)) from None
    _write(dumps(instance_to_dict(inst)), args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    inst = _load_instance(args)
    plan = load_plan(args.plan)
    report = verify_plan(plan, inst.mu, inst.nu, inst.cost)
    text = json.dumps(report.to_dict(), indent=1) + "\n" if args.format == "json" else str(report) + "\n"
    _write(text, args.output)
    return EXIT_OK if report.passed else EXIT_VERIFY


def cmd_figure(args) -> int:
    inst = _load_instance(args)
    plan = load_plan(args.plan)
    try:
        svg = plan_svg(plan, inst.mu, inst.nu, width=args.width, height=args.height)
    except ValueError as exc:
        raise CliError(EXIT_PARSE, str(exc)) from None
    _write(svg, args.output)
    return EXIT_OK


def cmd_oracle(args) -> int:
    inst = _load_instance(args)
    expanded = expand(inst.mu, inst.nu, args.max_atoms)
    try:
        if expanded.N <= 9:
            method = "assignment"
            oracle_cost = brute_force_assignment(atom_cost_matrix(expanded, inst.cost)).cost
        else:
            method = "transport"
            c = ground_cost(inst.mu, inst.nu, inst.cost)
            oracle_cost = brute_force_transport(expanded.src_mult, expanded.dst_mult, c).cost
    except OracleBudgetExceeded as exc:
        raise CliError(EXIT_BUDGET, f"oracle budget exceeded: {exc}") from None
    sol = solve(inst.mu, inst.nu, inst.cost, path=args.path, max_atoms=args.max_atoms)
    solver_cost = sol.plan.cost / float(expanded.atom_mass)
    if isinstance(oracle_cost, int) and sol.exact_atom_cost is not None:
        agree = oracle_cost == sol.exact_atom_cost
    else:
        agree = math.isclose(oracle_cost, solver_cost, rel_tol=1e-9, abs_tol=1e-12)
    result = {
        "method": method,
        "N": expanded.N,
        "oracle_atom_cost": oracle_cost,
        "solver_atom_cost": sol.exact_atom_cost if sol.exact_atom_cost is not None else solver_cost,
        "agree": agree,
    }
    _write(dumps(result), args.output)
    return EXIT_OK if agree else EXIT_VERIFY


def _parse_sizes(text: str) -> list[tuple[int, int]]:
    pairs = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        a, _, b = tok.partition("x")
        m = int(a)
        pairs.append((m, int(b) if b else m))
    if not pairs or any(m < 1 or n < 1 for m, n in pairs):
        raise ValueError(f"bad size list {text!r}")
    return pairs


def cmd_bench(args) -> int:
    try:
        sizes = _parse_sizes(args.sizes)
    except ValueError as exc:
        raise CliError(EXIT_PARSE, str(exc)) from None
    cost = args.cost if args.cost not in (None, "matrix") else "euclidean"
    rows = []
    for k, (m, n) in enumerate(sizes):
        inst = random_instance(m, n, dim=args.dim, seed=(args.seed + k) % 2**64, cost=cost)
        timings = {}
        for path in ("expanded", "compressed"):
            t0 = time.perf_counter()
            sol = solve(inst.mu, inst.nu, inst.cost, path=path, max_atoms=args.max_atoms)
            timings[path] = (time.perf_counter() - t0, sol)
        (te, se), (tc, sc) = timings["expanded"], timings["compressed"]
        agree = math.isclose(se.plan.cost, sc.plan.cost, rel_tol=1e-9, abs_tol=1e-12)
        rows.append(
            {
                "m": m,
                "n": n,
                "N": se.instance.N,
                "expanded_seconds": round(te, 6),
                "compressed_seconds": round(tc, 6),
                "expanded_cost": se.plan.cost,
                "compressed_cost": sc.plan.cost,
                "agree": agree,
            }
        )
    if args.format == "json":
        _write(dumps(rows), args.output)
    else:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        _write(buf.getvalue(), args.output)
    if not all(r["agree"] for r in rows):
        raise CliError(EXIT_INTERNAL, "expanded and compressed costs disagree")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sparse-ot", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, instance=True, solving=False):
        if instance:
            p.add_argument("--input", "-i", required=True, help="instance JSON")
        p.add_argument("--output", "-o", default=None, help="output path (default stdout)")
        p.add_argument("--cost", choices=["euclidean", "sqeuclidean", "manhattan", "matrix"], default=None)
        if solving:
            p.add_argument("--max-atoms", type=_positive, default=DEFAULT_MAX_ATOMS)
            p.add_argument("--path", choices=["auto", "expanded", "compressed"], default="auto")

    p = sub.add_parser("solve", help="solve an instance and write the plan")
    common(p, solving=True)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("gen", help="generate a seeded random instance")
    p.add_argument("m", type=_positive)
    p.add_argument("n", type=_positive)
    p.add_argument("--dim", type=_positive, default=2)
    p.add_argument("--weights", choices=["uniform", "rational"], default="uniform")
    p.add_argument("--max-denominator", type=_positive, default=12)
    p.add_argument("--seed", type=_seed, default=0)
    common(p, instance=False)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="check a plan against an instance")
    p.add_argument("--plan", "-p", required=True)
    common(p)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("figure", help="draw a planar plan as SVG")
    p.add_argument("--plan", "-p", required=True)
    common(p)
    p.add_argument("--width", type=_positive, default=480)
    p.add_argument("--height", type=_positive, default=480)
    p.set_defaults(func=cmd_figure)

    p = sub.add_parser("oracle", help="compare the solver with exhaustive search")
    common(p, solving=True)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("bench", help="time expanded vs compressed solves")
    p.add_argument("--sizes", default="64,128,256", help="comma list of N or MxN")
    p.add_argument("--dim", type=_positive, default=2)
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    common(p, instance=False, solving=True)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"sparse-ot: {exc}", file=sys.stderr)
        return exc.code
    except AtomBudgetExceeded as exc:
        print(f"sparse-ot: atom budget exceeded: lcm = {exc.atoms} > max atoms {exc.max_atoms}", file=sys.stderr)
        return EXIT_BUDGET
    except (FormatError, InvalidMeasure) as exc:
        print(f"sparse-ot: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except Exception as exc:  # noqa: BLE001
        print(f"sparse-ot: internal error: {exc!r}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
