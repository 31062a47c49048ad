"""Command-line entry point.

Exit status: 0 on success, 1 when the answer is negative (unsatisfied
assignment, no proof found, failed check), 2 on bad input or an internal
invariant failure.
"""

from __future__ import annotations

import argparse
import random
import sys

from . import jsonio
from .encoder import build_system
from .errors import CubicEncError
from .reducer import merge, reduce_degree
from .search import bounded_solutions, default_value_bound
from .theory import TheorySpec, check_proof, proof_from_json, proof_to_json, search_proof
from .witness import build_witness, extract_proof, pipeline_witness, verify


class UsageError(Exception):
    pass


def parse_axioms(text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"axioms must be comma-separated naturals: {text!r}")
    if not values or any(v < 0 for v in values) or len(set(values)) != len(values):
        raise argparse.ArgumentTypeError(f"axioms must be distinct naturals: {text!r}")
    return values


def positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return n


def _stats(args, stats: dict) -> None:
    if getattr(args, "stats", False):
        for key, value in _flatten(stats):
            print(f"{key}: {value}", file=sys.stderr)


def _flatten(d: dict, prefix: str = ""):
    for key, value in d.items():
        if isinstance(value, dict):
            yield from _flatten(value, f"{prefix}{key}.")
        else:
            yield prefix + key, value


def _theory(args) -> TheorySpec:
    return TheorySpec(args.axioms, args.target)


def _load_system(path):
    return jsonio.system_from_json(jsonio.read_json(path))


def cmd_encode(args) -> int:
    system = build_system(_theory(args), args.len, args.window, args.activation)
    jsonio.write_json(jsonio.system_to_json(system), args.output)
    _stats(args, system.stats())
    return 0


def cmd_prove(args) -> int:
    theory = _theory(args)
    proof = search_proof(theory, args.len)
    if proof is None:
        print(f"no proof of {theory.target} within {args.len} lines", file=sys.stderr)
        return 1
    jsonio.write_json(proof_to_json(theory, proof), args.output)
    return 0


def cmd_witness(args) -> int:
    system = _load_system(args.system)
    theory, proof = proof_from_json(jsonio.read_json(args.proof))
    values = build_witness(theory, proof, system)
    jsonio.write_json(jsonio.assignment_to_json(values), args.output)
    return 0


def cmd_verify(args) -> int:
    system = _load_system(args.system)
    values = jsonio.assignment_from_json(jsonio.read_json(args.assign))
    report = verify(system, values)
    jsonio.write_json(report.to_json(), args.output)
    _stats(args, system.stats())
    return 0 if report.satisfied else 1


def cmd_extract(args) -> int:
    system = _load_system(args.system)
    values = jsonio.assignment_from_json(jsonio.read_json(args.assign))
    proof = extract_proof(system, values)
    theory = system.params.theory
    jsonio.write_json(proof_to_json(theory, proof), args.output)
    return 0 if check_proof(theory, proof) else 1


def cmd_reduce(args) -> int:
    system = _load_system(args.system)
    if not system.constraints:
        raise UsageError("system has no constraints")
    do_merge = args.merge == "always" or (args.merge == "auto" and len(system.constraints) > 1)
    if do_merge:
        merged = merge(system)
        source = merged.poly
    else:
        if len(system.constraints) != 1:
            raise UsageError("--merge never needs a single-constraint system")
        merged = None
        source = system.constraints[0].poly
    reduction = reduce_degree(source, system.registry.copy(), args.prefix)
    out = jsonio.reduction_to_json(reduction, merged, source)
    jsonio.write_json(out, args.output)
    _stats(args, out["stats"])
    return 0


def cmd_pipeline(args) -> int:
    theory = _theory(args)
    if args.proof:
        given_theory, proof = proof_from_json(jsonio.read_json(args.proof))
        if set(given_theory.axioms) != set(theory.axioms) or given_theory.target != theory.target:
            raise UsageError("proof file is for a different theory")
    else:
        proof = search_proof(theory, args.len)
        if proof is None:
            print(f"no proof of {theory.target} within {args.len} lines", file=sys.stderr)
            return 1
    result = pipeline_witness(theory, proof, args.len, args.window, args.activation)
    summary = {
        "theory": {"axioms": list(theory.axioms), "target": theory.target},
        "proof": proof_to_json(theory, result.proof)["lines"],
        "stats": result.stats(),
        "system_report": result.system_report.to_json(),
        "merged_value": result.merged_value,
        "report": result.report.to_json(),
        "max_degree": result.max_degree,
    }
    jsonio.write_json(summary, args.output)
    _stats(args, result.stats())
    ok = result.system_report.satisfied and result.merged_value == 0 and result.report.satisfied
    return 0 if ok else 1


def cmd_search(args) -> int:
    system = _load_system(args.system)
    if system.params is None:
        raise UsageError("bounded search needs a system built by encode")
    bound = default_value_bound(system) if args.box is None else args.box
    theory = system.params.theory
    proofs, count = [], 0
    for values in bounded_solutions(system, bound, args.slack):
        count += 1
        proof = extract_proof(system, values)
        if not check_proof(theory, proof):
            print(f"extracted proof is invalid: {proof}", file=sys.stderr)
            return 2
        entry = proof_to_json(theory, proof)["lines"]
        if entry not in proofs:
            proofs.append(entry)
    jsonio.write_json({"box": bound, "slack": args.slack, "solutions": count,
                       "proofs": proofs}, args.output)
    return 0 if count else 1


def cmd_check(args) -> int:
    """Random completeness round trips, reproducible from the seed."""
    rng = random.Random(args.seed)
    results = []
    for _ in range(args.count):
        n_ax = rng.randint(1, 2)
        axioms = tuple(rng.sample(range(1, 11), n_ax))
        length = rng.randint(1, args.max_len)
        target = rng.randint(1, max(axioms) * 2 ** (length - 1))
        theory = TheorySpec(axioms, target)
        proof = search_proof(theory, length)
        entry = {"axioms": list(axioms), "target": target, "len": length,
                 "provable": proof is not None}
        if proof is not None:
            r = pipeline_witness(theory, proof, length)
            entry["ok"] = bool(r.system_report.satisfied and r.merged_value == 0
                               and r.report.satisfied and r.max_degree <= 3)
        results.append(entry)
    failed = sum(1 for e in results if e.get("ok") is False)
    jsonio.write_json({"seed": args.seed, "runs": results, "failed": failed}, args.output)
    return 0 if failed == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cubicenc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def theory_args(p, need_len=True):
        p.add_argument("--axioms", type=parse_axioms, required=True, help="e.g. 3,5")
        p.add_argument("--target", type=positive, required=True)
        if need_len:
            p.add_argument("--len", type=positive, required=True, help="proof length N")

    def out(p):
        p.add_argument("-o", "--output", default=None, help="output file (default stdout)")
        p.add_argument("--stats", action="store_true", help="print counts to stderr")

    p = sub.add_parser("encode", help="build the cubic constraint system")
    theory_args(p)
    p.add_argument("--window", type=positive, default=None, help="Zeckendorf digit window K")
    p.add_argument("--activation", action="store_true", help="add T*(1-u) guard activation")
    out(p)
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("prove", help="search for a shortest proof")
    theory_args(p)
    out(p)
    p.set_defaults(func=cmd_prove)

    p = sub.add_parser("witness", help="assignment from a proof")
    p.add_argument("--system", required=True)
    p.add_argument("--proof", required=True)
    out(p)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("verify", help="evaluate every constraint at an assignment")
    p.add_argument("--system", required=True)
    p.add_argument("--assign", required=True)
    out(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("extract", help="read the proof out of a satisfying assignment")
    p.add_argument("--system", required=True)
    p.add_argument("--assign", required=True)
    out(p)
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("reduce", help="merge and reduce a system to degree 3")
    p.add_argument("system")
    p.add_argument("--merge", choices=("auto", "always", "never"), default="auto")
    p.add_argument("--prefix", default="w", help="name prefix of shield variables")
    out(p)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("pipeline", help="all stages end to end")
    theory_args(p)
    p.add_argument("--window", type=positive, default=None)
    p.add_argument("--activation", action="store_true")
    p.add_argument("--proof", default=None, help="use this proof instead of searching")
    out(p)
    p.set_defaults(func=cmd_pipeline)

    p = sub.add_parser("search", help="bounded enumeration of satisfying assignments")
    p.add_argument("--system", required=True)
    p.add_argument("--box", type=int, default=None, help="bound on line values")
    p.add_argument("--slack", type=int, default=0, help="bound on guard slacks")
    out(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("check", help="random completeness round trips")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=positive, default=10)
    p.add_argument("--max-len", type=positive, default=3)
    out(p)
    p.set_defaults(func=cmd_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CubicEncError, UsageError, OSError, ValueError, KeyError, TypeError) as exc:
        print(f"cubicenc {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
