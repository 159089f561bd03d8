"""Command-line entry point; every command prints one RunReport."""

from __future__ import annotations

import argparse
import logging
import sys
import time
from math import gcd

from .canonical import build_Bk, build_Ek
from .constructions import build_theorem1, build_theorem4
from .errors import InfeasibleForced, InvalidArgument, OutOfRange, PreconditionViolated, SearchBudgetExceeded
from .primes import build_prime_table, find_lemma1_witnesses, gap_ratio, is_squarefree, table_with_primes
from .report import RunReport, cache_lookup, cache_store, request_key
from .solver import BUDGET_EXCEEDED, DEFAULT_NODE_BUDGET, BRUTEFORCE_MAX_N, SolveRequest, f_bruteforce, f_exact
from .verification import (
    count_consecutive_coprime,
    count_pattern_direct,
    crt_count_pattern,
    lemma_by_name,
    verify_block_lemma,
    verify_proposition,
)

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

log = logging.getLogger("coprime_extremal")


class _Outcome:
    def __init__(self, result: dict, code: int = EXIT_OK, rows: list[dict] | None = None):
        self.result = result
        self.code = code
        self.rows = rows


def _checks_code(checks: dict) -> int:
    return EXIT_OK if all(checks.values()) else EXIT_FAILED


def _table_for(count: int):
    return table_with_primes(count)


# ---- commands ----------------------------------------------------------


def cmd_primes(args) -> _Outcome:
    table = build_prime_table(args.limit)
    rows = [
        {"i": i, "prime": q, "gap": table.gaps[i - 1] if i <= len(table.gaps) else None}
        for i, q in enumerate(table.primes, start=1)
    ]
    return _Outcome({"limit": table.limit, "count": len(table), "primes": list(table.primes)}, rows=rows)


def cmd_pintz(args) -> _Outcome:
    table = _table_for(args.tmax + 2 * args.l + 1)
    found = find_lemma1_witnesses(table, args.l, args.strict, args.tmax)
    rows = []
    for t in found:
        rows.append({
            "t": t,
            "p_t": table.p(t),
            "p_t_plus_2l_minus_1": table.p(t + 2 * args.l - 1),
            "p_t_plus_2l": table.p(t + 2 * args.l),
            "gap_ratio": gap_ratio(table, t, args.l),
        })
    return _Outcome({"l": args.l, "strict": args.strict, "t_max": args.tmax, "witnesses": found}, rows=rows)


def cmd_solve(args) -> _Outcome:
    request = SolveRequest(
        n=args.n, k=args.k, forced=tuple(args.force or ()), escape_Ek=args.escape_ek,
        node_budget=args.budget, canonical_witness=args.canonical,
    )
    if args.oracle and request.forced:
        raise InvalidArgument("--oracle cannot be combined with --force")
    if args.oracle and request.n > BRUTEFORCE_MAX_N:
        raise InvalidArgument(f"--oracle needs n <= {BRUTEFORCE_MAX_N}")
    res = f_exact(request)
    result = {
        "value": res.value,
        "witness": res.witness,
        "nodes_explored": res.nodes_explored,
        "status": res.status,
        "bounds": list(res.bounds) if res.bounds else None,
    }
    code = EXIT_BUDGET if res.status == BUDGET_EXCEEDED else EXIT_OK
    if args.oracle:
        oracle = f_bruteforce(request.n, request.k, request.escape_Ek)
        result["oracle_value"] = oracle
        result["checks"] = {"matches_oracle": res.status != BUDGET_EXCEEDED and oracle == res.value}
        if code == EXIT_OK:
            code = _checks_code(result["checks"])
    return _Outcome(result, code)


def cmd_canonical(args) -> _Outcome:
    table = _table_for(args.k + 1)
    rep = (build_Ek if args.set == "ek" else build_Bk)(table, args.k, args.n)
    return _Outcome({
        "kind": rep.kind, "k": rep.k, "n": rep.n, "primes": list(rep.primes), "size": rep.size,
        "density_exact": rep.density_exact, "prefix_density": rep.prefix_density, "members": rep.set,
    })


def _precondition_failure(exc: PreconditionViolated) -> _Outcome:
    return _Outcome({"checks": {"preconditions_hold": False}, "error": str(exc)}, EXIT_FAILED)


def cmd_construct_t1(args) -> _Outcome:
    table = _table_for(args.t + 2 * args.l + 1)
    try:
        rep = build_theorem1(table, args.t, args.l, args.n)
    except PreconditionViolated as exc:
        return _precondition_failure(exc)
    result = {
        "t": rep.t, "l": rep.l, "n": rep.n, "k": rep.k,
        "sizes": {name: len(getattr(rep, name)) for name in ("B", "C", "D", "Dprime", "A", "E")},
        "C": rep.C, "D": rep.D, "Dprime": rep.Dprime,
        "delta": rep.delta, "clique_bound": rep.clique_bound,
        "A_not_subset_E": rep.A_not_subset_E, "checks": rep.checks,
    }
    return _Outcome(result, _checks_code(rep.checks))


def cmd_construct_t4(args) -> _Outcome:
    table = _table_for(args.k + 8)
    try:
        while True:
            try:
                rep = build_theorem4(table, args.k, args.n)
                break
            except OutOfRange:
                table = _table_for(2 * len(table))
    except PreconditionViolated as exc:
        return _precondition_failure(exc)
    result = {
        "k": rep.k, "n": rep.n, "l": rep.l, "special": rep.special, "size": len(rep.A),
        "E_size": rep.E_size, "gap": rep.gap, "normalized_gap": rep.normalized_gap, "checks": rep.checks,
    }
    return _Outcome(result, _checks_code(rep.checks))


def cmd_verify_block(args) -> _Outcome:
    res = verify_block_lemma(lemma_by_name(args.name), args.kmin, args.kmax)
    result = {"name": res.lemma, "k_min": res.k_min, "k_max": res.k_max, "holds": res.holds,
              "counterexample": None}
    if res.counterexample is not None:
        k, subset = res.counterexample
        result["counterexample"] = {"k": k, "subset": list(subset)}
    return _Outcome(result, EXIT_OK if res.holds else EXIT_FAILED)


def cmd_verify_counts(args) -> _Outcome:
    mismatches = []
    checked = {"consecutive": 0, "five_offsets": 0}
    for a in range(1, args.max_a + 1):
        if not is_squarefree(a):
            continue
        if a % 2 == 1:
            checked["consecutive"] += 1
            direct, formula = count_consecutive_coprime(a), crt_count_pattern(a, (0, 1))
            if direct != formula:
                mismatches.append({"a": a, "pattern": "0,1", "direct": direct, "formula": formula})
        if gcd(a, 6) == 1:
            checked["five_offsets"] += 1
            offs = (0, 1, 2, 3, 5)
            direct, formula = count_pattern_direct(a, offs), crt_count_pattern(a, offs)
            if direct != formula:
                mismatches.append({"a": a, "pattern": "0,1,2,3,5", "direct": direct, "formula": formula})
    holds = not mismatches
    return _Outcome({"max_a": args.max_a, "checked": checked, "mismatches": mismatches, "holds": holds},
                    EXIT_OK if holds else EXIT_FAILED)


def cmd_verify_proposition(args) -> _Outcome:
    table = _table_for(args.k + 1)
    res = verify_proposition(table, args.k, args.a, args.n, args.budget)
    return _Outcome(
        {"k": res.k, "a": res.a, "n": res.n, "forced_max": res.forced_max, "bound": res.bound,
         "holds": res.holds, "witness": list(res.witness)},
        EXIT_OK if res.holds else EXIT_FAILED,
    )


def cmd_gap(args) -> _Outcome:
    if args.nmin < 1 or args.nmax < args.nmin:
        raise InvalidArgument(f"invalid range [{args.nmin}, {args.nmax}]")
    table = _table_for(args.k + 1)
    rows = []
    for n in range(args.nmin, args.nmax + 1):
        e_size = build_Ek(table, args.k, n).size
        res = f_exact(SolveRequest(n, args.k, escape_Ek=True, node_budget=args.budget)).require_exact()
        rows.append({"n": n, "E_size": e_size, "escape_max": res.value, "gap": e_size - res.value})
    return _Outcome({"k": args.k, "rows": rows}, rows=rows)


# ---- parser ------------------------------------------------------------


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--no-cache", action="store_true", help="bypass the result cache")

    parser = argparse.ArgumentParser(prog="coprime-extremal", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("primes", parents=[common])
    p.add_argument("--limit", type=_positive, required=True)
    p.set_defaults(func=cmd_primes)

    p = sub.add_parser("pintz", parents=[common])
    p.add_argument("--l", type=_positive, required=True)
    p.add_argument("--tmax", type=_positive, required=True)
    p.add_argument("--strict", action="store_true")
    p.set_defaults(func=cmd_pintz)

    p = sub.add_parser("solve", parents=[common])
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--force", type=_positive, nargs="+")
    p.add_argument("--escape-ek", action="store_true")
    p.add_argument("--budget", type=_positive, default=DEFAULT_NODE_BUDGET)
    p.add_argument("--oracle", action="store_true")
    p.add_argument("--canonical", action="store_true")
    p.set_defaults(func=cmd_solve, cacheable=True)

    p = sub.add_parser("canonical", parents=[common])
    p.add_argument("--set", choices=("ek", "bk"), required=True)
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--n", type=_positive, required=True)
    p.set_defaults(func=cmd_canonical)

    construct = sub.add_parser("construct").add_subparsers(dest="which", required=True)
    p = construct.add_parser("t1", parents=[common])
    p.add_argument("--t", type=_positive, required=True)
    p.add_argument("--l", type=_positive, required=True)
    p.add_argument("--n", type=_positive, required=True)
    p.set_defaults(func=cmd_construct_t1)
    p = construct.add_parser("t4", parents=[common])
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--n", type=_positive, required=True)
    p.set_defaults(func=cmd_construct_t4)

    verify = sub.add_parser("verify").add_subparsers(dest="which", required=True)
    p = verify.add_parser("block-lemma", parents=[common])
    p.add_argument("--name", required=True)
    p.add_argument("--kmin", type=_nonneg, default=0)
    p.add_argument("--kmax", type=_nonneg, required=True)
    p.set_defaults(func=cmd_verify_block)
    p = verify.add_parser("counts", parents=[common])
    p.add_argument("--max-a", type=_positive, required=True)
    p.set_defaults(func=cmd_verify_counts)
    p = verify.add_parser("proposition", parents=[common])
    p.add_argument("--k", type=int, choices=(1, 2, 3), required=True)
    p.add_argument("--a", type=_positive, required=True)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--budget", type=_positive, default=DEFAULT_NODE_BUDGET)
    p.set_defaults(func=cmd_verify_proposition)

    p = sub.add_parser("gap", parents=[common])
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--nmin", type=_positive, required=True)
    p.add_argument("--nmax", type=_positive, required=True)
    p.add_argument("--budget", type=_positive, default=DEFAULT_NODE_BUDGET)
    p.set_defaults(func=cmd_gap)
    return parser


_NON_PARAMS = {"func", "format", "no_cache", "cacheable", "command", "which"}


def _command_name(args) -> str:
    return f"{args.command} {args.which}" if getattr(args, "which", None) else args.command


def run_cli(argv: list[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    logging.basicConfig(level=logging.WARNING, stream=sys.stderr, format="%(levelname)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK

    command = _command_name(args)
    params = {k: v for k, v in sorted(vars(args).items()) if k not in _NON_PARAMS}
    start = time.perf_counter()
    key = None
    cached = None
    if getattr(args, "cacheable", False) and not args.no_cache:
        key = request_key({"command": command, "parameters": params})
        cached = cache_lookup(key)
    if cached is not None:
        report = cached
        report.cache_hit = True
        report.runtime_ms = int((time.perf_counter() - start) * 1000)
        code = _code_from_result(report.result)
    else:
        try:
            outcome = args.func(args)
        except (InvalidArgument, InfeasibleForced, OutOfRange) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE
        except SearchBudgetExceeded as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_BUDGET
        report = RunReport(command, params, outcome.result,
                           runtime_ms=int((time.perf_counter() - start) * 1000), rows=outcome.rows)
        code = outcome.code
        if key is not None and code != EXIT_BUDGET:
            cache_store(key, report)

    if args.format == "csv":
        stdout.write(report.to_csv())
    else:
        stdout.write(report.to_json() + "\n")
    return code


def _code_from_result(result: dict) -> int:
    if result.get("status") == BUDGET_EXCEEDED:
        return EXIT_BUDGET
    checks = result.get("checks")
    if isinstance(checks, dict) and not all(checks.values()):
        return EXIT_FAILED
    return EXIT_OK


def main() -> None:
    sys.exit(run_cli())
