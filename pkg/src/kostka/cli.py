"""Command-line interface: ``kostka <command> ...``.

Exit codes: 0 success, 1 bad input, 2 verification failure, 3 resource guard.
"""

from __future__ import annotations

import argparse
import logging
import re
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Optional, Sequence

from ._version import __version__
from .birkhoff import birkhoff_ehrhart
from .combinatorics import Permutation, WeightVector, format_int_list, parse_int_list, partitions
from .ehrhart import EhrhartResult, ehrhart_from_hstar
from .errors import KostkaError, ResourceLimit, VerificationFailed
from .gt import GTChainSpec, forced_equality_mask, gt_ehrhart, scale_spec
from .oracles import BudgetExceeded, OracleBudget, enumerate_ssyt, enumerate_strict_patterns
from .polynomial import EvaluationPoint, lagrange_interpolate
from .posets import (
    hstar_via_linext,
    neighborhood_candidates,
    order_polytope_ehrhart,
    parse_poset,
    search_nonrealrooted,
)
from .records import ResultRecord, ResultStore

log = logging.getLogger("kostka")

EXIT_OK, EXIT_INPUT, EXIT_VERIFY, EXIT_RESOURCE = 0, 1, 2, 3


# --- output helpers -------------------------------------------------------------


def _print_record(rec: ResultRecord, as_json: bool, show_hstar: bool) -> None:
    if as_json:
        print(rec.to_json())
        return
    desc = rec.descriptor
    print("input:", ", ".join(f"{k}={_fmt(v)}" for k, v in desc.items()))
    print("dimension:", rec.dimension)
    print("Ehrhart polynomial:", rec.polynomial.to_text("n"))
    if show_hstar:
        print("h*:", "(" + ", ".join(map(str, rec.hstar)) + ")")
        for name, value in rec.flags.items():
            print(f"  {name}: {_fmt(value)}")
    if rec.transcript:
        print("transcript:", " ".join(f"L({x})={v}" for x, v in rec.transcript))
    if rec.verified is not None:
        print("verified:", "yes" if rec.verified else "no")
    for name, value in rec.extra.items():
        print(f"{name}: {_fmt(value)}")
    print(f"time: {rec.duration:.3f}s")


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "yes" if value else "no"
    if value is None:
        return "-"
    if isinstance(value, (list, tuple)):
        return format_int_list(value) if all(isinstance(v, int) for v in value) else str(value)
    return str(value)


def _timed(fn, *args, **kwargs):
    start = time.perf_counter()
    out = fn(*args, **kwargs)
    return out, time.perf_counter() - start


# --- GT commands ----------------------------------------------------------------


def _spec_from_args(args) -> GTChainSpec:
    return GTChainSpec.of(parse_int_list(args.lam), parse_int_list(args.weight), parse_int_list(args.mu or ""))


def _oracle_check(spec: GTChainSpec, result: EhrhartResult, seconds: float) -> str:
    """Recount every transcript point by brute force, within a time budget."""
    d = result.dimension
    mask = forced_equality_mask(spec)
    budget = OracleBudget(max_states=None, max_seconds=seconds)
    try:
        for x, value in result.points:
            if x == 0:
                continue
            if x > 0:
                scaled = scale_spec(spec, x)
                count = enumerate_ssyt(scaled.shape, scaled.weight, budget)
            else:
                count = (-1) ** d * enumerate_strict_patterns(spec, mask, -x, budget)
            if count != value:
                return f"MISMATCH at x={x}: oracle {count}, engine {value}"
    except BudgetExceeded as exc:
        return f"incomplete ({exc})"
    return "agrees at every transcript point"


def _gt_record(args) -> ResultRecord:
    spec = _spec_from_args(args)
    result, dt = _timed(gt_ehrhart, spec, verify=args.verify)
    extra = {}
    if getattr(args, "oracle", False):
        extra["oracle"] = _oracle_check(spec, result, args.oracle_seconds)
    return ResultRecord.from_result(result, dt, **extra)


def cmd_ehrhart(args) -> int:
    rec = _gt_record(args)
    _print_record(rec, args.json, show_hstar=False)
    if rec.extra.get("oracle", "").startswith("MISMATCH"):
        return EXIT_VERIFY
    return EXIT_OK


def cmd_hstar(args) -> int:
    args.oracle = False
    rec = _gt_record(args)
    _print_record(rec, args.json, show_hstar=True)
    return EXIT_OK


# --- posets and Birkhoff ------------------------------------------------------------


def _result_from_hstar(h, descriptor) -> EhrhartResult:
    """Ehrhart data implied by an h*-vector of length ``d + 1``."""
    d = len(h) - 1
    points = [EvaluationPoint(t, v) for t, v in enumerate(ehrhart_from_hstar(h, d + 1))]
    return EhrhartResult(d, lagrange_interpolate(points), points, None, descriptor)


def cmd_order(args) -> int:
    P = parse_poset(args.poset)
    descriptor = {"family": "poset", "spec": args.poset, "n": P.n}
    if args.action == "linext":
        h, dt = _timed(hstar_via_linext, P)
        result = _result_from_hstar(h, dict(descriptor, method="linext"))
    else:
        result, dt = _timed(
            order_polytope_ehrhart, P, verify=args.verify, descriptor=descriptor, method=args.method
        )
    rec = ResultRecord.from_result(result, dt)
    _print_record(rec, args.json, show_hstar=args.action != "ehrhart")
    return EXIT_OK


def cmd_birkhoff(args) -> int:
    result, dt = _timed(birkhoff_ehrhart, args.ell, verify=args.verify)
    rec = ResultRecord.from_result(result, dt)
    _print_record(rec, args.json, show_hstar=True)
    return EXIT_OK


# --- permutation search ---------------------------------------------------------------


def cmd_perm_search(args) -> int:
    base = Permutation(parse_int_list(args.base))
    avoid = parse_int_list(args.avoid)
    store = ResultStore(args.out) if args.out else None
    candidates = neighborhood_candidates(base, args.radius, avoid)
    log.info("%d candidates within %d transpositions avoiding %s", len(candidates), args.radius, args.avoid)

    def emit(hit):
        rec = ResultRecord.from_result(_result_from_hstar(hit.hstar, {"family": "permutation", "w": list(hit.permutation)}))
        print(rec.to_json(), flush=True)
        if store is not None:
            store.append(rec)

    start = time.perf_counter()
    hits = search_nonrealrooted(base, args.radius, avoid, jobs=args.jobs, candidates=candidates, on_hit=emit)
    print(
        f"# {len(candidates)} candidates, {len(hits)} non-real-rooted, "
        f"{time.perf_counter() - start:.1f}s",
        file=sys.stderr,
    )
    return EXIT_OK


# --- batch ----------------------------------------------------------------------------

_N_EXPR = re.compile(r"\(\s*N\s*([+-]\s*\d+)?\s*\)|N\s*([+-]\s*\d+)?")


def expand_weight_pattern(pattern: str, n: int) -> tuple:
    """Substitute ``N`` in a weight pattern and parse it.

    ``"1^N"`` and ``"2,1^(N-2)"`` are the intended forms; ``N`` may carry a
    single ``+k`` or ``-k`` offset, with or without parentheses.
    """

    def sub(m):
        offset = m.group(1) or m.group(2) or "0"
        value = n + int(offset.replace(" ", ""))
        if value < 0:
            raise ValueError(f"weight pattern {pattern!r} is negative at N={n}")
        return str(value)

    return parse_int_list(_N_EXPR.sub(sub, pattern))


def _batch_one(item):
    lam, w, verify = item
    spec = GTChainSpec.of(lam, w)
    try:
        result, dt = _timed(gt_ehrhart, spec, verify=verify)
    except KostkaError as exc:
        return None, f"{type(exc).__name__}: {exc}"
    return ResultRecord.from_result(result, dt).to_json(), None


def cmd_batch(args) -> int:
    w = expand_weight_pattern(args.weight_pattern, args.size)
    if sum(w) != args.size:
        raise ValueError(f"weight {format_int_list(w)} has total {sum(w)}, not {args.size}")
    store = ResultStore(args.out)
    todo = []
    skipped = 0
    for lam in partitions(args.size):
        desc = {"family": "gt", "lambda": list(lam), "mu": [], "w": list(WeightVector(w).stripped())}
        if desc in store:
            skipped += 1
            continue
        todo.append((tuple(lam), w, args.verify))
    log.info("%d inputs to compute, %d already stored", len(todo), skipped)
    failures = 0
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = pool.map(_batch_one, todo, chunksize=1)
            failures = _drain(todo, results, store)
    else:
        failures = _drain(todo, map(_batch_one, todo), store)
    print(f"# computed {len(todo) - failures}, skipped {skipped}, failed {failures}", file=sys.stderr)
    return EXIT_OK


def _drain(todo, results, store) -> int:
    failures = 0
    for (lam, w, _), (line, err) in zip(todo, results):
        if line is None:
            failures += 1
            print(f"# {format_int_list(lam)} / {format_int_list(w)}: {err}", file=sys.stderr)
            continue
        store.append(ResultRecord.from_json(line))
        print(line, flush=True)
    return failures


# --- parser -----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kostka", description="Exact Ehrhart polynomials of GT, order and Birkhoff polytopes.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def gt_inputs(p):
        p.add_argument("--lambda", dest="lam", required=True, help="outer shape, e.g. 4,3,2,1")
        p.add_argument("--mu", default="", help="inner shape for skew polytopes")
        p.add_argument("-w", "--weight", required=True, help="weight, e.g. 1,1,1 or 2,1^8")
        p.add_argument("--json", action="store_true", help="print a JSON result record")
        p.add_argument("--verify", action=argparse.BooleanOptionalAction, default=True,
                       help="check the polynomial at unused points (default: on)")

    p = sub.add_parser("ehrhart", help="Ehrhart polynomial of a GT polytope")
    gt_inputs(p)
    p.add_argument("--oracle", action="store_true", help="recount transcript points by brute force")
    p.add_argument("--oracle-seconds", type=float, default=60.0, help="time budget for --oracle")
    p.set_defaults(func=cmd_ehrhart)

    p = sub.add_parser("hstar", help="h*-vector and coefficient properties of a GT polytope")
    gt_inputs(p)
    p.set_defaults(func=cmd_hstar)

    p = sub.add_parser("order", help="order polytope of a poset")
    p.add_argument("action", choices=["ehrhart", "hstar", "linext"])
    p.add_argument("--poset", required=True, help="chain:n, antichain:n, fence:n, shape:4,3,2,1, perm:2,4,1,3 or file:path")
    p.add_argument("--method", choices=["auto", "frontier", "ideals"], default="auto",
                   help="counting backend for the reciprocity path")
    p.add_argument("--json", action="store_true")
    p.add_argument("--verify", action=argparse.BooleanOptionalAction, default=True)
    p.set_defaults(func=cmd_order)

    p = sub.add_parser("birkhoff", help="Ehrhart polynomial of the Birkhoff polytope B_ell")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.add_argument("--verify", action=argparse.BooleanOptionalAction, default=True)
    p.set_defaults(func=cmd_birkhoff)

    p = sub.add_parser("perm-search", help="non-real-rooted permutation posets near a base permutation")
    p.add_argument("--base", required=True, help="one-line notation, e.g. 2,4,1,3")
    p.add_argument("--radius", type=int, default=1)
    p.add_argument("--avoid", default="4,3,2,1", help="pattern to avoid (default 4,3,2,1)")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", help="append finds to this JSONL store")
    p.set_defaults(func=cmd_perm_search)

    p = sub.add_parser("batch", help="all straight shapes of one size with a weight pattern")
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--weight-pattern", required=True, help='e.g. "1^N" or "2,1^(N-2)"')
    p.add_argument("--out", default=None, help="JSONL store (default: $KOSTKA_STORE or ./kostka_results.jsonl)")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--verify", action=argparse.BooleanOptionalAction, default=True)
    p.set_defaults(func=cmd_batch)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except VerificationFailed as exc:
        print(f"kostka: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except ResourceLimit as exc:
        print(f"kostka: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (KostkaError, ValueError, OSError) as exc:
        print(f"kostka: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
