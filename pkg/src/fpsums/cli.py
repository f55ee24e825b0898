"""Command line entry point: compute, verify, sweep, replay, selftest.

Exit codes: 0 success, 1 exact-check failure, 2 config or parse error,
3 resource limit.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys

from . import energy as en
from .errors import CapExceeded, ConfigError, FpError, ParseError, TooLarge
from .expsum import WeightVec, trilinear_s
from .field import make_field_ctx
from .harness.checks import run_exact_suite
from .harness.config import default_sweep_config, default_verify_config, load_config
from .harness.report import ReportRow, emit_report
from .harness.setspec import parse_set_spec
from .harness.sweep import make_row, run_asymptotic_sweep
from .sets import diff_set, prod_set

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_RESOURCE = 0, 1, 2, 3

log = logging.getLogger("fpsums")

# name -> (number of sets, function of (sets, op, strategy) returning an int)
COMPUTE = {
    "energy": (2, lambda s, op, st: en.energy(s[0], s[1], op, st).value),
    "energy3": (2, lambda s, op, st: en.energy3(s[0], s[1], op, st).value),
    "d_times": (2, lambda s, op, st: en.d_times(s[0], s[1], st).value),
    "d_times_tilde": (2, lambda s, op, st: en.d_times_tilde(s[0], s[1], st).value),
    "n_count": (3, lambda s, op, st: en.n_count(s[0], s[1], s[2], st).value),
    "n_count_nonzero": (3, lambda s, op, st: en.n_count_nonzero(s[0], s[1], s[2], st).value),
    "collinear_triples": (2, lambda s, op, st: en.collinear_triples(s[0], s[1], st).value),
    "triples_literal": (2, lambda s, op, st: en.triples_equal_products(s[0], s[1], st).value),
    "collinear_quadruples": (1, lambda s, op, st: en.collinear_quadruples(s[0], st).value),
    "r3_pivot_sum": (1, lambda s, op, st: en.r3_pivot_sum(s[0]).value),
    "prod_diff_size": (1, lambda s, op, st: prod_set(diff_set(s[0], s[0]), diff_set(s[0], s[0])).size),
}


def _cmd_compute(args) -> int:
    if args.quantity == "trilinear_s":
        return _compute_s(args)
    arity, fn = COMPUTE[args.quantity]
    ctx = make_field_ctx(args.p)
    texts = [args.set, args.set2 or args.set, args.set3 or args.set][:arity]
    sets = [parse_set_spec(ctx, t) for t in texts]
    value = fn(sets, args.op, args.strategy)
    print(json.dumps({"quantity": args.quantity, "p": args.p, "sets": texts, "op": args.op, "value": value}))
    return EXIT_OK


def _compute_s(args) -> int:
    ctx = make_field_ctx(args.p)
    texts = [args.set, args.set2 or args.set, args.set3 or args.set]
    weights = [WeightVec.unit(parse_set_spec(ctx, t)) for t in texts]
    strategy = "naive" if args.strategy == "oracle" else "fast"
    s = trilinear_s(ctx, *weights, strategy=strategy, deterministic=True)
    print(json.dumps({"quantity": "trilinear_s", "p": args.p, "sets": texts, "real": s.real, "imag": s.imag, "abs": abs(s)}))
    return EXIT_OK


def _config(args, default):
    if args.default == bool(args.config):
        raise ConfigError("give exactly one of --config or --default")
    return default() if args.default else load_config(args.config)


def _cmd_verify(args) -> int:
    cfg = _config(args, default_verify_config)
    outcomes = run_exact_suite(cfg, jobs=args.jobs)
    failed = False
    for o in outcomes:
        print(o.summary())
        for rep in o.reproducers[: args.show]:
            print("    reproducer " + json.dumps(rep))
        failed |= not o.passed
    return EXIT_FAIL if failed else EXIT_OK


def _cmd_sweep(args) -> int:
    cfg = _config(args, default_sweep_config)
    rows = run_asymptotic_sweep(cfg, jobs=args.jobs)
    emit_report(rows, args.format, args.out)
    print(f"wrote {len(rows)} rows to {args.out}")
    return EXIT_OK


def _same(a, b) -> bool:
    if isinstance(a, float) and isinstance(b, float) and math.isnan(a) and math.isnan(b):
        return True
    return a == b


def _cmd_replay(args) -> int:
    try:
        row = ReportRow.from_json(args.row)
    except (ValueError, TypeError) as exc:
        raise ParseError(f"not a report row: {exc}", args.row, 0) from exc
    fresh = make_row(row.quantity, row.p, row.family, row.seed)
    ok = _same(fresh.value, row.value) and _same(fresh.reference_value, row.reference_value)
    print(json.dumps({"quantity": row.quantity, "recorded": row.value, "replayed": fresh.value, "match": ok}))
    return EXIT_OK if ok else EXIT_FAIL


def selftest() -> list[tuple[str, bool]]:
    """Small anchored values; the two difference-product counts also go through the oracle."""
    c5, c7 = make_field_ctx(5), make_field_ctx(7)
    A = parse_set_spec(c5, "explicit:1,2")
    G = parse_set_spec(c7, "subgroup:3")
    results = [
        ("E+({1,2}) = 6", en.energy(A, A, "+").value == 6),
        ("E3+({1,2}) = 10", en.energy3(A, A, "+").value == 10),
        ("E*(G_3) = 27 at p=7", en.energy(G, G, "*").value == 27),
        ("D({1,2}) = 152", en.d_times(A, A).value == 152 == en.d_times(A, A, "oracle").value),
        ("D~({1,2}) = 8", en.d_times_tilde(A, A).value == 8 == en.d_times_tilde(A, A, "oracle").value),
        ("|(A-A)(A-A)| = 3", prod_set(diff_set(A, A), diff_set(A, A)).size == 3),
    ]
    full = parse_set_spec(make_field_ctx(3), "interval:0..3")
    w = WeightVec.unit(full)
    s = trilinear_s(full.ctx, w, w, w)
    results.append(("S(F_3) = 15", abs(s - 15) < 1e-9))
    return results


def _cmd_selftest(args) -> int:
    ok = True
    for name, passed in selftest():
        print(("PASS " if passed else "FAIL ") + name)
        ok &= passed
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fpsums", description="Exact counts and exponential sums over F_p.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="one quantity for explicit sets")
    c.add_argument("quantity", choices=sorted([*COMPUTE, "trilinear_s"]))
    c.add_argument("--p", type=int, required=True)
    c.add_argument("--set", required=True)
    c.add_argument("--set2")
    c.add_argument("--set3")
    c.add_argument("--op", default="*", help="operation for energies: + - * /")
    c.add_argument("--strategy", choices=("fast", "oracle"), default="fast")
    c.set_defaults(func=_cmd_compute)

    for name, func, help_ in (
        ("verify", _cmd_verify, "run the exact-inequality suite"),
        ("sweep", _cmd_sweep, "write ratio reports"),
    ):
        s = sub.add_parser(name, help=help_)
        s.add_argument("--config")
        s.add_argument("--default", action="store_true")
        s.add_argument("--jobs", type=int, default=1)
        s.set_defaults(func=func)
        if name == "verify":
            s.add_argument("--show", type=int, default=3, help="reproducers printed per failing check")
        else:
            s.add_argument("--out", required=True)
            s.add_argument("--format", choices=("csv", "jsonl"), default="jsonl")

    r = sub.add_parser("replay", help="recompute one JSONL report row")
    r.add_argument("--row", required=True)
    r.set_defaults(func=_cmd_replay)

    t = sub.add_parser("selftest", help="check anchored small values")
    t.set_defaults(func=_cmd_selftest)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (TooLarge, CapExceeded, MemoryError) as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (FpError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
