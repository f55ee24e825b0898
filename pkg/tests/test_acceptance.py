"""Exit criteria. Each test records one PASS/FAIL line, printed at the end of
the run, and then asserts the criterion at its stated tolerance."""

import json
import math
import random
import time

import numpy as np
import pytest
from conftest import ACCEPTANCE_LINES

from fpsums import energy as en
from fpsums import oracles
from fpsums.cli import main
from fpsums.expsum import TrinomialSpec, WeightVec, trilinear_s, trinomial_sum
from fpsums.field import divisors, is_prime, make_field_ctx
from fpsums.harness.checks import run_exact_suite
from fpsums.harness.config import default_verify_config
from fpsums.harness.report import read_jsonl
from fpsums.sets import diff_set, explicit_set, full_field, prod_set, random_set, rep_fn, subgroup


def record(n: int, ok: bool, text: str) -> None:
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} {text}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def test_c1_oracle_equivalence():
    rng = np.random.default_rng(1)
    mismatches, t0 = 0, time.perf_counter()
    for i in range(50):
        ctx = make_field_ctx(int(rng.choice([11, 31])))
        A, V, W = (random_set(ctx, int(rng.integers(1, 7)), 50 * i + j) for j in range(3))
        pairs = []
        for op in "+-*/":
            pairs.append((en.energy(A, V, op).value, oracles.enum_energy(A, V, op)))
            pairs.append((en.energy3(A, V, op).value, oracles.enum_energy3(A, V, op)))
        pairs += [
            (en.d_times(A, V).value, oracles.enum_d_times(A, V)),
            (en.d_times_tilde(A, V).value, oracles.enum_d_times_tilde(A, V)),
            (en.n_count(A, V, W).value, oracles.enum_n_count(A, V, W)),
            (en.collinear_triples(A, V).value, oracles.enum_collinear_triples(A, V)),
            (en.triples_equal_products(A, V).value, oracles.enum_triples_literal(A, V)),
            (en.collinear_quadruples(A).value, oracles.enum_collinear_quadruples(A)),
        ]
        mismatches += sum(a != b for a, b in pairs)
    elapsed = time.perf_counter() - t0
    ok = mismatches == 0 and elapsed < 120
    record(1, ok, f"oracle equivalence: 50 instances, {mismatches} mismatches, {elapsed:.1f}s")
    assert ok


def test_c2_identity_dtimes_energy_of_rAA():
    rng = np.random.default_rng(2)
    primes = [p for p in range(3, 1000) if is_prime(p)]
    bad = 0
    largest = 0
    for i in range(100):
        p = int(rng.choice(primes))
        ctx = make_field_ctx(p)
        A = random_set(ctx, int(rng.integers(1, min(60, p) + 1)), 1000 + i)
        largest = max(largest, A.size)
        left = oracles.pairs_d_times(A, A)
        right = en.energy_fn(rep_fn(A, A, "-"), "*").value
        bad += left != right
    record(2, bad == 0, f"D(A) = E(r_A-A): 100 instances, p < 1000, |A| <= {largest}, {bad} failures")
    assert bad == 0


def test_c3_worked_instance():
    ctx = make_field_ctx(5)
    A = explicit_set(ctx, [1, 2])
    dd = diff_set(A, A)
    got = {
        "d_times": (en.d_times(A, A).value, oracles.enum_d_times(A, A)),
        "d_times_tilde": (en.d_times_tilde(A, A).value, oracles.enum_d_times_tilde(A, A)),
        "E+": (en.energy(A, A, "+").value, oracles.enum_energy(A, A, "+")),
    }
    size = prod_set(dd, dd).size
    brute = len({(a * b) % 5 for a in dd for b in dd})
    ok = (
        got["d_times"] == (152, 152)
        and got["d_times_tilde"] == (8, 8)
        and got["E+"] == (6, 6)
        and size == brute == 3
        and size * got["d_times"][0] >= 2**8
    )
    record(3, ok, f"p=5 A={{1,2}}: D={got['d_times'][0]} D~={got['d_times_tilde'][0]} E+={got['E+'][0]} |(A-A)(A-A)|={size}")
    assert ok


def test_c4_sandwich_and_cauchy_link():
    outcomes = {o.name: o for o in run_exact_suite(default_verify_config())}
    sandwich = outcomes["sandwich_dtilde_dtimes"]
    cauchy = outcomes["cauchy_n_count"]
    nonzero = outcomes["cauchy_n_count_nonzero"]
    ok = sandwich.passed and cauchy.passed
    text = (
        f"sandwich {sandwich.failures}/{sandwich.instances} failures; "
        f"Cauchy link N^2 <= E*D {cauchy.failures}/{cauchy.instances} failures "
        f"(worst slack {cauchy.worst_slack}, first reproducer {json.dumps(cauchy.reproducers[:1])}); "
        f"nonzero-solution form {nonzero.failures}/{nonzero.instances} failures"
    )
    record(4, ok, text)
    assert sandwich.passed
    assert nonzero.passed
    # the literal form is stated as exact but counts zero solutions the right side does not control
    assert cauchy.passed, text


def test_c5_q_identity():
    rng = np.random.default_rng(5)
    primes = [p for p in range(3, 102) if is_prime(p)]
    bad = 0
    for i in range(30):
        p = int(rng.choice(primes))
        A = random_set(make_field_ctx(p), int(rng.integers(1, min(20, p) + 1)), 500 + i)
        bad += en.r3_pivot_sum(A).value != en.collinear_quadruples(A).value
    record(5, bad == 0, f"r3 pivot sum = Q(A): 30 instances, |A| <= 20, p <= 101, {bad} failures")
    assert bad == 0


def test_c6_subgroup_laws():
    bad = checked = 0
    for p in range(3, 1000):
        if not is_prime(p):
            continue
        ctx = make_field_ctx(p)
        for d in divisors(p - 1):
            G = subgroup(ctx, d)
            checked += 1
            bad += en.energy(G, G, "*").value != d**3 or en.energy3(G, G, "*").value != d**4
    record(6, bad == 0, f"E(G)=|G|^3, E3(G)=|G|^4: {checked} subgroups over all primes < 1000, {bad} failures")
    assert bad == 0


def test_c7_gauss_and_scaling():
    worst = 0.0
    for p in (5, 13, 101):
        ctx = make_field_ctx(p)
        for j in range(1, p - 1):
            val = abs(trinomial_sum(ctx, TrinomialSpec(1, 0, 0, 1, 1, 1, j)))
            worst = max(worst, abs(val - math.sqrt(p)) / math.sqrt(p))
    rng = random.Random(7)
    worst_scale = 0.0
    for _ in range(50):
        p = rng.choice([7, 13, 31, 101, 1009])
        ctx = make_field_ctx(p)
        a, b, c = (rng.randrange(1, p) for _ in range(3))
        k, l, m = (rng.randrange(1, 3 * p) for _ in range(3))
        j, t = rng.randrange(p - 1), rng.randrange(1, p)
        base = abs(trinomial_sum(ctx, TrinomialSpec(a, b, c, k, l, m, j)))
        scaled = TrinomialSpec(a * pow(t, k, p) % p, b * pow(t, l, p) % p, c * pow(t, m, p) % p, k, l, m, j)
        worst_scale = max(worst_scale, abs(abs(trinomial_sum(ctx, scaled)) - base) / max(base, 1.0))
    ok = worst < 1e-9 and worst_scale < 1e-9
    record(7, ok, f"Gauss sums |S|=sqrt(p): worst rel err {worst:.2e}; scaling invariance worst {worst_scale:.2e}")
    assert ok


def test_c8_trilinear_strategies():
    worst, off = 0.0, 0
    for p in (101, 1009):
        ctx = make_field_ctx(p)
        rng = np.random.default_rng(p)
        for i in range(100):
            sizes = rng.integers(1, 40 if p == 101 else 60, 3)
            sets = [random_set(ctx, int(n), 10 * i + j) for j, n in enumerate(sizes)]
            ws = [WeightVec.random(s, 7 * i + j) for j, s in enumerate(sets)]
            slow = trilinear_s(ctx, *ws, strategy="naive")
            fast = trilinear_s(ctx, *ws, strategy="fast")
            # relative 1e-6, or absolute 1e-9 when |S| < 1
            if abs(slow) >= 1:
                worst = max(worst, abs(slow - fast) / abs(slow))
                off += abs(slow - fast) > 1e-6 * abs(slow)
            else:
                off += abs(slow - fast) > 1e-9
    ctx = make_field_ctx(1009)
    ws = [WeightVec.random(random_set(ctx, 200, 90 + j), j) for j in range(3)]
    t0 = time.perf_counter()
    slow = trilinear_s(ctx, *ws, strategy="naive")
    t_naive = time.perf_counter() - t0
    t0 = time.perf_counter()
    fast = trilinear_s(ctx, *ws, strategy="fast")
    t_fast = time.perf_counter() - t0
    ok = off == 0 and t_fast < t_naive and abs(slow - fast) <= 1e-6 * abs(slow)
    record(
        8,
        ok,
        f"naive vs fast S: 200 instances, {off} outside tolerance, worst rel diff {worst:.2e}; p=1009 |X|=|Y|=|Z|=200 "
        f"naive {t_naive * 1000:.1f} ms, fast {t_fast * 1000:.1f} ms",
    )
    assert ok


def test_c9_full_field_anchor():
    errs = []
    for p in (3, 5, 7):
        ctx = make_field_ctx(p)
        w = WeightVec.unit(full_field(ctx))
        errs.append(abs(trilinear_s(ctx, w, w, w) - p * (2 * p - 1)) / (p * (2 * p - 1)))
    ok = max(errs) < 1e-9
    record(9, ok, f"S over F_p^3 = p(2p-1) for p=3,5,7: worst rel err {max(errs):.2e}")
    assert ok


@pytest.mark.slow
def test_c10_sweep_and_replay(tmp_path, capsys):
    out = tmp_path / "sweep.jsonl"
    t0 = time.perf_counter()
    assert main(["sweep", "--default", "--out", str(out), "--format", "jsonl"]) == 0
    elapsed = time.perf_counter() - t0
    rows = read_jsonl(out)
    quantities = {r.quantity for r in rows}
    required = {
        "D_times",
        "Ttilde_geom_excess",
        "Ttilde_lit_excess",
        "Dtilde_groups",
        "S_trilinear",
        "T_trilinear",
        "T_groups",
        "trinomial",
        "E_times_recip",
    }
    big_random = any(r.quantity == "D_times" and r.p == 10007 and r.range_ok for r in rows)
    lines = out.read_text().splitlines()
    sample = random.Random(10).sample(range(len(lines)), 20)
    capsys.readouterr()
    replay_ok = sum(main(["replay", "--row", lines[i]]) == 0 for i in sample)
    ok = required <= quantities and big_random and replay_ok == 20 and elapsed < 1800
    record(
        10,
        ok,
        f"sweep --default: {len(rows)} rows, {len(quantities)} quantities in {elapsed:.0f}s; "
        f"missing {sorted(required - quantities)}; replayed {replay_ok}/20 exactly",
    )
    assert ok
