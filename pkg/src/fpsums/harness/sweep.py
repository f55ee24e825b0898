"""
Ratio sweeps: exact quantities against reference expressions with constant 1.

Each row is a pure function of (quantity, p, family descriptor, seed), which
is what ``replay`` relies on. Logs are natural. Nothing here passes or fails.
"""

from __future__ import annotations

import math
import time
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .. import energy as en
from ..expsum import (
    PairWeights,
    TrinomialSpec,
    WeightVec,
    cor_bound3_value,
    trilinear_s,
    trilinear_t,
    trinomial_params,
    trinomial_sum,
)
from ..field import FieldCtx, divisors, make_field_ctx
from ..sets import FpSet, diff_set, prod_set, rep_fn
from .config import RunConfig
from .report import ReportRow, ratio
from .setspec import format_descriptor, parse_descriptor, parse_family

# work limits for the per-prime subgroup rows
TRIPLES_GH_BUDGET = 2000  # pivot-histogram cost grows like (GH)^2
T_GROUPS_BUDGET = 400_000  # |F||G||H| for the O(FGH) pairwise-weight sum
T_SETS_BUDGET = 2_000_000
TRINOMIALS_PER_PRIME = 6


@dataclass(frozen=True)
class Measurement:
    value: int | float
    reference_expr: str
    reference_value: float
    range_ok: bool
    sizes: str


def _sets(ctx: FieldCtx, parts: dict, *names: str) -> list[FpSet]:
    return [parse_family(parts[n]).build(ctx) for n in names]


def _le_power(a: int, p: int, num: int, den: int) -> bool:
    """a <= p^(num/den), decided in integers."""
    return a**den <= p**num


def _rAA(A: FpSet):
    return rep_fn(A, A, "-")


def _q_d_times(ctx, parts, seed):
    (A,) = _sets(ctx, parts, "A")
    a = A.size
    return Measurement(en.d_times(A, A).value, "A^(84/13)", a ** (84 / 13), _le_power(a, ctx.p, 1, 2), f"A={a}")


def _q_prod_diff(ctx, parts, seed):
    (A,) = _sets(ctx, parts, "A")
    dd = diff_set(A, A)
    a = A.size
    return Measurement(
        prod_set(dd, dd).size, "A^(20/13) (lower bound)", a ** (20 / 13), _le_power(a, ctx.p, 1, 2), f"A={a}"
    )


def _q_e3_div(ctx, parts, seed):
    (A,) = _sets(ctx, parts, "A")
    a = A.size
    ref = a**9 * math.log(a) if a > 0 else 0.0
    return Measurement(en.energy3_fn(_rAA(A), "/").value, "A^9 ln A", ref, _le_power(a, ctx.p, 2, 3), f"A={a}")


def _q_e_div_s(ctx, parts, seed):
    A, S = _sets(ctx, parts, "A", "S")
    a, s = A.size, S.size
    ref = a**4 * s**2 / ctx.p + a**3 * s**1.5
    ok = s <= a * a and _le_power(a, ctx.p, 2, 3)
    return Measurement(
        en.energy_fn_set(_rAA(A), S, "/").value, "A^4 S^2/p + A^3 S^(3/2)", ref, ok, f"A={a};S={s}"
    )


def sample_sizes(a: int, p: int) -> list[int]:
    """Doubling ladder 1, 2, 4, ... capped at min(A^2, p), always ending at the cap."""
    cap = max(1, min(a * a, p))
    out, s = [], 1
    while s < cap:
        out.append(s)
        s *= 2
    out.append(cap)
    return out


def _q_eigen(ctx, parts, seed):
    (A,) = _sets(ctx, parts, "A")
    a = A.size
    r = _rAA(A)
    sizes = sample_sizes(a, ctx.p)
    k = 1.0
    for i, s in enumerate(sizes):
        S = parse_family(f"random:{s}:{seed + i}").build(ctx)
        k = max(k, en.energy_fn_set(r, S, "*").value / s**1.5)
    e3 = en.energy3_fn(r, "*").value
    norm = int(r.values.sum())
    ref = float(e3) ** (6 / 13) * k ** (2 / 13) * norm ** (12 / 13)
    expr = f"E3^(6/13) K^(2/13) |r|_1^(12/13); K={k!r} max over {len(sizes)} random S, sizes {sizes[0]}..{sizes[-1]}"
    return Measurement(en.energy_fn(r, "*").value, expr, ref, True, f"A={a}")


def _q_recip(ctx, parts, seed):
    (Z,) = _sets(ctx, parts, "A")
    z = Z.size
    ref = z**3.5 / math.sqrt(ctx.p) + z**2
    return Measurement(en.energy(Z, Z, "*").value, "Z^(7/2) p^(-1/2) + Z^2", ref, z < ctx.p, f"Z={z}")


def _vec_weights(sets, kind: str, seed: int):
    if kind == "unit":
        return [WeightVec.unit(s) for s in sets]
    return [WeightVec.random(s, seed + i) for i, s in enumerate(sets)]


def _pair_weights(X, Y, Z, kind: str, seed: int):
    pairs = ((X, Y), (X, Z), (Y, Z))
    if kind == "unit":
        return [PairWeights.unit(r, c) for r, c in pairs]
    return [PairWeights.random(r, c, seed + i) for i, (r, c) in enumerate(pairs)]


def _q_s_sum(ctx, parts, seed):
    X, Y, Z = _sets(ctx, parts, "X", "Y", "Z")
    wx, wy, wz = _vec_weights((X, Y, Z), parts.get("weights", "unit"), seed)
    value = abs(trilinear_s(ctx, wx, wy, wz, deterministic=True))
    ez = en.energy(Z, Z, "*").value
    ref = ctx.p**0.25 * X.size**0.75 * Y.size ** (21 / 26) * Z.size**0.5 * float(ez) ** 0.125
    return Measurement(
        value,
        "p^(1/4) X^(3/4) Y^(21/26) Z^(1/2) E(Z)^(1/8)",
        ref,
        Y.size**2 <= ctx.p,
        f"X={X.size};Y={Y.size};Z={Z.size}",
    )


def _t_value(ctx, X, Y, Z, kind, seed):
    rho, sigma, tau = _pair_weights(X, Y, Z, kind, seed)
    return abs(trilinear_t(ctx, rho, sigma, tau, deterministic=True))


def _q_t_sum(ctx, parts, seed):
    X, Y, Z = _sets(ctx, parts, "X", "Y", "Z")
    x, y, z = X.size, Y.size, Z.size
    value = _t_value(ctx, X, Y, Z, parts.get("weights", "unit"), seed)
    ref = ctx.p**0.125 * x**0.875 * (y * z) ** (47 / 52) + x * y * z**0.75
    ok = y * y <= ctx.p and z * z <= ctx.p
    return Measurement(value, "p^(1/8) X^(7/8) Y^(47/52) Z^(47/52) + X Y Z^(3/4)", ref, ok, f"X={x};Y={y};Z={z}")


def _big_gh(g: int, h: int, p: int) -> bool:
    return g * h >= p * math.log(p)


def _triples_branch(g: int, h: int, p: int) -> tuple[str, float]:
    gh = g * h
    lg = math.log(g)
    if gh**3 >= p**4:
        return "p^(1/2) G^(3/2) H^2 [GH >= p^(4/3)]", p**0.5 * g**1.5 * h**2
    if gh > p:
        return "G^(5/2) H^(5/2) p^(-1/2) + G^2 H^2 ln G [p < GH < p^(4/3)]", (gh**2.5) / p**0.5 + gh**2 * lg
    return "G^3 H ln G [GH <= p]", g**3 * h * lg


def _triples_excess(ctx, parts, count_fn):
    G, H = _sets(ctx, parts, "G", "H")
    g, h = G.size, H.size
    t = count_fn(G, H).value
    excess = float(Fraction(t) - Fraction(g**3 * h**3, ctx.p))
    expr, ref = _triples_branch(g, h, ctx.p)
    return Measurement(excess, "T - G^3H^3/p vs " + expr, ref, g >= h, f"G={g};H={h}")


def _q_triples_geom(ctx, parts, seed):
    return _triples_excess(ctx, parts, en.collinear_triples)


def _q_triples_lit(ctx, parts, seed):
    return _triples_excess(ctx, parts, en.triples_equal_products)


def _q_dtilde_groups(ctx, parts, seed):
    G, H = _sets(ctx, parts, "G", "H")
    g, h = G.size, H.size
    if _big_gh(g, h, ctx.p):
        expr, ref = "G^4 H^4 / p [GH >= p ln p]", g**4 * h**4 / ctx.p
    else:
        expr, ref = "G^3 H^3 ln G [GH < p ln p]", g**3 * h**3 * math.log(g)
    return Measurement(en.d_times_tilde(G, H).value, expr, ref, g >= h, f"G={g};H={h}")


def _q_t_groups(ctx, parts, seed):
    F, G, H = _sets(ctx, parts, "F", "G", "H")
    f, g, h = F.size, G.size, H.size
    value = _t_value(ctx, F, G, H, parts.get("weights", "unit"), seed)
    tail = f * g * h**0.75
    if _big_gh(g, h, ctx.p):
        expr, ref = "F^(7/8) G H + F G H^(3/4) [GH >= p ln p]", f**0.875 * g * h + tail
    else:
        expr, ref = "p^(1/8) (FGH)^(7/8) + F G H^(3/4) [GH < p ln p]", ctx.p**0.125 * (f * g * h) ** 0.875 + tail
    return Measurement(value, expr, ref, g >= h, f"F={f};G={g};H={h}")


def _q_trinomial(ctx, parts, seed):
    a, b, c, k, l, m, j = (int(parts[n]) for n in ("a", "b", "c", "k", "l", "m", "chi"))
    value = abs(trinomial_sum(ctx, TrinomialSpec(a, b, c, k, l, m, j), deterministic=True))
    _, _, f, g, h = trinomial_params(ctx.p, k, l, m)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        ref = cor_bound3_value(ctx.p, f, g, h)
    branch = "p^(7/8) f^(1/8)" if g * h >= ctx.p * math.log(ctx.p) else "p (f/gh)^(1/8) (ln p)^(1/8)"
    ok = f >= g >= h and all(x % ctx.p for x in (a, b, c))
    return Measurement(value, branch, ref, ok, f"f={f};g={g};h={h}")


QUANTITIES = {
    "D_times": _q_d_times,
    "ProdDiff": _q_prod_diff,
    "E3_div_rAA": _q_e3_div,
    "E_div_rAA_S": _q_e_div_s,
    "E_times_rAA_eigen": _q_eigen,
    "E_times_recip": _q_recip,
    "S_trilinear": _q_s_sum,
    "T_trilinear": _q_t_sum,
    "Ttilde_geom_excess": _q_triples_geom,
    "Ttilde_lit_excess": _q_triples_lit,
    "Dtilde_groups": _q_dtilde_groups,
    "T_groups": _q_t_groups,
    "trinomial": _q_trinomial,
}


def measure(quantity: str, p: int, family: str, seed: int) -> Measurement:
    if quantity not in QUANTITIES:
        raise KeyError(f"unknown sweep quantity {quantity!r}")
    ctx = make_field_ctx(p)
    return QUANTITIES[quantity](ctx, parse_descriptor(family), seed)


def make_row(quantity: str, p: int, family: str, seed: int, timed: bool = False) -> ReportRow:
    t0 = time.perf_counter()
    m = measure(quantity, p, family, seed)
    elapsed = round((time.perf_counter() - t0) * 1000, 3) if timed else None
    return ReportRow(
        p=p,
        family=family,
        sizes=m.sizes,
        quantity=quantity,
        value=m.value,
        reference_expr=m.reference_expr,
        reference_value=float(m.reference_value),
        ratio=ratio(m.value, m.reference_value),
        range_ok=bool(m.range_ok),
        seed=seed,
        elapsed_ms=elapsed,
    )


# -- work-item planning --------------------------------------------------------


def _set_items(p: int, text: str, seed: int, is_recip: bool) -> list[tuple]:
    ctx = make_field_ctx(p)
    a = parse_family(text).build(ctx).size
    one = format_descriptor({"A": text})
    items = [(q, p, one, seed) for q in ("D_times", "ProdDiff", "E3_div_rAA", "E_times_rAA_eigen")]
    for i, s in enumerate(sorted({max(1, a), max(1, int(a**1.5)), max(1, a * a)})):
        if s <= p:
            items.append(("E_div_rAA_S", p, format_descriptor({"A": text, "S": f"random:{s}:{seed + 101 + i}"}), seed))
    if is_recip:
        items.append(("E_times_recip", p, one, seed))
    for kind in ("unit", "random"):
        three = format_descriptor({"X": text, "Y": text, "Z": text, "weights": kind})
        items.append(("S_trilinear", p, three, seed))
        if a**3 <= T_SETS_BUDGET:
            items.append(("T_trilinear", p, three, seed))
    return items


def _prime_items(p: int, seed: int) -> list[tuple]:
    divs = divisors(p - 1)
    items = []
    for g in divs:
        for h in divs:
            if h > g:
                continue
            gh = format_descriptor({"G": f"subgroup:{g}", "H": f"subgroup:{h}"})
            items.append(("Dtilde_groups", p, gh, seed))
            if g * h <= TRIPLES_GH_BUDGET:
                items.append(("Ttilde_geom_excess", p, gh, seed))
                items.append(("Ttilde_lit_excess", p, gh, seed))
            # one F per (G, H): the largest order that fits the budget
            fits = [f for f in divs if f >= g and f * g * h <= T_GROUPS_BUDGET]
            if fits:
                fgh = format_descriptor(
                    {"F": f"subgroup:{fits[-1]}", "G": f"subgroup:{g}", "H": f"subgroup:{h}", "weights": "random"}
                )
                items.append(("T_groups", p, fgh, seed))
    rng = np.random.Generator(np.random.PCG64([seed, p]))
    for _ in range(TRINOMIALS_PER_PRIME):
        k, l, m = (int(rng.choice(divs)) for _ in range(3))
        a, b, c = (int(x) for x in rng.integers(1, p, size=3))
        j = int(rng.integers(0, p - 1))
        desc = format_descriptor({"a": a, "b": b, "c": c, "k": k, "l": l, "m": m, "chi": j})
        items.append(("trinomial", p, desc, seed))
    return items


def plan(cfg: RunConfig) -> list[tuple]:
    """All (quantity, p, family, seed) work items in a stable order."""
    items = []
    for p in cfg.primes:
        for fam in cfg.families:
            fam = fam.resolve(p)
            trials = cfg.trials if fam.is_random else 1
            for t in range(trials):
                if fam.is_random:
                    seed = fam.params[1] + t + cfg.seed * 1_000_000
                    text = fam.with_seed(seed).text
                else:
                    seed, text = cfg.seed, fam.text
                items += _set_items(p, text, seed, fam.kind == "recip-shift")
        items += _prime_items(p, cfg.seed)
    return items


def _run(item_and_timed):
    item, timed = item_and_timed
    return make_row(*item, timed=timed)


def run_asymptotic_sweep(cfg: RunConfig, jobs: int = 1) -> list[ReportRow]:
    """Every planned row, in plan order regardless of ``jobs``."""
    timed = not cfg.flags.determinism
    work = [(item, timed) for item in plan(cfg)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_run, work, chunksize=4))
    return [_run(w) for w in work]
