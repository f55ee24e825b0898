"""
The exact-inequality suite.

Every check compares two independently computed exact integers. Any
violation is a hard failure and carries a reproducer (p, family text and the
auxiliary set specs).
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor

from .. import energy as en
from .. import oracles
from ..errors import CapExceeded, FpError
from ..field import divisors, make_field_ctx
from ..sets import diff_set, prod_set, rep_fn, subgroup
from .config import RunConfig
from .report import CheckOutcome
from .setspec import parse_family

log = logging.getLogger(__name__)

CHECK_NAMES = (
    "identity_dtimes_eq_energy_of_rAA",
    "sandwich_dtilde_dtimes",
    "cauchy_n_count",
    "cauchy_n_count_nonzero",
    "prodset_cauchy_schwarz",
    "q_identity",
    "oracle_equivalence",
    "subgroup_energies",
    "triples_literal_le_GH_dtilde",
)

SUBGROUP_PAIR_BUDGET = 4096  # |G||H| limit for the per-prime triple check
ORACLE_EQ_MAX = 6


def instances(cfg: RunConfig) -> list[tuple]:
    """Concrete work items (p, A, V, W) as set-spec texts, in a stable order."""
    out = []
    idx = 0
    for p in cfg.primes:
        for fam in cfg.families:
            fam = fam.resolve(p)
            trials = cfg.trials if fam.is_random else 1
            for t in range(trials):
                a = fam.with_seed(fam.params[1] + t + cfg.seed * 1_000_000) if fam.is_random else fam
                aux = cfg.seed * 1_000_003 + 2 * idx
                out.append((p, a.text, aux))
                idx += 1
    return out


def _aux_specs(n: int, aux: int) -> tuple[str, str]:
    return f"random:{n}:{aux}", f"random:{n}:{aux + 1}"


def check_instance(p: int, family: str, aux: int, strategy: str = "fast") -> list[tuple]:
    """All per-set checks for one instance; returns (name, ok, slack, reproducer, skipped)."""
    ctx = make_field_ctx(p)
    A = parse_family(family).build(ctx)
    vs, ws = _aux_specs(A.size, aux)
    V = parse_family(vs).build(ctx)
    W = parse_family(ws).build(ctx)
    repro = {"p": p, "family": family, "V": vs, "W": ws}
    res = []

    try:
        left = oracles.pairs_d_times(A, A)
        right = en.energy_fn(rep_fn(A, A, "-"), "*", strategy="fast").value
        res.append(("identity_dtimes_eq_energy_of_rAA", left == right, 0 if left == right else -1, repro, False))
    except CapExceeded:
        res.append(("identity_dtimes_eq_energy_of_rAA", True, None, repro, True))

    d = en.d_times(A, A, strategy).value
    dt = en.d_times_tilde(A, A, strategy).value
    slack = min(d - dt, dt + 4 * A.size**6 - d)
    res.append(("sandwich_dtilde_dtimes", slack >= 0, slack, repro, False))

    # the literal inequality also counts zero solutions and is false in general;
    # the nonzero part is the one Cauchy-Schwarz actually bounds
    n = en.n_count(A, V, W, strategy).value
    n0 = en.n_count_nonzero(A, V, W, strategy).value
    rhs = en.energy(A, A, "*", strategy).value * en.d_times(V, W, strategy).value
    res.append(("cauchy_n_count", n * n <= rhs, rhs - n * n, repro, False))
    res.append(("cauchy_n_count_nonzero", n0 * n0 <= rhs, rhs - n0 * n0, repro, False))

    dd = diff_set(A, A)
    pp = prod_set(dd, dd).size
    slack = pp * d - A.size**8
    res.append(("prodset_cauchy_schwarz", slack >= 0, slack, repro, False))

    if A.size <= en.QUAD_CAP:
        q = en.collinear_quadruples(A).value
        r3 = en.r3_pivot_sum(A).value
        res.append(("q_identity", q == r3, 0 if q == r3 else -1, repro, False))
    else:
        res.append(("q_identity", True, None, repro, True))

    if A.size <= ORACLE_EQ_MAX:
        ok = _oracle_equivalence(A, V, W)
        res.append(("oracle_equivalence", ok, 0 if ok else -1, repro, False))
    else:
        res.append(("oracle_equivalence", True, None, repro, True))
    return res


def _oracle_equivalence(A, V, W) -> bool:
    pairs = []
    for op in "+-*/":
        pairs.append((en.energy(A, V, op), en.energy(A, V, op, "oracle")))
        pairs.append((en.energy3(A, V, op), en.energy3(A, V, op, "oracle")))
    pairs += [
        (en.d_times(A, V), oracles.enum_d_times(A, V)),
        (en.d_times_tilde(A, V), en.d_times_tilde(A, V, "oracle")),
        (en.n_count(A, V, W), en.n_count(A, V, W, "oracle")),
        (en.n_count_nonzero(A, V, W), en.n_count_nonzero(A, V, W, "oracle")),
        (en.collinear_triples(A, V), en.collinear_triples(A, V, "oracle")),
        (en.triples_equal_products(A, V), en.triples_equal_products(A, V, "oracle")),
        (en.collinear_quadruples(A), en.collinear_quadruples(A, "oracle")),
    ]
    return all(int(a) == int(b) for a, b in pairs)


def check_prime(p: int) -> list[tuple]:
    """Per-prime checks over multiplicative subgroups."""
    ctx = make_field_ctx(p)
    res = []
    divs = divisors(p - 1)
    groups = {d: subgroup(ctx, d) for d in divs}
    for d, G in groups.items():
        repro = {"p": p, "family": f"subgroup:{d}"}
        e2 = en.energy(G, G, "*").value
        e3 = en.energy3(G, G, "*").value
        ok = e2 == d**3 and e3 == d**4
        res.append(("subgroup_energies", ok, 0 if ok else -1, repro, False))
    for g in divs:
        for h in divs:
            if h > g or g * h > SUBGROUP_PAIR_BUDGET:
                continue
            G, H = groups[g], groups[h]
            repro = {"p": p, "family": f"G=subgroup:{g};H=subgroup:{h}"}
            t = en.triples_equal_products(G, H).value
            bound = g * h * en.d_times_tilde(G, H).value
            res.append(("triples_literal_le_GH_dtilde", t <= bound, bound - t, repro, False))
    return res


def _run_item(item):
    kind, args = item
    try:
        return check_prime(*args) if kind == "prime" else check_instance(*args)
    except FpError as exc:
        log.warning("instance %s skipped: %s", args, exc)
        return [("__skipped__", True, None, {"args": list(args), "error": str(exc)}, True)]


def run_exact_suite(cfg: RunConfig, jobs: int = 1) -> list[CheckOutcome]:
    """Run every exact check on every configured instance."""
    items = [("instance", (p, fam, aux, cfg.flags.strategy)) for p, fam, aux in instances(cfg)]
    items += [("prime", (p,)) for p in cfg.primes]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_item, items))
    else:
        results = [_run_item(it) for it in items]
    outcomes = {name: CheckOutcome(name) for name in CHECK_NAMES}
    unbuildable = 0
    for batch in results:
        for name, ok, slack, repro, skipped in batch:
            if name == "__skipped__":
                unbuildable += 1
                continue
            if skipped:
                outcomes[name].skipped += 1
            else:
                outcomes[name].record(ok, slack, repro)
    if unbuildable:
        log.warning("%d configured instance(s) could not be built", unbuildable)
    return list(outcomes.values())

