"""
Exact counting quantities: energies, difference-product counts, collinear
triples and quadruples, N-counts and unit-line incidences.

Every count is available through ``strategy="fast"`` (representation
functions and exact convolutions) and ``strategy="oracle"``, which walks the
oracle ladder in :mod:`fpsums.oracles`: literal tuple enumeration when the
instance is under the enumeration cap, otherwise the pair-product tier where
one exists, otherwise :class:`~fpsums.errors.CapExceeded`.

Conventions: wherever a quantity is written as a fraction, tuples with a
zero denominator are excluded; wherever it is written as a product, zero
products are counted (``d_times`` includes them, ``d_times_tilde`` does not
by definition).
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from . import oracles
from .errors import CapExceeded
from .field import mult_convolve, power_sum
from .sets import FpSet, RepFn, check_same_ctx, normalize_op, op_convolve, rep_fn

QUAD_CAP = 40


@dataclass(frozen=True)
class CountResult:
    value: int
    strategy: str
    elapsed: float

    def __int__(self) -> int:
        return self.value


def _timed(strategy: str, fn, *args) -> CountResult:
    t0 = time.perf_counter()
    value = int(fn(*args))
    return CountResult(value, strategy, time.perf_counter() - t0)


def _dispatch(strategy: str, fast, ladder, *args) -> CountResult:
    if strategy == "fast":
        return _timed("fast", fast, *args)
    if strategy != "oracle":
        raise ValueError(f"unknown strategy {strategy!r}")
    last = None
    for tier in ladder:
        try:
            return _timed("oracle", tier, *args)
        except CapExceeded as exc:
            last = exc
    raise last


# -- set energies -------------------------------------------------------------


def _energy_fast(U, V, op):
    return power_sum(rep_fn(U, V, op).values, 2)


def _energy3_fast(U, V, op):
    return power_sum(rep_fn(U, V, op).values, 3)


def energy(U: FpSet, V: FpSet, op: str, strategy: str = "fast") -> CountResult:
    """E^op(U, V): quadruples with u1 op v1 = u2 op v2."""
    check_same_ctx(U, V)
    op = normalize_op(op)
    return _dispatch(strategy, _energy_fast, [oracles.enum_energy], U, V, op)


def energy3(U: FpSet, V: FpSet, op: str, strategy: str = "fast") -> CountResult:
    """E_3^op(U, V): the third moment of the representation function."""
    check_same_ctx(U, V)
    op = normalize_op(op)
    return _dispatch(strategy, _energy3_fast, [oracles.enum_energy3], U, V, op)


# -- function energies --------------------------------------------------------


def _self_convolve(F: RepFn, op: str):
    return op_convolve(F.ctx, F.values, F.values, op)


def energy_fn(F: RepFn, op: str, strategy: str = "fast") -> CountResult:
    """sum_lam c(lam)^2 with c(lam) = sum_{x op y = lam} F(x) F(y)."""
    op = normalize_op(op)
    return _dispatch(
        strategy, lambda F, op: power_sum(_self_convolve(F, op), 2), [oracles.enum_energy_fn], F, op
    )


def energy3_fn(F: RepFn, op: str, strategy: str = "fast") -> CountResult:
    op = normalize_op(op)
    return _dispatch(
        strategy, lambda F, op: power_sum(_self_convolve(F, op), 3), [oracles.enum_energy3_fn], F, op
    )


def energy_fn_set(F: RepFn, S: FpSet, op: str, strategy: str = "fast") -> CountResult:
    """sum_lam (sum_{x op u = lam, u in S} F(x))^2."""
    check_same_ctx(F, S)
    op = normalize_op(op)

    def fast(F, S, op):
        return power_sum(op_convolve(F.ctx, F.values, S.indicator(), op), 2)

    return _dispatch(strategy, fast, [oracles.enum_energy_fn_set], F, S, op)


# -- difference-product counts ------------------------------------------------


def _d_times_fast(U, V):
    r = rep_fn(U, V, "-")
    return power_sum(mult_convolve(U.ctx, r.values, r.values), 2)


def d_times(U: FpSet, V: FpSet, strategy: str = "fast") -> CountResult:
    """D^x(U, V): (u1-v1)(u2-v2) = (u3-v3)(u4-v4), zero products included."""
    check_same_ctx(U, V)
    return _dispatch(strategy, _d_times_fast, [oracles.enum_d_times, oracles.pairs_d_times], U, V)


def _d_tilde_fast(U, V):
    ru = rep_fn(U, U, "-")
    rv = rep_fn(V, V, "-")
    m = mult_convolve(U.ctx, ru.values, rv.values)
    return power_sum(m[1:], 2)


def d_times_tilde(U: FpSet, V: FpSet, strategy: str = "fast") -> CountResult:
    """D~^x(U, V): (u1-u2)(v1-v2) = (u3-u4)(v3-v4) != 0."""
    check_same_ctx(U, V)
    return _dispatch(strategy, _d_tilde_fast, [oracles.enum_d_times_tilde], U, V)


def _n_count_fast(U, V, W):
    t = rep_fn(V, W, "-")
    return power_sum(mult_convolve(U.ctx, U.indicator(), t.values), 2)


def n_count(U: FpSet, V: FpSet, W: FpSet, strategy: str = "fast") -> CountResult:
    """N(U, V, W): u1(v1 - w1) = u2(v2 - w2)."""
    check_same_ctx(U, V, W)
    return _dispatch(strategy, _n_count_fast, [oracles.enum_n_count], U, V, W)


def _n_count_nonzero_fast(U, V, W):
    t = rep_fn(V, W, "-")
    return power_sum(mult_convolve(U.ctx, U.indicator(), t.values)[1:], 2)


def n_count_nonzero(U: FpSet, V: FpSet, W: FpSet, strategy: str = "fast") -> CountResult:
    """N restricted to u1(v1 - w1) = u2(v2 - w2) != 0.

    This is the part of N that is bounded by E^x(U) D^x(V, W) through
    Cauchy-Schwarz; the zero solutions are not.
    """
    check_same_ctx(U, V, W)
    return _dispatch(strategy, _n_count_nonzero_fast, [oracles.enum_n_count_nonzero], U, V, W)


# -- collinear triples and quadruples -----------------------------------------


def _pivot_histograms(U: FpSet, V: FpSet, key_fn, power: int) -> int:
    """sum over pivots (u1, v1) of sum_key n(key)^power.

    key_fn(du, dv) receives the coordinate differences pivot - point as
    arrays of shape (|V| pivots, |U| points, |V| points) for one fixed u1,
    and returns (keys, valid) of the same shape.
    """
    p = U.p
    nv = V.size
    if U.size == 0 or nv == 0:
        return 0
    pivot_offset = (np.arange(nv, dtype=np.int64) * p)[:, None, None]
    total = 0
    for u1 in U.elements:
        du = np.broadcast_to(((u1 - U.elements) % p)[None, :, None], (nv, U.size, nv))
        dv = np.broadcast_to(((V.elements[:, None] - V.elements[None, :]) % p)[:, None, :], (nv, U.size, nv))
        keys, valid = key_fn(du, dv)
        flat = (keys + pivot_offset)[valid]
        counts = np.bincount(flat, minlength=nv * p)
        total += power_sum(counts, power)
    return total


def _triples_geom_fast(U, V):
    inv = U.ctx.inverse_table()
    p = U.p

    def slope(du, dv):
        return (dv * inv[du]) % p, (du != 0) & (dv != 0)

    return _pivot_histograms(U, V, slope, 2)


def _triples_literal_fast(U, V):
    p = U.p

    def product_key(du, dv):
        c = (du * dv) % p
        return c, c != 0

    return _pivot_histograms(U, V, product_key, 2)


def collinear_triples(U: FpSet, V: FpSet, strategy: str = "fast") -> CountResult:
    """Ordered triples of points of U x V on a common line of finite nonzero slope.

    Counts solutions of (v1-v2)(u1-u3) = (v1-v3)(u1-u2) with both sides
    nonzero; point 2 may equal point 3.
    """
    check_same_ctx(U, V)
    return _dispatch(strategy, _triples_geom_fast, [oracles.enum_collinear_triples], U, V)


def triples_equal_products(U: FpSet, V: FpSet, strategy: str = "fast") -> CountResult:
    """Solutions of (u1-u2)(v1-v2) = (u1-u3)(v1-v3) != 0, read literally."""
    check_same_ctx(U, V)
    return _dispatch(strategy, _triples_literal_fast, [oracles.enum_triples_literal], U, V)


def _check_quad_cap(A: FpSet, cap: int) -> None:
    if A.size > cap:
        raise CapExceeded(f"|A| = {A.size} exceeds the collinear-quadruple cap {cap}")


def _quadruples_fast(A):
    inv = A.ctx.inverse_table()
    p = A.p

    def ratio(da, db):
        # pivot (a, b), point (c, d): z = (c - a)/(d - b); here da = a - c, db = b - d
        return (da * inv[db]) % p, db != 0

    return _pivot_histograms(A, A, ratio, 3)


def collinear_quadruples(A: FpSet, strategy: str = "fast", cap: int = QUAD_CAP) -> CountResult:
    """Q(A): ordered 4-tuples of points of A x A with equal ratios to the first point."""
    _check_quad_cap(A, cap)
    return _dispatch(strategy, _quadruples_fast, [oracles.enum_collinear_quadruples], A)


def r3_pivot_sum(A: FpSet, cap: int = QUAD_CAP) -> CountResult:
    """sum_{a, b in A} sum_z r^3_{(A-a)/(A-b)}(z), built from division representation functions."""
    _check_quad_cap(A, cap)
    t0 = time.perf_counter()
    total = 0
    for a in A.elements:
        shifted_a = A.shift(-int(a))
        for b in A.elements:
            total += power_sum(rep_fn(shifted_a, A.shift(-int(b)), "/").values, 3)
    return CountResult(total, "fast", time.perf_counter() - t0)


def unit_line_incidences(U: FpSet, V: FpSet, u: int, v: int) -> int:
    """#{(x, y) in U x V : u x + v y = 1}."""
    ctx = check_same_ctx(U, V)
    p = ctx.p
    u %= p
    v %= p
    if v:
        ys = ((1 - u * U.elements) * ctx.inverse(v)) % p
        return int(V.mask[ys].sum())
    if u:
        return V.size if ctx.inverse(u) in U else 0
    return 0
