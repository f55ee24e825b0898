"""
Brute-force reference counts.

Two tiers, both independent of the convolution machinery in ``field``:

* ``enum_*`` enumerate the defining tuples literally (broadcast equality
  tests over every tuple), guarded by small caps;
* ``pairs_*`` enumerate one side of the defining equation and histogram it,
  which reaches moderate sizes (|U||V| up to a few thousand).

Modular inverses here come from ``pow(x, -1, p)`` rather than the context's
discrete-log tables.
"""

from __future__ import annotations

from itertools import product

import numpy as np

from .errors import CapExceeded
from .sets import FpSet, RepFn, check_same_ctx, normalize_op

ENUM_PAIR_CAP = 2048  # quadruple-type counts: (|U||V|)^2 comparisons
ENUM_TRIPLE_CAP = 64  # sextuple counts: (|U||V|)^3 comparisons
ENUM_DTIMES_CAP = 40  # 8-tuples: (|U||V|)^4 comparisons
ENUM_DTILDE_CAP = 2048  # |U|^2 |V|^2 left-hand values, squared
ENUM_NCOUNT_CAP = 4096  # |U||V||W| left-hand values, squared
ENUM_QUAD_CAP = 8  # |A|^8 tuples
PAIRS_DTIMES_CAP = 4096  # |U||V| differences, products of all pairs

_CHUNK = 1 << 22


def _inverses(values: np.ndarray, p: int) -> np.ndarray:
    return np.array([pow(int(v), -1, p) for v in values], dtype=np.int64)


def _count_equal_pairs(values: np.ndarray, weights=None, nonzero: bool = False) -> int:
    """#{(i, j) : values[i] == values[j]} (weighted by w_i w_j), by direct comparison."""
    values = np.asarray(values, dtype=np.int64).ravel()
    n = values.size
    if n == 0:
        return 0
    w = None if weights is None else np.asarray(weights, dtype=object).ravel()
    rows = max(1, _CHUNK // n)
    total = 0
    for start in range(0, n, rows):
        block = values[start : start + rows]
        eq = block[:, None] == values[None, :]
        if nonzero:
            eq &= (block != 0)[:, None]
        if w is None:
            total += int(eq.sum())
        else:
            inner = eq.astype(object) @ w
            total += int(np.dot(w[start : start + rows], inner))
    return total


def _pairs(U: FpSet, V: FpSet):
    uu, vv = np.meshgrid(U.elements, V.elements, indexing="ij")
    return uu.ravel(), vv.ravel()


def _op_values(x: np.ndarray, y: np.ndarray, op: str, p: int) -> tuple[np.ndarray, np.ndarray]:
    """x op y elementwise, with a validity mask (division by zero is invalid)."""
    if op == "+":
        return (x + y) % p, np.ones(x.size, dtype=bool)
    if op == "-":
        return (x - y) % p, np.ones(x.size, dtype=bool)
    if op == "*":
        return (x * y) % p, np.ones(x.size, dtype=bool)
    ok = y % p != 0
    out = np.zeros(x.size, dtype=np.int64)
    out[ok] = (x[ok] * _inverses(y[ok], p)) % p
    return out, ok


def _cap(n: int, cap: int, what: str) -> None:
    if n > cap:
        raise CapExceeded(f"{what}: size {n} exceeds oracle cap {cap}")


def enum_energy(U: FpSet, V: FpSet, op: str) -> int:
    """Quadruples (u1, v1, u2, v2) with u1 op v1 = u2 op v2."""
    check_same_ctx(U, V)
    op = normalize_op(op)
    _cap(U.size * V.size, ENUM_PAIR_CAP, "energy")
    u, v = _pairs(U, V)
    vals, ok = _op_values(u, v, op, U.p)
    return _count_equal_pairs(vals[ok])


def enum_energy3(U: FpSet, V: FpSet, op: str) -> int:
    """Sextuples with u1 op v1 = u2 op v2 = u3 op v3."""
    check_same_ctx(U, V)
    op = normalize_op(op)
    _cap(U.size * V.size, ENUM_TRIPLE_CAP, "energy3")
    u, v = _pairs(U, V)
    vals, ok = _op_values(u, v, op, U.p)
    vals = vals[ok]
    eq = (vals[:, None, None] == vals[None, :, None]) & (vals[None, :, None] == vals[None, None, :])
    return int(eq.sum())


def _support_pairs(F: RepFn, G: RepFn | None = None):
    xs = F.support()
    ys = xs if G is None else G.support()
    gx = F.values if G is None else G.values
    xx, yy = np.meshgrid(xs, ys, indexing="ij")
    w = np.array([int(F.values[a]) * int(gx[b]) for a, b in zip(xx.ravel(), yy.ravel())], dtype=object)
    return xx.ravel(), yy.ravel(), w


def enum_energy_fn(F: RepFn, op: str) -> int:
    """sum over x1 op y1 = x2 op y2 of F(x1)F(y1)F(x2)F(y2)."""
    op = normalize_op(op)
    x, y, w = _support_pairs(F)
    _cap(x.size, ENUM_PAIR_CAP, "energy_fn")
    vals, ok = _op_values(x, y, op, F.p)
    return _count_equal_pairs(vals[ok], w[ok])


def enum_energy3_fn(F: RepFn, op: str) -> int:
    op = normalize_op(op)
    x, y, w = _support_pairs(F)
    _cap(x.size, ENUM_PAIR_CAP, "energy3_fn")
    vals, ok = _op_values(x, y, op, F.p)
    vals, w = vals[ok], w[ok]
    total = 0
    for i in range(vals.size):
        same = vals == vals[i]
        s = sum(w[same])
        total += int(w[i]) * int(s) * int(s)
    return total


def enum_energy_fn_set(F: RepFn, S: FpSet, op: str) -> int:
    """sum over x1 op u1 = x2 op u2, u_i in S, of F(x1)F(x2)."""
    op = normalize_op(op)
    xs = F.support()
    xx, uu = np.meshgrid(xs, S.elements, indexing="ij")
    x, u = xx.ravel(), uu.ravel()
    _cap(x.size, ENUM_PAIR_CAP, "energy_fn_set")
    w = np.array([int(F.values[a]) for a in x], dtype=object)
    vals, ok = _op_values(x, u, op, F.p)
    return _count_equal_pairs(vals[ok], w[ok])


def enum_d_times(U: FpSet, V: FpSet) -> int:
    """8-tuples with (u1-v1)(u2-v2) = (u3-v3)(u4-v4), compared one by one."""
    check_same_ctx(U, V)
    _cap(U.size * V.size, ENUM_DTIMES_CAP, "d_times")
    u, v = _pairs(U, V)
    diffs = (u - v) % U.p
    lhs = (diffs[:, None] * diffs[None, :]) % U.p
    return _count_equal_pairs(lhs)


def pairs_d_times(U: FpSet, V: FpSet) -> int:
    """Pair-product oracle: histogram every product (u1-v1)(u2-v2), sum squares."""
    check_same_ctx(U, V)
    n = U.size * V.size
    _cap(n, PAIRS_DTIMES_CAP, "d_times (pair-product)")
    p = U.p
    u, v = _pairs(U, V)
    diffs = (u - v) % p
    counts = np.zeros(p, dtype=np.int64)
    rows = max(1, _CHUNK // max(n, 1))
    for start in range(0, n, rows):
        prods = (diffs[start : start + rows, None] * diffs[None, :]) % p
        counts += np.bincount(prods.ravel(), minlength=p)
    return sum(int(c) * int(c) for c in counts if c)


def enum_d_times_tilde(U: FpSet, V: FpSet) -> int:
    """8-tuples with (u1-u2)(v1-v2) = (u3-u4)(v3-v4) != 0."""
    check_same_ctx(U, V)
    p = U.p
    _cap(U.size**2 * V.size**2, ENUM_DTILDE_CAP, "d_times_tilde")
    du = ((U.elements[:, None] - U.elements[None, :]) % p).ravel()
    dv = ((V.elements[:, None] - V.elements[None, :]) % p).ravel()
    lhs = (du[:, None] * dv[None, :]) % p
    return _count_equal_pairs(lhs, nonzero=True)


def enum_n_count(U: FpSet, V: FpSet, W: FpSet) -> int:
    """6-tuples with u1(v1 - w1) = u2(v2 - w2)."""
    check_same_ctx(U, V, W)
    p = U.p
    _cap(U.size * V.size * W.size, ENUM_NCOUNT_CAP, "n_count")
    lhs = (U.elements[:, None, None] * (V.elements[None, :, None] - W.elements[None, None, :])) % p
    return _count_equal_pairs(lhs)


def enum_n_count_nonzero(U: FpSet, V: FpSet, W: FpSet) -> int:
    """6-tuples with u1(v1 - w1) = u2(v2 - w2) != 0."""
    check_same_ctx(U, V, W)
    p = U.p
    _cap(U.size * V.size * W.size, ENUM_NCOUNT_CAP, "n_count")
    lhs = (U.elements[:, None, None] * (V.elements[None, :, None] - W.elements[None, None, :])) % p
    return _count_equal_pairs(lhs, nonzero=True)


def enum_collinear_triples(U: FpSet, V: FpSet) -> int:
    """Ordered triples with (v1-v2)(u1-u3) = (v1-v3)(u1-u2), both sides nonzero."""
    check_same_ctx(U, V)
    p = U.p
    _cap(U.size * V.size, ENUM_TRIPLE_CAP, "collinear_triples")
    u, v = _pairs(U, V)
    du = (u[:, None] - u[None, :]) % p  # du[i, j] = u_i - u_j
    dv = (v[:, None] - v[None, :]) % p
    lhs = (dv[:, :, None] * du[:, None, :]) % p  # (v_i - v_j)(u_i - u_k)
    rhs = (dv[:, None, :] * du[:, :, None]) % p  # (v_i - v_k)(u_i - u_j)
    return int(((lhs == rhs) & (lhs != 0) & (rhs != 0)).sum())


def enum_triples_literal(U: FpSet, V: FpSet) -> int:
    """Ordered triples with (u1-u2)(v1-v2) = (u1-u3)(v1-v3) != 0."""
    check_same_ctx(U, V)
    p = U.p
    _cap(U.size * V.size, ENUM_TRIPLE_CAP, "triples_equal_products")
    u, v = _pairs(U, V)
    prodv = ((u[:, None] - u[None, :]) * (v[:, None] - v[None, :])) % p
    eq = (prodv[:, :, None] == prodv[:, None, :]) & (prodv[:, :, None] != 0)
    return int(eq.sum())


def enum_collinear_quadruples(A: FpSet) -> int:
    """Tuples (a1..a4, b1..b4) in A^8 with equal ratios (a1-ai)/(b1-bi), i = 2, 3, 4."""
    _cap(A.size, ENUM_QUAD_CAP, "collinear_quadruples")
    p = A.p
    total = 0
    elems = A.to_list()
    for a1, b1 in product(elems, repeat=2):
        z = []
        for ai, bi in product(elems, repeat=2):
            if (b1 - bi) % p:
                z.append((a1 - ai) * pow(b1 - bi, -1, p) % p)
        z = np.array(z, dtype=np.int64)
        eq = (z[:, None, None] == z[None, :, None]) & (z[None, :, None] == z[None, None, :])
        total += int(eq.sum())
    return total
