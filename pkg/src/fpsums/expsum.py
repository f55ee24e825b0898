"""Trilinear sums S and T, and trinomial multiplicative-character sums."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from math import gcd

import numpy as np

from .errors import ContextMismatch, NormViolation, SupportMismatch
from .field import FieldCtx, additive_dft, compensated_sum, mult_convolve
from .sets import FpSet, check_same_ctx

NORM_SLACK = 1e-12


def _sup(values: np.ndarray) -> float:
    return float(np.abs(values).max()) if values.size else 0.0


@dataclass(frozen=True, eq=False)
class WeightVec:
    """Complex weights on a support set, one per element (sorted order)."""

    support: FpSet
    weights: np.ndarray
    sup_norm: float

    def __init__(self, support: FpSet, weights):
        weights = np.asarray(weights, dtype=complex).ravel()
        if weights.size != support.size:
            raise SupportMismatch(f"{weights.size} weights for a support of size {support.size}")
        norm = _sup(weights)
        if norm > 1 + NORM_SLACK:
            raise NormViolation(f"sup-norm {norm} exceeds 1")
        object.__setattr__(self, "support", support)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "sup_norm", norm)

    @classmethod
    def unit(cls, support: FpSet) -> "WeightVec":
        return cls(support, np.ones(support.size))

    @classmethod
    def random(cls, support: FpSet, seed: int) -> "WeightVec":
        """Uniform random phases e^{i theta}."""
        rng = np.random.Generator(np.random.PCG64(seed))
        return cls(support, np.exp(2j * np.pi * rng.random(support.size)))

    @property
    def ctx(self) -> FieldCtx:
        return self.support.ctx

    def dense(self) -> np.ndarray:
        out = np.zeros(self.support.p, dtype=complex)
        out[self.support.elements] = self.weights
        return out


@dataclass(frozen=True, eq=False)
class PairWeights:
    """Complex weights on rows x cols, indexed by position in each support."""

    rows: FpSet
    cols: FpSet
    matrix: np.ndarray
    sup_norm: float

    def __init__(self, rows: FpSet, cols: FpSet, matrix):
        check_same_ctx(rows, cols)
        matrix = np.asarray(matrix, dtype=complex)
        if matrix.shape != (rows.size, cols.size):
            raise SupportMismatch(f"matrix shape {matrix.shape} != {(rows.size, cols.size)}")
        norm = _sup(matrix)
        if norm > 1 + NORM_SLACK:
            raise NormViolation(f"sup-norm {norm} exceeds 1")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "sup_norm", norm)

    @classmethod
    def unit(cls, rows: FpSet, cols: FpSet) -> "PairWeights":
        return cls(rows, cols, np.ones((rows.size, cols.size)))

    @classmethod
    def random(cls, rows: FpSet, cols: FpSet, seed: int) -> "PairWeights":
        rng = np.random.Generator(np.random.PCG64(seed))
        return cls(rows, cols, np.exp(2j * np.pi * rng.random((rows.size, cols.size))))


def _sum(values, deterministic: bool) -> complex:
    if deterministic:
        return compensated_sum(values)
    return complex(np.sum(values))


def trilinear_s(
    ctx: FieldCtx,
    wx: WeightVec,
    wy: WeightVec,
    wz: WeightVec,
    strategy: str = "fast",
    deterministic: bool = False,
) -> complex:
    """sum_{x, y, z} alpha_x beta_y gamma_z e_p(x y z)."""
    if check_same_ctx(wx.support, wy.support, wz.support).p != ctx.p:
        raise ContextMismatch("weights live over a different prime")
    if strategy == "naive":
        return _trilinear_s_naive(ctx, wx, wy, wz, deterministic)
    if strategy != "fast":
        raise ValueError(f"unknown strategy {strategy!r}")
    # t(w) = sum_{xy = w} alpha_x beta_y, then pair against the transform of gamma
    t = mult_convolve(ctx, wx.dense(), wy.dense())
    gamma_hat = additive_dft(ctx, wz.dense())
    return _sum(t * gamma_hat, deterministic)


def _trilinear_s_naive(ctx, wx, wy, wz, deterministic):
    p = ctx.p
    roots = ctx.unit_roots()
    ys, zs = wy.support.elements, wz.support.elements
    yz = (ys[:, None] * zs[None, :]) % p
    bg = wy.weights[:, None] * wz.weights[None, :]
    partial = np.empty(wx.support.size, dtype=complex)
    for i, x in enumerate(wx.support.elements):
        partial[i] = _sum(bg * roots[(int(x) * yz) % p], deterministic)
    return _sum(wx.weights * partial, deterministic)


def trilinear_t(
    ctx: FieldCtx,
    rho: PairWeights,
    sigma: PairWeights,
    tau: PairWeights,
    deterministic: bool = False,
) -> complex:
    """sum_{x, y, z} rho_{x,y} sigma_{x,z} tau_{y,z} e_p(x y z).

    Pairwise weights do not separate, so this is the O(XYZ) sum, partitioned
    over x in a fixed order.
    """
    X, Y, Z = rho.rows, rho.cols, tau.cols
    check_same_ctx(X, Y, Z)
    if sigma.rows != X or sigma.cols != Z or tau.rows != Y:
        raise SupportMismatch("rho on X x Y, sigma on X x Z, tau on Y x Z required")
    p = ctx.p
    roots = ctx.unit_roots()
    yz = (Y.elements[:, None] * Z.elements[None, :]) % p
    partial = np.empty(X.size, dtype=complex)
    for i, x in enumerate(X.elements):
        terms = rho.matrix[i][:, None] * sigma.matrix[i][None, :] * tau.matrix * roots[(int(x) * yz) % p]
        partial[i] = _sum(terms, deterministic)
    return _sum(partial, deterministic)


@dataclass(frozen=True)
class TrinomialSpec:
    """Psi(x) = a x^k + b x^l + c x^m together with the character index j."""

    a: int
    b: int
    c: int
    k: int
    l: int
    m: int
    chi: int = 0

    def __post_init__(self):
        if min(self.k, self.l, self.m) < 1:
            raise ValueError("exponents must be >= 1")


def trinomial_sum(ctx: FieldCtx, spec: TrinomialSpec, deterministic: bool = False) -> complex:
    """sum_{x in F_p^*} chi(x) e_p(Psi(x)), chi(g^t) = e_{p-1}(j t)."""
    p, n = ctx.p, ctx.order
    t = np.arange(n, dtype=np.int64)
    pw = ctx.pow_table
    psi = (
        (spec.a % p) * pw[(spec.k % n) * t % n]
        + (spec.b % p) * pw[(spec.l % n) * t % n]
        + (spec.c % p) * pw[(spec.m % n) * t % n]
    ) % p
    chi = np.exp(2j * np.pi * ((spec.chi % n) * t % n) / n)
    return _sum(chi * ctx.unit_roots()[psi], deterministic)


def trinomial_params(p: int, k: int, l: int, m: int) -> tuple[int, int, int, int, int]:
    """(d, e, f, g, h) with d = gcd(k, p-1), ..., g = d/gcd(d, f), h = e/gcd(e, f)."""
    d, e, f = gcd(k, p - 1), gcd(l, p - 1), gcd(m, p - 1)
    return d, e, f, d // gcd(d, f), e // gcd(e, f)


def cor_bound3_value(p: int, f: int, g: int, h: int) -> float:
    """Reference size of the trinomial bound with implied constant 1."""
    if not f >= g >= h >= 1:
        warnings.warn(f"bound hypothesis f >= g >= h >= 1 fails for (f, g, h) = ({f}, {g}, {h})", stacklevel=2)
    if g * h >= p * math.log(p):
        return p ** (7 / 8) * f ** (1 / 8)
    return p * (f / (g * h)) ** (1 / 8) * math.log(p) ** (1 / 8)
