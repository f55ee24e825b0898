"""
Prime-field context and the transforms everything else is built on.

A ``FieldCtx`` fixes a prime p, its least primitive root g and the two
tables ``pow_table[t] = g^t`` and ``dlog_table[x] = t``. Multiplicative
convolution over F_p is reduced to a cyclic convolution over Z/(p-1) through
these tables; the additive character transform has a direct O(p^2) path and
a Bluestein chirp-z path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import LengthMismatch, NotPrime, TooLarge, ZeroArgument
from .ntt import cyclic_convolve_exact, cyclic_convolve_naive, output_bound

DEFAULT_MAX_P = 2_000_000

STRATEGIES = ("fast", "naive")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, math.isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n, ascending."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def divisors(n: int) -> list[int]:
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def least_primitive_root(p: int) -> int:
    if p == 2:
        return 1
    qs = prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in qs):
            return g
    raise NotPrime(p)


@dataclass(frozen=True, eq=False)
class FieldCtx:
    p: int
    g: int
    pow_table: np.ndarray = field(repr=False)
    dlog_table: np.ndarray = field(repr=False)

    @property
    def order(self) -> int:
        """Order of the multiplicative group."""
        return self.p - 1

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and other.p == self.p

    def __hash__(self):
        return hash(("FieldCtx", self.p))

    def inverse(self, x: int) -> int:
        x %= self.p
        if x == 0:
            raise ZeroArgument("0 has no inverse")
        return int(self.pow_table[(-int(self.dlog_table[x])) % self.order])

    def inverse_table(self) -> np.ndarray:
        """inv[x] = x^{-1} for x != 0, inv[0] = 0."""
        inv = np.zeros(self.p, dtype=np.int64)
        inv[self.pow_table] = self.pow_table[(-np.arange(self.order)) % self.order]
        return inv

    def unit_roots(self) -> np.ndarray:
        """e_p(k) = exp(2 pi i k / p) for k in [0, p)."""
        return np.exp(2j * np.pi * np.arange(self.p) / self.p)


def _build(p: int) -> FieldCtx:
    g = least_primitive_root(p)
    n = p - 1
    pow_table = np.empty(n, dtype=np.int64)
    # repeated squaring blocks keep the table build vectorised
    pow_table[0] = 1
    filled = 1
    step = g
    while filled < n:
        take = min(filled, n - filled)
        pow_table[filled : filled + take] = pow_table[:take] * step % p
        filled += take
        step = step * step % p
    dlog_table = np.full(p, -1, dtype=np.int64)
    dlog_table[pow_table] = np.arange(n, dtype=np.int64)
    return FieldCtx(p=p, g=g, pow_table=pow_table, dlog_table=dlog_table)


@lru_cache(maxsize=32)
def _cached(p: int) -> FieldCtx:
    return _build(p)


def make_field_ctx(p: int, max_p: int = DEFAULT_MAX_P) -> FieldCtx:
    """Build (or fetch from cache) the context for the prime p."""
    p = int(p)
    if p < 3 or not is_prime(p):
        raise NotPrime(f"{p} is not an odd prime")
    if p > max_p:
        raise TooLarge(f"p={p} exceeds the table budget {max_p}")
    return _cached(p)


def dlog(ctx: FieldCtx, x: int) -> int:
    x %= ctx.p
    if x == 0:
        raise ZeroArgument("discrete log of 0")
    return int(ctx.dlog_table[x])


def _as_vector(ctx: FieldCtx, f) -> np.ndarray:
    f = np.asarray(f)
    if f.ndim != 1 or f.size != ctx.p:
        raise LengthMismatch(f"expected length {ctx.p}, got shape {f.shape}")
    return f


def compensated_sum(values) -> complex:
    """Order-independent, correctly rounded complex sum (fsum per component)."""
    values = np.asarray(values, dtype=complex).ravel()
    return complex(math.fsum(values.real.tolist()), math.fsum(values.imag.tolist()))


def _dft_direct(ctx: FieldCtx, f: np.ndarray, deterministic: bool) -> np.ndarray:
    p = ctx.p
    roots = ctx.unit_roots()
    idx = np.arange(p, dtype=np.int64)
    out = np.empty(p, dtype=complex)
    block = max(1, 4_000_000 // p)
    for start in range(0, p, block):
        w = idx[start : start + block]
        kernel = roots[np.outer(w, idx) % p]
        if deterministic:
            terms = kernel * f[None, :]
            out[start : start + block] = [compensated_sum(row) for row in terms]
        else:
            out[start : start + block] = kernel @ f
    return out


def _dft_bluestein(ctx: FieldCtx, f: np.ndarray) -> np.ndarray:
    # wx = (w^2 + x^2 - (w-x)^2) / 2 turns the transform into one convolution
    p = ctx.p
    n = np.arange(p, dtype=np.int64)
    chirp = np.exp(1j * np.pi * ((n * n) % (2 * p)) / p)
    size = 1
    while size < 2 * p - 1:
        size *= 2
    a = np.zeros(size, dtype=complex)
    a[:p] = f * chirp
    b = np.zeros(size, dtype=complex)
    b[:p] = np.conj(chirp)
    b[size - p + 1 :] = np.conj(chirp[1:][::-1])
    conv = np.fft.ifft(np.fft.fft(a) * np.fft.fft(b))[:p]
    return chirp * conv


def additive_dft(ctx: FieldCtx, f, strategy: str = "fast", deterministic: bool = False) -> np.ndarray:
    """F(w) = sum_x f(x) e_p(w x) for every w in F_p."""
    f = _as_vector(ctx, f).astype(complex)
    if strategy == "naive" or strategy == "direct":
        return _dft_direct(ctx, f, deterministic)
    if strategy == "fast":
        return _dft_bluestein(ctx, f)
    raise ValueError(f"unknown strategy {strategy!r}")


def _is_integer(x: np.ndarray) -> bool:
    if x.dtype == object:
        return all(isinstance(v, (int, np.integer)) for v in x)
    return np.issubdtype(x.dtype, np.integer) or x.dtype == bool


def sum_exact(x: np.ndarray) -> int:
    """Exact integer sum, falling back to Python ints when int64 could overflow."""
    x = np.asarray(x)
    if x.size == 0:
        return 0
    if x.dtype == object:
        return int(sum(int(v) for v in x))
    x = x.astype(np.int64)
    top = int(np.abs(x).max())
    if top * x.size < (1 << 62):
        return int(x.sum())
    return sum(int(v) for v in x)


def power_sum(x: np.ndarray, k: int) -> int:
    """Exact sum of x**k over an integer array."""
    x = np.asarray(x)
    if x.size == 0:
        return 0
    if x.dtype != object:
        x = x.astype(np.int64)
        top = int(np.abs(x).max())
        if top**k * x.size < (1 << 62):
            return int((x**k).sum())
    return sum(int(v) ** k for v in x.tolist() if v)


def mult_convolve(ctx: FieldCtx, r, s, strategy: str = "fast") -> np.ndarray:
    """c(lam) = sum_{x y = lam} r(x) s(y) over F_p.

    Integer inputs give exact integer outputs (int64 or object arrays of
    Python ints) which are bit-identical between strategies. Complex inputs
    use a floating-point FFT on the fast path.
    """
    r = _as_vector(ctx, r)
    s = _as_vector(ctx, s)
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    integer = _is_integer(r) and _is_integer(s)
    if r.dtype == bool:
        r = r.astype(np.int64)
    if s.dtype == bool:
        s = s.astype(np.int64)
    if strategy == "naive":
        return _mult_naive(ctx, r, s, integer)
    pw = ctx.pow_table
    rr, ss = r[pw], s[pw]
    if integer:
        cyc = cyclic_convolve_exact(rr, ss)
    else:
        cyc = np.fft.ifft(np.fft.fft(rr.astype(complex)) * np.fft.fft(ss.astype(complex)))
    out = np.zeros(ctx.p, dtype=cyc.dtype)
    out[pw] = cyc
    r0, s0 = r[0], s[0]
    if integer:
        r0, s0 = int(r0), int(s0)
        zero = r0 * sum_exact(s) + s0 * sum_exact(r) - r0 * s0
        if out.dtype != object and abs(zero) >= (1 << 62):
            out = out.astype(object)
        out[0] = zero
    else:
        out[0] = r0 * s.sum() + s0 * r.sum() - r0 * s0
    return out


def _mult_naive(ctx: FieldCtx, r: np.ndarray, s: np.ndarray, integer: bool) -> np.ndarray:
    p = ctx.p
    xs = np.nonzero(r)[0]
    ys = np.nonzero(s)[0]
    if integer:
        wide = r.dtype == object or s.dtype == object or output_bound(r, s) >= (1 << 61)
        dtype = object if wide else np.int64
    else:
        dtype = complex
    out = np.zeros(p, dtype=dtype)
    sv = s[ys].astype(dtype)
    for x in xs:
        np.add.at(out, (int(x) * ys) % p, r[x] * sv)
    return out


def add_convolve(ctx: FieldCtx, r, s, strategy: str = "fast") -> np.ndarray:
    """c(lam) = sum_{x + y = lam} r(x) s(y), cyclic over Z/p."""
    r = _as_vector(ctx, r)
    s = _as_vector(ctx, s)
    if _is_integer(r) and _is_integer(s):
        r = r.astype(np.int64) if r.dtype == bool else r
        s = s.astype(np.int64) if s.dtype == bool else s
        if strategy == "naive":
            return cyclic_convolve_naive(r, s)
        return cyclic_convolve_exact(r, s)
    return np.fft.ifft(np.fft.fft(r.astype(complex)) * np.fft.fft(s.astype(complex)))


def reflect(ctx: FieldCtx, f) -> np.ndarray:
    """f(-x)."""
    f = _as_vector(ctx, f)
    return f[(-np.arange(ctx.p)) % ctx.p]


def invert_argument(ctx: FieldCtx, f) -> np.ndarray:
    """f(x^{-1}) on F_p^*, zero at 0."""
    f = _as_vector(ctx, f)
    out = f[ctx.inverse_table()].copy()
    out[0] = 0
    return out
