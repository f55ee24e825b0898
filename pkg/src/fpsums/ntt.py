"""
Exact integer cyclic convolution.

Integer inputs are convolved with number-theoretic transforms modulo a few
word-sized primes of the form c*2^k + 1 and lifted back with Garner's CRT
reconstruction. The number of primes is chosen from an a-priori bound on
the output, so the result is exact; when the bound exceeds what the prime
pool can certify, the caller gets the naive quadratic product instead.
"""

from __future__ import annotations

import numpy as np

# (prime, primitive root); every prime is < 2^31 with 2-adicity >= 23, so
# products of two residues fit in int64 and lengths up to 2^23 are supported.
NTT_PRIMES = (
    (998244353, 3),
    (167772161, 3),
    (469762049, 3),
    (754974721, 11),
    (2013265921, 31),
    (1811939329, 13),
)
MAX_NTT_LENGTH = 1 << 23

_INT64_SAFE = 1 << 62


def _powers(base: int, count: int, q: int) -> np.ndarray:
    out = np.ones(1, dtype=np.int64)
    step = base % q
    while out.size < count:
        out = np.concatenate((out, out * step % q))
        step = step * step % q
    return out[:count]


_BITREV_CACHE: dict[int, np.ndarray] = {}


def _bitrev(n: int) -> np.ndarray:
    perm = _BITREV_CACHE.get(n)
    if perm is None:
        bits = n.bit_length() - 1
        idx = np.arange(n, dtype=np.int64)
        perm = np.zeros(n, dtype=np.int64)
        for b in range(bits):
            perm |= ((idx >> b) & 1) << (bits - 1 - b)
        _BITREV_CACHE[n] = perm
    return perm


def ntt(a: np.ndarray, q: int, root: int, invert: bool = False) -> np.ndarray:
    """In-order radix-2 transform of a (length a power of two) modulo q."""
    n = a.size
    a = a[_bitrev(n)]
    length = 2
    while length <= n:
        w_len = pow(root, (q - 1) // length, q)
        if invert:
            w_len = pow(w_len, q - 2, q)
        half = length // 2
        w = _powers(w_len, half, q)
        blocks = a.reshape(-1, length)
        u = blocks[:, :half]
        v = blocks[:, half:] * w % q
        a = np.concatenate(((u + v) % q, (u - v) % q), axis=1).ravel()
        length *= 2
    if invert:
        a = a * pow(n, q - 2, q) % q
    return a


def _residues(x: np.ndarray, q: int) -> np.ndarray:
    if x.dtype == object:
        return np.array([int(v) % q for v in x], dtype=np.int64)
    return np.mod(x.astype(np.int64), q)


def _abs_max_and_sum(x: np.ndarray) -> tuple[int, int]:
    if x.size == 0:
        return 0, 0
    if x.dtype == object:
        vals = [abs(int(v)) for v in x]
        return max(vals), sum(vals)
    ax = np.abs(x.astype(np.int64))
    top = int(ax.max())
    if top * ax.size < _INT64_SAFE:
        return top, int(ax.sum())
    return top, sum(int(v) for v in ax)


def output_bound(a: np.ndarray, b: np.ndarray) -> int:
    """Upper bound on |entry| of any cyclic (or linear) convolution of a and b."""
    ma, sa = _abs_max_and_sum(a)
    mb, sb = _abs_max_and_sum(b)
    return min(ma * sb, sa * mb)


def _primes_for(bound: int):
    chosen, modulus = [], 1
    for q, g in NTT_PRIMES:
        if modulus > 2 * bound:
            break
        chosen.append((q, g))
        modulus *= q
    if modulus <= 2 * bound:
        return None
    return chosen


def _garner(residues: list[np.ndarray], primes: list[int]) -> np.ndarray:
    """Combine per-prime residues into the unique representative in [0, prod)."""
    modulus = 1
    for q in primes:
        modulus *= q
    wide = modulus >= _INT64_SAFE
    # mixed-radix digits t_i, each computed modulo q_i with int64 arithmetic
    digits = [residues[0]]
    for i in range(1, len(primes)):
        q = primes[i]
        acc = digits[0] % q
        radix = 1
        for j in range(1, i):
            radix = radix * primes[j - 1] % q
            acc = (acc + digits[j] * radix) % q
        radix = radix * primes[i - 1] % q
        inv = pow(radix, q - 2, q)
        digits.append((residues[i] - acc) % q * inv % q)
    if wide:
        out = np.zeros(residues[0].size, dtype=object)
        radix = 1
        for d, q in zip(digits, primes):
            out = out + d.astype(object) * radix
            radix *= q
        return out
    out = np.zeros(residues[0].size, dtype=np.int64)
    radix = 1
    for d, q in zip(digits, primes):
        out += d * radix
        radix *= q
    return out


def cyclic_convolve_exact(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact cyclic convolution c[k] = sum_i a[i] b[(k - i) mod n] of integer arrays.

    Returns int64 when the bound allows it, otherwise an object array of
    Python ints.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    n = a.size
    if b.size != n:
        raise ValueError("cyclic convolution needs equal lengths")
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    bound = output_bound(a, b)
    if bound == 0:
        return np.zeros(n, dtype=np.int64)
    size = 1
    while size < 2 * n - 1:
        size *= 2
    primes = _primes_for(bound)
    if primes is None or size > MAX_NTT_LENGTH:
        return cyclic_convolve_naive(a, b)
    residues = []
    for q, g in primes:
        fa = np.zeros(size, dtype=np.int64)
        fb = np.zeros(size, dtype=np.int64)
        fa[:n] = _residues(a, q)
        fb[:n] = _residues(b, q)
        prod = ntt(fa, q, g) * ntt(fb, q, g) % q
        lin = ntt(prod, q, g, invert=True)
        cyc = lin[:n].copy()
        cyc[: n - 1] = (cyc[: n - 1] + lin[n : 2 * n - 1]) % q
        residues.append(cyc)
    mods = [q for q, _ in primes]
    out = _garner(residues, mods)
    modulus = 1
    for q in mods:
        modulus *= q
    negative = out > modulus // 2
    if np.any(negative):
        out[negative] -= modulus
    if out.dtype == object and bound < _INT64_SAFE:
        out = out.astype(np.int64)
    return out


def cyclic_convolve_naive(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Quadratic reference: one shifted multiply-add per nonzero entry of a."""
    a = np.asarray(a)
    b = np.asarray(b)
    n = a.size
    wide = output_bound(a, b) >= _INT64_SAFE or a.dtype == object or b.dtype == object
    dtype = object if wide else np.int64
    av = a.astype(dtype)
    bv = b.astype(dtype)
    out = np.zeros(n, dtype=dtype)
    for i in np.nonzero(a)[0]:
        out += av[i] * np.roll(bv, int(i))
    return out
