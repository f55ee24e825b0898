"""Subsets of F_p and their representation functions."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import BadLength, BadSize, ContextMismatch, NotDivisor
from .field import (
    FieldCtx,
    add_convolve,
    invert_argument,
    mult_convolve,
    reflect,
    sum_exact,
)

OPS = ("+", "-", "*", "/")
_OP_ALIASES = {"x": "*", "×": "*", "÷": "/", "mul": "*", "div": "/", "add": "+", "sub": "-"}

# |A||B| up to this size is binned directly from the pair list
_PAIR_BINCOUNT_LIMIT = 1 << 22

RNG_ALGORITHM = "PCG64"


def normalize_op(op: str) -> str:
    op = _OP_ALIASES.get(op, op)
    if op not in OPS:
        raise ValueError(f"unknown operation {op!r}; expected one of {OPS}")
    return op


@dataclass(frozen=True, eq=False)
class FpSet:
    """A subset of F_p: membership mask plus the sorted element array."""

    ctx: FieldCtx
    mask: np.ndarray = field(repr=False)
    elements: np.ndarray
    dropped: int = 0

    @classmethod
    def from_elements(cls, ctx: FieldCtx, elems, dropped: int = 0) -> "FpSet":
        mask = np.zeros(ctx.p, dtype=bool)
        arr = np.asarray(list(elems) if not isinstance(elems, np.ndarray) else elems, dtype=np.int64)
        if arr.size:
            mask[arr % ctx.p] = True
        return cls(ctx, mask, np.flatnonzero(mask).astype(np.int64), dropped)

    @classmethod
    def from_mask(cls, ctx: FieldCtx, mask) -> "FpSet":
        mask = np.asarray(mask, dtype=bool)
        return cls(ctx, mask, np.flatnonzero(mask).astype(np.int64))

    @property
    def p(self) -> int:
        return self.ctx.p

    @property
    def size(self) -> int:
        return int(self.elements.size)

    def __len__(self) -> int:
        return self.size

    def __iter__(self):
        return (int(x) for x in self.elements)

    def __contains__(self, x) -> bool:
        return bool(self.mask[int(x) % self.p])

    def __eq__(self, other) -> bool:
        return isinstance(other, FpSet) and other.p == self.p and np.array_equal(other.mask, self.mask)

    def __hash__(self):
        return hash((self.p, self.elements.tobytes()))

    def indicator(self) -> np.ndarray:
        return self.mask.astype(np.int64)

    def shift(self, t: int) -> "FpSet":
        """{a + t : a in self}."""
        return FpSet.from_elements(self.ctx, (self.elements + t) % self.p)

    def to_list(self) -> list[int]:
        return [int(x) for x in self.elements]


@dataclass(frozen=True, eq=False)
class RepFn:
    """Dense nonnegative integer function on F_p with its total mass."""

    ctx: FieldCtx
    values: np.ndarray = field(repr=False)
    total: int
    dropped: int = 0

    @classmethod
    def from_values(cls, ctx: FieldCtx, values, dropped: int = 0) -> "RepFn":
        values = np.asarray(values)
        if values.size != ctx.p:
            raise BadLength(f"expected length {ctx.p}")
        if values.dtype != object:
            values = values.astype(np.int64)
            if values.size and values.min() < 0:
                raise ValueError("representation functions are nonnegative")
        elif any(v < 0 for v in values):
            raise ValueError("representation functions are nonnegative")
        return cls(ctx, values, sum_exact(values), dropped)

    @classmethod
    def indicator(cls, s: FpSet) -> "RepFn":
        return cls.from_values(s.ctx, s.indicator())

    @property
    def p(self) -> int:
        return self.ctx.p

    def __getitem__(self, x) -> int:
        return int(self.values[int(x) % self.p])

    def support(self) -> np.ndarray:
        return np.flatnonzero(self.values)

    def as_dict(self) -> dict[int, int]:
        return {int(x): int(self.values[x]) for x in self.support()}


def check_same_ctx(*objs) -> FieldCtx:
    ctxs = {o.ctx.p for o in objs}
    if len(ctxs) != 1:
        raise ContextMismatch(f"objects live over different primes {sorted(ctxs)}")
    return objs[0].ctx


# -- constructors -----------------------------------------------------------


def subgroup(ctx: FieldCtx, d: int) -> FpSet:
    """The unique multiplicative subgroup of order d."""
    d = int(d)
    if d < 1 or ctx.order % d:
        raise NotDivisor(f"{d} does not divide p-1 = {ctx.order}")
    step = ctx.order // d
    return FpSet.from_elements(ctx, ctx.pow_table[np.arange(d) * step])


def interval_set(ctx: FieldCtx, k: int, length: int) -> FpSet:
    """Residues of k+1, ..., k+length (wrapping around p)."""
    if not 1 <= length <= ctx.p:
        raise BadLength(f"interval length {length} outside [1, {ctx.p}]")
    return FpSet.from_elements(ctx, (int(k) + 1 + np.arange(length)) % ctx.p)


def recip_shift_set(ctx: FieldCtx, a: int, k: int, length: int) -> FpSet:
    """{z^{-1} + a : z in [k+1, k+length]}, skipping z = 0 mod p."""
    if not 1 <= length < ctx.p:
        raise BadLength(f"interval length {length} outside [1, {ctx.p - 1}]")
    zs = (int(k) + 1 + np.arange(length)) % ctx.p
    nonzero = zs[zs != 0]
    skipped = int(zs.size - nonzero.size)
    if skipped:
        warnings.warn(f"recip-shift: skipped {skipped} multiple(s) of p in the interval", stacklevel=2)
    inv = ctx.inverse_table()
    return FpSet.from_elements(ctx, (inv[nonzero] + a) % ctx.p, dropped=skipped)


def geom_set(ctx: FieldCtx, base: int, n: int) -> FpSet:
    """{base^i : 0 <= i < n}."""
    if n < 0:
        raise BadSize("geometric progression length must be nonnegative")
    base %= ctx.p
    out, x = [], 1
    for _ in range(n):
        out.append(x)
        x = x * base % ctx.p
    return FpSet.from_elements(ctx, out)


def random_set(ctx: FieldCtx, n: int, seed: int) -> FpSet:
    """Uniform n-subset, reproducible from seed (numpy PCG64)."""
    if not 0 <= n <= ctx.p:
        raise BadSize(f"cannot draw {n} distinct elements from F_{ctx.p}")
    rng = np.random.Generator(np.random.PCG64(seed))
    return FpSet.from_elements(ctx, rng.choice(ctx.p, size=n, replace=False))


def explicit_set(ctx: FieldCtx, elems) -> FpSet:
    return FpSet.from_elements(ctx, [int(e) % ctx.p for e in elems])


def full_field(ctx: FieldCtx) -> FpSet:
    return FpSet.from_elements(ctx, np.arange(ctx.p))


# -- representation functions ----------------------------------------------


def _pair_values(a: np.ndarray, b: np.ndarray, op: str, p: int, inv: np.ndarray | None = None) -> np.ndarray:
    if op == "+":
        return (a[:, None] + b[None, :]) % p
    if op == "-":
        return (a[:, None] - b[None, :]) % p
    if op == "*":
        return (a[:, None] * b[None, :]) % p
    return (a[:, None] * inv[b][None, :]) % p


def rep_fn(A: FpSet, B: FpSet, op: str) -> RepFn:
    """r(w) = #{(a, b) in A x B : a op b = w}; division drops b = 0."""
    ctx = check_same_ctx(A, B)
    op = normalize_op(op)
    p = ctx.p
    b_elems = B.elements
    dropped = 0
    if op == "/" and 0 in B:
        b_elems = b_elems[b_elems != 0]
        dropped = A.size
    if A.size == 0 or b_elems.size == 0:
        return RepFn.from_values(ctx, np.zeros(p, dtype=np.int64), dropped)
    if A.size * b_elems.size <= _PAIR_BINCOUNT_LIMIT:
        inv = ctx.inverse_table() if op == "/" else None
        vals = _pair_values(A.elements, b_elems, op, p, inv)
        return RepFn.from_values(ctx, np.bincount(vals.ravel(), minlength=p), dropped)
    fa = A.indicator()
    fb = FpSet.from_elements(ctx, b_elems).indicator()
    if op == "+":
        r = add_convolve(ctx, fa, fb)
    elif op == "-":
        r = add_convolve(ctx, fa, reflect(ctx, fb))
    elif op == "*":
        r = mult_convolve(ctx, fa, fb)
    else:
        r = mult_convolve(ctx, fa, invert_argument(ctx, fb))
    return RepFn.from_values(ctx, r, dropped)


def op_convolve(ctx: FieldCtx, f, g, op: str, strategy: str = "fast") -> np.ndarray:
    """c(lam) = sum_{x op y = lam} f(x) g(y) for integer functions on F_p."""
    op = normalize_op(op)
    if op == "+":
        return add_convolve(ctx, f, g, strategy)
    if op == "-":
        return add_convolve(ctx, f, reflect(ctx, g), strategy)
    if op == "*":
        return mult_convolve(ctx, f, g, strategy)
    return mult_convolve(ctx, f, invert_argument(ctx, g), strategy)


def diff_set(A: FpSet, B: FpSet) -> FpSet:
    ctx = check_same_ctx(A, B)
    return FpSet.from_mask(ctx, rep_fn(A, B, "-").values > 0)


def sum_set(A: FpSet, B: FpSet) -> FpSet:
    ctx = check_same_ctx(A, B)
    return FpSet.from_mask(ctx, rep_fn(A, B, "+").values > 0)


def prod_set(A: FpSet, B: FpSet) -> FpSet:
    ctx = check_same_ctx(A, B)
    if A.size == 0 or B.size == 0:
        return FpSet.from_elements(ctx, [])
    return FpSet.from_mask(ctx, mult_convolve(ctx, A.indicator(), B.indicator()) != 0)
