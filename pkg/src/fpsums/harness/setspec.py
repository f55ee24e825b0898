"""
Textual set specifications.

Grammar (colon-separated, no whitespace)::

    explicit:a,b,c        the listed residues
    interval:k..E         residues of k+1, ..., E  (length Z = E - k >= 1)
    subgroup:d            multiplicative subgroup of order d
    random:n:seed         uniform n-subset drawn with PCG64(seed)
    geom:base:n           {base^i : 0 <= i < n}
    recip-shift:a:k:Z     {z^{-1} + a : z in [k+1, k+Z], z != 0 mod p}

Any size parameter (random n, geom n, recip-shift Z, interval end offset)
may be written ``sqrt``, meaning floor(sqrt(p)); ``resolve(p)`` replaces it
with the concrete integer so stored descriptors are always concrete.

Multi-set descriptors join named specs with ``;``, e.g.
``G=subgroup:4;H=subgroup:2;weights=unit``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from ..errors import ParseError
from ..field import FieldCtx
from ..sets import (
    FpSet,
    explicit_set,
    geom_set,
    interval_set,
    random_set,
    recip_shift_set,
    subgroup,
)

KINDS = ("explicit", "interval", "subgroup", "random", "geom", "recip-shift")
_ARITY = {"subgroup": 1, "random": 2, "geom": 2, "recip-shift": 3}
_INT = re.compile(r"-?\d+\Z")
SQRT = "sqrt"


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    params: tuple

    @property
    def text(self) -> str:
        if self.kind == "explicit":
            return "explicit:" + ",".join(str(x) for x in self.params)
        if self.kind == "interval":
            k, end = self.params
            return f"interval:{k}..{end}"
        return self.kind + ":" + ":".join(str(x) for x in self.params)

    def __str__(self) -> str:
        return self.text

    @property
    def is_random(self) -> bool:
        return self.kind == "random"

    def resolve(self, p: int) -> "FamilySpec":
        """Replace every ``sqrt`` token by floor(sqrt(p))."""
        root = math.isqrt(p)
        if self.kind == "interval":
            k, end = self.params
            if end == SQRT:
                end = k + root
            return FamilySpec("interval", (k, end))
        return FamilySpec(self.kind, tuple(root if x == SQRT else x for x in self.params))

    def with_seed(self, seed: int) -> "FamilySpec":
        if self.kind != "random":
            return self
        return FamilySpec("random", (self.params[0], seed))

    def build(self, ctx: FieldCtx) -> FpSet:
        spec = self.resolve(ctx.p)
        ps = spec.params
        if spec.kind == "explicit":
            return explicit_set(ctx, ps)
        if spec.kind == "interval":
            k, end = ps
            return interval_set(ctx, k, end - k)
        if spec.kind == "subgroup":
            return subgroup(ctx, ps[0])
        if spec.kind == "random":
            return random_set(ctx, ps[0], ps[1])
        if spec.kind == "geom":
            return geom_set(ctx, ps[0], ps[1])
        a, k, z = ps
        return recip_shift_set(ctx, a, k, z)


def _int(token: str, text: str, pos: int, allow_sqrt: bool = False):
    if allow_sqrt and token == SQRT:
        return SQRT
    if not _INT.match(token):
        raise ParseError(f"expected an integer, got {token!r}", text, pos)
    return int(token)


def parse_family(text: str) -> FamilySpec:
    """Parse one set specification into a FamilySpec (no field needed)."""
    if not text or any(ch.isspace() for ch in text):
        raise ParseError("empty spec or whitespace", text, 0)
    kind, sep, rest = text.partition(":")
    if not sep:
        raise ParseError("missing ':' after kind", text, len(kind))
    if kind not in KINDS:
        raise ParseError(f"unknown kind {kind!r}", text, 0)
    base = len(kind) + 1
    if kind == "explicit":
        if rest == "":
            return FamilySpec("explicit", ())
        out, pos = [], base
        for tok in rest.split(","):
            out.append(_int(tok, text, pos))
            pos += len(tok) + 1
        return FamilySpec("explicit", tuple(out))
    if kind == "interval":
        lo, dots, hi = rest.partition("..")
        if not dots:
            raise ParseError("interval needs 'k..E'", text, base)
        k = _int(lo, text, base)
        end = _int(hi, text, base + len(lo) + 2, allow_sqrt=True)
        if end != SQRT and end - k < 1:
            raise ParseError("empty interval", text, base + len(lo) + 2)
        return FamilySpec("interval", (k, end))
    tokens = rest.split(":")
    if len(tokens) != _ARITY[kind]:
        raise ParseError(f"{kind} takes {_ARITY[kind]} parameter(s), got {len(tokens)}", text, base)
    sized = {"random": {0}, "geom": {1}, "recip-shift": {2}, "subgroup": set()}[kind]
    out, pos = [], base
    for i, tok in enumerate(tokens):
        out.append(_int(tok, text, pos, allow_sqrt=i in sized))
        pos += len(tok) + 1
    return FamilySpec(kind, tuple(out))


def parse_set_spec(ctx: FieldCtx, text: str) -> FpSet:
    return parse_family(text).build(ctx)


def parse_descriptor(text: str) -> dict[str, str]:
    """Split ``NAME=value;NAME=value`` into an ordered dict of raw strings."""
    out: dict[str, str] = {}
    pos = 0
    for part in text.split(";"):
        name, eq, value = part.partition("=")
        if not eq or not name:
            raise ParseError("expected NAME=value", text, pos)
        out[name] = value
        pos += len(part) + 1
    return out


def format_descriptor(parts: dict[str, object]) -> str:
    return ";".join(f"{k}={v}" for k, v in parts.items())
