"""Support sets and one-period emission for the two sequence families.

Each family fills the period 2*p**n from half of the doubled-modulus
classes at every level, scaled by p**(n-j); the plain family takes each
selected class together with its double, the tilde family splits the two
halves between plain and doubled classes.  Position 0 always carries a 1
and position p**n a 0, so every period is balanced with weight p**n.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cyclotomy import class_tables
from .ntheory import ParameterError, PrimePowerCtx

VARIANTS = ("s", "stilde")


@dataclass(frozen=True)
class SequenceParams:
    """One sequence instance: arithmetic context, window shift b, family."""

    ctx: PrimePowerCtx
    b: int
    variant: str

    def __post_init__(self) -> None:
        if self.variant not in VARIANTS:
            raise ParameterError(f"variant must be one of {VARIANTS}, got {self.variant!r}")
        if not 0 <= self.b < self.ctx.dn:
            raise ParameterError(f"b must be in [0, {self.ctx.dn}), got {self.b}")


def _assemble(params: SequenceParams, ones: bool) -> set[int]:
    """Union of scaled classes for the 1-support (ones) or 0-support."""
    ctx = params.ctx
    out = {0} if ones else {ctx.modulus}
    for table in class_tables(ctx):
        j = table.level
        d = table.d
        half = d // 2
        scale = ctx.p ** (ctx.n - j)
        mod2j = 2 * ctx.p**j
        for i in range(d):
            idx = (i + params.b) % d
            cls = table.classes_2pj[idx]
            in_window = i < half
            if params.variant == "s":
                if in_window == ones:
                    for t in cls:
                        out.add(scale * t)
                        out.add(scale * (2 * t % mod2j))
            else:
                # tilde: window half contributes the classes themselves,
                # the other half their doubles; the 0-support swaps roles.
                take_plain = in_window == ones
                if take_plain:
                    for t in cls:
                        out.add(scale * t)
                else:
                    for t in cls:
                        out.add(scale * (2 * t % mod2j))
    return out


def build_support_sets(params: SequenceParams) -> tuple[frozenset[int], frozenset[int]]:
    """(zero-positions, one-positions) with the zero set as exact complement."""
    one = frozenset(_assemble(params, ones=True))
    zero = frozenset(range(params.ctx.period)) - one
    return zero, one


def build_zero_support(params: SequenceParams) -> frozenset[int]:
    """Zero-bit positions assembled from their own union formula.

    Independent of the complement construction; the two must agree, which
    the test suite checks cell by cell.
    """
    return frozenset(_assemble(params, ones=False))


class BinarySequence:
    """One period of 2*p**n bits, bit-packed LSB-first into an int."""

    __slots__ = ("params", "length", "support", "value")

    def __init__(self, params: SequenceParams, support: frozenset[int]):
        ctx = params.ctx
        length = ctx.period
        if any(not 0 <= t < length for t in support):
            raise ValueError("support position outside one period")
        if len(support) != ctx.modulus:
            raise ValueError(f"support size {len(support)} != {ctx.modulus}; sequence unbalanced")
        if 0 not in support:
            raise ValueError("position 0 must carry a 1")
        if ctx.modulus in support:
            raise ValueError(f"position {ctx.modulus} must carry a 0")
        self.params = params
        self.length = length
        self.support = tuple(sorted(support))
        self.value = sum(1 << t for t in support)

    def __len__(self) -> int:
        return self.length

    def __getitem__(self, i: int) -> int:
        return (self.value >> (i % self.length)) & 1

    def weight(self) -> int:
        return self.value.bit_count()

    def bits(self) -> list[int]:
        return [(self.value >> i) & 1 for i in range(self.length)]

    def to01(self) -> str:
        return "".join("1" if (self.value >> i) & 1 else "0" for i in range(self.length))

    def to_hex(self) -> str:
        """Bytes with bit i of byte k holding s[8k+i], hex-encoded."""
        return self.value.to_bytes((self.length + 7) // 8, "little").hex()

    def __repr__(self) -> str:
        ctx = self.params.ctx
        return (f"BinarySequence(p={ctx.p}, n={ctx.n}, f={ctx.f}, "
                f"b={self.params.b}, variant={self.params.variant!r}, N={self.length})")


def generate(params: SequenceParams) -> BinarySequence:
    """One full period: bit i = 1 iff (i mod 2*p**n) lies in the 1-support."""
    _, one = build_support_sets(params)
    return BinarySequence(params, one)


def shift_acts_as_generator(params: SequenceParams) -> bool:
    """Report whether bumping b by one multiplies the support by g.

    This is a structural observation, not an assumed fact: callers get a
    plain boolean and decide what to make of it.
    """
    ctx = params.ctx
    _, cur = build_support_sets(params)
    nxt_params = SequenceParams(ctx, (params.b + 1) % ctx.dn, params.variant)
    _, nxt = build_support_sets(nxt_params)
    mapped = frozenset(ctx.g * t % ctx.period for t in cur)
    return mapped == nxt
