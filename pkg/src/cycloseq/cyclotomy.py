"""Generalized cyclotomic classes at prime-power and doubled moduli.

A level-j table splits the units of Z/p**j and of Z/2p**j into
d_j = p**(j-1)*f cosets of the order-e subgroup generated by g**d_j.
Class i is g**i times class 0; multiplying by any unit therefore shifts
class indices by that unit's own index, modulo d_j.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .ntheory import ParameterError, PrimePowerCtx


@dataclass(frozen=True)
class ClassTable:
    ctx: PrimePowerCtx
    level: int
    d: int
    classes_pj: tuple[tuple[int, ...], ...]
    classes_2pj: tuple[tuple[int, ...], ...]
    _index_pj: dict[int, int] = field(repr=False, hash=False, compare=False, default_factory=dict)
    _index_2pj: dict[int, int] = field(repr=False, hash=False, compare=False, default_factory=dict)

    @property
    def modulus_pj(self) -> int:
        return self.ctx.p**self.level

    @property
    def modulus_2pj(self) -> int:
        return 2 * self.ctx.p**self.level

    def index_pj(self, x: int) -> int:
        """Class index of x among the units modulo p**j."""
        i = self._index_pj.get(x % self.modulus_pj)
        if i is None:
            raise ValueError(f"{x} is not a unit modulo {self.ctx.p}**{self.level}")
        return i

    def index_2pj(self, x: int) -> int:
        """Class index of x among the units modulo 2*p**j."""
        i = self._index_2pj.get(x % self.modulus_2pj)
        if i is None:
            raise ValueError(f"{x} is not a unit modulo 2*{self.ctx.p}**{self.level}")
        return i


def build_class_table(ctx: PrimePowerCtx, j: int) -> ClassTable:
    """All d_j classes at modulus p**j and 2*p**j for one level."""
    if not 1 <= j <= ctx.n:
        raise ParameterError(f"level must be in 1..{ctx.n}, got {j}")
    mod1 = ctx.p**j
    mod2 = 2 * mod1
    d = ctx.d(j)
    total = ctx.e * d  # == phi(p**j): one pass enumerates every unit once
    cls1: list[list[int]] = [[] for _ in range(d)]
    cls2: list[list[int]] = [[] for _ in range(d)]
    x1 = x2 = 1
    g = ctx.g
    for s in range(total):
        cls1[s % d].append(x1)
        cls2[s % d].append(x2)
        x1 = x1 * g % mod1
        x2 = x2 * g % mod2
    classes_pj = tuple(tuple(sorted(c)) for c in cls1)
    classes_2pj = tuple(tuple(sorted(c)) for c in cls2)
    index_pj = {x: i for i, c in enumerate(classes_pj) for x in c}
    index_2pj = {x: i for i, c in enumerate(classes_2pj) for x in c}
    return ClassTable(ctx=ctx, level=j, d=d, classes_pj=classes_pj,
                      classes_2pj=classes_2pj, _index_pj=index_pj, _index_2pj=index_2pj)


@lru_cache(maxsize=None)
def _cached_table(ctx: PrimePowerCtx, j: int) -> ClassTable:
    return build_class_table(ctx, j)


def class_tables(ctx: PrimePowerCtx) -> tuple[ClassTable, ...]:
    """Tables for levels 1..n, memoised; tables are immutable and shared."""
    return tuple(_cached_table(ctx, j) for j in range(1, ctx.n + 1))


def class_index_of(x: int, table: ClassTable, modulus_kind: str) -> int:
    """Index of the class containing x at the chosen modulus ('p_j' or '2p_j')."""
    if modulus_kind == "p_j":
        return table.index_pj(x)
    if modulus_kind == "2p_j":
        return table.index_2pj(x)
    raise ParameterError(f"modulus_kind must be 'p_j' or '2p_j', got {modulus_kind!r}")


@dataclass
class PartitionReport:
    """Outcome of the exact-cover check of the two residue rings."""

    modulus_pm: int
    modulus_2pm: int
    ok_pm: bool
    ok_2pm: bool
    violations: list[str]

    @property
    def ok(self) -> bool:
        return self.ok_pm and self.ok_2pm

    def summary(self) -> str:
        state = "pass" if self.ok else "FAIL"
        return (f"partition cover Z_{self.modulus_pm} / Z_{self.modulus_2pm}: {state}"
                + (f" ({len(self.violations)} violations)" if self.violations else ""))


_MAX_VIOLATIONS = 12


def verify_partitions(ctx: PrimePowerCtx, m: int) -> PartitionReport:
    """Check that scaled classes tile both rings exactly once.

    Z/p**m must be the disjoint union of p**(m-j) * D_i^(p^j) over all
    levels j <= m plus {0}; Z/2p**m the disjoint union of the scaled
    doubled-modulus classes and their doubles, plus {0} and {p**m}.
    """
    if not 1 <= m <= ctx.n:
        raise ParameterError(f"m must be in 1..{ctx.n}, got {m}")
    pm = ctx.p**m
    mod2m = 2 * pm
    counts1 = bytearray(pm)
    counts2 = bytearray(mod2m)
    for j in range(1, m + 1):
        table = _cached_table(ctx, j)
        scale = ctx.p ** (m - j)
        mod2j = 2 * ctx.p**j
        for cls in table.classes_pj:
            for x in cls:
                counts1[scale * x] += 1
        for cls in table.classes_2pj:
            for x in cls:
                counts2[scale * x] += 1
                counts2[scale * (2 * x % mod2j)] += 1
    counts1[0] += 1
    counts2[0] += 1
    counts2[pm] += 1

    violations: list[str] = []
    for val, cnt in enumerate(counts1):
        if cnt != 1 and len(violations) < _MAX_VIOLATIONS:
            violations.append(f"Z_{pm}: element {val} covered {cnt} times")
    ok1 = all(c == 1 for c in counts1)
    for val, cnt in enumerate(counts2):
        if cnt != 1 and len(violations) < _MAX_VIOLATIONS:
            violations.append(f"Z_{mod2m}: element {val} covered {cnt} times")
    ok2 = all(c == 1 for c in counts2)
    return PartitionReport(modulus_pm=pm, modulus_2pm=mod2m, ok_pm=ok1, ok_2pm=ok2,
                           violations=violations)


def table_to_json_dict(table: ClassTable) -> dict:
    """JSON-ready dump of one level's classes (debugging aid for the CLI)."""
    ctx = table.ctx
    return {
        "p": ctx.p,
        "n": ctx.n,
        "f": ctx.f,
        "e": ctx.e,
        "g": ctx.g,
        "level": table.level,
        "class_count": table.d,
        "classes_mod_pj": [list(c) for c in table.classes_pj],
        "classes_mod_2pj": [list(c) for c in table.classes_2pj],
    }
