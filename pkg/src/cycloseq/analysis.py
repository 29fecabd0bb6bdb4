"""Closed-form linear-complexity prediction and measurement comparison.

The case split is driven by v = gcd((p-1)/ord_p(2), f).  For the plain
family the value is 2*p**n - r*ord_p(2) with 0 <= r <= (p-1)/ord_p(2),
pinned exactly when v = f/2 (value 2p**n - p + 1) or when v = 1, 2v | f/2
or v = f (full value 2p**n).  For the tilde family each of the r roots may
be double, giving the band 2p**n - 2r*ord .. 2p**n - r*ord, pinned when
v = f (value 2p**n - 3(p-1)/2) or when v | f/2 or v = 2 != f (full value).
At f = 2 the pinning clauses overlap (v = 1 = f/2); the v = f/2 clause is
applied first, matching the hand-measured smallest instance.

For the two known base-2 Wieferich primes the same shapes hold with p - 1
replaced by p**m - 1, m = min(n, wieferich level), for f a power of two;
the tilde closed form is stated only for n >= the level.
"""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Optional

from .gf2poly import berlekamp_massey, linear_complexity_gcd
from .ntheory import ParameterError, PrimePowerCtx, cached_ctx
from .sequence import SequenceParams, generate

EXACT = "exact"
BOUNDED = "bounded"
UNSPECIFIED = "unspecified"

# Periods above this are predicted but not measured by default; synthesis
# cost grows quadratically and leaves desk scale.
DEFAULT_MEASURE_LIMIT = 20_000

DEFAULT_PRIMES = (3, 5, 7, 11, 13, 17)
DEFAULT_EXPONENTS = (1, 2)


@dataclass(frozen=True)
class ComplexityPrediction:
    """Predicted linear complexity: a pinned value or a residue structure."""

    kind: str
    period: int
    exact_value: Optional[int]
    lower: Optional[int]
    upper: Optional[int]
    step: Optional[int]
    max_steps: Optional[int]
    double_band: bool  # tilde bands allow up to 2r steps below the period
    provenance: str

    def admits(self, measured: int) -> Optional[bool]:
        """Whether a measured value is consistent; None if nothing is claimed."""
        if self.kind == UNSPECIFIED:
            return None
        if self.kind == EXACT:
            return measured == self.exact_value
        gap = self.period - measured
        if gap < 0:
            return False
        if not self.double_band:
            return gap % self.step == 0 and gap // self.step <= self.max_steps
        return any(r * self.step <= gap <= 2 * r * self.step
                   for r in range(self.max_steps + 1))

    def describe(self) -> str:
        if self.kind == EXACT:
            return str(self.exact_value)
        if self.kind == BOUNDED:
            shape = "band" if self.double_band else "lattice"
            return f"[{self.lower}..{self.upper}] step={self.step} max_r={self.max_steps} {shape}"
        return "unspecified"


def _exact(period: int, value: int, provenance: str) -> ComplexityPrediction:
    return ComplexityPrediction(kind=EXACT, period=period, exact_value=value,
                                lower=value, upper=value, step=None, max_steps=None,
                                double_band=False, provenance=provenance)


def _bounded(period: int, step: int, max_steps: int, double_band: bool,
             provenance: str) -> ComplexityPrediction:
    span = (2 if double_band else 1) * step * max_steps
    return ComplexityPrediction(kind=BOUNDED, period=period, exact_value=None,
                                lower=period - span, upper=period, step=step,
                                max_steps=max_steps, double_band=double_band,
                                provenance=provenance)


def _wieferich_v(ctx: PrimePowerCtx) -> int:
    """v from the depth-limited discrete log normalisation u = p**(m-1) * z."""
    m = min(ctx.n, ctx.wieferich_level)
    u_m = ctx.u % (ctx.p ** (m - 1) * (ctx.p - 1))
    if u_m % ctx.p ** (m - 1):
        raise ArithmeticError(
            f"discrete log of 2 is not divisible by p**{m - 1} at depth {m}; "
            "normalisation ambiguous")
    z = u_m // ctx.p ** (m - 1)
    v = math.gcd(z, ctx.f)
    if v != ctx.v:
        raise ArithmeticError("depth-limited v disagrees with gcd((p-1)/ord, f)")
    return v


def predict(params: SequenceParams) -> ComplexityPrediction:
    ctx = params.ctx
    period = ctx.period
    step = ctx.ord2_p
    max_r = (ctx.p - 1) // step
    v, f = ctx.v, ctx.f

    if ctx.wieferich_level == 1:
        if params.variant == "s":
            if 2 * v == f:
                return _exact(period, period - ctx.p + 1, "plain: v = f/2")
            if v == 1 or (f // 2) % (2 * v) == 0 or v == f:
                return _exact(period, period, "plain: v = 1, 2v | f/2, or v = f")
            return _bounded(period, step, max_r, False,
                            "plain: no pinning clause; L = period - r*ord_p(2)")
        if v == f:
            return _exact(period, period - 3 * (ctx.p - 1) // 2, "tilde: v = f")
        if (f // 2) % v == 0 or v == 2:
            return _exact(period, period, "tilde: v | f/2 or v = 2 != f")
        return _bounded(period, step, max_r, True,
                        "tilde: no pinning clause; band of depth up to 2r*ord_p(2)")

    # Wieferich branch: closed forms are known only for f a power of two.
    if f & (f - 1):
        raise ParameterError(
            f"no closed form for Wieferich p={ctx.p} with f={f} (need a power of two)")
    m = min(ctx.n, ctx.wieferich_level)
    v = _wieferich_v(ctx)
    depth = ctx.p**m - 1
    if params.variant == "s":
        if 2 * v == f:
            return _exact(period, period - depth, f"wieferich plain: v = f/2, depth min(n,{ctx.wieferich_level})")
        return _exact(period, period, "wieferich plain: v != f/2")
    if ctx.n < ctx.wieferich_level:
        return ComplexityPrediction(kind=UNSPECIFIED, period=period, exact_value=None,
                                    lower=None, upper=None, step=None, max_steps=None,
                                    double_band=False,
                                    provenance="wieferich tilde with n < level: no published closed form")
    if v == f:
        return _exact(period, period - 3 * depth // 2, f"wieferich tilde: v = f, depth min(n,{ctx.wieferich_level})")
    return _exact(period, period, "wieferich tilde: v != f")


def predict_pow2_f(params: SequenceParams) -> ComplexityPrediction:
    """Two-case specialisation valid when f is a power of two.

    Must agree with predict() on its domain; the test suite asserts this.
    """
    ctx = params.ctx
    if ctx.f & (ctx.f - 1):
        raise ParameterError(f"f={ctx.f} is not a power of two")
    if ctx.wieferich_level != 1:
        return predict(params)
    period = ctx.period
    if params.variant == "s":
        if 2 * ctx.v == ctx.f:
            return _exact(period, period - ctx.p + 1, "pow2 plain: v = f/2")
        return _exact(period, period, "pow2 plain: otherwise")
    if ctx.v == ctx.f:
        return _exact(period, period - 3 * (ctx.p - 1) // 2, "pow2 tilde: v = f")
    return _exact(period, period, "pow2 tilde: otherwise")


@dataclass(frozen=True)
class ConjectureRecord:
    """A previously published closed-form guess next to its correction."""

    hypothesis: str
    original: int
    corrected: int


def check_conjecture(params: SequenceParams) -> ConjectureRecord:
    """Original vs corrected closed form where the guess's hypotheses hold.

    Plain family: needs 2**e = -1 mod p but not mod p**2 (equivalent to
    v = f/2); guess and correction coincide at 2p**n - (p-1).  Tilde
    family: needs 2**e = +1 mod p but not mod p**2 (equivalent to v = f);
    the guess 2p**n - (p-1) - e differs from the corrected
    2p**n - 3(p-1)/2 whenever f > 2.
    """
    ctx = params.ctx
    p, e, period = ctx.p, ctx.e, ctx.period
    p2 = p * p
    if params.variant == "s":
        if not (pow(2, e, p) == p - 1 and pow(2, e, p2) != p2 - 1):
            raise ParameterError("hypothesis 2**e = -1 (mod p only) not satisfied")
        value = period - (p - 1)
        return ConjectureRecord("2**e = -1 mod p, != -1 mod p**2", value, value)
    if not (pow(2, e, p) == 1 and pow(2, e, p2) != 1):
        raise ParameterError("hypothesis 2**e = +1 (mod p only) not satisfied")
    return ConjectureRecord("2**e = +1 mod p, != +1 mod p**2",
                            period - (p - 1) - e, period - 3 * (p - 1) // 2)


CSV_COLUMNS = ("p", "n", "f", "e", "b", "variant", "v", "ord_p_2",
               "predicted_kind", "predicted", "measured",
               "conjecture_original", "conjecture_corrected", "verdict")


@dataclass
class VerificationRecord:
    p: int
    n: int
    f: int
    e: int
    b: int
    variant: str
    v: int
    ord_p_2: int
    predicted: ComplexityPrediction
    measured_gcd: Optional[int]
    measured_bm: Optional[int]
    conjecture_original: Optional[int]
    conjecture_corrected: Optional[int]
    verdict: str

    @property
    def hard_fail(self) -> bool:
        return self.verdict.startswith("fail")

    def row(self) -> dict:
        return {
            "p": self.p, "n": self.n, "f": self.f, "e": self.e, "b": self.b,
            "variant": self.variant, "v": self.v, "ord_p_2": self.ord_p_2,
            "predicted_kind": self.predicted.kind,
            "predicted": self.predicted.describe(),
            "measured": "" if self.measured_gcd is None else self.measured_gcd,
            "conjecture_original": "" if self.conjecture_original is None else self.conjecture_original,
            "conjecture_corrected": "" if self.conjecture_corrected is None else self.conjecture_corrected,
            "verdict": self.verdict,
        }


def verify_point(params: SequenceParams,
                 measure_limit: Optional[int] = DEFAULT_MEASURE_LIMIT) -> VerificationRecord:
    """Generate, measure twice, predict, and adjudicate one grid cell.

    A disagreement between the two measurements is a hard failure; an
    exact prediction must match, a bounded one must contain the value with
    the right residue structure.
    """
    ctx = params.ctx
    predicted = predict(params)
    try:
        conj: Optional[ConjectureRecord] = check_conjecture(params)
    except ParameterError:
        conj = None

    measured_gcd = measured_bm = None
    if measure_limit is not None and ctx.period > measure_limit:
        verdict = "predicted-unverified"
    else:
        seq = generate(params)
        measured_gcd = linear_complexity_gcd(seq)
        measured_bm = berlekamp_massey(seq)[0]
        if measured_bm != measured_gcd:
            verdict = f"fail:measurement-mismatch gcd={measured_gcd} lfsr={measured_bm}"
        else:
            fits = predicted.admits(measured_gcd)
            if fits is None:
                verdict = "no-prediction"
            elif fits:
                verdict = "pass"
            else:
                verdict = f"fail:prediction-mismatch predicted={predicted.describe()} measured={measured_gcd}"
    return VerificationRecord(
        p=ctx.p, n=ctx.n, f=ctx.f, e=ctx.e, b=params.b, variant=params.variant,
        v=ctx.v, ord_p_2=ctx.ord2_p, predicted=predicted,
        measured_gcd=measured_gcd, measured_bm=measured_bm,
        conjecture_original=conj.original if conj else None,
        conjecture_corrected=conj.corrected if conj else None,
        verdict=verdict)


def even_divisors(m: int) -> list[int]:
    return [f for f in range(2, m + 1, 2) if m % f == 0]


Cell = tuple[int, int, int, int, str]  # (p, n, f, b, variant)


def default_grid(primes: Iterable[int] = DEFAULT_PRIMES,
                 exponents: Iterable[int] = DEFAULT_EXPONENTS,
                 f_values: Optional[Iterable[int]] = None,
                 b_values: Optional[Iterable[int]] = None,
                 variants: Iterable[str] = ("s", "stilde"),
                 full_b: bool = False) -> list[Cell]:
    """Sweep cells: all even f | p-1 and b in {0, 1, d_n/2} unless overridden."""
    cells: list[Cell] = []
    for p in primes:
        for n in exponents:
            fs = list(f_values) if f_values is not None else even_divisors(p - 1)
            for f in fs:
                dn = p ** (n - 1) * f
                if full_b:
                    bs = list(range(dn))
                elif b_values is not None:
                    bs = sorted({b for b in b_values if 0 <= b < dn})
                else:
                    bs = sorted({0, 1 % dn, dn // 2})
                for b in bs:
                    for variant in variants:
                        cells.append((p, n, f, b, variant))
    return cells


def _verify_cell(args: tuple[Cell, Optional[int], Optional[int]]):
    (p, n, f, b, variant), g_override, measure_limit = args
    try:
        ctx = cached_ctx(p, n, f, g_override)
        params = SequenceParams(ctx, b, variant)
    except (ParameterError, ValueError) as exc:
        return ("skip", f"cell (p={p}, n={n}, f={f}, b={b}, {variant}): {exc}")
    return verify_point(params, measure_limit)


@dataclass
class SweepReport:
    records: list[VerificationRecord]
    skipped: list[str]

    @property
    def all_pass(self) -> bool:
        return not any(r.hard_fail for r in self.records)

    def to_csv_text(self) -> str:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
        writer.writeheader()
        for rec in self.records:
            writer.writerow(rec.row())
        return buf.getvalue()

    def to_json_obj(self) -> dict:
        return {
            "columns": list(CSV_COLUMNS),
            "rows": [rec.row() for rec in self.records],
            "skipped": list(self.skipped),
            "all_pass": self.all_pass,
        }


def sweep(cells: Iterable[Cell], g_override: Optional[int] = None,
          measure_limit: Optional[int] = DEFAULT_MEASURE_LIMIT,
          jobs: int = 1) -> SweepReport:
    """verify_point over every cell; deterministic order regardless of jobs."""
    ordered = sorted(set(cells))
    work = [(cell, g_override, measure_limit) for cell in ordered]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_verify_cell, work, chunksize=8))
    else:
        results = [_verify_cell(item) for item in work]
    records: list[VerificationRecord] = []
    skipped: list[str] = []
    for res in results:
        if isinstance(res, tuple):
            skipped.append(res[1])
        else:
            records.append(res)
    return SweepReport(records=records, skipped=skipped)
