"""Elementary number theory for prime-power moduli.

Everything operates on plain Python integers.  Moduli are capped so that
the sequence period 2*p**n always fits in 63 bits; downstream modules use
residues directly as bit positions and rely on that bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

MAX_PERIOD = 1 << 63

# Witness set making Miller-Rabin deterministic for all n < 3.3 * 10**24,
# which comfortably covers the supported 63-bit range.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_BRUTE_LOG_LIMIT = 1 << 22
_BSGS_TABLE_LIMIT = 1 << 26


class ParameterError(ValueError):
    """Argument outside the supported desk-scale range."""


def is_prime(n: int) -> bool:
    """Deterministic primality test for 2 <= n < 2**63."""
    if not 2 <= n < MAX_PERIOD:
        raise ParameterError(f"primality test supports 2 <= n < 2**63, got {n}")
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        if a % n == 0:
            continue
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def multiplicative_order(a: int, m: int) -> int:
    """Smallest t >= 1 with a**t == 1 (mod m).

    Plain scan; the order is bounded by phi(m), so keep m at desk scale.
    """
    if m < 2:
        raise ParameterError(f"modulus must be >= 2, got {m}")
    a %= m
    if math.gcd(a, m) != 1:
        raise ValueError(f"{a} is not a unit modulo {m}")
    t, x = 1, a
    while x != 1:
        x = x * a % m
        t += 1
    return t


def _prime_factors(n: int) -> tuple[int, ...]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return tuple(out)


def _smallest_primitive_root_mod_p2(p: int) -> int:
    # A primitive root modulo p**2 stays primitive modulo every p**n.
    fac = _prime_factors(p - 1)
    p2 = p * p
    for h in range(2, p2):
        if h % p == 0:
            continue
        if all(pow(h, (p - 1) // q, p) != 1 for q in fac) and pow(h, p - 1, p2) != 1:
            return h
    raise ArithmeticError(f"no primitive root found modulo {p}**2; is {p} prime?")


def find_odd_primitive_root(p: int, n: int) -> int:
    """Deterministic odd primitive root modulo p**n (and hence 2*p**n).

    Takes the smallest primitive root h modulo p**2 and returns h or
    h + p**n, whichever is odd.  Odd generators serve the doubled modulus
    as well, so one value drives both residue systems.
    """
    if n < 1:
        raise ParameterError(f"exponent must be >= 1, got {n}")
    if p == 2 or not is_prime(p):
        raise ParameterError(f"p must be an odd prime, got {p}")
    h = _smallest_primitive_root_mod_p2(p) % p**n
    g = h if h % 2 else h + p**n
    return g % (2 * p**n)


def index_of_two(g: int, p: int, n: int) -> int:
    """The unique u in [0, p**(n-1)*(p-1)) with g**u == 2 (mod p**n).

    Brute scan for small unit groups, baby-step/giant-step above.
    """
    modulus = p**n
    order = modulus // p * (p - 1)
    g %= modulus
    target = 2 % modulus
    if order < _BRUTE_LOG_LIMIT:
        x = 1
        for u in range(order):
            if x == target:
                return u
            x = x * g % modulus
        raise ArithmeticError(f"{g} does not generate the units modulo {p}**{n}")
    step = math.isqrt(order) + 1
    if step > _BSGS_TABLE_LIMIT:
        raise ParameterError(f"discrete-log table for modulus {p}**{n} exceeds desk scale")
    baby: dict[int, int] = {}
    x = 1
    for j in range(step):
        baby.setdefault(x, j)
        x = x * g % modulus
    giant = pow(g, (order - step) % order, modulus)  # g**(-step)
    y = target
    for i in range(step + 1):
        j = baby.get(y)
        if j is not None:
            return (i * step + j) % order
        y = y * giant % modulus
    raise ArithmeticError(f"{g} does not generate the units modulo {p}**{n}")


def compute_v(p: int, f: int) -> int:
    """gcd((p-1)/ord_p(2), f), cross-checked against gcd(index_of_two, f).

    The two characterisations must coincide for any primitive root, so a
    mismatch means a bug rather than bad input.
    """
    if f < 2 or f % 2:
        raise ParameterError(f"f must be a positive even integer, got {f}")
    if (p - 1) % f:
        raise ParameterError(f"f must divide p - 1 ({f} does not divide {p - 1})")
    v = math.gcd((p - 1) // multiplicative_order(2, p), f)
    u = index_of_two(find_odd_primitive_root(p, 1), p, 1)
    if math.gcd(u, f) != v:
        raise ArithmeticError(f"v characterisations disagree for p={p}, f={f}")
    return v


def wieferich_level(p: int) -> int:
    """Largest k with 2**(p-1) == 1 (mod p**k).

    The scan stops once p**(k+1) leaves the 63-bit range, so the result is
    a lower bound in that (never yet observed) regime; callers can detect
    the cap by comparing p**(level+1) against MAX_PERIOD.
    """
    if p == 2 or not is_prime(p):
        raise ParameterError(f"p must be an odd prime, got {p}")
    level = 0
    pk = p
    while pk < MAX_PERIOD and pow(2, p - 1, pk) == 1:
        level += 1
        pk *= p
    if level == 0:
        raise ArithmeticError(f"Fermat test failed for {p}; not prime?")
    return level


def _validate_root_override(g: int, p: int, n: int) -> None:
    if g % 2 == 0:
        raise ParameterError(f"generator override must be odd, got {g}")
    if g % p == 0:
        raise ParameterError(f"generator override must be a unit modulo {p}")
    fac = _prime_factors(p - 1)
    if any(pow(g, (p - 1) // q, p) == 1 for q in fac):
        raise ParameterError(f"{g} is not a primitive root modulo {p}")
    if n >= 2 and pow(g, p - 1, p * p) == 1:
        raise ParameterError(f"{g} is not a primitive root modulo {p}**2")


@dataclass(frozen=True)
class PrimePowerCtx:
    """Arithmetic context for one (p, n, f) parameter choice.

    g is odd and primitive for every modulus p**j and 2*p**j with j <= n,
    so a single generator drives the whole level tower.  u is the discrete
    log of 2 base g at the top level; v = gcd((p-1)/ord_p(2), f) controls
    the closed-form complexity case split.
    """

    p: int
    n: int
    f: int
    e: int
    g: int
    u: int
    ord2_p: int
    v: int
    wieferich_level: int

    @classmethod
    def create(cls, p: int, n: int, f: int, g: int | None = None) -> "PrimePowerCtx":
        if p == 2 or not is_prime(p):
            raise ParameterError(f"p must be an odd prime, got {p}")
        if n < 1:
            raise ParameterError(f"n must be >= 1, got {n}")
        if f < 2 or f % 2:
            raise ParameterError(f"f must be a positive even integer, got {f}")
        if (p - 1) % f:
            raise ParameterError(f"f must divide p - 1 ({f} does not divide {p - 1})")
        if 2 * p**n >= MAX_PERIOD:
            raise ParameterError(f"period 2*{p}**{n} does not fit in 63 bits")
        if g is None:
            g = find_odd_primitive_root(p, n)
        else:
            _validate_root_override(g, p, n)
            g %= 2 * p**n
        u = index_of_two(g, p, n)
        if pow(g, u, p**n) != 2 % p**n:
            raise ArithmeticError("discrete log self-check failed")
        ord2 = multiplicative_order(2, p)
        v = math.gcd((p - 1) // ord2, f)
        if math.gcd(u, f) != v:
            raise ArithmeticError(f"v characterisations disagree for p={p}, f={f}")
        return cls(p=p, n=n, f=f, e=(p - 1) // f, g=g, u=u, ord2_p=ord2, v=v,
                   wieferich_level=wieferich_level(p))

    @property
    def modulus(self) -> int:
        return self.p**self.n

    @property
    def period(self) -> int:
        return 2 * self.p**self.n

    def d(self, j: int) -> int:
        """Number of cyclotomic classes at level j."""
        if not 1 <= j <= self.n:
            raise ParameterError(f"level must be in 1..{self.n}, got {j}")
        return self.p ** (j - 1) * self.f

    @property
    def dn(self) -> int:
        return self.d(self.n)

    @property
    def wieferich_search_capped(self) -> bool:
        return self.p ** (self.wieferich_level + 1) >= MAX_PERIOD


@lru_cache(maxsize=256)
def cached_ctx(p: int, n: int, f: int, g: int | None = None) -> PrimePowerCtx:
    """Memoised PrimePowerCtx.create for sweep workloads."""
    return PrimePowerCtx.create(p, n, f, g)
