"""Dense polynomials over the two-element field, bit-packed into ints.

The polynomial sum(c_i * x**i) is stored as the integer sum(c_i * 2**i):
addition is XOR, multiplication is carry-less, and reduction walks the
top bits down.  Python's big integers give word-level shift/XOR for free,
which keeps gcd runs and LFSR synthesis on periods of 10**5+ bits cheap.

Includes the two independent linear-complexity measurements used
throughout: the gcd formula L = N - deg gcd(x**N - 1, S(x)) and
Berlekamp-Massey synthesis run over a doubled period.
"""

from __future__ import annotations

from typing import Optional


class Gf2Poly:
    """Immutable-by-convention wrapper around the bit-packed coefficient int."""

    __slots__ = ("value",)

    def __init__(self, value: int = 0):
        if value < 0:
            raise ValueError("coefficient int must be nonnegative")
        self.value = value

    @classmethod
    def from_coefficients(cls, coeffs) -> "Gf2Poly":
        """Build from an iterable of 0/1 coefficients, index = exponent."""
        v = 0
        for i, c in enumerate(coeffs):
            if c not in (0, 1):
                raise ValueError(f"coefficient must be 0 or 1, got {c!r}")
            v |= c << i
        return cls(v)

    @classmethod
    def from_terms(cls, *exponents: int) -> "Gf2Poly":
        v = 0
        for t in exponents:
            v ^= 1 << t
        return cls(v)

    @property
    def degree(self) -> Optional[int]:
        """Degree, or None for the zero polynomial (distinct sentinel)."""
        return self.value.bit_length() - 1 if self.value else None

    def is_zero(self) -> bool:
        return self.value == 0

    def __bool__(self) -> bool:
        return self.value != 0

    def __eq__(self, other) -> bool:
        return isinstance(other, Gf2Poly) and self.value == other.value

    def __hash__(self) -> int:
        return hash(("Gf2Poly", self.value))

    def __add__(self, other: "Gf2Poly") -> "Gf2Poly":
        return Gf2Poly(self.value ^ other.value)

    __sub__ = __add__

    def __mul__(self, other: "Gf2Poly") -> "Gf2Poly":
        return Gf2Poly(clmul(self.value, other.value))

    def __divmod__(self, other: "Gf2Poly") -> tuple["Gf2Poly", "Gf2Poly"]:
        q, r = _divmod(self.value, other.value)
        return Gf2Poly(q), Gf2Poly(r)

    def __mod__(self, other: "Gf2Poly") -> "Gf2Poly":
        return Gf2Poly(_mod(self.value, other.value))

    def __floordiv__(self, other: "Gf2Poly") -> "Gf2Poly":
        return Gf2Poly(_divmod(self.value, other.value)[0])

    def to_hex(self) -> str:
        return format(self.value, "x")

    def __repr__(self) -> str:
        return f"Gf2Poly(0x{self.value:x})"


def clmul(a: int, b: int) -> int:
    """Carry-less product of two coefficient ints."""
    if a < b:
        a, b = b, a
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def _mod(a: int, b: int) -> int:
    if b == 0:
        raise ZeroDivisionError("polynomial division by zero")
    db = b.bit_length() - 1
    while a:
        da = a.bit_length() - 1
        if da < db:
            break
        a ^= b << (da - db)
    return a


def _divmod(a: int, b: int) -> tuple[int, int]:
    if b == 0:
        raise ZeroDivisionError("polynomial division by zero")
    db = b.bit_length() - 1
    q = 0
    while a:
        da = a.bit_length() - 1
        if da < db:
            break
        q |= 1 << (da - db)
        a ^= b << (da - db)
    return q, a


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, _mod(a, b)
    return a


def gcd(a: Gf2Poly, b: Gf2Poly) -> Gf2Poly:
    """Euclidean gcd; every nonzero binary polynomial is already monic."""
    if not a.value and not b.value:
        raise ValueError("gcd of two zero polynomials is undefined")
    return Gf2Poly(_gcd(a.value, b.value))


def mulmod(a: int, b: int, m: int) -> int:
    """Raw-int modular product, used for field arithmetic."""
    return _mod(clmul(a, b), m)


def is_irreducible(poly: Gf2Poly) -> bool:
    """Rabin irreducibility test for degree >= 1."""
    f = poly.value
    m = f.bit_length() - 1
    if m < 1:
        return False
    x = _mod(2, f)

    def x_to_2exp(k: int) -> int:
        s = x
        for _ in range(k):
            s = mulmod(s, s, f)
        return s

    if x_to_2exp(m) != x:
        return False
    q = 2
    mm = m
    while q * q <= mm:
        if mm % q == 0:
            if _gcd(x_to_2exp(m // q) ^ x, f) != 1:
                return False
            while mm % q == 0:
                mm //= q
        q += 1
    if mm > 1:
        if _gcd(x_to_2exp(m // mm) ^ x, f) != 1:
            return False
    return True


def formal_derivative(a: Gf2Poly) -> Gf2Poly:
    """Characteristic-2 derivative: odd-exponent terms drop one degree, the
    rest vanish."""
    v = a.value >> 1
    nbits = v.bit_length()
    nbits += nbits & 1
    mask = ((1 << nbits) - 1) // 3  # 0b...0101: keeps former odd exponents
    return Gf2Poly(v & mask)


def from_sequence(seq) -> Gf2Poly:
    """Generating polynomial of one period: coefficient i = bit i."""
    return Gf2Poly(seq.value)


def period_lc_gcd(value: int, length: int) -> int:
    """Linear complexity of the periodic extension of `length` bits.

    L = N - deg gcd(x**N - 1, S(x)); the all-zero period gives 0.
    """
    if length < 1:
        raise ValueError(f"period length must be >= 1, got {length}")
    if value >> length:
        raise ValueError("bits set beyond the stated period length")
    g = _gcd((1 << length) | 1, value)
    return length - (g.bit_length() - 1)


def period_lc_massey(value: int, length: int) -> tuple[int, Gf2Poly]:
    """Shortest LFSR for the periodic extension, by Berlekamp-Massey.

    Runs over two full periods, enough for any recurrence of length
    <= N to stabilise.  Returns (L, feedback polynomial c(x)) with
    c_0 = 1 and sum_{i=0..L} c_i * s_{j-i} = 0 for all j >= L.
    """
    if length < 1:
        raise ValueError(f"period length must be >= 1, got {length}")
    if value >> length:
        raise ValueError("bits set beyond the stated period length")
    stream = value | (value << length)
    total = 2 * length
    c = b = 1
    l, m = 0, 1
    rev = 0  # bit i holds s_{j-i} while processing position j
    for j in range(total):
        rev = (rev << 1) | ((stream >> j) & 1)
        if (c & rev).bit_count() & 1:
            if 2 * l <= j:
                c, b = c ^ (b << m), c
                l = j + 1 - l
                m = 1
            else:
                c ^= b << m
                m += 1
        else:
            m += 1
    return l, Gf2Poly(c)


def linear_complexity_gcd(seq) -> int:
    """gcd-formula linear complexity of a BinarySequence period."""
    return period_lc_gcd(seq.value, len(seq))


def berlekamp_massey(seq) -> tuple[int, Gf2Poly]:
    """LFSR-synthesis linear complexity of a BinarySequence period."""
    return period_lc_massey(seq.value, len(seq))
