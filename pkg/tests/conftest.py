"""Shared brute-force oracles, deliberately independent of the package's
bit-packed implementations: coefficient-list polynomial arithmetic and an
exhaustive minimal-LFSR search for tiny periods."""

from __future__ import annotations

import pytest


def list_degree(a: list[int]) -> int:
    for i in range(len(a) - 1, -1, -1):
        if a[i]:
            return i
    return -1


def list_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b))
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] ^= cb
    return out


def list_mod(a: list[int], b: list[int]) -> list[int]:
    a = a[:]
    db = list_degree(b)
    assert db >= 0
    while True:
        da = list_degree(a)
        if da < db:
            break
        for i in range(db + 1):
            a[da - db + i] ^= b[i]
    return a


def list_divides(d: list[int], a: list[int]) -> bool:
    return list_degree(list_mod(a, d)) < 0


def int_to_list(v: int) -> list[int]:
    return [(v >> i) & 1 for i in range(max(1, v.bit_length()))]


def list_to_int(a: list[int]) -> int:
    return sum(c << i for i, c in enumerate(a))


def brute_common_divisors(a: int, b: int, max_degree: int = 8) -> list[int]:
    """All monic common divisors of a and b with degree <= max_degree."""
    la, lb = int_to_list(a), int_to_list(b)
    out = []
    for d in range(1, 1 << (max_degree + 1)):
        ld = int_to_list(d)
        if list_divides(ld, la) and list_divides(ld, lb):
            out.append(d)
    return out


def brute_linear_complexity(bits: list[int]) -> int:
    """Smallest LFSR length reproducing the periodic extension.

    Exhaustive over all tap settings; usable only for tiny periods.
    """
    n = len(bits)
    if not any(bits):
        return 0
    ext = bits * 3
    for length in range(1, n + 1):
        for taps in range(1 << length):
            if all(
                ext[j]
                == _predict(taps, length, ext, j)
                for j in range(length, len(ext))
            ):
                return length
    return n


def _predict(taps: int, length: int, ext: list[int], j: int) -> int:
    acc = 0
    for i in range(length):
        if (taps >> i) & 1:
            acc ^= ext[j - 1 - i]
    return acc


def field_capable(p: int, n: int, cap: int = 64) -> bool:
    """Whether ord_{p**n}(2) stays within the extension-degree guard."""
    m = p**n
    t, x = 1, 2 % m
    while x != 1:
        x = 2 * x % m
        t += 1
        if t > cap:
            return False
    return True


@pytest.fixture(scope="session")
def small_grid_ctxs():
    from cycloseq.ntheory import cached_ctx

    out = []
    for p in (3, 5, 7, 11, 13, 17):
        for n in (1, 2):
            for f in [f for f in range(2, p, 2) if (p - 1) % f == 0] + [p - 1]:
                if f % 2 == 0 and (p - 1) % f == 0:
                    out.append(cached_ctx(p, n, f))
    # dedupe while keeping order
    seen = set()
    uniq = []
    for ctx in out:
        key = (ctx.p, ctx.n, ctx.f)
        if key not in seen:
            seen.add(key)
            uniq.append(ctx)
    return uniq
