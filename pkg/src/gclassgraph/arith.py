"""Small integer helpers: prime sets and pi-parts."""
from __future__ import annotations

from functools import lru_cache
from math import gcd
from typing import Iterable

PrimeSet = frozenset  # sets of primes are plain frozensets of ints


@lru_cache(maxsize=4096)
def primes_of(n: int) -> frozenset[int]:
    """Prime divisors of ``n`` by trial division. ``primes_of(1)`` is empty."""
    if n < 1:
        raise ValueError(f"primes_of needs n >= 1, got {n}")
    out = set()
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.add(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.add(n)
    return frozenset(out)


def is_pi_number(n: int, pi: Iterable[int]) -> bool:
    return primes_of(n) <= frozenset(pi)


def pi_part(n: int, pi: Iterable[int]) -> int:
    """Largest divisor of ``n`` whose primes all lie in ``pi``."""
    out = 1
    for p in pi:
        while n % p == 0:
            n //= p
            out *= p
    return out


def coprime(a: int, b: int) -> bool:
    return gcd(a, b) == 1


def fmt_primes(pi: Iterable[int]) -> str:
    return "{" + ", ".join(str(p) for p in sorted(pi)) + "}"
