"""Integer and rational substrate: sieve, factorization, Moebius, Bernoulli.

All coefficients are carried as :class:`fractions.Fraction`, which is always
kept in lowest terms with a positive denominator.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, isqrt
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .errors import InvalidArgumentError, OutOfRangeError, ResourceLimitError

__all__ = [
    "Rational",
    "DEFAULT_SIEVE_LIMIT",
    "sieve_limit",
    "SpfTable",
    "build_spf_sieve",
    "PrimeFactorization",
    "factorize",
    "mobius",
    "mobius_table",
    "squarefree_order",
    "divisors",
    "BernoulliTable",
    "bernoulli_table",
]

Rational = Fraction

DEFAULT_SIEVE_LIMIT = 10**7


def sieve_limit() -> int:
    """Largest sieve we agree to build (PRODFORGE_SIEVE_LIMIT overrides)."""
    raw = os.environ.get("PRODFORGE_SIEVE_LIMIT")
    if raw is None:
        return DEFAULT_SIEVE_LIMIT
    try:
        value = int(raw)
    except ValueError:
        raise InvalidArgumentError(f"PRODFORGE_SIEVE_LIMIT is not an integer: {raw!r}")
    if value < 2:
        raise InvalidArgumentError("PRODFORGE_SIEVE_LIMIT must be >= 2")
    return value


@dataclass(frozen=True)
class SpfTable:
    """Smallest-prime-factor table for 2 <= n <= limit."""

    limit: int
    spf: np.ndarray

    def __getitem__(self, n: int) -> int:
        if n < 2 or n > self.limit:
            raise OutOfRangeError(f"index {n} outside sieve range [2, {self.limit}]")
        return int(self.spf[n])

    def is_prime(self, n: int) -> bool:
        return n >= 2 and self[n] == n


def build_spf_sieve(N: int, limit: Optional[int] = None) -> SpfTable:
    if N < 2:
        raise InvalidArgumentError(f"sieve size must be >= 2, got {N}")
    cap = sieve_limit() if limit is None else limit
    if N > cap:
        raise ResourceLimitError(f"sieve size {N} exceeds limit {cap}")
    spf = np.zeros(N + 1, dtype=np.int64)
    for p in range(2, isqrt(N) + 1):
        if spf[p]:
            continue
        block = spf[p * p :: p]
        block[block == 0] = p
    rest = np.flatnonzero(spf == 0)
    spf[rest] = rest
    spf[0] = 0
    spf[1] = 1
    spf.setflags(write=False)
    return SpfTable(N, spf)


@dataclass(frozen=True)
class PrimeFactorization:
    factors: Tuple[Tuple[int, int], ...]

    def value(self) -> int:
        out = 1
        for p, e in self.factors:
            out *= p**e
        return out

    @property
    def primes(self) -> Tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self.factors)

    def __iter__(self):
        return iter(self.factors)

    def __len__(self) -> int:
        return len(self.factors)


def _check_positive(n: int) -> None:
    if n < 1:
        raise InvalidArgumentError(f"expected a positive integer, got {n}")


def _trial_division(n: int) -> List[Tuple[int, int]]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def factorize(n: int, sieve: Optional[SpfTable] = None) -> PrimeFactorization:
    """Factor ``n`` with the sieve, or by trial division when none is given."""
    _check_positive(n)
    if sieve is None:
        return PrimeFactorization(tuple(_trial_division(n)))
    if n > sieve.limit:
        raise OutOfRangeError(f"{n} exceeds sieve limit {sieve.limit}")
    out: List[Tuple[int, int]] = []
    spf = sieve.spf
    while n > 1:
        p = int(spf[n])
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        out.append((p, e))
    return PrimeFactorization(tuple(out))


def mobius(n: int, sieve: Optional[SpfTable] = None) -> int:
    fac = factorize(n, sieve)
    if not fac.is_squarefree():
        return 0
    return -1 if len(fac) % 2 else 1


def mobius_table(N: int, limit: Optional[int] = None) -> List[int]:
    """mu(0..N) by the classical sign-flipping sieve (index 0 is unused).

    Deliberately does not go through :func:`factorize` so it can serve as an
    independent check on factorization-based code.
    """
    if N < 1:
        raise InvalidArgumentError(f"N must be >= 1, got {N}")
    cap = sieve_limit() if limit is None else limit
    if N > cap:
        raise ResourceLimitError(f"table size {N} exceeds limit {cap}")
    mu = [1] * (N + 1)
    mu[0] = 0
    composite = bytearray(N + 1)
    for p in range(2, N + 1):
        if composite[p]:
            continue
        for m in range(p, N + 1, p):
            composite[m] = 1
            mu[m] = -mu[m]
        sq = p * p
        for m in range(sq, N + 1, sq):
            mu[m] = 0
    return mu


def squarefree_order(n: int, sieve: Optional[SpfTable] = None) -> Optional[int]:
    """Number of distinct primes of a square-free ``n``; None otherwise."""
    fac = factorize(n, sieve)
    if not fac.is_squarefree():
        return None
    return len(fac)


def divisors(n: int, sieve: Optional[SpfTable] = None) -> List[int]:
    divs = [1]
    for p, e in factorize(n, sieve):
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


@dataclass(frozen=True)
class BernoulliTable:
    """Exact B_0..B_max_index with the B_1 = -1/2 convention."""

    max_index: int
    values: Tuple[Fraction, ...]

    def __getitem__(self, i: int) -> Fraction:
        if i < 0 or i > self.max_index:
            raise OutOfRangeError(f"Bernoulli index {i} outside [0, {self.max_index}]")
        return self.values[i]

    def even(self, j: int) -> Fraction:
        """B_{2j}."""
        return self[2 * j]

    def recurrence_residuals(self) -> List[Fraction]:
        """sum_{i<=m} C(m+1, i) B_i for m = 1..max_index (all zero when valid)."""
        return [
            sum((comb(m + 1, i) * self.values[i] for i in range(m + 1)), Fraction(0))
            for m in range(1, self.max_index + 1)
        ]


@lru_cache(maxsize=None)
def _bernoulli_values(J: int) -> Tuple[Fraction, ...]:
    top = 2 * J
    B: List[Fraction] = [Fraction(0)] * (top + 1)
    B[0] = Fraction(1)
    if top >= 1:
        B[1] = Fraction(-1, 2)
    for m in range(2, top + 1, 2):
        # odd entries beyond B_1 vanish, so only even i and i = 1 contribute
        acc = Fraction(comb(m + 1, 1)) * B[1]
        for i in range(0, m, 2):
            acc += comb(m + 1, i) * B[i]
        B[m] = -acc / (m + 1)
    return tuple(B)


def bernoulli_table(J: int) -> BernoulliTable:
    if J < 1:
        raise InvalidArgumentError(f"J must be >= 1, got {J}")
    return BernoulliTable(2 * J, _bernoulli_values(J))


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise InvalidArgumentError(f"expected an exact rational, got {type(value).__name__}")


def prod_fractions(values: Sequence[Fraction]) -> Fraction:
    out = Fraction(1)
    for v in values:
        out *= v
    return out
