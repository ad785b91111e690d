"""Square-free-indexed exponent sequences a_n, b_n and their s-variants.

Every table can be produced two ways: from its closed form, and by forward
substitution in the lower-triangular system obtained by comparing power-series
coefficients.  :func:`certify_tables` checks that both routes agree exactly.

Row n of the triangular system reads ``sum_{d | n} v[d] * w(n/d) = [n == 1] * v1``
with the weights

======  ==========================
kind    w(m)
======  ==========================
A_LOG   1/m
B_LOG   (-1)^(m+1)/m
A_S     1/m^s
B_S     (-1)^(m+1)/m^s
======  ==========================

and ``v1 = -1`` for A_LOG, ``+1`` otherwise.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .arith import SpfTable, build_spf_sieve, factorize
from .errors import InvalidArgumentError, OutOfRangeError, UnsupportedParameterError

__all__ = [
    "Kind",
    "CoeffTable",
    "a_closed",
    "b_closed",
    "a_s_closed",
    "b_s_closed",
    "closed_value",
    "closed_table",
    "solve_triangular",
    "triangular_row",
    "certify_tables",
    "CertificationResult",
    "CertificationReport",
    "table_to_tsv",
    "table_to_json",
]


class Kind(str, enum.Enum):
    A_LOG = "A_LOG"
    B_LOG = "B_LOG"
    A_S = "A_S"
    B_S = "B_S"

    @property
    def needs_s(self) -> bool:
        return self in (Kind.A_S, Kind.B_S)

    @property
    def alternating(self) -> bool:
        return self in (Kind.B_LOG, Kind.B_S)

    @classmethod
    def parse(cls, name: str) -> "Kind":
        aliases = {"a": cls.A_LOG, "b": cls.B_LOG, "a_s": cls.A_S, "b_s": cls.B_S}
        key = name.strip()
        if key.lower() in aliases:
            return aliases[key.lower()]
        try:
            return cls(key.upper())
        except ValueError:
            raise InvalidArgumentError(f"unknown coefficient kind {name!r}")


def _check_kind_s(kind: Kind, s: Optional[int]) -> None:
    if kind.needs_s:
        if s is None:
            raise InvalidArgumentError(f"{kind.value} requires an exponent s")
        if not isinstance(s, int) or isinstance(s, bool):
            raise UnsupportedParameterError(f"exact tables need an integer s, got {s!r}")
        if s < 2:
            raise UnsupportedParameterError(f"s must be >= 2 for exact tables, got {s}")
    elif s is not None:
        raise InvalidArgumentError(f"{kind.value} takes no exponent s")


@dataclass(frozen=True)
class CoeffTable:
    kind: Kind
    limit: int
    values: Tuple[Fraction, ...]  # values[n - 1] holds the n-th coefficient
    s: Optional[int] = None
    provenance: str = "closed-form"

    def __getitem__(self, n: int) -> Fraction:
        if n < 1 or n > self.limit:
            raise OutOfRangeError(f"coefficient index {n} outside [1, {self.limit}]")
        return self.values[n - 1]

    def __len__(self) -> int:
        return self.limit

    def items(self) -> Iterable[Tuple[int, Fraction]]:
        return enumerate(self.values, start=1)

    def floats(self) -> List[float]:
        return [float(v) for v in self.values]


# ---------------------------------------------------------------- closed forms


def a_closed(n: int, sieve: Optional[SpfTable] = None) -> Fraction:
    """(-1)^(k+1)/n for square-free n with k prime factors, else 0."""
    if n < 1:
        raise InvalidArgumentError(f"n must be >= 1, got {n}")
    fac = factorize(n, sieve)
    if not fac.is_squarefree():
        return Fraction(0)
    return Fraction((-1) ** (len(fac) + 1), n)


def b_closed(n: int, sieve: Optional[SpfTable] = None) -> Fraction:
    """b_1 = 1, b_2 = 1/2, b_p = -1/p, multiplicative, b_(2^k m) = b_m / 2."""
    if n < 1:
        raise InvalidArgumentError(f"n must be >= 1, got {n}")
    value = Fraction(1)
    for p, e in factorize(n, sieve):
        if p == 2:
            value /= 2
        elif e > 1:
            return Fraction(0)
        else:
            value *= Fraction(-1, p)
    return value


def a_s_closed(n: int, s: int, sieve: Optional[SpfTable] = None) -> Fraction:
    """mu(n)/n^s.  Note a_1(s) = +1 (the x-coefficient of x = sum a_k Phi(x^k))."""
    _check_kind_s(Kind.A_S, s)
    if n < 1:
        raise InvalidArgumentError(f"n must be >= 1, got {n}")
    fac = factorize(n, sieve)
    if not fac.is_squarefree():
        return Fraction(0)
    return Fraction((-1) ** len(fac), n**s)


def b_s_closed(n: int, s: int, sieve: Optional[SpfTable] = None) -> Fraction:
    """Product of -p^-s over odd primes p | n, times 2^(k-1) 2^(-ks) when 2^k || n."""
    _check_kind_s(Kind.B_S, s)
    if n < 1:
        raise InvalidArgumentError(f"n must be >= 1, got {n}")
    value = Fraction(1)
    for p, e in factorize(n, sieve):
        if p == 2:
            value *= Fraction(2 ** (e - 1), 2 ** (e * s))
        elif e > 1:
            return Fraction(0)
        else:
            value *= Fraction(-1, p**s)
    return value


def closed_value(kind: Kind, n: int, s: Optional[int] = None, sieve: Optional[SpfTable] = None) -> Fraction:
    kind = Kind(kind)
    _check_kind_s(kind, s)
    if kind is Kind.A_LOG:
        return a_closed(n, sieve)
    if kind is Kind.B_LOG:
        return b_closed(n, sieve)
    if kind is Kind.A_S:
        return a_s_closed(n, s, sieve)
    return b_s_closed(n, s, sieve)


@lru_cache(maxsize=64)
def _closed_values(kind: Kind, N: int, s: Optional[int]) -> Tuple[Fraction, ...]:
    sieve = build_spf_sieve(max(N, 2))
    return tuple(closed_value(kind, n, s, sieve) for n in range(1, N + 1))


def closed_table(kind: Kind, N: int, s: Optional[int] = None) -> CoeffTable:
    kind = Kind(kind)
    _check_kind_s(kind, s)
    if N < 1:
        raise InvalidArgumentError(f"N must be >= 1, got {N}")
    return CoeffTable(kind, N, _closed_values(kind, N, s), s, "closed-form")


# ---------------------------------------------------------------- solver route


def _weight(kind: Kind, m: int, s: Optional[int]) -> Fraction:
    power = m if s is None else m**s
    sign = -1 if (kind.alternating and m % 2 == 0) else 1
    return Fraction(sign, power)


def _leading(kind: Kind) -> Fraction:
    return Fraction(-1) if kind is Kind.A_LOG else Fraction(1)


def triangular_row(kind: Kind, n: int, s: Optional[int] = None) -> Dict[int, Fraction]:
    """Coefficients of row n as {index d: weight w(n/d)} over the divisors d of n."""
    kind = Kind(kind)
    _check_kind_s(kind, s)
    if n < 1:
        raise InvalidArgumentError(f"n must be >= 1, got {n}")
    return {d: _weight(kind, n // d, s) for d in range(1, n + 1) if n % d == 0}


def solve_triangular(kind: Kind, N: int, s: Optional[int] = None) -> CoeffTable:
    """Forward substitution, pushing each finished value into its multiples."""
    kind = Kind(kind)
    _check_kind_s(kind, s)
    if N < 1:
        raise InvalidArgumentError(f"N must be >= 1, got {N}")
    weights = [Fraction(0)] + [_weight(kind, m, s) for m in range(1, N + 1)]
    acc: List[Fraction] = [Fraction(0)] * (N + 1)
    values: List[Fraction] = [Fraction(0)] * (N + 1)
    for n in range(1, N + 1):
        v = _leading(kind) if n == 1 else -acc[n]
        values[n] = v
        if v:
            for j, target in enumerate(range(2 * n, N + 1, n), start=2):
                acc[target] += v * weights[j]
    return CoeffTable(kind, N, tuple(values[1:]), s, "solver")


# ---------------------------------------------------------------- certification


@dataclass(frozen=True)
class CertificationResult:
    kind: Kind
    s: Optional[int]
    limit: int
    equal_count: int
    first_mismatch: Optional[int] = None

    @property
    def ok(self) -> bool:
        return self.first_mismatch is None

    def summary(self) -> str:
        label = self.kind.value if self.s is None else f"{self.kind.value}(s={self.s})"
        if self.ok:
            return f"{label}: certified: {self.equal_count}/{self.limit} equal"
        return (
            f"{label}: MISMATCH at n={self.first_mismatch} "
            f"({self.equal_count}/{self.limit} equal)"
        )


@dataclass(frozen=True)
class CertificationReport:
    results: Tuple[CertificationResult, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)


def compare_tables(closed: CoeffTable, solved: CoeffTable) -> CertificationResult:
    if closed.limit != solved.limit:
        raise InvalidArgumentError("tables have different limits")
    first = None
    equal = 0
    for (n, c), (_, v) in zip(closed.items(), solved.items()):
        if c == v:
            equal += 1
        elif first is None:
            first = n
    return CertificationResult(closed.kind, closed.s, closed.limit, equal, first)


def certify_tables(
    N: int,
    s_list: Sequence[int] = (),
    kinds: Optional[Sequence[Kind]] = None,
) -> CertificationReport:
    """Compare closed form against solver for A_LOG, B_LOG and A_S/B_S per s."""
    if N < 1:
        raise InvalidArgumentError(f"N must be >= 1, got {N}")
    wanted = [Kind(k) for k in kinds] if kinds is not None else list(Kind)
    jobs: List[Tuple[Kind, Optional[int]]] = []
    for kind in wanted:
        if kind.needs_s:
            jobs.extend((kind, s) for s in s_list)
        else:
            jobs.append((kind, None))
    results = tuple(
        compare_tables(closed_table(kind, N, s), solve_triangular(kind, N, s)) for kind, s in jobs
    )
    return CertificationReport(results)


# ---------------------------------------------------------------- serialization


def table_to_tsv(table: CoeffTable) -> str:
    return "".join(f"{n}\t{v}\n" for n, v in table.items())


def table_to_json(table: CoeffTable) -> str:
    lines = []
    for n, v in table.items():
        row = {"kind": table.kind.value, "n": n, "schema": "prodforge/1", "value": str(v)}
        if table.s is not None:
            row["s"] = table.s
        lines.append(json.dumps(row, sort_keys=True))
    return "\n".join(lines) + "\n"
