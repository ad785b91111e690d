"""Exact truncated power series over Fractions.

A series is a list ``c`` with ``c[i]`` the coefficient of ``y**i``.  These
routines are the independent route used to cross-check Bernoulli-number
closed forms: they know nothing about Bernoulli numbers or products.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import List, Sequence

from .errors import InvalidArgumentError

Series = List[Fraction]


def mul(f: Sequence[Fraction], g: Sequence[Fraction], order: int) -> Series:
    out = [Fraction(0)] * (order + 1)
    for i, fi in enumerate(f[: order + 1]):
        if not fi:
            continue
        for j, gj in enumerate(g[: order + 1 - i]):
            if gj:
                out[i + j] += fi * gj
    return out


def div(f: Sequence[Fraction], g: Sequence[Fraction], order: int) -> Series:
    """f / g by long division; needs g[0] != 0."""
    if not g or g[0] == 0:
        raise InvalidArgumentError("divisor series must have a non-zero constant term")
    f = list(f[: order + 1]) + [Fraction(0)] * max(0, order + 1 - len(f))
    inv0 = 1 / Fraction(g[0])
    q = [Fraction(0)] * (order + 1)
    for n in range(order + 1):
        acc = f[n]
        for j in range(1, min(n, len(g) - 1) + 1):
            if g[j]:
                acc -= g[j] * q[n - j]
        q[n] = acc * inv0
    return q


def derivative(f: Sequence[Fraction]) -> Series:
    return [i * f[i] for i in range(1, len(f))]


def integral(f: Sequence[Fraction]) -> Series:
    return [Fraction(0)] + [f[i] / (i + 1) for i in range(len(f))]


def log(f: Sequence[Fraction], order: int) -> Series:
    """log f for f[0] == 1, via log f = integral(f' / f)."""
    if Fraction(f[0]) != 1:
        raise InvalidArgumentError("log needs a series with constant term 1")
    q = div(derivative(f), f, order - 1)
    return integral(q)[: order + 1]


def sinc_series(order: int) -> Series:
    """sin(x)/x as a series in y = x^2."""
    return [Fraction((-1) ** n, factorial(2 * n + 1)) for n in range(order + 1)]


def cos_series(order: int) -> Series:
    """cos(x) as a series in y = x^2."""
    return [Fraction((-1) ** n, factorial(2 * n)) for n in range(order + 1)]


def log_x_over_sin(order: int) -> Series:
    """Taylor coefficients of log(x / sin x) in y = x^2, through y**order."""
    return [-c for c in log(sinc_series(order), order)]


def log_sec(order: int) -> Series:
    """Taylor coefficients of log(1 / cos x) in y = x^2, through y**order."""
    return [-c for c in log(cos_series(order), order)]
