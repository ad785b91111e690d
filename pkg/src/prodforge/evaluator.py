"""Log-domain evaluation of truncated products, tail bounds, partial sums and
Abel-limit probes.

Products are accumulated as ``sum_k e_k * log(factor_k)`` in ascending k with
Neumaier-compensated summation, so repeated calls are bit-identical.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .arith import mobius_table
from .coefficients import Kind, b_closed, closed_table
from .errors import DomainError, InvalidArgumentError
from .series import FactorKind, ProductForm

__all__ = [
    "Accumulator",
    "EvalPoint",
    "EvalReport",
    "eval_product",
    "eval_plan",
    "tail_bound",
    "choose_K",
    "residual_of",
    "PartialSumReport",
    "partial_sum",
    "AbelRow",
    "abel_K",
    "abel_evaluate",
    "ABEL_PROBES",
]

STATUSES = ("converged", "boundary-experimental", "tail-dominated")
INTERIOR_MAX = 0.99


class Accumulator:
    """Neumaier (improved Kahan) running sum."""

    __slots__ = ("total", "carry")

    def __init__(self) -> None:
        self.total = 0.0
        self.carry = 0.0

    def add(self, value: float) -> None:
        t = self.total + value
        if abs(self.total) >= abs(value):
            self.carry += (self.total - t) + value
        else:
            self.carry += (value - t) + self.total
        self.total = t

    @property
    def value(self) -> float:
        return self.total + self.carry


@dataclass(frozen=True)
class EvalPoint:
    x: float
    theta: Optional[float] = None
    boundary: bool = False

    def __post_init__(self):
        if not math.isfinite(self.x):
            raise InvalidArgumentError(f"x must be finite, got {self.x}")
        if abs(self.x) > 1.0:
            raise InvalidArgumentError(f"|x| must not exceed 1, got {self.x}")
        if abs(self.x) == 1.0 and not self.boundary:
            raise InvalidArgumentError("|x| = 1 is only allowed in boundary-experimental mode")


@dataclass
class EvalReport:
    value: float
    log_value: float
    K_used: int
    tail_bound: float
    status: str = "converged"
    reference: Optional[float] = None
    residual: Optional[float] = None
    identity: Optional[str] = None
    passed: Optional[bool] = None
    extra: Dict[str, object] = field(default_factory=dict)

    def with_reference(self, reference: float) -> "EvalReport":
        self.reference = reference
        self.residual = residual_of(self.value, reference)
        return self

    def to_dict(self) -> dict:
        def num(v):
            if v is None:
                return None
            if isinstance(v, float) and math.isinf(v):
                return "inf"
            return v

        out = {
            "schema": "prodforge/1",
            "value": num(self.value),
            "log_value": num(self.log_value),
            "K": self.K_used,
            "tail_bound": num(self.tail_bound),
            "reference": num(self.reference),
            "residual": num(self.residual),
            "status": self.status,
        }
        if self.identity is not None:
            out["id"] = self.identity
        if self.passed is not None:
            out["passed"] = self.passed
        for key, val in self.extra.items():
            out[key] = num(val)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def residual_of(value: float, reference: float) -> float:
    """Absolute difference for |reference| <= 10, relative beyond."""
    diff = abs(value - reference)
    if abs(reference) <= 10.0:
        return diff
    return diff / abs(reference)


def _resolve(form: ProductForm, point: EvalPoint) -> Tuple[float, Optional[float]]:
    x = point.x
    if form.x is not None and x != form.x:
        raise InvalidArgumentError(
            f"form was built for fixed x={form.x}; evaluation point has x={x}"
        )
    theta = form.theta if form.theta is not None else point.theta
    if form.factor_kind.is_cos and theta is None:
        raise InvalidArgumentError(f"{form.factor_kind.value} factors need an angle theta")
    if form.theta is not None and point.theta is not None and point.theta != form.theta:
        raise InvalidArgumentError(
            f"form was built for theta={form.theta}; evaluation point has theta={point.theta}"
        )
    return x, theta


def _log_cos_quadratic(u: float, half_angle: float, sign: int, k: int) -> float:
    # 1 - 2u cos(2h) + u^2 == (1 - u)^2 + 4u sin(h)^2 ; the plus variant uses cos(h)^2
    t = u * u - sign * 2.0 * u * math.cos(2.0 * half_angle)
    if abs(t) < 0.5:
        return math.log1p(t)
    trig = math.sin(half_angle) if sign > 0 else math.cos(half_angle)
    factor = (1.0 - u) ** 2 + 4.0 * u * trig * trig
    if factor <= 0.0:
        raise DomainError(k, factor)
    return math.log(factor)


def factor_log(kind: FactorKind, u: float, k: int, theta: Optional[float] = None) -> float:
    """log of the k-th factor with u = x**k."""
    if kind is FactorKind.MINUS:
        if u >= 1.0:
            raise DomainError(k, 1.0 - u)
        return math.log1p(-u)
    if kind is FactorKind.PLUS:
        if u <= -1.0:
            raise DomainError(k, 1.0 + u)
        return math.log1p(u)
    if kind is FactorKind.RATIO_ODD:
        if abs(u) >= 1.0:
            raise DomainError(k, (1.0 - u) / (1.0 + u) if u != -1.0 else float("-inf"))
        return math.log1p(-u) - math.log1p(u)
    half = 0.5 * k * theta
    if kind is FactorKind.COS_MINUS:
        return _log_cos_quadratic(u, half, +1, k)
    if kind is FactorKind.COS_PLUS:
        return _log_cos_quadratic(u, half, -1, k)
    return _log_cos_quadratic(u, half, +1, k) - _log_cos_quadratic(u, half, -1, k)


def _multiplier(kind: FactorKind) -> float:
    if kind in (FactorKind.MINUS, FactorKind.PLUS):
        return 1.0
    if kind is FactorKind.COS_RATIO:
        return 4.0
    return 2.0


def tail_bound(
    form: ProductForm,
    point: EvalPoint,
    K: int,
    exponent_bound: Optional[float] = None,
) -> float:
    """Bound on |sum_{k>K} e_k log factor_k| (log domain).

    Uses |log(1 +- u)| <= 2|u| for |u| <= 1/2, so the MINUS/PLUS bound is
    2 E r^(K+1)/(1 - r) with r = |x|^var_power; ratio and cosine kinds are
    doubled and the cosine ratio quadrupled.  Points with |x| > 0.99 or in
    boundary mode get +inf.
    """
    if point.boundary or abs(point.x) > INTERIOR_MAX:
        return math.inf
    r = abs(point.x) ** form.var_power
    if r == 0.0:
        return 0.0
    E = form.max_abs_exponent() if exponent_bound is None else float(exponent_bound)
    u = r ** (K + 1)
    c = max(2.0, 1.0 / (1.0 - u))
    return _multiplier(form.factor_kind) * c * E * u / (1.0 - r)


def choose_K(
    kind: FactorKind,
    x: float,
    target: float,
    exponent_bound: float = 1.0,
    var_power: int = 1,
    K_max: int = 10**6,
) -> int:
    """Smallest K whose tail bound is at most ``target``."""
    r = abs(x) ** var_power
    if r == 0.0:
        return 1
    if r > INTERIOR_MAX:
        raise InvalidArgumentError(f"no finite tail bound for |x|^{var_power} = {r}")
    coeff = 2.0 * _multiplier(kind) * exponent_bound / (1.0 - r)
    K = max(1, math.ceil(math.log(target / coeff) / math.log(r)) - 1)
    while K > 1 and coeff * r ** K <= target:
        K -= 1
    while coeff * r ** (K + 1) > target and K < K_max:
        K += 1
    return K


def _log_sum(form: ProductForm, point: EvalPoint, K: int, acc: Accumulator) -> int:
    x, theta = _resolve(form, point)
    base = x ** form.var_power
    used = 0
    for k, e in form.entries:
        if k > K:
            break
        used = k
        if not e:
            continue
        u = base**k
        if u == 0.0:
            continue
        acc.add(float(e) * factor_log(form.factor_kind, u, k, theta))
    return used


def eval_product(
    form: ProductForm,
    point: EvalPoint,
    K: Optional[int] = None,
    exponent_bound: Optional[float] = None,
    tol: float = 1e-9,
) -> EvalReport:
    """Evaluate prod_{k <= K} factor_k^e_k at ``point``."""
    if K is None:
        K = form.max_k
    if K < 1:
        raise InvalidArgumentError(f"K must be >= 1, got {K}")
    acc = Accumulator()
    _log_sum(form, point, K, acc)
    log_value = acc.value
    tb = tail_bound(form, point, K, exponent_bound)
    if point.boundary:
        status = "boundary-experimental"
    else:
        status = "converged" if tb <= tol else "tail-dominated"
    return EvalReport(math.exp(log_value), log_value, K, tb, status)


def eval_plan(
    plan: Sequence[Tuple[ProductForm, EvalPoint]],
    K: int,
    exponent_bound: Optional[float] = None,
    tol: float = 1e-9,
) -> EvalReport:
    """Evaluate a product of several forms (each at its own point) as one value."""
    acc = Accumulator()
    tb = 0.0
    boundary = False
    for form, point in plan:
        _log_sum(form, point, K, acc)
        tb += tail_bound(form, point, K, exponent_bound)
        boundary = boundary or point.boundary
    log_value = acc.value
    if boundary:
        status = "boundary-experimental"
    else:
        status = "converged" if tb <= tol else "tail-dominated"
    return EvalReport(math.exp(log_value), log_value, K, tb, status)


# ---------------------------------------------------------------- partial sums


@dataclass
class PartialSumReport:
    kind: str
    s: Optional[Union[int, float]]
    N: int
    value: float
    exact: Optional[Fraction] = None
    last_term: Optional[float] = None
    tail_bound: Optional[float] = None
    trace: List[Tuple[int, float]] = field(default_factory=list)


PARTIAL_KINDS = ("A_S", "B_S", "B_LOG_RAW")


def _odd_part(n: int) -> Tuple[int, int]:
    k = (n & -n).bit_length() - 1
    return k, n >> k


def partial_sum(
    kind: str,
    s: Optional[Union[int, float]] = None,
    N: int = 1,
    exact: bool = False,
    trace_at: Sequence[int] = (),
) -> PartialSumReport:
    """sum_{n <= N} of mu(n)/n^s (A_S), b_n(s) (B_S), or the raw b_n (B_LOG_RAW)."""
    if kind not in PARTIAL_KINDS:
        raise InvalidArgumentError(f"unknown partial-sum kind {kind!r}")
    if N < 1:
        raise InvalidArgumentError(f"N must be >= 1, got {N}")
    if kind == "B_LOG_RAW":
        s = None
    else:
        if s is None or not s > 1:
            raise InvalidArgumentError(f"{kind} needs s > 1, got {s!r}")
        if exact and not (isinstance(s, int) or (isinstance(s, Fraction) and s.denominator == 1)):
            raise InvalidArgumentError("exact partial sums need an integer s")
    mu = mobius_table(N)
    acc = Accumulator()
    exact_sum = Fraction(0) if exact else None
    want = set(trace_at)
    trace: List[Tuple[int, float]] = []
    sf = None if s is None else float(s)
    term = 0.0
    for n in range(1, N + 1):
        if kind == "A_S":
            m = mu[n]
            term = m / n**sf if m else 0.0
            if exact and m:
                exact_sum += Fraction(m, n ** int(s))
        else:
            k, m = _odd_part(n)
            mm = mu[m]
            if mm:
                power = 1.0 if sf is None else sf
                scale = 1.0 if k == 0 else 2.0 ** (k - 1)
                term = mm * scale / n**power
                if exact:
                    if sf is None:
                        exact_sum += b_closed(n)
                    else:
                        ip = int(s)
                        exact_sum += Fraction(mm * (1 if k == 0 else 2 ** (k - 1)), n**ip)
            else:
                term = 0.0
        acc.add(term)
        if n in want:
            trace.append((n, acc.value))
    tb = N ** (1.0 - sf) / (sf - 1.0) if kind == "A_S" else None
    return PartialSumReport(kind, s, N, acc.value, exact_sum, term, tb, trace)


# ---------------------------------------------------------------- Abel probes


@dataclass(frozen=True)
class AbelRow:
    x: float
    K: int
    lhs: float
    target: float
    residual: float


def abel_K(x: float, digits: int = 18) -> int:
    """Smallest K with x^K < 10^-digits."""
    if x == 0.0:
        return 1
    return max(1, math.ceil(-digits * math.log(10.0) / math.log(abs(x))))


def _probe_b_sum(x: float, theta: Optional[float], K: int) -> Tuple[float, float]:
    table = closed_table(Kind.B_LOG, K)
    form = ProductForm(FactorKind.PLUS, tuple(table.items()))
    acc = Accumulator()
    _log_sum(form, EvalPoint(x), K, acc)
    return acc.value, x


def _check_theta(theta: Optional[float], K: int) -> float:
    if theta is None:
        raise InvalidArgumentError("this probe needs theta")
    for k in range(1, K + 1):
        if abs(math.sin(0.5 * k * theta)) < 1e-12:
            raise InvalidArgumentError(
                f"k*theta is a multiple of 2*pi at k={k}; the boundary factor vanishes"
            )
    return theta


def _probe_sin(x: float, theta: Optional[float], K: int) -> Tuple[float, float]:
    theta = _check_theta(theta, K)
    table = closed_table(Kind.A_LOG, K)
    form = ProductForm(FactorKind.COS_MINUS, tuple(table.items()), Fraction(2), theta=theta)
    acc = Accumulator()
    _log_sum(form, EvalPoint(x), K, acc)
    return acc.value, 2.0 * x * math.cos(theta)


def _probe_sin_reflect(x: float, theta: Optional[float], K: int) -> Tuple[float, float]:
    if theta is None:
        raise InvalidArgumentError("this probe needs theta")
    return _probe_sin(x, math.pi - theta, K)


def _probe_tan(x: float, theta: Optional[float], K: int) -> Tuple[float, float]:
    theta = _check_theta(theta, K)
    table = closed_table(Kind.A_LOG, K)
    entries = tuple((k, e) for k, e in table.items() if k % 2)
    form = ProductForm(FactorKind.COS_RATIO, entries, Fraction(4), theta=theta)
    acc = Accumulator()
    _log_sum(form, EvalPoint(x), K, acc)
    return acc.value, 4.0 * x * math.cos(theta)


ABEL_PROBES = {
    "B_SUM_LOG2": _probe_b_sum,
    "BOUNDARY_SIN": _probe_sin,
    "BOUNDARY_SIN_REFLECT": _probe_sin_reflect,
    "BOUNDARY_TAN": _probe_tan,
}


def abel_evaluate(
    identity_id: str,
    xs: Sequence[float],
    theta: Optional[float] = None,
    digits: int = 18,
) -> List[AbelRow]:
    """Evaluate the interior log-identity behind a boundary identity at each x < 1.

    Rows report (x, K, log of the truncated product, interior target, residual).
    Nothing here asserts the boundary limit itself.
    """
    try:
        probe = ABEL_PROBES[identity_id]
    except KeyError:
        raise InvalidArgumentError(f"no Abel probe for identity {identity_id!r}")
    rows = []
    for x in xs:
        if not 0.0 <= x < 1.0:
            raise InvalidArgumentError(f"Abel probes need x in [0, 1), got {x}")
        K = abel_K(x, digits)
        lhs, target = probe(x, theta, K)
        rows.append(AbelRow(x, K, lhs, target, abs(lhs - target)))
    return rows
