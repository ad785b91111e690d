"""Turn power series and cosine series into infinite products.

For a series ``p(x) = sum c_l x^l`` the product exponents are the Dirichlet
convolution of the coefficients with a square-free-indexed table::

    e_k = sum_{l | k} c_l * table[k / l]

With the a-table this gives ``exp(p(x)) = prod (1 - x^k)^e_k``; with the
b-table ``prod (1 + x^k)^e_k``; for odd series restricted to odd divisors
``exp(2 q(x)) = prod_{k odd} ((1 - x^k)/(1 + x^k))^e_k``.  The cosine variants
reweight each c_l by 1/cos(l theta) (power series) or 1/x^l (cosine series).
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, NamedTuple, Optional, Sequence, Tuple, Union

from .coefficients import CoeffTable, Kind, closed_table
from .errors import (
    IllConditionedTransformError,
    InvalidArgumentError,
    OutOfRangeError,
    SingularWeightError,
    UnsupportedParameterError,
)

Number = Union[Fraction, float]

EPS_COS = 1e-6
G_MAX = 1e12

PARITIES = ("all", "odd", "even-as-squared-variable")


@dataclass(frozen=True)
class SeriesSpec:
    name: str
    coefficients: Tuple[Tuple[int, Fraction], ...]
    parity: str = "all"
    description: str = ""

    def __post_init__(self):
        if self.parity not in PARITIES:
            raise InvalidArgumentError(f"unknown parity {self.parity!r}")
        degrees = [d for d, _ in self.coefficients]
        if any(d < 1 for d in degrees):
            raise InvalidArgumentError("series degrees must be >= 1")
        if any(b <= a for a, b in zip(degrees, degrees[1:])):
            raise InvalidArgumentError("series degrees must be strictly increasing")
        if self.parity == "odd" and any(d % 2 == 0 for d in degrees):
            raise InvalidArgumentError("odd-only series contains an even degree")

    @classmethod
    def from_mapping(cls, name: str, coeffs: Dict[int, Number], parity: str = "all", description: str = "") -> "SeriesSpec":
        items = tuple(sorted((int(d), _exact_or_float(v)) for d, v in coeffs.items()))
        return cls(name, items, parity, description)

    def as_dict(self) -> Dict[int, Number]:
        return dict(self.coefficients)

    @property
    def degrees(self) -> Tuple[int, ...]:
        return tuple(d for d, _ in self.coefficients)

    @property
    def var_power(self) -> int:
        return 2 if self.parity == "even-as-squared-variable" else 1

    @property
    def exact(self) -> bool:
        return all(isinstance(c, Fraction) for _, c in self.coefficients)

    def __add__(self, other: "SeriesSpec") -> "SeriesSpec":
        merged: Dict[int, Number] = dict(self.coefficients)
        for d, c in other.coefficients:
            merged[d] = merged.get(d, 0) + c
        parity = self.parity if self.parity == other.parity else "all"
        return SeriesSpec.from_mapping(f"{self.name}+{other.name}", merged, parity)


def _exact_or_float(v) -> Number:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    return float(v)


def series_from_json(text: str) -> SeriesSpec:
    try:
        raw = json.loads(text)
        coeffs = tuple(
            (int(c["degree"]), Fraction(int(c["num"]), int(c["den"]))) for c in raw["coefficients"]
        )
        return SeriesSpec(
            str(raw["name"]), coeffs, raw.get("parity", "all"), raw.get("description", "")
        )
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise InvalidArgumentError(f"malformed series file: {exc}")


def series_to_json(series: SeriesSpec) -> str:
    if not series.exact:
        raise InvalidArgumentError("only exact series can be serialized")
    body = {
        "name": series.name,
        "parity": series.parity,
        "coefficients": [
            {"degree": d, "num": str(c.numerator), "den": str(c.denominator)}
            for d, c in series.coefficients
        ],
    }
    if series.description:
        body["description"] = series.description
    return json.dumps(body, sort_keys=True)


class FactorKind(str, enum.Enum):
    MINUS = "MINUS"  # 1 - u
    PLUS = "PLUS"  # 1 + u
    RATIO_ODD = "RATIO_ODD"  # (1 - u)/(1 + u), odd k only
    COS_MINUS = "COS_MINUS"  # 1 - 2u cos(k theta) + u^2
    COS_PLUS = "COS_PLUS"  # 1 + 2u cos(k theta) + u^2
    COS_RATIO = "COS_RATIO"  # COS_MINUS / COS_PLUS, odd k only

    @property
    def is_cos(self) -> bool:
        return self.value.startswith("COS")

    @property
    def odd_only(self) -> bool:
        return self in (FactorKind.RATIO_ODD, FactorKind.COS_RATIO)


@dataclass(frozen=True)
class ProductForm:
    """prod_k factor_k^e_k, representing exp(scale * series).

    ``u = (x ** var_power) ** k`` inside each factor.  Cosine-of-power-series
    forms carry a fixed ``theta``; cosine-series forms carry a fixed ``x``.
    """

    factor_kind: FactorKind
    entries: Tuple[Tuple[int, Number], ...]
    scale: Fraction = Fraction(1)
    theta: Optional[float] = None
    x: Optional[float] = None
    var_power: int = 1
    name: str = ""

    def __post_init__(self):
        ks = [k for k, _ in self.entries]
        if any(b <= a for a, b in zip(ks, ks[1:])):
            raise InvalidArgumentError("entries must be sorted by k")
        if self.factor_kind.odd_only and any(k % 2 == 0 for k in ks):
            raise InvalidArgumentError(f"{self.factor_kind.value} allows odd k only")

    @property
    def exponents(self) -> Dict[int, Number]:
        return dict(self.entries)

    @property
    def max_k(self) -> int:
        return self.entries[-1][0] if self.entries else 0

    @property
    def exact(self) -> bool:
        return all(isinstance(e, Fraction) for _, e in self.entries)

    def max_abs_exponent(self) -> float:
        return max((abs(float(e)) for _, e in self.entries), default=0.0)

    def with_exponent(self, k: int, exponent: Number) -> "ProductForm":
        entries = tuple((j, exponent if j == k else e) for j, e in self.entries)
        return ProductForm(self.factor_kind, entries, self.scale, self.theta, self.x, self.var_power, self.name)

    def to_dict(self) -> dict:
        def render(e: Number):
            return str(e) if isinstance(e, Fraction) else e

        return {
            "schema": "prodforge/1",
            "name": self.name,
            "factor_kind": self.factor_kind.value,
            "scale": str(self.scale),
            "theta": self.theta,
            "x": self.x,
            "var_power": self.var_power,
            "entries": [{"k": k, "exponent": render(e)} for k, e in self.entries],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def dirichlet_mix(
    series: SeriesSpec,
    table: CoeffTable,
    K: int,
    divisor_filter: str = "all",
    weight: Optional[Callable[[int], float]] = None,
) -> List[Number]:
    """Exponents e_1..e_K of the convolution of ``series`` with ``table``.

    ``weight(l)`` optionally multiplies c_l (used by the cosine transforms);
    without it the arithmetic is exact whenever the series is.
    """
    if K < 1:
        raise InvalidArgumentError(f"K must be >= 1, got {K}")
    if K > table.limit:
        raise OutOfRangeError(f"K={K} exceeds coefficient table limit {table.limit}")
    if divisor_filter not in ("all", "odd"):
        raise InvalidArgumentError(f"unknown divisor filter {divisor_filter!r}")
    out: List[Number] = [Fraction(0)] * K
    for l, c in series.coefficients:
        if l > K or (divisor_filter == "odd" and l % 2 == 0):
            continue
        w = c if weight is None else c * weight(l)
        if not w:
            continue
        for m in range(1, K // l + 1):
            t = table[m]
            if t:
                out[l * m - 1] += w * t
    return out


_TABLE_FOR = {
    FactorKind.MINUS: Kind.A_LOG,
    FactorKind.PLUS: Kind.B_LOG,
    FactorKind.RATIO_ODD: Kind.A_LOG,
    FactorKind.COS_MINUS: Kind.A_LOG,
    FactorKind.COS_PLUS: Kind.B_LOG,
    FactorKind.COS_RATIO: Kind.A_LOG,
}


def _entries(exps: Sequence[Number], odd_only: bool) -> Tuple[Tuple[int, Number], ...]:
    return tuple((k, e) for k, e in enumerate(exps, start=1) if not odd_only or k % 2 == 1)


def _require_odd(series: SeriesSpec, target: FactorKind) -> None:
    if series.parity != "odd":
        raise InvalidArgumentError(f"{target.value} needs an odd-only series, got parity {series.parity!r}")


def to_product(series: SeriesSpec, target: Union[FactorKind, str], K: int) -> ProductForm:
    """exp(p) as a MINUS or PLUS product, or exp(2q) as a RATIO_ODD product."""
    target = FactorKind(target)
    if target.is_cos:
        raise InvalidArgumentError("use to_cos_product or trig_to_product for cosine factors")
    if target is FactorKind.RATIO_ODD:
        _require_odd(series, target)
    table = closed_table(_TABLE_FOR[target], K)
    odd = target is FactorKind.RATIO_ODD
    exps = dirichlet_mix(series, table, K, "odd" if odd else "all")
    return ProductForm(
        target,
        _entries(exps, odd),
        Fraction(2 if odd else 1),
        var_power=series.var_power,
        name=series.name,
    )


def _cos_target(series: SeriesSpec, target) -> FactorKind:
    target = FactorKind(target)
    if not target.is_cos:
        raise InvalidArgumentError(f"{target.value} is not a cosine factor kind")
    if target is FactorKind.COS_RATIO:
        _require_odd(series, target)
    return target


def to_cos_product(
    series: SeriesSpec,
    theta: float,
    target: Union[FactorKind, str],
    K: int,
    eps_cos: float = EPS_COS,
) -> ProductForm:
    """exp(2p(x)) (or exp(4q(x)) for COS_RATIO) with theta-weighted exponents."""
    target = _cos_target(series, target)
    cosines = {}
    for l in series.degrees:
        c = math.cos(l * theta)
        if abs(c) < eps_cos:
            raise SingularWeightError(l, c)
        cosines[l] = c
    odd = target is FactorKind.COS_RATIO
    table = closed_table(_TABLE_FOR[target], K)
    exps = dirichlet_mix(series, table, K, "odd" if odd else "all", weight=lambda l: 1.0 / cosines[l])
    return ProductForm(
        target,
        _entries([float(e) for e in exps], odd),
        Fraction(4 if odd else 2),
        theta=float(theta),
        var_power=series.var_power,
        name=series.name,
    )


def trig_to_product(
    series: SeriesSpec,
    x: float,
    target: Union[FactorKind, str],
    K: int,
    g_max: float = G_MAX,
) -> ProductForm:
    """Cosine series sum c_l cos(l theta) as a product in theta at fixed radius x.

    exp(2p(theta)) for COS_MINUS/COS_PLUS, exp(4q(theta)) for COS_RATIO.
    """
    if not 0.0 < x < 1.0:
        raise InvalidArgumentError(f"x must lie in (0, 1), got {x}")
    target = _cos_target(series, target)
    for l, c in series.coefficients:
        # compare in logs; x**l underflows long before the ratio is meaningful
        if c and math.log(abs(float(c))) - l * math.log(x) > math.log(g_max):
            raise IllConditionedTransformError(
                f"|c_{l}|/x^{l} exceeds growth bound {g_max:g}"
            )
    odd = target is FactorKind.COS_RATIO
    table = closed_table(_TABLE_FOR[target], K)
    exps = dirichlet_mix(series, table, K, "odd" if odd else "all", weight=lambda l: x ** (-l))
    return ProductForm(
        target,
        _entries([float(e) for e in exps], odd),
        Fraction(4 if odd else 2),
        x=float(x),
        name=series.name,
    )


class FormalCheck(NamedTuple):
    ok: bool
    first_mismatch: Optional[int]

    def __bool__(self) -> bool:
        return self.ok


def product_log_series(form: ProductForm, K: int) -> List[Fraction]:
    """Coefficients 0..K (in the form's variable) of scale^-1 * log(product)."""
    if form.factor_kind.is_cos:
        raise UnsupportedParameterError("formal expansion is defined for x-only factor kinds")
    if not form.exact:
        raise InvalidArgumentError("formal expansion needs exact exponents")
    out = [Fraction(0)] * (K + 1)
    kind = form.factor_kind
    for k, e in form.entries:
        if k > K or not e:
            continue
        for j in range(1, K // k + 1):
            # log(1-u) = -sum u^j/j ; log(1+u) = sum (-1)^(j+1) u^j/j
            if kind is FactorKind.MINUS:
                c = Fraction(-1, j)
            elif kind is FactorKind.PLUS:
                c = Fraction(1 if j % 2 else -1, j)
            else:
                c = Fraction(-2, j) if j % 2 else Fraction(0)
            if c:
                out[k * j] += e * c
    inv = 1 / form.scale
    return [c * inv for c in out]


def formal_log_check(form: ProductForm, series: SeriesSpec, K: int) -> FormalCheck:
    """Exact coefficient-wise comparison of scale^-1 log(product) with the series."""
    if K < 1:
        raise InvalidArgumentError(f"K must be >= 1, got {K}")
    expanded = product_log_series(form, K)
    target = series.as_dict()
    for n in range(1, K + 1):
        if expanded[n] != target.get(n, 0):
            return FormalCheck(False, n)
    return FormalCheck(True, None)
