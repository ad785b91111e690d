"""Exception hierarchy shared by every prodforge module."""

from __future__ import annotations


class ProdforgeError(Exception):
    """Base class for all library errors."""


class InvalidArgumentError(ProdforgeError, ValueError):
    pass


class OutOfRangeError(ProdforgeError, IndexError):
    pass


class ResourceLimitError(ProdforgeError):
    pass


class UnsupportedParameterError(ProdforgeError, ValueError):
    pass


class SingularWeightError(ProdforgeError, ValueError):
    """A weight 1/cos(l*theta) is too close to a pole."""

    def __init__(self, degree: int, cos_value: float):
        self.degree = degree
        self.cos_value = cos_value
        super().__init__(
            f"singular weight at degree l={degree}: |cos(l*theta)| = {abs(cos_value):.3e}"
        )


class IllConditionedTransformError(ProdforgeError, ValueError):
    pass


class DomainError(ProdforgeError, ValueError):
    """A product factor is non-positive at the evaluation point."""

    def __init__(self, k: int, factor: float):
        self.k = k
        self.factor = factor
        super().__init__(f"factor k={k} is non-positive ({factor!r}) at the evaluation point")


class PolicyRefusal(ProdforgeError):
    """Raised when asked to assert an identity that is only traced."""
