"""Polynomials carrying an explicit truncation degree, and graded composition.

A :class:`TruncatedSeries` is a polynomial together with the degree through
which it is meaningful; terms above the truncation degree are forbidden, so a
series equals another only when the bodies and the degrees both match.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .poly import Exponents, Polynomial


@dataclass(frozen=True)
class TruncatedSeries:
    body: Polynomial
    degree: int

    def __post_init__(self) -> None:
        if self.degree < 0:
            raise ValueError("truncation degree must be non-negative")
        if self.body.degree() > self.degree:
            raise ValueError(
                f"body has degree {self.body.degree()} above truncation {self.degree}"
            )

    @classmethod
    def zero(cls, dim: int, degree: int) -> "TruncatedSeries":
        return cls(Polynomial.zero(dim), degree)

    @property
    def dim(self) -> int:
        return self.body.dim

    def truncated(self, degree: int) -> "TruncatedSeries":
        if degree > self.degree:
            raise ValueError("cannot extend a truncated series to higher degree")
        return TruncatedSeries(self.body.truncated(degree), degree)

    def __add__(self, other: "TruncatedSeries | Polynomial | Fraction | int") -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            degree = min(self.degree, other.degree)
            return TruncatedSeries((self.body + other.body).truncated(degree), degree)
        return TruncatedSeries((self.body + other).truncated(self.degree), self.degree)

    __radd__ = __add__

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(-self.body, self.degree)

    def __sub__(self, other: "TruncatedSeries | Polynomial | Fraction | int") -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            degree = min(self.degree, other.degree)
            return TruncatedSeries((self.body - other.body).truncated(degree), degree)
        return TruncatedSeries((self.body - other).truncated(self.degree), self.degree)

    def __mul__(self, other: "TruncatedSeries | Polynomial | Fraction | int") -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            degree = min(self.degree, other.degree)
            return TruncatedSeries(self.body.mul_truncated(other.body, degree), degree)
        if isinstance(other, Polynomial):
            return TruncatedSeries(self.body.mul_truncated(other, self.degree), self.degree)
        return TruncatedSeries(self.body * other, self.degree)

    def __rmul__(self, other: "Fraction | int") -> "TruncatedSeries":
        return self.__mul__(other)


def truncate(p: Polynomial, degree: int) -> TruncatedSeries:
    """Truncate a polynomial at the given total degree."""
    if degree < 0:
        raise ValueError("truncation degree must be non-negative")
    return TruncatedSeries(p.truncated(degree), degree)


def substitute(
    f: Polynomial, args: Sequence[TruncatedSeries], degree: int
) -> TruncatedSeries:
    """Formal composition ``f(args)`` truncated at ``degree``.

    Every argument must have zero constant term (so the composition is graded
    and each output coefficient is a finite sum) and must be truncated at
    ``degree`` or above.  Monomial values are memoized across terms so each
    distinct exponent vector costs one truncated product.
    """
    if degree < 0:
        raise ValueError("truncation degree must be non-negative")
    if len(args) != f.dim:
        raise ValueError(f"expected {f.dim} arguments, got {len(args)}")
    target = args[0].dim
    for a in args:
        if a.dim != target:
            raise ValueError("substitution arguments must share one dimension")
        if a.degree < degree:
            raise ValueError(
                f"argument truncated at {a.degree}, below requested degree {degree}"
            )
        if a.body.constant_term:
            raise ValueError("substitution argument has nonzero constant term")

    bodies = [a.body for a in args]
    memo: dict[Exponents, Polynomial] = {(0,) * f.dim: Polynomial.constant(target, 1)}

    def monomial_value(exps: Exponents) -> Polynomial:
        cached = memo.get(exps)
        if cached is not None:
            return cached
        i = next(k for k, e in enumerate(exps) if e)
        lowered = list(exps)
        lowered[i] -= 1
        value = monomial_value(tuple(lowered)).mul_truncated(bodies[i], degree)
        memo[exps] = value
        return value

    acc = Polynomial.zero(target)
    for exps, coeff in f.terms.items():
        if sum(exps) > degree:
            continue  # arguments have valuation >= 1, so this term cannot survive
        acc = acc + monomial_value(exps) * coeff
    return TruncatedSeries(acc.truncated(degree), degree)
