"""Sparse multivariate polynomials over the rationals.

A polynomial in ``n`` variables maps exponent vectors (length-``n`` tuples of
non-negative ints) to nonzero :class:`fractions.Fraction` coefficients; the
zero polynomial stores no terms.  All arithmetic is exact.  The canonical term
order used for serialization and iteration is graded lexicographic, ascending:
sort by total degree first, then by the exponent tuple.

Products are computed over integer-scaled coefficient tables: both factors are
cleared of denominators once, convolved in plain integer arithmetic, and the
output terms normalized back to ``Fraction``.  This keeps gcd work out of the
inner loop, which matters once series coefficients grow.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Iterator, Mapping, Sequence

Exponents = tuple[int, ...]

_ZERO = Fraction(0)


def exponent_vectors(dim: int, degree: int) -> Iterator[Exponents]:
    """Yield every exponent vector of the given total degree, in ascending
    tuple order."""
    if dim < 1:
        raise ValueError("dimension must be positive")
    if degree < 0:
        return
    if dim == 1:
        yield (degree,)
        return
    for first in range(degree + 1):
        for rest in exponent_vectors(dim - 1, degree - first):
            yield (first, *rest)


def grlex_key(exps: Exponents) -> tuple[int, Exponents]:
    return (sum(exps), exps)


class Polynomial:
    """Immutable sparse polynomial with exact rational coefficients."""

    __slots__ = ("dim", "terms", "_int_cache")

    def __init__(
        self,
        dim: int,
        terms: Mapping[Exponents, Fraction | int] | Iterable[tuple[Exponents, Fraction | int]] = (),
    ):
        if dim < 1:
            raise ValueError("dimension must be positive")
        items = terms.items() if isinstance(terms, Mapping) else terms
        table: dict[Exponents, Fraction] = {}
        for exps, coeff in items:
            key = tuple(exps)
            if len(key) != dim:
                raise ValueError(f"exponent vector {key} does not match dimension {dim}")
            if any(e < 0 for e in key):
                raise ValueError(f"negative exponent in {key}")
            value = Fraction(coeff)
            if not value:
                continue
            prev = table.get(key)
            total = value if prev is None else prev + value
            if total:
                table[key] = total
            elif prev is not None:
                del table[key]
        self.dim = dim
        self.terms = table
        self._int_cache: tuple[int, list[tuple[int, Exponents, int]]] | None = None

    @classmethod
    def _raw(cls, dim: int, table: dict[Exponents, Fraction]) -> "Polynomial":
        # Trusted constructor: table must already be canonical (no zeros).
        p = object.__new__(cls)
        p.dim = dim
        p.terms = table
        p._int_cache = None
        return p

    @classmethod
    def zero(cls, dim: int) -> "Polynomial":
        return cls._raw(dim, {})

    @classmethod
    def constant(cls, dim: int, value: Fraction | int) -> "Polynomial":
        c = Fraction(value)
        if not c:
            return cls.zero(dim)
        return cls._raw(dim, {(0,) * dim: c})

    @classmethod
    def variable(cls, dim: int, index: int) -> "Polynomial":
        if not 0 <= index < dim:
            raise ValueError(f"variable index {index} out of range for dimension {dim}")
        exps = [0] * dim
        exps[index] = 1
        return cls._raw(dim, {tuple(exps): Fraction(1)})

    @classmethod
    def monomial(cls, dim: int, exps: Sequence[int], coeff: Fraction | int = 1) -> "Polynomial":
        return cls(dim, {tuple(exps): coeff})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    @property
    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.dim, _ZERO)

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exps), _ZERO)

    def sorted_terms(self) -> list[tuple[Exponents, Fraction]]:
        """Terms in canonical (ascending graded-lex) order."""
        return sorted(self.terms.items(), key=lambda item: grlex_key(item[0]))

    def homogeneous_component(self, degree: int) -> "Polynomial":
        return Polynomial._raw(
            self.dim, {e: c for e, c in self.terms.items() if sum(e) == degree}
        )

    def truncated(self, max_degree: int) -> "Polynomial":
        """Drop every term of total degree above ``max_degree``."""
        return Polynomial._raw(
            self.dim, {e: c for e, c in self.terms.items() if sum(e) <= max_degree}
        )

    def diff(self, index: int) -> "Polynomial":
        """Partial derivative with respect to variable ``index``."""
        if not 0 <= index < self.dim:
            raise ValueError(f"variable index {index} out of range for dimension {self.dim}")
        table: dict[Exponents, Fraction] = {}
        for exps, coeff in self.terms.items():
            e = exps[index]
            if not e:
                continue
            lowered = list(exps)
            lowered[index] = e - 1
            table[tuple(lowered)] = coeff * e
        return Polynomial._raw(self.dim, table)

    # -- arithmetic ---------------------------------------------------------

    def _check_dim(self, other: "Polynomial") -> None:
        if other.dim != self.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other: "Polynomial | Fraction | int") -> "Polynomial":
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.dim, other)
        self._check_dim(other)
        table = dict(self.terms)
        for exps, coeff in other.terms.items():
            total = table.get(exps, _ZERO) + coeff
            if total:
                table[exps] = total
            elif exps in table:
                del table[exps]
        return Polynomial._raw(self.dim, table)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw(self.dim, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "Polynomial | Fraction | int") -> "Polynomial":
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.dim, other)
        return self.__add__(other.__neg__())

    def __rsub__(self, other: "Fraction | int") -> "Polynomial":
        return Polynomial.constant(self.dim, other).__sub__(self)

    def _int_form(self) -> tuple[int, list[tuple[int, Exponents, int]]]:
        """Denominator-cleared view: (den, [(term degree, exponents, int coeff)])."""
        cached = self._int_cache
        if cached is None:
            den = 1
            for c in self.terms.values():
                den = lcm(den, c.denominator)
            rows = [
                (sum(e), e, c.numerator * (den // c.denominator))
                for e, c in self.terms.items()
            ]
            rows.sort(key=lambda row: row[0])
            cached = (den, rows)
            self._int_cache = cached
        return cached

    def _convolve(self, other: "Polynomial", cap: int | None) -> "Polynomial":
        self._check_dim(other)
        if not self.terms or not other.terms:
            return Polynomial.zero(self.dim)
        da, rows_a = self._int_form()
        db, rows_b = other._int_form()
        if len(rows_a) < len(rows_b):
            rows_a, rows_b = rows_b, rows_a
        out: dict[Exponents, int] = {}
        get = out.get
        for deg_a, ea, ca in rows_a:
            for deg_b, eb, cb in rows_b:
                if cap is not None and deg_a + deg_b > cap:
                    break  # rows_b sorted by degree
                key = tuple(x + y for x, y in zip(ea, eb))
                out[key] = get(key, 0) + ca * cb
        den = da * db
        table = {e: Fraction(c, den) for e, c in out.items() if c}
        return Polynomial._raw(self.dim, table)

    def __mul__(self, other: "Polynomial | Fraction | int") -> "Polynomial":
        if isinstance(other, Polynomial):
            return self._convolve(other, None)
        c = Fraction(other)
        if not c:
            return Polynomial.zero(self.dim)
        return Polynomial._raw(self.dim, {e: v * c for e, v in self.terms.items()})

    __rmul__ = __mul__

    def mul_truncated(self, other: "Polynomial", max_degree: int) -> "Polynomial":
        """Product with every term above ``max_degree`` dropped."""
        return self._convolve(other, max_degree)

    def __pow__(self, power: int) -> "Polynomial":
        if not isinstance(power, int) or power < 0:
            raise ValueError("power must be a non-negative integer")
        result = Polynomial.constant(self.dim, 1)
        base = self
        k = power
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def compose(self, args: Sequence["Polynomial"]) -> "Polynomial":
        """Exact composition: substitute ``args[i]`` for variable ``i``."""
        if len(args) != self.dim:
            raise ValueError(f"expected {self.dim} arguments, got {len(args)}")
        target = args[0].dim
        for a in args:
            if a.dim != target:
                raise ValueError("composition arguments must share one dimension")
        powers: dict[tuple[int, int], Polynomial] = {}

        def arg_power(i: int, e: int) -> Polynomial:
            if e == 1:
                return args[i]
            cached = powers.get((i, e))
            if cached is None:
                cached = arg_power(i, e - 1) * args[i]
                powers[(i, e)] = cached
            return cached

        acc = Polynomial.zero(target)
        for exps, coeff in self.terms.items():
            prod: Polynomial | None = None
            for i, e in enumerate(exps):
                if not e:
                    continue
                factor = arg_power(i, e)
                prod = factor if prod is None else prod * factor
            if prod is None:
                acc = acc + coeff
            else:
                acc = acc + prod * coeff
        return acc

    def evaluate(self, point: Sequence[Fraction | int]) -> Fraction:
        """Exact value at a rational point."""
        values = [Fraction(v) for v in point]
        if len(values) != self.dim:
            raise ValueError(f"expected {self.dim} coordinates, got {len(values)}")
        total = _ZERO
        for exps, coeff in self.terms.items():
            term = coeff
            for v, e in zip(values, exps):
                if e:
                    term *= v**e
            total += term
        return total

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.dim == other.dim and self.terms == other.terms

    def __repr__(self) -> str:
        body = ", ".join(f"{e}: {c}" for e, c in self.sorted_terms())
        return f"Polynomial(dim={self.dim}, {{{body}}})"
