"""Formal inversion of polynomial maps, directly and through the Legendre
bridge, plus Keller-map diagnostics.

The bridge route builds the auxiliary potential ``phi(v, x) = sum_i v_i f_i(x)``
on 2n variables, whose quadratic form is the invertible block matrix
[[0, J], [J^T, 0]]; its Legendre transform is linear in the duals of the
x-block, and the coefficient series of those duals are exactly the components
of the formal inverse of f.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .legendre import Potential, graded_fixed_point, hessian_det, legendre_transform
from .linalg import Matrix, determinant, matrix_inverse
from .poly import Exponents, Polynomial
from .series import TruncatedSeries, substitute


class BridgeLinearityError(ArithmeticError):
    """The bridge transform failed to be linear in the covector block; this is
    an internal-consistency failure, not a user error."""


@dataclass(frozen=True)
class PolynomialMap:
    """A square polynomial map fixing the origin.

    Nonsingularity of the linear part is checked lazily, by the operations
    that need it: determinant diagnostics remain meaningful for maps like
    (x1^2, x2) whose linear part is singular.
    """

    components: tuple[Polynomial, ...]

    def __post_init__(self) -> None:
        n = len(self.components)
        if n == 0:
            raise ValueError("a map needs at least one component")
        for c in self.components:
            if c.dim != n:
                raise ValueError("components must be polynomials in n variables")
            if c.constant_term:
                raise ValueError("map must fix the origin (zero constant terms)")

    @property
    def dim(self) -> int:
        return len(self.components)


def identity_map(dim: int) -> PolynomialMap:
    return PolynomialMap(tuple(Polynomial.variable(dim, i) for i in range(dim)))


def jacobian_matrix(f: PolynomialMap) -> list[list[Polynomial]]:
    return [[c.diff(j) for j in range(f.dim)] for c in f.components]


def jacobian_det(f: PolynomialMap) -> Polynomial:
    return determinant(jacobian_matrix(f))


def is_keller_map(f: PolynomialMap) -> bool:
    """True when the Jacobian determinant is a nonzero constant."""
    det = jacobian_det(f)
    return det.degree() == 0


def linear_part(f: PolynomialMap) -> Matrix:
    """The Jacobian matrix at the origin."""
    n = f.dim
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i, c in enumerate(f.components):
        for exps, coeff in c.homogeneous_component(1).terms.items():
            rows[i][exps.index(1)] = coeff
    return rows


def invert_map_direct(f: PolynomialMap, degree: int) -> list[TruncatedSeries]:
    """Formal inverse by graded fixed-point iteration on f itself."""
    if degree < 1:
        raise ValueError("inversion degree must be at least 1")
    n = f.dim
    j = linear_part(f)
    j_inverse = matrix_inverse(j)
    x_vars = [Polynomial.variable(n, k) for k in range(n)]
    tail = []
    for i in range(n):
        linear = sum(
            (x_vars[k] * j[i][k] for k in range(n) if j[i][k]), Polynomial.zero(n)
        )
        tail.append(f.components[i] - linear)
    return graded_fixed_point(j_inverse, tail, degree)


def _embed_upper(p: Polynomial, n: int) -> Polynomial:
    """Reinterpret an n-variable polynomial inside 2n variables, in the upper
    (x) block: positions n..2n-1."""
    return Polynomial._raw(
        2 * n, {(0,) * n + exps: coeff for exps, coeff in p.terms.items()}
    )


def bridge_potential(f: PolynomialMap) -> Polynomial:
    """The 2n-variable potential sum_i v_i f_i(x); v-block first, x-block second."""
    n = f.dim
    acc = Polynomial.zero(2 * n)
    for i, component in enumerate(f.components):
        v = Polynomial.variable(2 * n, i)
        acc = acc + v * _embed_upper(component, n)
    return acc


def invert_map_legendre(f: PolynomialMap, degree: int) -> list[TruncatedSeries]:
    """Formal inverse extracted from the Legendre transform of the bridge
    potential.

    The transform is computed one degree higher than requested because each
    degree-k term of the inverse appears with one extra covector factor.  The
    structure of the result is asserted, not assumed: any term whose covector
    degree differs from 1 raises :class:`BridgeLinearityError`.
    """
    if degree < 1:
        raise ValueError("inversion degree must be at least 1")
    n = f.dim
    phibar = legendre_transform(Potential(bridge_potential(f)), degree + 1)
    collected: list[dict[Exponents, Fraction]] = [{} for _ in range(n)]
    for exps, coeff in phibar.body.terms.items():
        image_part, covector_part = exps[:n], exps[n:]
        if sum(covector_part) != 1:
            raise BridgeLinearityError(
                f"bridge transform has a term of covector degree {sum(covector_part)}"
            )
        component = covector_part.index(1)
        collected[component][image_part] = coeff
    return [
        TruncatedSeries(Polynomial(n, table).truncated(degree), degree)
        for table in collected
    ]


def bridge_hessian_check(f: PolynomialMap) -> Fraction | None:
    """Hessian determinant of the bridge potential when constant, else None.

    For a map with constant Jacobian determinant c the value is (-1)^n * c^2.
    """
    h = hessian_det(bridge_potential(f))
    if h.degree() <= 0:
        return h.constant_term
    return None


def compose_maps(outer: PolynomialMap, inner: PolynomialMap) -> PolynomialMap:
    """Exact composition outer(inner(x))."""
    if outer.dim != inner.dim:
        raise ValueError("maps must share one dimension")
    return PolynomialMap(
        tuple(c.compose(list(inner.components)) for c in outer.components)
    )


def map_substitute(
    f: PolynomialMap, args: list[TruncatedSeries], degree: int
) -> list[TruncatedSeries]:
    """Truncated composition of a map with series arguments, component-wise."""
    return [substitute(c, args, degree) for c in f.components]
