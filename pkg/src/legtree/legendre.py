"""Gradient/Hessian machinery and the exact formal Legendre transform.

For a potential with zero linear part and invertible quadratic form, the
gradient map ``y = grad(phi)(x)`` has a formal inverse ``x = g(y)`` computed
by graded fixed-point iteration, and the Legendre transform is

    phibar(y) = sum_i g_i(y) * y_i - phi(g(y)),

truncated at the working degree.  Everything is exact; the only failure mode
is a singular quadratic form.
"""

from __future__ import annotations

from fractions import Fraction

from .linalg import Matrix, determinant, matrix_inverse
from .poly import Polynomial
from .series import TruncatedSeries, substitute, truncate


def gradient(p: Polynomial) -> list[Polynomial]:
    return [p.diff(i) for i in range(p.dim)]


def hessian_matrix(p: Polynomial) -> list[list[Polynomial]]:
    """Symmetric matrix of second partials."""
    firsts = gradient(p)
    return [[firsts[i].diff(j) for j in range(p.dim)] for i in range(p.dim)]


def hessian_det(p: Polynomial) -> Polynomial:
    return determinant(hessian_matrix(p))


def hessian_constant(p: Polynomial) -> Fraction | None:
    """The Hessian determinant when it is constant (possibly 0), else None."""
    h = hessian_det(p)
    if h.degree() <= 0:
        return h.constant_term
    return None


def quadratic_form_matrix(p: Polynomial) -> Matrix:
    """Matrix A of the quadratic component, normalized so the component is
    (1/2) x^T A x; equals the constant Hessian of that component."""
    quad = p.homogeneous_component(2)
    n = p.dim
    rows = [[Fraction(0)] * n for _ in range(n)]
    for exps, coeff in quad.terms.items():
        support = [i for i, e in enumerate(exps) if e]
        if len(support) == 1:
            i = support[0]
            rows[i][i] = 2 * coeff
        else:
            i, j = support
            rows[i][j] = coeff
            rows[j][i] = coeff
    return rows


class Potential:
    """A polynomial potential validated for gradient inversion.

    A nonzero constant term is discarded (it only shifts the transform by a
    constant); a nonzero linear term is rejected because it would move the
    expansion point.  The quadratic form must be invertible.
    """

    __slots__ = ("poly", "dim", "quadratic_matrix", "quadratic_inverse")

    def __init__(self, source: Polynomial | TruncatedSeries):
        body = source.body if isinstance(source, TruncatedSeries) else source
        constant = body.constant_term
        if constant:
            body = body - constant
        if not body.homogeneous_component(1).is_zero:
            raise ValueError("potential must have no linear term")
        self.poly = body
        self.dim = body.dim
        self.quadratic_matrix = quadratic_form_matrix(body)
        self.quadratic_inverse = matrix_inverse(self.quadratic_matrix)

    def degree(self) -> int:
        return self.poly.degree()


def _as_potential(source: "Potential | Polynomial | TruncatedSeries") -> Potential:
    return source if isinstance(source, Potential) else Potential(source)


def graded_fixed_point(
    linear_inverse: Matrix, tail: list[Polynomial], degree: int
) -> list[TruncatedSeries]:
    """Solve ``A x + tail(x) = y`` for x as a series in y, through ``degree``.

    ``linear_inverse`` is A^-1 and every component of ``tail`` must have
    valuation >= 2.  The iterate correct through degree k determines the next
    one through degree k+1, so step k can truncate at k+1: the tail terms are
    products of at least two series factors of valuation >= 1, hence their
    degree-(k+1) parts never involve the unknown degree-(k+1) part of x.
    """
    n = len(tail)
    y_vars = [Polynomial.variable(n, j) for j in range(n)]
    linear = [
        sum(
            (y_vars[j] * linear_inverse[i][j] for j in range(n) if linear_inverse[i][j]),
            Polynomial.zero(n),
        )
        for i in range(n)
    ]
    current = [truncate(linear[i], 1) for i in range(n)]
    for target in range(2, degree + 1):
        lifted = [TruncatedSeries(c.body, target) for c in current]
        corrections = [substitute(tail[i], lifted, target) for i in range(n)]
        updated = []
        for i in range(n):
            acc = linear[i]
            for j in range(n):
                factor = linear_inverse[i][j]
                if factor:
                    acc = acc - corrections[j].body * factor
            updated.append(truncate(acc, target))
        current = updated
    return current


def invert_gradient(
    source: "Potential | Polynomial | TruncatedSeries", degree: int
) -> list[TruncatedSeries]:
    """Formal inverse of the gradient map, exact through ``degree``.

    The linear part of the result is the inverse quadratic form.
    """
    pot = _as_potential(source)
    if degree < 1:
        raise ValueError("inversion degree must be at least 1")
    grad = gradient(pot.poly)
    n = pot.dim
    a = pot.quadratic_matrix
    x_vars = [Polynomial.variable(n, j) for j in range(n)]
    tail = []
    for i in range(n):
        linear_part = sum(
            (x_vars[j] * a[i][j] for j in range(n) if a[i][j]), Polynomial.zero(n)
        )
        tail.append(grad[i] - linear_part)
    return graded_fixed_point(pot.quadratic_inverse, tail, degree)


def legendre_transform(
    source: "Potential | Polynomial | TruncatedSeries", degree: int
) -> TruncatedSeries:
    """Formal Legendre transform, truncated at ``degree`` (>= 2)."""
    pot = _as_potential(source)
    if degree < 2:
        raise ValueError("transform degree must be at least 2")
    g = invert_gradient(pot, degree)
    n = pot.dim
    pairing = Polynomial.zero(n)
    for i in range(n):
        pairing = pairing + g[i].body.mul_truncated(Polynomial.variable(n, i), degree)
    inner = substitute(pot.poly, g, degree)
    return TruncatedSeries((pairing - inner.body).truncated(degree), degree)


def verify_potential(
    source: "Potential | Polynomial | TruncatedSeries", degree: int
) -> bool:
    """Check that the transform is a potential for the inverse gradient:
    grad(phibar) must equal g through degree - 1, from independent runs."""
    pot = _as_potential(source)
    if degree < 2:
        raise ValueError("verification degree must be at least 2")
    phibar = legendre_transform(pot, degree)
    g = invert_gradient(pot, degree - 1)
    for i in range(pot.dim):
        if phibar.body.diff(i).truncated(degree - 1) != g[i].body:
            return False
    return True
