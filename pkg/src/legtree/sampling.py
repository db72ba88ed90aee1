"""Seeded random instances for the property and acceptance suites.

Everything is driven by a caller-provided ``random.Random`` so identical seeds
reproduce identical objects, reports and test outcomes.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .inversion import PolynomialMap, compose_maps
from .legendre import Potential
from .linalg import SingularMatrixError, matrix_inverse
from .poly import Polynomial, exponent_vectors


def random_symmetric_nonsingular(
    rng: random.Random, dim: int, bound: int = 3
) -> list[list[int]]:
    """Symmetric integer matrix with entries in [-bound, bound], resampled
    until invertible."""
    while True:
        rows = [[0] * dim for _ in range(dim)]
        for i in range(dim):
            for j in range(i, dim):
                value = rng.randint(-bound, bound)
                rows[i][j] = rows[j][i] = value
        try:
            matrix_inverse(rows)
        except SingularMatrixError:
            continue
        return rows


def random_potential(
    rng: random.Random,
    dim: int,
    max_degree: int = 4,
    quadratic_bound: int = 3,
    coeff_bound: int = 3,
) -> Potential:
    """Potential with quadratic part (1/2) x^T A x for a random nonsingular
    symmetric integer A, plus random integer terms through ``max_degree``."""
    a = random_symmetric_nonsingular(rng, dim, quadratic_bound)
    terms: dict[tuple[int, ...], Fraction] = {}
    for i in range(dim):
        if a[i][i]:
            exps = [0] * dim
            exps[i] = 2
            terms[tuple(exps)] = Fraction(a[i][i], 2)
        for j in range(i + 1, dim):
            if a[i][j]:
                exps = [0] * dim
                exps[i] = exps[j] = 1
                terms[tuple(exps)] = Fraction(a[i][j])
    for degree in range(3, max_degree + 1):
        for exps in exponent_vectors(dim, degree):
            coeff = rng.randint(-coeff_bound, coeff_bound)
            if coeff:
                terms[exps] = Fraction(coeff)
    return Potential(Polynomial(dim, terms))


def random_map(
    rng: random.Random, dim: int, max_degree: int = 3, coeff_bound: int = 2
) -> PolynomialMap:
    """Map with identity linear part and random integer higher terms."""
    components = []
    for i in range(dim):
        terms: dict[tuple[int, ...], Fraction] = {}
        exps = [0] * dim
        exps[i] = 1
        terms[tuple(exps)] = Fraction(1)
        for degree in range(2, max_degree + 1):
            for vector in exponent_vectors(dim, degree):
                coeff = rng.randint(-coeff_bound, coeff_bound)
                if coeff:
                    terms[vector] = terms.get(vector, Fraction(0)) + coeff
        components.append(Polynomial(dim, terms))
    return PolynomialMap(tuple(components))


def _shear(dim: int, index: int, update: Polynomial) -> PolynomialMap:
    """Elementary map adding a polynomial in the other variables to x_index."""
    components = [Polynomial.variable(dim, i) for i in range(dim)]
    components[index] = components[index] + update
    return PolynomialMap(tuple(components))


def _random_shear_pair(
    rng: random.Random, dim: int
) -> tuple[PolynomialMap, PolynomialMap]:
    index = rng.randrange(dim)
    others = [i for i in range(dim) if i != index]
    terms: dict[tuple[int, ...], Fraction] = {}
    for degree in (1, 2):
        for exps in exponent_vectors(dim, degree):
            if exps[index]:
                continue  # the update may not involve the sheared variable
            coeff = rng.randint(-2, 2)
            if coeff:
                terms[exps] = Fraction(coeff)
    if not terms and others:
        exps = [0] * dim
        exps[others[0]] = 2
        terms[tuple(exps)] = Fraction(1)
    update = Polynomial(dim, terms)
    return _shear(dim, index, update), _shear(dim, index, -update)


def sample_keller_maps(
    rng: random.Random, dim: int, count: int, layers: int = 3
) -> list[tuple[PolynomialMap, PolynomialMap]]:
    """Keller maps with inverses known by construction.

    Each sample composes a few elementary shears (Jacobian determinant 1); the
    inverse is the reversed composition of the inverse shears.  No conjecture
    is assumed anywhere: the inverse is polynomial by construction.
    """
    samples = []
    for _ in range(count):
        forwards = []
        backwards = []
        for _ in range(layers):
            forward, backward = _random_shear_pair(rng, dim)
            forwards.append(forward)
            backwards.append(backward)
        composed = forwards[0]
        for step in forwards[1:]:
            composed = compose_maps(step, composed)
        inverse = backwards[0]
        for step in backwards[1:]:
            inverse = compose_maps(inverse, step)
        samples.append((composed, inverse))
    return samples
