"""Runnable acceptance checks.

Each check is a pure function of a seed and returns a :class:`CheckResult`;
all comparisons are exact rational identities (tolerance zero).  The test
suite asserts every check and the command-line ``verify`` subcommand runs the
same code, so the two entry points cannot drift apart.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Callable

from .grammar import parse_polynomial, variable_names
from .inversion import (
    bridge_hessian_check,
    bridge_potential,
    invert_map_direct,
    invert_map_legendre,
    jacobian_det,
    PolynomialMap,
)
from .legendre import Potential, hessian_det, legendre_transform
from .linalg import matrix_inverse
from .poly import Polynomial
from .sampling import (
    random_map,
    random_potential,
    random_symmetric_nonsingular,
    sample_keller_maps,
)
from .series import truncate
from .tensors import SymmetricTensor
from .trees import (
    TensorBundle,
    enumerate_trees,
    labeled_tree_oracle,
    tree_expand,
    tree_weight,
    _labeled_trees,
    canonical_encoding,
)
from .wick import (
    classify_graphs,
    double_factorial,
    group_order,
    log_y_series,
    series_exp,
    stabilizer_order,
    y_series,
)

DEFAULT_SEED = 20260810


@dataclass(frozen=True)
class CheckResult:
    index: int
    name: str
    passed: bool
    detail: str


def _x_poly(text: str, dim: int) -> Polynomial:
    return parse_polynomial(text, variable_names("x", dim))


def check_tree_formula(seed: int = DEFAULT_SEED) -> CheckResult:
    """Tree expansion equals the Legendre engine on 50 random potentials."""
    rng = random.Random(seed)
    agreements = 0
    total = 50
    for k in range(total):
        dim = k % 3 + 1
        pot = random_potential(rng, dim, max_degree=4)
        if tree_expand(pot, 6) == legendre_transform(pot, 6):
            agreements += 1
    return CheckResult(
        1,
        "tree expansion equals Legendre engine",
        agreements == total,
        f"{agreements}/{total} random potentials (n in 1..3, degree <= 4, D = 6) agree exactly",
    )


def check_worked_series(seed: int = DEFAULT_SEED) -> CheckResult:
    """The cubic worked example from three independent paths."""
    phi = _x_poly("1/2*x1^2 + 1/6*x1^3", 1)
    expected = truncate(
        parse_polynomial(
            "1/2*y1^2 - 1/6*y1^3 + 1/8*y1^4 - 1/8*y1^5", variable_names("y", 1)
        ),
        5,
    )
    pot = Potential(phi)
    engine = legendre_transform(pot, 5)
    trees = tree_expand(pot, 5)
    oracle = labeled_tree_oracle(pot, 5)
    passed = engine == expected and trees == expected and oracle == expected
    return CheckResult(
        2,
        "worked cubic series from three paths",
        passed,
        "Legendre engine, tree expansion and labeled oracle all equal"
        " 1/2*y1^2 - 1/6*y1^3 + 1/8*y1^4 - 1/8*y1^5",
    )


def _direct_edge_weight(inverse: list[list[Fraction]], dim: int) -> Polynomial:
    y = [Polynomial.variable(dim, i) for i in range(dim)]
    acc = Polynomial.zero(dim)
    for i in range(dim):
        for j in range(dim):
            if inverse[i][j]:
                acc = acc + y[i] * y[j] * inverse[i][j]
    return acc * Fraction(1, 2)


def _direct_star_weight(
    inverse: list[list[Fraction]], t3: SymmetricTensor, dim: int
) -> Polynomial:
    # literal index sum: (1/3!) y_{i1} y_{i2} y_{i3} (-T3)_{j1 j2 j3}
    # (T2^-1)^{i1 j1} (T2^-1)^{i2 j2} (T2^-1)^{i3 j3}
    y = [Polynomial.variable(dim, i) for i in range(dim)]
    acc = Polynomial.zero(dim)
    indices = range(dim)
    for i1 in indices:
        for i2 in indices:
            for i3 in indices:
                monomial = y[i1] * y[i2] * y[i3]
                for j1 in indices:
                    for j2 in indices:
                        for j3 in indices:
                            scale = (
                                -t3.get((j1, j2, j3))
                                * inverse[i1][j1]
                                * inverse[i2][j2]
                                * inverse[i3][j3]
                            )
                            if scale:
                                acc = acc + monomial * scale
    return acc * Fraction(1, 6)


def check_example_weights(seed: int = DEFAULT_SEED) -> CheckResult:
    """Edge and 3-star weights against literal contraction formulas."""
    rng = random.Random(seed)
    dim = 2
    trials = 5
    ok = True
    for _ in range(trials):
        t2 = random_symmetric_nonsingular(rng, dim)
        inverse = matrix_inverse(t2)
        entries = {
            key: rng.randint(-3, 3)
            for key in [(0, 0, 0), (0, 0, 1), (0, 1, 1), (1, 1, 1)]
        }
        t3 = SymmetricTensor(dim, 3, entries)
        bundle = TensorBundle(
            dim=dim,
            propagator=SymmetricTensor.from_matrix(inverse),
            vertex_tensors={3: t3},
        )
        (edge,) = enumerate_trees(2, 4)
        (star,) = enumerate_trees(3, 4)
        if tree_weight(edge, bundle) != _direct_edge_weight(inverse, dim):
            ok = False
        if tree_weight(star, bundle) != _direct_star_weight(inverse, t3, dim):
            ok = False
    return CheckResult(
        3,
        "edge and 3-star weights match literal formulas",
        ok,
        f"{trials} generic 2-dimensional quadratic/cubic tensor pairs,"
        " prefactors 1/2 and 1/3! reproduced exactly",
    )


def check_involution(seed: int = DEFAULT_SEED) -> CheckResult:
    """Applying the transform twice returns the truncated potential."""
    rng = random.Random(seed)
    agreements = 0
    total = 50
    for k in range(total):
        dim = k % 3 + 1
        pot = random_potential(rng, dim, max_degree=4)
        once = legendre_transform(pot, 6)
        twice = legendre_transform(once, 6)
        if twice == truncate(pot.poly, 6):
            agreements += 1
    return CheckResult(
        4,
        "Legendre transform is an involution",
        agreements == total,
        f"{agreements}/{total} random potentials return exactly at D = 6",
    )


def check_inversion_bridge(seed: int = DEFAULT_SEED) -> CheckResult:
    """Bridge inversion equals direct inversion, plus pinned examples."""
    rng = random.Random(seed)
    agreements = 0
    total = 25
    for k in range(total):
        dim = k % 2 + 1
        f = random_map(rng, dim, max_degree=3)
        if invert_map_legendre(f, 5) == invert_map_direct(f, 5):
            agreements += 1
    catalan_map = PolynomialMap((_x_poly("x1 - x1^2", 1),))
    expected_catalan = truncate(
        parse_polynomial(
            "1*y1 + 1*y1^2 + 2*y1^3 + 5*y1^4 + 14*y1^5", variable_names("y", 1)
        ),
        5,
    )
    catalan_ok = (
        invert_map_direct(catalan_map, 5)[0] == expected_catalan
        and invert_map_legendre(catalan_map, 5)[0] == expected_catalan
    )
    keller_map = PolynomialMap((_x_poly("x1 + x2^2", 2), _x_poly("x2", 2)))
    names = variable_names("y", 2)
    expected_keller = [
        truncate(parse_polynomial("1*y1 - 1*y2^2", names), 5),
        truncate(parse_polynomial("1*y2", names), 5),
    ]
    keller_ok = (
        invert_map_direct(keller_map, 5) == expected_keller
        and invert_map_legendre(keller_map, 5) == expected_keller
    )
    passed = agreements == total and catalan_ok and keller_ok
    return CheckResult(
        5,
        "bridge inversion equals direct inversion",
        passed,
        f"{agreements}/{total} random maps agree at D = 5; Catalan series and"
        " triangular Keller inverse pinned exactly",
    )


def check_bridge_hessian(seed: int = DEFAULT_SEED) -> CheckResult:
    """Hessian of the bridge potential is (-1)^n (Jacobian determinant)^2."""
    rng = random.Random(seed)
    ok = True
    for k in range(25):
        dim = k % 2 + 1
        f = random_map(rng, dim, max_degree=3)
        jd = jacobian_det(f)
        expected = (jd * jd) * Fraction((-1) ** dim)
        lifted = Polynomial(
            2 * dim,
            {(0,) * dim + exps: coeff for exps, coeff in expected.terms.items()},
        )
        if hessian_det(bridge_potential(f)) != lifted:
            ok = False
    keller_ok = True
    for dim in (2, 3):
        for f, _ in sample_keller_maps(rng, dim, 3):
            if bridge_hessian_check(f) != Fraction((-1) ** dim):
                keller_ok = False
    return CheckResult(
        6,
        "bridge Hessian identity",
        ok and keller_ok,
        "exact polynomial identity on 25 random maps; constant (-1)^n on"
        " constructed Keller samples",
    )


def check_wick_identities(seed: int = DEFAULT_SEED) -> CheckResult:
    """Pairing counts, symmetry factors and the connected-graph logarithm."""
    expected_sums = {
        1: Fraction(1, 8),
        2: Fraction(35, 384),
        3: Fraction(385, 3072),
    }
    ok = True
    details = []
    for n in (1, 2, 3):
        classes = classify_graphs(n)
        total = sum((Fraction(1, c.aut_order) for c in classes), Fraction(0))
        closed_form = Fraction(double_factorial(4 * n - 1), factorial(n) * 24**n)
        if total != closed_form or total != expected_sums[n]:
            ok = False
        for c in classes:
            if c.orbit_size * c.aut_order != group_order(n):
                ok = False
            if n <= 2 and stabilizer_order(n, c.representative) != c.aut_order:
                ok = False
        details.append(f"n={n}: sum 1/aut = {total}")
    y = y_series(3)
    if series_exp(log_y_series(3)) != y:
        ok = False
    return CheckResult(
        7,
        "pairing class identities and exp(log) consistency",
        ok,
        "; ".join(details) + "; exp(log-series) = full series through order 3",
    )


def check_tree_orbits(seed: int = DEFAULT_SEED) -> CheckResult:
    """Labeled-representative counts equal m!*j!/aut for every class, m <= 5."""
    ok = True
    checked = 0
    for max_degree in (3, 4, 5):
        for m in range(2, 6):
            classes = enumerate_trees(m, max_degree)
            counts = {tree.encoding: 0 for tree in classes}
            labeled_total = 0
            if m == 2:
                edge = enumerate_trees(2, max_degree)[0]
                counts[edge.encoding] += 1
                labeled_total += 1
            for j in range(1, m - 1):
                for adj in _labeled_trees(m, j, max_degree):
                    enc, _ = canonical_encoding(adj)
                    if enc not in counts:
                        ok = False
                        continue
                    counts[enc] += 1
                    labeled_total += 1
            for tree in classes:
                j = tree.internal_count
                expected = factorial(m) * factorial(j) // tree.aut_order
                if counts[tree.encoding] != expected:
                    ok = False
                checked += 1
            if sum(counts.values()) != labeled_total:
                ok = False
    return CheckResult(
        8,
        "orbit-stabilizer counts for tree classes",
        ok,
        f"{checked} classes (m <= 5, degree caps 3..5) match m!*j!/aut by"
        " exhaustive labeling",
    )


ALL_CHECKS: list[Callable[[int], CheckResult]] = [
    check_tree_formula,
    check_worked_series,
    check_example_weights,
    check_involution,
    check_inversion_bridge,
    check_bridge_hessian,
    check_wick_identities,
    check_tree_orbits,
]


def run_all(seed: int = DEFAULT_SEED, only: list[int] | None = None) -> list[CheckResult]:
    wanted = set(only) if only is not None else None
    results = []
    for position, check in enumerate(ALL_CHECKS, start=1):
        if wanted is None or position in wanted:
            results.append(check(seed))
    return results
