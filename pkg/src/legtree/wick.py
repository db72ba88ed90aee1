"""Complete pairings of quartic vertices, their multigraph classes, and the
coupling-series bookkeeping for the one-dimensional quartic Gaussian model.

A configuration of n quartic vertices exposes 4n half-edges (v, leg).  A
complete pairing is a perfect matching of those half-edges; identifying a
pairing's orbit under G_n = (S_4)^n semidirect S_n gives a 4-valent closed
multigraph.  Orbit sizes come from the enumeration itself; stabilizer orders
are brute-forced for n <= 2 and recovered from the orbit relation
|orbit| * |stabilizer| = |G_n| = 24^n * n! above that.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from math import factorial
from typing import Iterator, Sequence

HalfEdge = tuple[int, int]
Pair = tuple[HalfEdge, HalfEdge]
Pairing = tuple[Pair, ...]

DEFAULT_VERTEX_BOUND = 3
LEGS = 4


def double_factorial(k: int) -> int:
    """Product k * (k-2) * ... down to 1 or 2; 1 for k <= 0."""
    result = 1
    while k > 1:
        result *= k
        k -= 2
    return result


def gaussian_moment(power: int) -> tuple[Fraction, int]:
    """Moment of x^power for the unit-normalized Gaussian of width parameter a.

    Returns (value, e) meaning value * a^-e.  Odd moments vanish; the moment
    of x^(2m) is (2m-1)!! * a^-m, the number of complete pairings of 2m items
    times one inverse width per pair.
    """
    if power < 0:
        raise ValueError("moment power must be non-negative")
    if power % 2:
        return Fraction(0), 0
    return Fraction(double_factorial(power - 1)), power // 2


def half_edges(n: int) -> list[HalfEdge]:
    return [(v, leg) for v in range(n) for leg in range(LEGS)]


def _pairings_of(items: tuple[HalfEdge, ...]) -> Iterator[Pairing]:
    if not items:
        yield ()
        return
    first = items[0]
    for k in range(1, len(items)):
        partner = items[k]
        rest = items[1:k] + items[k + 1 :]
        for tail in _pairings_of(rest):
            yield ((first, partner),) + tail


def enumerate_pairings(n: int, bound: int = DEFAULT_VERTEX_BOUND) -> list[Pairing]:
    """All (4n-1)!! complete pairings, each once, in a deterministic order."""
    if n < 0:
        raise ValueError("vertex count must be non-negative")
    if n > bound:
        raise ValueError(f"pairing enumeration is capped at {bound} vertices")
    return list(_pairings_of(tuple(half_edges(n))))


# -- multigraph classes --------------------------------------------------------

Multigraph = tuple[tuple[int, ...], tuple[int, ...]]


def pairing_multigraph(n: int, pairing: Pairing) -> Multigraph:
    """Self-loop counts per vertex and the flattened upper-triangular edge
    multiplicities (row by row, j > i)."""
    loops = [0] * n
    mult = [[0] * n for _ in range(n)]
    for (u, _), (v, _) in pairing:
        if u == v:
            loops[u] += 1
        else:
            a, b = min(u, v), max(u, v)
            mult[a][b] += 1
    flat = tuple(mult[i][j] for i in range(n) for j in range(i + 1, n))
    return tuple(loops), flat


def canonical_multigraph(n: int, graph: Multigraph) -> Multigraph:
    """Minimum of the encoding over all vertex relabelings."""
    loops, flat = graph
    mult = [[0] * n for _ in range(n)]
    pos = 0
    for i in range(n):
        for j in range(i + 1, n):
            mult[i][j] = mult[j][i] = flat[pos]
            pos += 1
    best: Multigraph | None = None
    for perm in permutations(range(n)):
        new_loops = tuple(loops[perm[i]] for i in range(n))
        new_flat = tuple(
            mult[perm[i]][perm[j]] for i in range(n) for j in range(i + 1, n)
        )
        candidate = (new_loops, new_flat)
        if best is None or candidate < best:
            best = candidate
    assert best is not None
    return best


def is_connected(n: int, graph: Multigraph) -> bool:
    """Connectivity over all n vertices; the empty graph is not connected."""
    if n == 0:
        return False
    if n == 1:
        return True
    loops, flat = graph
    mult = {}
    pos = 0
    for i in range(n):
        for j in range(i + 1, n):
            mult[(i, j)] = flat[pos]
            pos += 1
    seen = {0}
    frontier = [0]
    while frontier:
        u = frontier.pop()
        for v in range(n):
            if v in seen or v == u:
                continue
            if mult[(min(u, v), max(u, v))]:
                seen.add(v)
                frontier.append(v)
    return len(seen) == n


# -- symmetry group ------------------------------------------------------------


def group_order(n: int) -> int:
    return factorial(n) * 24**n


def _apply(element, pairing: Pairing) -> Pairing:
    """Act on a pairing by per-vertex leg permutations followed by a vertex
    permutation: (v, leg) -> (pi(v), sigma_v(leg))."""
    sigmas, pi = element

    def move(edge: HalfEdge) -> HalfEdge:
        v, leg = edge
        return (pi[v], sigmas[v][leg])

    pairs = []
    for a, b in pairing:
        x, y = move(a), move(b)
        pairs.append((x, y) if x <= y else (y, x))
    return tuple(sorted(pairs))


def _normalize(pairing: Pairing) -> Pairing:
    pairs = [(a, b) if a <= b else (b, a) for a, b in pairing]
    return tuple(sorted(pairs))


def stabilizer_order(n: int, pairing: Pairing, limit: int = 2) -> int:
    """Brute-force order of the subgroup of G_n fixing the pairing."""
    if n > limit:
        raise ValueError(f"brute-force stabilizer is capped at {limit} vertices")
    target = _normalize(pairing)
    legs = list(permutations(range(LEGS)))
    count = 0
    for pi in permutations(range(n)):
        for sigmas in product(legs, repeat=n):
            if _apply((sigmas, pi), target) == target:
                count += 1
    return count


# -- classification ------------------------------------------------------------


@dataclass(frozen=True)
class ClosedGraphClass:
    """One isomorphism class of 4-valent closed multigraphs on n vertices."""

    vertex_count: int
    loops: tuple[int, ...]
    edge_multiplicities: tuple[int, ...]
    orbit_size: int
    aut_order: int
    connected: bool
    representative: Pairing


def classify_graphs(
    n: int, bound: int = DEFAULT_VERTEX_BOUND
) -> list[ClosedGraphClass]:
    """Group the pairings into multigraph classes with symmetry data.

    For n <= 2 the stabilizer order is brute-forced independently and the
    orbit identity |orbit| * |stabilizer| = |G_n| is enforced; for larger n
    the stabilizer order is recovered from the orbit relation.
    """
    buckets: dict[Multigraph, list] = {}
    for pairing in enumerate_pairings(n, bound):
        key = canonical_multigraph(n, pairing_multigraph(n, pairing))
        entry = buckets.get(key)
        if entry is None:
            buckets[key] = [1, pairing]
        else:
            entry[0] += 1
    order = group_order(n)
    classes = []
    for key in sorted(buckets):
        orbit, representative = buckets[key]
        if n <= 2:
            aut = stabilizer_order(n, representative)
            if orbit * aut != order:
                raise ArithmeticError(
                    f"orbit {orbit} times stabilizer {aut} is not {order}"
                )
        else:
            if order % orbit:
                raise ArithmeticError(f"orbit {orbit} does not divide {order}")
            aut = order // orbit
        loops, flat = key
        classes.append(
            ClosedGraphClass(
                vertex_count=n,
                loops=loops,
                edge_multiplicities=flat,
                orbit_size=orbit,
                aut_order=aut,
                connected=is_connected(n, key),
                representative=representative,
            )
        )
    return classes


# -- coupling series -----------------------------------------------------------


@dataclass(frozen=True)
class LambdaSeries:
    """Truncated series in the quartic coupling.

    ``coeffs[k]`` multiplies coupling^k; a k-vertex closed 4-valent graph has
    2k edges, so that coefficient implicitly carries the factor a^-2k.
    """

    coeffs: tuple[Fraction, ...]

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1


def y_series(order: int, bound: int = DEFAULT_VERTEX_BOUND) -> LambdaSeries:
    """Coefficients of the full graph sum: the k-th is (-1)^k times the sum of
    inverse automorphism orders over all k-vertex classes (1 for the empty
    graph at k = 0)."""
    if order < 0:
        raise ValueError("series order must be non-negative")
    coeffs = []
    for k in range(order + 1):
        total = sum(
            (Fraction(1, c.aut_order) for c in classify_graphs(k, bound)), Fraction(0)
        )
        coeffs.append(-total if k % 2 else total)
    return LambdaSeries(tuple(coeffs))


def log_y_series(order: int, bound: int = DEFAULT_VERTEX_BOUND) -> LambdaSeries:
    """Same sum restricted to connected nonempty classes; equals log of the
    full series as a formal identity."""
    if order < 0:
        raise ValueError("series order must be non-negative")
    coeffs = [Fraction(0)]
    for k in range(1, order + 1):
        total = sum(
            (
                Fraction(1, c.aut_order)
                for c in classify_graphs(k, bound)
                if c.connected
            ),
            Fraction(0),
        )
        coeffs.append(-total if k % 2 else total)
    return LambdaSeries(tuple(coeffs))


def series_exp(series: LambdaSeries) -> LambdaSeries:
    """Exponential of a series with zero constant term, truncated at the same
    order, via the derivative recurrence."""
    c = series.coeffs
    if c and c[0]:
        raise ValueError("exponential needs a zero constant term")
    out = [Fraction(1)]
    for k in range(1, len(c)):
        acc = Fraction(0)
        for i in range(1, k + 1):
            acc += i * c[i] * out[k - i]
        out.append(acc / k)
    return LambdaSeries(tuple(out))
