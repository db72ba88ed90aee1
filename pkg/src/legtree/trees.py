"""Tree diagrams: enumeration up to isomorphism, automorphism orders, and
exact contraction weights.

A diagram is a tree whose degree-1 vertices ("leaves") each carry the dual
variable vector and whose internal vertices of degree d carry minus the
order-d vertex tensor; every edge carries the inverse quadratic form (the
propagator).  The primary enumeration builds each class once, by attaching
leaf counts to every unlabeled internal skeleton and deduplicating through a
center-rooted canonical encoding.  An independent labeled enumeration via
Prufer sequences backs the test suite: summing raw contraction values over
all labeled trees and dividing by m!*j! must reproduce the per-class weights.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from heapq import heapify, heappop, heappush
from itertools import product
from math import factorial
from typing import Iterator, Sequence

from .legendre import Potential
from .poly import Polynomial
from .series import TruncatedSeries
from .tensors import SymmetricTensor, contract_full, contract_vector

Adjacency = tuple[tuple[int, ...], ...]

DEFAULT_ORACLE_BOUND = 6


@dataclass(frozen=True)
class TreeClass:
    """Isomorphism class of a decorated tree."""

    leaf_count: int
    internal_degrees: tuple[int, ...]
    encoding: str
    aut_order: int
    adjacency: Adjacency

    @property
    def internal_count(self) -> int:
        return len(self.internal_degrees)


@dataclass(frozen=True)
class TensorBundle:
    """Propagator plus the vertex tensors keyed by degree."""

    dim: int
    propagator: SymmetricTensor
    vertex_tensors: dict[int, SymmetricTensor]


def bundle_from_potential(pot: Potential) -> TensorBundle:
    vertex: dict[int, SymmetricTensor] = {}
    for d in range(3, max(pot.degree(), 2) + 1):
        vertex[d] = SymmetricTensor.from_homogeneous(
            pot.poly.homogeneous_component(d), d
        )
    return TensorBundle(
        dim=pot.dim,
        propagator=SymmetricTensor.from_matrix(pot.quadratic_inverse),
        vertex_tensors=vertex,
    )


# -- canonical form and automorphisms ----------------------------------------


def tree_center(adj: Adjacency) -> tuple[int, ...]:
    """The one or two center vertices, by repeated leaf stripping."""
    n = len(adj)
    deg = [len(nb) for nb in adj]
    layer = [v for v in range(n) if deg[v] <= 1]
    removed = len(layer)
    while removed < n:
        nxt: list[int] = []
        for u in layer:
            deg[u] = 0
            for w in adj[u]:
                if deg[w] > 0:
                    deg[w] -= 1
                    if deg[w] == 1:
                        nxt.append(w)
        removed += len(nxt)
        layer = nxt
    return tuple(sorted(layer))


def _rooted(adj: Adjacency, v: int, parent: int) -> tuple[str, int]:
    """Canonical encoding and automorphism order of the subtree rooted at v."""
    children = [u for u in adj[v] if u != parent]
    if not children:
        return "()", 1
    encoded = sorted(_rooted(adj, u, v) for u in children)
    aut = 1
    run = 0
    for k, (enc, child_aut) in enumerate(encoded):
        aut *= child_aut
        if k and enc == encoded[k - 1][0]:
            run += 1
        else:
            run = 1
        aut *= run
    return "(" + "".join(enc for enc, _ in encoded) + ")", aut


def canonical_encoding(adj: Adjacency) -> tuple[str, int]:
    """Center-rooted canonical encoding plus the automorphism group order.

    Leaves are interchangeable; internal vertices are interchangeable exactly
    when their rooted subtrees match, which the product-of-factorials rule
    over identical child subtrees counts.  When the center is an edge with
    isomorphic halves an extra factor of 2 swaps the halves.
    """
    centers = tree_center(adj)
    if len(centers) == 1:
        return _rooted(adj, centers[0], -1)
    u, v = centers
    enc_u, aut_u = _rooted(adj, u, v)
    enc_v, aut_v = _rooted(adj, v, u)
    if enc_u > enc_v:
        enc_u, enc_v = enc_v, enc_u
    aut = aut_u * aut_v * (2 if enc_u == enc_v else 1)
    return "E" + enc_u + enc_v, aut


def aut_order(adj: Adjacency) -> int:
    return canonical_encoding(adj)[1]


# -- enumeration ---------------------------------------------------------------


def prufer_decode(seq: Sequence[int], size: int) -> list[tuple[int, int]]:
    """Edges of the labeled tree on ``size`` vertices encoded by ``seq``."""
    if len(seq) != size - 2:
        raise ValueError("sequence length must be size - 2")
    deg = [1] * size
    for s in seq:
        deg[s] += 1
    leaves = [v for v in range(size) if deg[v] == 1]
    heapify(leaves)
    edges: list[tuple[int, int]] = []
    for s in seq:
        v = heappop(leaves)
        edges.append((v, s))
        deg[s] -= 1
        if deg[s] == 1:
            heappush(leaves, s)
    u, w = heappop(leaves), heappop(leaves)
    edges.append((u, w))
    return edges


def _edges_to_adjacency(edges: Sequence[tuple[int, int]], size: int) -> Adjacency:
    nb: list[list[int]] = [[] for _ in range(size)]
    for u, v in edges:
        nb[u].append(v)
        nb[v].append(u)
    return tuple(tuple(sorted(x)) for x in nb)


@lru_cache(maxsize=None)
def _unlabeled_trees(size: int) -> tuple[Adjacency, ...]:
    """All isomorphism classes of trees on ``size`` unlabeled vertices."""
    if size == 1:
        return (((),),)
    if size == 2:
        return (((1,), (0,)),)
    seen: dict[str, Adjacency] = {}
    for seq in product(range(size), repeat=size - 2):
        adj = _edges_to_adjacency(prufer_decode(seq, size), size)
        enc, _ = canonical_encoding(adj)
        if enc not in seen:
            seen[enc] = adj
    return tuple(seen[key] for key in sorted(seen))


def _allocations(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All tuples of ``parts`` non-negative ints summing to ``total``."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _allocations(total - first, parts - 1):
            yield (first, *rest)


def enumerate_trees(leaf_count: int, max_degree: int) -> list[TreeClass]:
    """Every class with exactly ``leaf_count`` leaves and internal degrees in
    [3, max_degree], each exactly once.

    Internal vertices of a tree induce a subtree, so classes are produced by
    choosing an unlabeled internal skeleton on j vertices (j = 1..m-2) and a
    leaf allocation, then deduplicating canonically.  The single-edge tree is
    the only class without internal vertices and exists just for m = 2.
    """
    if leaf_count < 2:
        raise ValueError("a diagram needs at least two leaves")
    found: dict[str, TreeClass] = {}
    if leaf_count == 2:
        adj: Adjacency = ((1,), (0,))
        enc, aut = canonical_encoding(adj)
        found[enc] = TreeClass(2, (), enc, aut, adj)
    for j in range(1, leaf_count - 1):
        for skeleton in _unlabeled_trees(j):
            skeleton_deg = [len(nb) for nb in skeleton]
            for alloc in _allocations(leaf_count, j):
                degrees = [skeleton_deg[v] + alloc[v] for v in range(j)]
                if any(d < 3 or d > max_degree for d in degrees):
                    continue
                nb = [list(skeleton[v]) for v in range(j)]
                nxt = j
                for v in range(j):
                    for _ in range(alloc[v]):
                        nb[v].append(nxt)
                        nb.append([v])
                        nxt += 1
                adj = tuple(tuple(sorted(x)) for x in nb)
                enc, aut = canonical_encoding(adj)
                if enc not in found:
                    found[enc] = TreeClass(
                        leaf_count, tuple(sorted(degrees)), enc, aut, adj
                    )
    return sorted(
        found.values(),
        key=lambda t: (t.internal_count, t.internal_degrees, t.encoding),
    )


# -- contraction weights -------------------------------------------------------


def tree_contraction(
    adj: Adjacency, bundle: TensorBundle, root: int | None = None
) -> Polynomial:
    """Raw message-passing contraction of a decorated tree (no symmetry factor).

    Each leaf emits the propagated dual vector; an internal vertex of degree d
    contracts its d-1 incoming vectors with the order-d vertex tensor and
    forwards through one propagator, so every edge carries exactly one
    propagator.  The root closes the contraction; the overall sign is one
    minus per internal vertex.  The value is independent of the root choice.
    """
    n = bundle.dim
    y = [Polynomial.variable(n, i) for i in range(n)]
    leaf_message = contract_vector(bundle.propagator, [y])
    internal = [v for v in range(len(adj)) if len(adj[v]) >= 2]
    if root is None:
        root = internal[0] if internal else 0

    def vertex_tensor(degree: int) -> SymmetricTensor:
        tensor = bundle.vertex_tensors.get(degree)
        if tensor is None:
            raise ValueError(f"no vertex tensor of order {degree} in the bundle")
        return tensor

    def emit(v: int, parent: int) -> list[Polynomial]:
        children = [u for u in adj[v] if u != parent]
        if not children:
            return leaf_message
        messages = [emit(u, v) for u in children]
        raw = contract_vector(vertex_tensor(len(adj[v])), messages)
        return contract_vector(bundle.propagator, [raw])

    if len(adj[root]) == 1:
        # only the single-edge tree roots at a leaf
        incoming = emit(adj[root][0], root)
        value = Polynomial.zero(n)
        for i in range(n):
            value = value + y[i] * incoming[i]
    else:
        messages = [emit(u, root) for u in adj[root]]
        value = contract_full(vertex_tensor(len(adj[root])), messages)
    if len(internal) % 2:
        value = -value
    return value


def tree_weight(tree: TreeClass, bundle: TensorBundle) -> Polynomial:
    """Contraction divided by the automorphism order."""
    return tree_contraction(tree.adjacency, bundle) * Fraction(1, tree.aut_order)


def tree_expand(
    source: "Potential | Polynomial | TruncatedSeries", degree: int
) -> TruncatedSeries:
    """Sum of tree weights over all classes with 2..degree leaves.

    Internal degrees are capped at the potential's top degree, above which the
    vertex tensors vanish.  The result must match the Legendre engine exactly.
    """
    pot = source if isinstance(source, Potential) else Potential(source)
    if degree < 2:
        raise ValueError("expansion degree must be at least 2")
    bundle = bundle_from_potential(pot)
    max_internal = max(pot.degree(), 2)
    total = Polynomial.zero(pot.dim)
    for leaves in range(2, degree + 1):
        for tree in enumerate_trees(leaves, max_internal):
            total = total + tree_weight(tree, bundle)
    return TruncatedSeries(total.truncated(degree), degree)


# -- labeled oracle ------------------------------------------------------------


def _labeled_trees(
    leaf_count: int, internal_count: int, max_degree: int
) -> Iterator[Adjacency]:
    """All labeled trees with leaves 0..m-1 (degree exactly 1) and internal
    vertices m..m+j-1 (degree 3..max_degree), via Prufer sequences.

    A label of degree d appears d-1 times in the sequence, so leaves never
    appear and internal labels appear between 2 and max_degree - 1 times.
    """
    size = leaf_count + internal_count
    length = size - 2
    for seq in product(range(internal_count), repeat=length):
        counts = [0] * internal_count
        for s in seq:
            counts[s] += 1
        if any(c < 2 or c > max_degree - 1 for c in counts):
            continue
        full = tuple(leaf_count + s for s in seq)
        yield _edges_to_adjacency(prufer_decode(full, size), size)


def labeled_tree_oracle(
    source: "Potential | Polynomial | TruncatedSeries",
    degree: int,
    bound: int = DEFAULT_ORACLE_BOUND,
) -> TruncatedSeries:
    """Independent evaluation of the tree expansion by labeled enumeration.

    For each leaf count m and internal count j, raw contraction values are
    summed over every labeled tree and divided by m!*j!; by orbit counting a
    class with automorphism order a contributes m!*j!/a labeled copies, so the
    total reproduces the per-class weights.  Exhaustive, hence capped.
    """
    pot = source if isinstance(source, Potential) else Potential(source)
    if degree < 2:
        raise ValueError("expansion degree must be at least 2")
    if degree > bound:
        raise ValueError(f"labeled enumeration is capped at degree {bound}")
    bundle = bundle_from_potential(pot)
    max_internal = max(pot.degree(), 2)
    total = Polynomial.zero(pot.dim)
    for leaves in range(2, degree + 1):
        if leaves == 2:
            edge: Adjacency = ((1,), (0,))
            total = total + tree_contraction(edge, bundle) * Fraction(1, 2)
        for j in range(1, leaves - 1):
            batch = Polynomial.zero(pot.dim)
            for adj in _labeled_trees(leaves, j, max_internal):
                batch = batch + tree_contraction(adj, bundle)
            total = total + batch * Fraction(1, factorial(leaves) * factorial(j))
    return TruncatedSeries(total.truncated(degree), degree)
