"""Symmetric tensors stored with one entry per index multiset.

An order-``m`` symmetric tensor in dimension ``n`` keeps a single value per
sorted index tuple; the value is shared by every permutation of the indices.
The bridge between tensors and polynomials follows the factorial-normalized
convention: the degree-``m`` homogeneous polynomial ``p`` associated with a
tensor T satisfies ``coeff(p, alpha) = T[alpha] / alpha!`` where ``alpha!`` is
the product of the exponent factorials.  Equivalently the full index-summed
form of T equals ``m! * p``.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Mapping, Sequence

from .poly import Exponents, Polynomial

IndexKey = tuple[int, ...]


def _multiset_to_exponents(indices: IndexKey, dim: int) -> Exponents:
    exps = [0] * dim
    for i in indices:
        exps[i] += 1
    return tuple(exps)


def _exponents_to_multiset(exps: Sequence[int]) -> IndexKey:
    out: list[int] = []
    for i, e in enumerate(exps):
        out.extend([i] * e)
    return tuple(out)


def _exponent_factorial(exps: Sequence[int]) -> int:
    result = 1
    for e in exps:
        result *= factorial(e)
    return result


class SymmetricTensor:
    """Order-``m`` symmetric tensor over the rationals."""

    __slots__ = ("dim", "order", "entries")

    def __init__(self, dim: int, order: int, entries: Mapping[IndexKey, Fraction | int] = ()):
        if dim < 1:
            raise ValueError("dimension must be positive")
        if order < 1:
            raise ValueError("order must be positive")
        items = entries.items() if isinstance(entries, Mapping) else entries
        table: dict[IndexKey, Fraction] = {}
        for idx, value in items:
            key = tuple(sorted(idx))
            if len(key) != order:
                raise ValueError(f"index tuple {idx} does not have order {order}")
            if any(not 0 <= i < dim for i in key):
                raise ValueError(f"index out of range in {idx}")
            v = Fraction(value)
            prev = table.get(key)
            if prev is not None and prev != v:
                raise ValueError(f"conflicting values for index multiset {key}")
            if v:
                table[key] = v
        self.dim = dim
        self.order = order
        self.entries = table

    def get(self, indices: Sequence[int]) -> Fraction:
        """Entry for any index tuple (symmetry applied)."""
        return self.entries.get(tuple(sorted(indices)), Fraction(0))

    @classmethod
    def from_homogeneous(cls, p: Polynomial, order: int) -> "SymmetricTensor":
        """Tensor whose factorial-normalized expansion is ``p``.

        ``p`` must be homogeneous of total degree ``order``; the entry at the
        multiset of exponent vector ``alpha`` is ``alpha! * coeff(p, alpha)``.
        """
        table: dict[IndexKey, Fraction] = {}
        for exps, coeff in p.terms.items():
            if sum(exps) != order:
                raise ValueError(f"polynomial is not homogeneous of degree {order}")
            table[_exponents_to_multiset(exps)] = coeff * _exponent_factorial(exps)
        return cls(p.dim, order, table)

    def to_homogeneous(self) -> Polynomial:
        """Inverse of :meth:`from_homogeneous`."""
        terms: dict[Exponents, Fraction] = {}
        for key, value in self.entries.items():
            exps = _multiset_to_exponents(key, self.dim)
            terms[exps] = value / _exponent_factorial(exps)
        return Polynomial(self.dim, terms)

    @classmethod
    def from_matrix(cls, rows: Sequence[Sequence[Fraction | int]]) -> "SymmetricTensor":
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("matrix must be square")
        table: dict[IndexKey, Fraction] = {}
        for i in range(n):
            for j in range(i, n):
                if Fraction(rows[i][j]) != Fraction(rows[j][i]):
                    raise ValueError("matrix is not symmetric")
                table[(i, j)] = Fraction(rows[i][j])
        return cls(n, 2, table)

    def to_matrix(self) -> list[list[Fraction]]:
        if self.order != 2:
            raise ValueError("only order-2 tensors convert to matrices")
        return [[self.get((i, j)) for j in range(self.dim)] for i in range(self.dim)]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SymmetricTensor):
            return NotImplemented
        return (
            self.dim == other.dim
            and self.order == other.order
            and self.entries == other.entries
        )

    def __repr__(self) -> str:
        return f"SymmetricTensor(dim={self.dim}, order={self.order}, {self.entries!r})"


def contract_vector(
    tensor: SymmetricTensor, slots: Sequence[Sequence[Polynomial]]
) -> list[Polynomial]:
    """Contract all but one tensor index against polynomial vectors.

    ``slots`` must hold ``order - 1`` vectors of length ``dim``; the result is
    the vector ``r_j = sum T[j, i_1..i_{m-1}] * prod_k slots[k][i_k]``.  The
    sum runs over full index tuples, looking entries up through the multiset
    store, so asymmetric slot products are handled correctly.
    """
    n = tensor.dim
    if tensor.order < 2:
        raise ValueError("contraction needs a tensor of order at least 2")
    if len(slots) != tensor.order - 1:
        raise ValueError(f"expected {tensor.order - 1} slot vectors, got {len(slots)}")
    for v in slots:
        if len(v) != n:
            raise ValueError("slot vector length does not match tensor dimension")
    ambient = slots[0][0].dim
    result = [Polynomial.zero(ambient) for _ in range(n)]
    one = Polynomial.constant(ambient, 1)

    def descend(slot: int, prefix: IndexKey, running: Polynomial) -> None:
        if slot == len(slots):
            for j in range(n):
                c = tensor.get(prefix + (j,))
                if c:
                    result[j] = result[j] + running * c
            return
        vec = slots[slot]
        for i in range(n):
            comp = vec[i]
            if comp.is_zero:
                continue
            descend(slot + 1, prefix + (i,), running * comp)

    descend(0, (), one)
    return result


def contract_full(
    tensor: SymmetricTensor, slots: Sequence[Sequence[Polynomial]]
) -> Polynomial:
    """Fully contract an order-``m`` tensor against ``m`` polynomial vectors."""
    if len(slots) != tensor.order:
        raise ValueError(f"expected {tensor.order} slot vectors, got {len(slots)}")
    head = contract_vector(tensor, slots[:-1])
    last = slots[-1]
    acc = Polynomial.zero(head[0].dim)
    for j in range(tensor.dim):
        if not last[j].is_zero and not head[j].is_zero:
            acc = acc + head[j] * last[j]
    return acc
