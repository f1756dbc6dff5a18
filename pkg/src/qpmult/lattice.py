"""Full-rank Z-modules inside a number field, stored canonically as
``(integer HNF, common denominator)``."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Sequence

from . import exactmath as em
from .errors import FieldMismatch, InternalInconsistency, RankDeficient
from .numberfield import FieldElement, NumberField, multiplication_matrix


@dataclass(frozen=True)
class FLattice:
    """Z-span of the rows of ``hnf / denom`` (power-basis coordinates)."""

    field: NumberField
    hnf: tuple[tuple[int, ...], ...]
    denom: int

    @property
    def basis_matrix(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(tuple(Fraction(x, self.denom) for x in row) for row in self.hnf)

    def basis(self) -> list[FieldElement]:
        return [self.field.element(row) for row in self.basis_matrix]

    def __contains__(self, x: FieldElement) -> bool:
        return contains(self, x) is not None


@dataclass(frozen=True)
class Order(FLattice):
    """A lattice that is also a ring with 1."""


def _canonical(field: NumberField, rows: Sequence[Sequence], kind=FLattice) -> FLattice:
    n = field.degree
    fr = [[Fraction(x) for x in r] for r in rows]
    den = reduce(lcm, (x.denominator for r in fr for x in r), 1)
    ints = [[int(x * den) for x in r] for r in fr]
    h = em.hnf_basis(ints)
    if len(h) < n:
        raise RankDeficient(f"generators span a rank-{len(h)} module in a degree-{n} field")
    g = reduce(gcd, (x for r in h for x in r), den)
    h = tuple(tuple(x // g for x in r) for r in h)
    return kind(field, h, den // g)


def lattice_from_generators(field: NumberField, gens: Sequence[FieldElement]) -> FLattice:
    """Canonical lattice spanned by ``gens`` (at least ``field.degree`` of them)."""
    for g in gens:
        if g.field != field:
            raise FieldMismatch("generator lies in a different field")
    return _canonical(field, [g.coords for g in gens])


def contains(lat: FLattice, x: FieldElement) -> tuple[int, ...] | None:
    """Integer coordinates of x over the lattice basis, or None if x is not in it."""
    if x.field is not lat.field and x.field != lat.field:
        raise FieldMismatch("element and lattice live in different fields")
    target = [c * lat.denom for c in x.coords]
    if any(t.denominator != 1 for t in target):
        return None
    target = [int(t) for t in target]
    h = lat.hnf
    n = len(h)
    k = []
    # H is upper triangular: column j of k*H only involves k_0..k_j
    for j in range(n):
        s = target[j] - sum(k[i] * h[i][j] for i in range(j))
        q, r = divmod(s, h[j][j])
        if r:
            return None
        k.append(q)
    return tuple(k)


def mul_preserves(lat: FLattice, x: FieldElement) -> bool:
    """True iff x * Lambda is contained in Lambda."""
    if x.field is not lat.field and x.field != lat.field:
        raise FieldMismatch("element and lattice live in different fields")
    return all(contains(lat, x * b) is not None for b in lat.basis())


def is_order(lat: FLattice) -> bool:
    if contains(lat, lat.field.one()) is None:
        return False
    basis = lat.basis()
    return all(contains(lat, a * b) is not None for a in basis for b in basis)


def coefficient_ring(lat: FLattice) -> Order:
    """The order {x in F : x * Lambda is contained in Lambda}.

    Writing x = t . (1, delta, ...), the conditions x*b_i in Lambda read
    t . A_i in Z^n with A_i = M(b_i) B^{-1}.  So the solutions form the dual
    of the Z-module N spanned by the columns of all A_i; with an HNF basis P
    of N (as rows), the dual basis is the rows of (P^T)^{-1}.
    """
    field = lat.field
    binv = em.inverse(lat.basis_matrix)
    cols = []
    for b in lat.basis():
        a = em.mat_mul(multiplication_matrix(b), binv)
        cols.extend(em.transpose(a))
    den = reduce(lcm, (Fraction(x).denominator for c in cols for x in c), 1)
    p = em.hnf_basis([[int(Fraction(x) * den) for x in c] for c in cols])
    pq = [[Fraction(x, den) for x in r] for r in p]
    dual = em.inverse(em.transpose(pq))
    order = _canonical(field, dual, kind=Order)
    if not is_order(order) or not all(mul_preserves(lat, w) for w in order.basis()):
        raise InternalInconsistency("coefficient ring failed its closure check")
    return order
