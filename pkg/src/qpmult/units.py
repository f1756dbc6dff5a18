"""Unit groups: quadratic fundamental units from continued fractions, and
verification of user-supplied generators for higher degree."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Sequence

from .errors import (
    GeneratorsRequired,
    NotAUnit,
    NotSquarefree,
    OutOfRange,
    StepCapExceeded,
    TorsionOnly,
    WrongGeneratorCount,
)
from .numberfield import (
    FieldElement,
    NumberField,
    is_algebraic_unit,
    make_field,
    sign,
    signature,
)

COMPUTED = "computed"
SUPPLIED = "supplied-assumed-fundamental"

DEFAULT_STEP_CAP = 1_000_000


def is_squarefree(d: int) -> bool:
    d = abs(d)
    p = 2
    while p * p <= d:
        if d % (p * p) == 0:
            return False
        p += 1
    return d != 0


def squarefree_decomposition(n: int) -> tuple[int, int]:
    """Write n = f^2 * d with d squarefree (sign kept on d)."""
    s = -1 if n < 0 else 1
    n = abs(n)
    f, d = 1, 1
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        f *= p ** (e // 2)
        if e % 2:
            d *= p
        p += 1
    return f, s * d * n


def quadratic_field(d: int) -> NumberField:
    """Q(sqrt d) as z^2 - d with the positive root selected."""
    r = isqrt(d)
    return make_field([-d, 0, 1], [r, r + 1])


def cf_period(d: int, p0: int, q0: int, step_cap: int = DEFAULT_STEP_CAP):
    """Continued fraction of (p0 + sqrt d)/q0 on exact states (P, Q).

    Returns (states, start): ``states[start:]`` is the primitive period of
    complete quotients.  Requires q0 | d - p0^2 and q0 > 0.
    """
    s = isqrt(d)
    p, q = p0, q0
    seen: dict[tuple[int, int], int] = {}
    states = []
    for _ in range(step_cap):
        if (p, q) in seen:
            return states, seen[(p, q)]
        seen[(p, q)] = len(states)
        states.append((p, q))
        a = (p + s) // q
        p = a * q - p
        q = (d - p * p) // q
    raise StepCapExceeded(f"no period found for sqrt({d}) within {step_cap} steps")


def quadratic_fundamental_unit(d: int, field: NumberField | None = None,
                               step_cap: int = DEFAULT_STEP_CAP) -> FieldElement:
    """Fundamental unit eps > 1 of the maximal order of Q(sqrt d).

    The ring is Z[sqrt d] for d = 2, 3 mod 4 and Z[(1 + sqrt d)/2] for
    d = 1 mod 4; the unit is the product of the complete quotients over one
    primitive period of the continued fraction of sqrt d, respectively
    (1 + sqrt d)/2.
    """
    if d <= 1:
        raise OutOfRange(f"d must exceed 1, got {d}")
    if not is_squarefree(d):
        raise NotSquarefree(f"{d} is not squarefree")
    field = field or quadratic_field(d)
    root = field.gen()
    start = (1, 2) if d % 4 == 1 else (0, 1)
    states, k = cf_period(d, *start, step_cap=step_cap)
    eps = field.one()
    for p, q in states[k:]:
        eps = eps * ((p + root) / q)
    return eps


def verify_supplied_unit(field: NumberField, x: FieldElement) -> FieldElement:
    if x.field != field:
        raise NotAUnit("supplied unit lies in a different field")
    if x == 1 or x == -1:
        raise TorsionOnly("+-1 generates only the torsion subgroup")
    if not is_algebraic_unit(x):
        raise NotAUnit(f"{x!r} is not a unit of the ring of integers")
    return x


@dataclass(frozen=True)
class UnitGroup:
    field: NumberField
    generators: tuple[FieldElement, ...]
    provenance: tuple[str, ...]
    torsion_order: int = 2

    @property
    def all_computed(self) -> bool:
        return all(p == COMPUTED for p in self.provenance)


def _embed_quadratic(field: NumberField, eps: FieldElement) -> FieldElement:
    """Transport u + v sqrt(d) from Q(sqrt d) into ``field`` (same field,
    other defining polynomial) respecting the selected real root."""
    c, b, _ = field.min_poly
    disc = b * b - 4 * c
    f, d = squarefree_decomposition(disc)
    delta = field.gen()
    # sqrt(disc) = +-(2 delta + b)
    s = 2 * delta + b
    if sign(s) < 0:
        s = -s
    sqrt_d = s / f
    u, v = eps.coords
    return u + v * sqrt_d


def unit_group(field: NumberField, supplied: Sequence[FieldElement] | None = None) -> UnitGroup:
    """Generators of the free part of the unit group of the maximal order.

    Quadratic fields are computed; otherwise generators must be supplied (and
    are then assumed fundamental, not proven so).
    """
    rank = signature(field).unit_rank
    if supplied:
        if len(supplied) != rank:
            raise WrongGeneratorCount(f"unit rank is {rank}, got {len(supplied)} generator(s)")
        gens = tuple(verify_supplied_unit(field, x) for x in supplied)
        return UnitGroup(field, gens, (SUPPLIED,) * rank)
    if field.degree == 2:
        c, b, _ = field.min_poly
        _, d = squarefree_decomposition(b * b - 4 * c)
        eps = quadratic_fundamental_unit(d)
        return UnitGroup(field, (_embed_quadratic(field, eps),), (COMPUTED,))
    raise GeneratorsRequired(rank, f"degree-{field.degree} field: supply {rank} unit generator(s)")


def pell_brute_force(d: int, bound: int) -> tuple[Fraction, Fraction] | None:
    """Smallest unit > 1 of the maximal order of Q(sqrt d), by search over
    coordinates: returns (u, v) with unit u + v sqrt(d), v <= bound.

    For d = 1 mod 4 half-integer coordinates (x + y sqrt d)/2, x = y mod 2,
    are searched; otherwise integers.  Used as an independent oracle.
    """
    half = d % 4 == 1
    target = 4 if half else 1
    best = None
    for y in range(1, bound + 1):
        for t in (target, -target):
            x2 = d * y * y + t
            if x2 <= 0:
                continue
            x = isqrt(x2)
            if x * x != x2 or (half and (x - y) % 2):
                continue
            cand = (Fraction(x, 2), Fraction(y, 2)) if half else (Fraction(x), Fraction(y))
            if best is None or cand[0] < best[0]:
                best = cand
        if best is not None:
            return best
    return None
