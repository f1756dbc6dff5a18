"""Scale equivalence, affine conjugacy and affine semiconjugacy between flows.

Only linear parts are computed: translations act trivially on constant
vector fields, so every witness is understood "+ arbitrary translation".
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import exactmath as em
from .errors import FieldMismatch, InternalInconsistency, NotConjugate, NotSemiconjugate
from .lattice import mul_preserves
from .multiplier import (
    ALGEBRAIC,
    DEFAULT_MAX_INDEX,
    Flow,
    MultiplierGroup,
    _formal_ratio,
    frequency_lattice,
    multiplier_group,
)
from .numberfield import FieldElement
from .units import UnitGroup


@dataclass(frozen=True)
class ConjugacyWitness:
    kind: str  # "scale" | "conjugacy" | "semiconjugacy"
    matrix: tuple[tuple[int, ...], ...] | None = None
    scale_factor: FieldElement | Fraction | None = None
    det: int | None = None


def _check_compatible(a: Flow, b: Flow):
    if a.model != b.model:
        raise FieldMismatch("flows use different models")
    if a.n != b.n:
        raise FieldMismatch(f"flows live on T^{a.n} and T^{b.n}")
    if a.model == ALGEBRAIC and a.field != b.field:
        raise FieldMismatch(f"{a.field!r} vs {b.field!r}")


def scale_equivalence(a: Flow, b: Flow) -> ConjugacyWitness | None:
    """theta with theta * a_i = b_i for all i, if it exists."""
    _check_compatible(a, b)
    if a.model == ALGEBRAIC:
        theta = b.frequencies[0] / a.frequencies[0]
        if all(theta * x == y for x, y in zip(a.frequencies, b.frequencies)):
            return ConjugacyWitness("scale", scale_factor=theta)
        return None
    # formal frequencies span the polynomials of degree < n, which forces a
    # constant ratio
    thetas = {_formal_ratio(y, x) for x, y in zip(a.frequencies, b.frequencies)}
    if len(thetas) == 1 and None not in thetas:
        return ConjugacyWitness("scale", scale_factor=thetas.pop())
    return None


def _linear_map(a: Flow, b: Flow):
    """Unique rational V with V a = b: row i = coordinates of b_i over a."""
    _check_compatible(a, b)
    return em.mat_mul(b.spec.freq_coords, a.coords_inverse)


def semiconjugacy_witness(a: Flow, b: Flow) -> ConjugacyWitness:
    v = _linear_map(a, b)
    if not em.is_integral(v):
        bad = next(x for r in v for x in r if Fraction(x).denominator != 1)
        raise NotSemiconjugate(f"the unique linear solution has non-integer entry {bad}")
    v = em.to_int_matrix(v)
    d = em.det(v)
    if d == 0:
        raise NotSemiconjugate("the linear solution is singular")
    return ConjugacyWitness("semiconjugacy", v, det=d)


def conjugacy_witness(a: Flow, b: Flow) -> ConjugacyWitness:
    try:
        w = semiconjugacy_witness(a, b)
    except NotSemiconjugate as exc:
        raise NotConjugate(str(exc)) from None
    if abs(w.det) != 1:
        raise NotConjugate(f"semiconjugacy has determinant {w.det}, not ±1")
    return ConjugacyWitness("conjugacy", w.matrix, det=w.det)


@dataclass(frozen=True)
class SemiconjugacyReport:
    witness: ConjugacyWitness
    group_a: MultiplierGroup | None
    group_b: MultiplierGroup | None
    b_in_a: bool
    a_in_b: bool
    index_b_in_a: int | None
    certified: bool
    notes: tuple[str, ...] = ()


def _contained(small: MultiplierGroup, big: MultiplierGroup) -> bool:
    """Every generator of ``small`` (and its inverse) stabilizes big's lattice."""
    lat = frequency_lattice(big.flow)
    return all(mul_preserves(lat, g.value) and mul_preserves(lat, g.value.inverse())
               for g in small.generators)


def semiconjugacy_report(a: Flow, b: Flow, units: UnitGroup | None = None,
                         max_index: int = DEFAULT_MAX_INDEX) -> SemiconjugacyReport:
    """Compare M_b with M_a for a semiconjugacy a -> b.

    With one common unit generator eps, M_a = {±eps^(k_a Z)} and likewise for
    b, so M_b ⊆ M_a iff k_a | k_b; this is cross-checked by lattice
    membership of the generators.
    """
    w = semiconjugacy_witness(a, b)
    if a.model != ALGEBRAIC:
        return SemiconjugacyReport(w, None, None, True, True, 1, True,
                                   ("both multiplier groups are {1, -1}",))
    ga = multiplier_group(a, units, max_index)
    gb = multiplier_group(b, ga.unit_group, max_index)
    b_in_a = _contained(gb, ga)
    a_in_b = _contained(ga, gb)
    notes = []
    certified = len(ga.exponents) == 1
    if certified:
        (ka,), (kb,) = ga.exponents, gb.exponents
        if (kb % ka == 0) != b_in_a or (ka % kb == 0) != a_in_b:
            raise InternalInconsistency("exponent divisibility disagrees with lattice membership")
        index = kb // ka if b_in_a else None
    else:
        index = None
        notes.append("unit rank >= 2: containment from per-generator membership is evidence only")
    if b_in_a:
        notes.append("M_b ⊆ M_a: b is F-algebraic and M_b has finite index in M_a")
    else:
        notes.append("M_b ⊄ M_a: semiconjugacy alone does not force containment")
    return SemiconjugacyReport(w, ga, gb, b_in_a, a_in_b, index, certified, tuple(notes))
