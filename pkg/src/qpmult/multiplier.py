"""Multiplier groups of constant-frequency flows on the n-torus.

A flow is given by its frequency vector a = (a_1, ..., a_n).  A multiplier is
a scalar alpha with B a = alpha a for some B in GL(n, Z); B is its witness.

Two models are supported:

* ``algebraic``: each a_i lies in a real number field F (power-basis
  coordinates).  The multipliers are the units of the coefficient ring of
  the frequency lattice, found by a minimal-exponent search on the unit
  group generator(s).
* ``formal``: each a_i is a rational combination of 1, g, ..., g^(n-1) for a
  formal transcendental g.  Multipliers are decided by polynomial identities
  in Q[g].
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import reduce
from math import prod
from typing import Sequence, Union

from . import exactmath as em
from .errors import (
    IndexBoundExceeded,
    InternalInconsistency,
    ModelMismatch,
    NotAMultiplier,
    NotASymmetry,
    NotQuasiperiodic,
    NotUnimodular,
    RankUnsupported,
)
from .lattice import FLattice, coefficient_ring, lattice_from_generators, mul_preserves
from .numberfield import (
    FieldElement,
    NumberField,
    minimal_polynomial,
    multiplication_matrix,
    norm,
    format_element,
    is_algebraic_unit,
)
from .units import UnitGroup, unit_group

ALGEBRAIC = "algebraic"
FORMAL = "formal"
DEFAULT_MAX_INDEX = 100_000

Scalar = Union[FieldElement, Fraction]


@dataclass(frozen=True)
class FlowSpec:
    model: str
    freq_coords: tuple[tuple[Fraction, ...], ...]
    field: NumberField | None = None
    supplied_units: tuple[tuple[Fraction, ...], ...] = ()
    description: str = ""

    @property
    def n(self) -> int:
        return len(self.freq_coords)

    @classmethod
    def algebraic(cls, field: NumberField, freq_coords, supplied_units=(), description=""):
        return cls(ALGEBRAIC, em.as_matrix(freq_coords), field,
                   em.as_matrix(supplied_units), description)

    @classmethod
    def formal(cls, freq_coords, description=""):
        return cls(FORMAL, em.as_matrix(freq_coords), None, (), description)


@dataclass(frozen=True)
class Flow:
    """A validated FlowSpec together with its normalization a_i / a_1."""

    spec: FlowSpec
    frequencies: tuple  # FieldElements, or coefficient tuples in the formal model
    scaled: tuple
    coords_inverse: tuple[tuple[Fraction, ...], ...]

    @property
    def n(self) -> int:
        return self.spec.n

    @property
    def model(self) -> str:
        return self.spec.model

    @property
    def field(self) -> NumberField | None:
        return self.spec.field


@dataclass(frozen=True)
class Multiplier:
    value: Scalar
    witness: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class MultiplierGroup:
    """{+-1} x <generators>.

    ``exponents[i]`` is the least k with eps_i^k a multiplier, for eps_i the
    i-th unit-group generator.  ``index`` is [o_F^* : M] when every step is
    certified (unit rank 1); otherwise it is None and ``index_upper_bound``
    holds prod(exponents).
    """

    flow: Flow
    generators: tuple[Multiplier, ...]
    exponents: tuple[int, ...]
    index: int | None
    index_upper_bound: int
    unit_group: UnitGroup | None
    notes: tuple[str, ...] = ()
    torsion: tuple[int, int] = (1, -1)

    @property
    def index_relative_to_supplied(self) -> bool:
        return self.unit_group is not None and not self.unit_group.all_computed

    @property
    def rank(self) -> int:
        return len(self.generators)


@dataclass(frozen=True)
class CheckItem:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class SymmetryReport:
    classification: str
    structure: str
    group: MultiplierGroup | None
    checklist: tuple[CheckItem, ...]
    ratio_min_poly: tuple[int, ...] | None = None
    notes: tuple[str, ...] = dc_field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checklist)


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

def validate_flow(spec: FlowSpec) -> Flow:
    """Check quasiperiodicity (frequency coordinates invertible over Q)."""
    n = spec.n
    if n < 2 or any(len(r) != n for r in spec.freq_coords):
        raise NotQuasiperiodic(f"need an n x n frequency coordinate matrix with n >= 2")
    if spec.model == ALGEBRAIC:
        if spec.field is None or spec.field.degree != n:
            raise NotQuasiperiodic("field degree must equal the number of frequencies")
    elif spec.model != FORMAL:
        raise ModelMismatch(f"unknown model {spec.model!r}")
    try:
        inv = em.inverse(spec.freq_coords)
    except Exception:
        raise NotQuasiperiodic("frequencies are linearly dependent over Q") from None
    if spec.model == ALGEBRAIC:
        freqs = tuple(spec.field.element(r) for r in spec.freq_coords)
        scaled = tuple(a / freqs[0] for a in freqs)
    else:
        freqs = tuple(em.poly(r) for r in spec.freq_coords)
        scaled = freqs  # a_i / a_1 is a rational function; kept unscaled
    return Flow(spec, freqs, scaled, inv)


def _require_algebraic(flow: Flow):
    if flow.model != ALGEBRAIC:
        raise ModelMismatch("operation needs an algebraic flow")


def frequency_lattice(flow: Flow) -> FLattice:
    """Z-span of the normalized frequencies a_i / a_1."""
    _require_algebraic(flow)
    return lattice_from_generators(flow.field, flow.scaled)


# ---------------------------------------------------------------------------
# witness matrices
# ---------------------------------------------------------------------------

def _coords_over_frequencies(flow: Flow, x_coords: Sequence[Fraction]) -> tuple[Fraction, ...]:
    return em.vec_mat(x_coords, flow.coords_inverse)


def _witness_or_none(flow: Flow, alpha: FieldElement):
    rows = []
    for a in flow.frequencies:
        r = _coords_over_frequencies(flow, (alpha * a).coords)
        if any(Fraction(x).denominator != 1 for x in r):
            return None
        rows.append(tuple(int(x) for x in r))
    return tuple(rows)


def witness_matrix(flow: Flow, alpha: Scalar) -> tuple[tuple[int, ...], ...]:
    """The unique integer matrix B with B a = alpha a; must be unimodular."""
    if flow.model == FORMAL:
        if alpha in (1, -1):
            return tuple(tuple(int(alpha) * int(i == j) for j in range(flow.n)) for i in range(flow.n))
        raise NotAMultiplier("a formal flow has only the multipliers +-1")
    if not isinstance(alpha, FieldElement):
        alpha = flow.field.from_rational(alpha)
    b = _witness_or_none(flow, alpha)
    if b is None:
        raise NotAMultiplier(f"{alpha!r} does not map the frequency lattice into itself")
    if abs(em.det(b)) != 1:
        raise NotAMultiplier(f"witness for {alpha!r} has determinant {em.det(b)}")
    return b


def _formal_ratio(p: tuple, q: tuple) -> Fraction | None:
    """c with p = c * q for polynomials p, q (q nonzero), else None."""
    if not p:
        return Fraction(0)
    if len(p) != len(q):
        return None
    c = Fraction(p[-1]) / Fraction(q[-1])
    return c if em.poly_sub(p, em.poly_scale(q, c)) == () else None


def multiplier_of_matrix(flow: Flow, b: Sequence[Sequence[int]]) -> Scalar:
    """The multiplier realized by B, i.e. alpha with B a = alpha a."""
    n = flow.n
    b = em.to_int_matrix(b)
    if len(b) != n or any(len(r) != n for r in b):
        raise NotASymmetry(f"matrix must be {n} x {n}")
    d = em.det(b)
    if abs(d) != 1:
        raise NotUnimodular(f"determinant {d}")
    if flow.model == ALGEBRAIC:
        ba = [sum((bij * aj for bij, aj in zip(row, flow.frequencies)), flow.field.zero())
              for row in b]
        alpha = ba[0] / flow.frequencies[0]
        if any(ba[i] != alpha * flow.frequencies[i] for i in range(n)):
            raise NotASymmetry("B a is not proportional to a")
        return alpha
    # Formal: (B a)_i = alpha a_i in Q(g).  Cross-multiplied, these are
    # polynomial identities; alpha is then a constant (Q is algebraically
    # closed in Q(g)) and must be +-1.
    ba = [reduce(em.poly_add, (em.poly_scale(a, bij) for bij, a in zip(row, flow.frequencies)), ())
          for row in b]
    a = flow.frequencies
    for i in range(1, n):
        if em.poly_sub(em.poly_mul(ba[i], a[0]), em.poly_mul(ba[0], a[i])):
            raise NotASymmetry("B a is not proportional to a")
    alpha = _formal_ratio(ba[0], a[0])
    if alpha is None:
        raise NotASymmetry("ratio is a nonconstant function of the transcendental")
    return alpha


# ---------------------------------------------------------------------------
# the multiplier group
# ---------------------------------------------------------------------------

def _preserves_both_ways(lat: FLattice, x: FieldElement, x_inv: FieldElement) -> bool:
    return mul_preserves(lat, x) and mul_preserves(lat, x_inv)


class _PowerTracker:
    """eps^k modulo m R, where R = O[eps] and m R is contained in O.

    O is the coefficient ring of Lambda.  A unit of the maximal order lies in
    O iff it stabilizes Lambda, and then so does its inverse, so the search
    for the least k only needs membership of eps^k in O, which can be read
    off modulo m R with small integers.
    """

    def __init__(self, lat: FLattice, eps: FieldElement):
        field = lat.field
        n = field.degree
        self.ring = coefficient_ring(lat)
        obasis = self.ring.basis()
        powers = [eps ** j for j in range(n)]
        big = lattice_from_generators(field, [b * p for b in obasis for p in powers])
        rinv = em.inverse(big.basis_matrix)
        c = em.to_int_matrix(em.mat_mul(self.ring.basis_matrix, rinv))
        self.m = abs(em.det(c))
        self.step = em.to_int_matrix(em.mat_mul(em.mat_mul(big.basis_matrix, multiplication_matrix(eps)), rinv))
        self.sub = em.hnf_basis(list(c) + [[self.m * int(i == j) for j in range(n)] for i in range(n)])
        self.v = [x % self.m for x in em.to_int_matrix([em.vec_mat(field.one().coords, rinv)])[0]]

    def advance(self):
        m, n = self.m, len(self.v)
        self.v = [sum(self.v[i] * self.step[i][j] for i in range(n)) % m for j in range(n)]

    def in_ring(self) -> bool:
        k = []
        for j, row in enumerate(self.sub):
            s = self.v[j] - sum(k[i] * self.sub[i][j] for i in range(j))
            q, r = divmod(s, row[j])
            if r:
                return False
            k.append(q)
        return True


def minimal_exponent(lat: FLattice, eps: FieldElement, max_index: int) -> int:
    """Least k >= 1 with eps^k Lambda = Lambda (eps a unit)."""
    tracker = _PowerTracker(lat, eps)
    for k in range(1, max_index + 1):
        tracker.advance()
        if tracker.in_ring():
            g = eps ** k
            if not _preserves_both_ways(lat, g, g.inverse()):
                raise InternalInconsistency(f"eps^{k} is in the coefficient ring but does not stabilize Lambda")
            return k
    raise IndexBoundExceeded(f"no exponent <= {max_index} stabilizes the frequency lattice")


def multiplier_group(flow: Flow, units: UnitGroup | None = None,
                     max_index: int = DEFAULT_MAX_INDEX,
                     allow_subsearch: bool = True) -> MultiplierGroup:
    """Multiplier group of an algebraic flow as {+-1} x <eps_i^k_i>.

    For unit rank 1 the exponent k is exactly [o_F^* : M] (relative to the
    supplied generator if the unit was not computed).  For rank >= 2 the
    per-generator exponents only bound the index from above.
    """
    _require_algebraic(flow)
    if units is None:
        units = flow_unit_group(flow)
    lat = frequency_lattice(flow)
    rank = len(units.generators)
    if rank >= 2 and not allow_subsearch:
        raise RankUnsupported(f"unit rank {rank}: only per-generator sub-search is available")
    gens, exps = [], []
    for eps in units.generators:
        k = minimal_exponent(lat, eps, max_index)
        g = eps ** k
        gens.append(Multiplier(g, witness_matrix(flow, g)))
        exps.append(k)
    notes = []
    if rank == 1:
        index = exps[0]
        if not units.all_computed:
            notes.append("index is relative to the supplied unit, assumed fundamental")
    else:
        index = None
        notes.append(f"unit rank {rank}: per-generator search; index <= {prod(exps)} "
                     "relative to the supplied generators")
    return MultiplierGroup(flow, tuple(gens), tuple(exps), index, prod(exps), units, tuple(notes))


def flow_unit_group(flow: Flow) -> UnitGroup:
    _require_algebraic(flow)
    supplied = [flow.field.element(u) for u in flow.spec.supplied_units]
    return unit_group(flow.field, supplied or None)


# ---------------------------------------------------------------------------
# brute-force oracle
# ---------------------------------------------------------------------------

def brute_force_multipliers(flow: Flow, row_bound: int) -> list[Multiplier]:
    """All multipliers whose witness has first row in [-row_bound, row_bound]^n.

    Independent of the unit group and of the coefficient ring: every first
    row c defines alpha = (c . a) / a_1, and the remaining rows are forced.
    Output is ordered by first row.
    """
    n = flow.n
    out = []
    rows = itertools.product(range(-row_bound, row_bound + 1), repeat=n)
    if flow.model == ALGEBRAIC:
        # B(c) = sum_j c_j T_j with T_j = A M(a_j / a_1) A^{-1}
        a_mat = flow.spec.freq_coords
        ts = [em.mat_mul(em.mat_mul(a_mat, multiplication_matrix(s)), flow.coords_inverse)
              for s in flow.scaled]
        for c in rows:
            if not any(c):
                continue
            b = tuple(tuple(sum(cj * t[i][k] for cj, t in zip(c, ts)) for k in range(n))
                      for i in range(n))
            if not em.is_integral(b):
                continue
            b = em.to_int_matrix(b)
            if abs(em.det(b)) != 1:
                continue
            alpha = sum((cj * s for cj, s in zip(c, flow.scaled)), flow.field.zero())
            out.append(Multiplier(alpha, b))
        return out
    a = flow.frequencies
    for c in rows:
        num = reduce(em.poly_add, (em.poly_scale(aj, cj) for cj, aj in zip(c, a)), ())
        if not num:
            continue
        b = [tuple(c)]
        ok = True
        for i in range(1, n):
            # alpha a_i = num * a_i / a_1 must be a polynomial of degree < n
            q, r = em.poly_divmod(em.poly_mul(num, a[i]), a[0])
            if r or len(q) > n:
                ok = False
                break
            row = em.vec_mat(list(q) + [0] * (n - len(q)), flow.coords_inverse)
            if any(Fraction(x).denominator != 1 for x in row):
                ok = False
                break
            b.append(tuple(int(x) for x in row))
        if not ok or abs(em.det(b)) != 1:
            continue
        out.append(Multiplier(multiplier_of_matrix(flow, b), tuple(b)))
    return out


def exponent_in_group(alpha: FieldElement, g: FieldElement, max_exp: int = 256) -> tuple[int, int] | None:
    """(s, j) with alpha = s * g^j, s = +-1 and |j| <= max_exp, if any."""
    if alpha == 1:
        return 1, 0
    if alpha == -1:
        return -1, 0
    g_inv = g.inverse()
    up, down = g, g_inv
    for j in range(1, max_exp + 1):
        for s in (1, -1):
            if alpha == s * up:
                return s, j
            if alpha == s * down:
                return s, -j
        up, down = up * g, down * g_inv
    return None


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------

def structure_string(n: int, free_rank: int) -> str:
    if free_rank == 0:
        return f"T^{n} ⋊ Z_2"
    z = "Z" if free_rank == 1 else f"Z^{free_rank}"
    return f"T^{n} ⋊ (Z_2 × {z})"


def _checklist(group: MultiplierGroup) -> list[CheckItem]:
    n = group.flow.n
    items = []
    for m in group.generators:
        mp = minimal_polynomial(m.value)
        label = f"generator {format_element(m.value)}"
        items.append(CheckItem(f"{label}: irrational (M ∩ Q = {{1, -1}})", len(mp) - 1 > 1,
                               f"minimal polynomial degree {len(mp) - 1}"))
        items.append(CheckItem(f"{label}: algebraic integer of degree <= {n}",
                               mp[-1] == 1 and len(mp) - 1 <= n, f"minimal polynomial {mp}"))
        items.append(CheckItem(f"{label}: unit", is_algebraic_unit(m.value)))
        d = em.det(m.witness)
        items.append(CheckItem(f"{label}: witness determinant = norm = ±1",
                               d == norm(m.value) and abs(d) == 1, f"det {d}"))
        try:
            back = multiplier_of_matrix(group.flow, m.witness)
            items.append(CheckItem(f"{label}: witness round trip", back == m.value))
        except Exception as exc:  # reported, not raised
            items.append(CheckItem(f"{label}: witness round trip", False, str(exc)))
    return items


def classify(flow: Flow, units: UnitGroup | None = None,
             max_index: int = DEFAULT_MAX_INDEX) -> SymmetryReport:
    n = flow.n
    if flow.model == FORMAL:
        ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        neg = tuple(tuple(-x for x in r) for r in ident)
        items = [
            CheckItem("identity realizes multiplier 1", multiplier_of_matrix(flow, ident) == 1),
            CheckItem("-identity realizes multiplier -1", multiplier_of_matrix(flow, neg) == -1),
        ]
        found = sorted({m.value for m in brute_force_multipliers(flow, 1)})
        items.append(CheckItem("bounded search (first rows in [-1, 1]^n) finds only ±1",
                               found == [-1, 1], f"found {found}"))
        return SymmetryReport(
            "transcendental-formal", structure_string(n, 0), None, tuple(items),
            notes=("M = {1, -1}: B a = alpha a with formally independent frequencies forces B = ±I",))
    group = multiplier_group(flow, units, max_index)
    items = _checklist(group)
    ratio = None
    if n == 2:
        ratio = minimal_polynomial(flow.scaled[1])
        items.append(CheckItem("K = Q(d_2/d_1) is quadratic", len(ratio) - 1 == 2,
                               f"minimal polynomial of d_2/d_1: {ratio}"))
    structure = structure_string(n, group.rank)
    if len(group.generators) != len(group.exponents):
        raise InternalInconsistency("generator/exponent bookkeeping mismatch")
    return SymmetryReport("F-algebraic", structure, group, tuple(items), ratio, group.notes)
