"""Regression table of the worked examples this library reproduces.

Each claim is a named zero-argument check returning ``(passed, observed)``.
``verify-paper`` runs them all; so does the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import exactmath as em
from .conjugacy import (
    conjugacy_witness,
    scale_equivalence,
    semiconjugacy_report,
    semiconjugacy_witness,
)
from .errors import NotConjugate
from .flowfile import example_path, load_flow
from .lattice import contains, lattice_from_generators, mul_preserves
from .multiplier import (
    FlowSpec,
    brute_force_multipliers,
    classify,
    frequency_lattice,
    multiplier_group,
    multiplier_of_matrix,
    validate_flow,
    witness_matrix,
)
from .numberfield import is_algebraic_unit, make_field, signature
from .units import quadratic_fundamental_unit, unit_group, verify_supplied_unit


@dataclass(frozen=True)
class Claim:
    key: str
    topic: str
    text: str
    check: Callable[[], tuple[bool, str]]


def _sqrt3():
    return make_field([-3, 0, 1], [1, 2])


def _cbrt2():
    return make_field([-2, 0, 0, 1], [Fraction(5, 4), Fraction(4, 3)])


def _flow(name):
    return validate_flow(load_flow(example_path(name)))


def _eq(observed, expected) -> tuple[bool, str]:
    return observed == expected, repr(observed)


def _cubic_flow():
    return _flow("ex_cubic.flow")


def _cubic_unit():
    f = _cbrt2()
    return (f.gen() - 1) ** 3


def _phi():
    return _flow("ex_sqrt3_phi.flow")


def _psi():
    return _flow("ex_sqrt3_psi.flow")


def _gen(flow):
    g = multiplier_group(flow)
    return g.index, g.generators[0].value.coords, g.generators[0].witness


def _not_conjugate():
    try:
        conjugacy_witness(_phi(), _psi())
    except NotConjugate as exc:
        return True, str(exc)
    return False, "conjugate"


def _brute_15():
    flow = validate_flow(FlowSpec.algebraic(_sqrt3(), [[1, 0], [0, 15]]))
    vals = {m.value.coords for m in brute_force_multipliers(flow, 30)}
    ok = (Fraction(26), Fraction(15)) in vals and (Fraction(26), Fraction(-15)) in vals
    return ok, f"{len(vals)} multipliers"


def _formal_report():
    r = classify(_flow("ex_formal.flow"))
    return (r.classification, r.structure, r.passed) == ("transcendental-formal", "T^3 ⋊ Z_2", True), \
        f"{r.classification}, {r.structure}"


def _power_basis_cubic():
    f = _cbrt2()
    flow = validate_flow(FlowSpec.algebraic(f, em.identity(3), [[-1, 1, 0]]))
    r = classify(flow)
    return (r.group.index, r.structure) == (1, "T^3 ⋊ (Z_2 × Z)"), f"index {r.group.index}, {r.structure}"


def _classify_phi():
    r = classify(_phi())
    return (r.classification, r.ratio_min_poly, r.structure) == ("F-algebraic", (-48, 0, 1), "T^2 ⋊ (Z_2 × Z)"), \
        f"{r.classification}, K min poly {r.ratio_min_poly}, {r.structure}"


def _noncontainment():
    rep = semiconjugacy_report(_phi(), _psi())
    return (rep.b_in_a, rep.a_in_b) == (False, False), f"psi in phi: {rep.b_in_a}, phi in psi: {rep.a_in_b}"


CLAIMS: list[Claim] = [
    Claim("roots.cubic", "fields", "z^3 - 2 has exactly one real root",
          lambda: _eq(em.sturm_real_root_count((-2, 0, 0, 1)), 1)),
    Claim("field.sqrt3", "fields", "(z^2 - 3, [1, 2]) defines Q(sqrt 3)",
          lambda: _eq(_sqrt3().min_poly, (-3, 0, 1))),
    Claim("field.cbrt2", "fields", "(z^3 - 2, [5/4, 4/3]) defines Q(2^(1/3))",
          lambda: _eq(_cbrt2().min_poly, (-2, 0, 0, 1))),
    Claim("arith.cube", "fields", "(-1 + d)^3 = 1 + 3d - 3d^2 in Q(2^(1/3))",
          lambda: _eq(_cubic_unit().coords, (1, 3, -3))),
    Claim("unit.2+sqrt3", "fields", "2 + sqrt 3 is a unit",
          lambda: _eq(is_algebraic_unit(2 + _sqrt3().gen()), True)),
    Claim("unit.cubic", "fields", "-1 + 2^(1/3) is a unit",
          lambda: _eq(is_algebraic_unit(_cbrt2().gen() - 1), True)),
    Claim("signature.cubic", "fields", "Q(2^(1/3)) has (r1, r2, rank) = (1, 1, 1)",
          lambda: _eq(tuple(signature(_cbrt2())), (1, 1, 1))),
    Claim("signature.sqrt3", "fields", "Q(sqrt 3) has (r1, r2, rank) = (2, 0, 1)",
          lambda: _eq(tuple(signature(_sqrt3())), (2, 0, 1))),
    Claim("lattice.phi", "lattices", "frequencies (1, 4 sqrt 3) span Z + Z 4 sqrt 3",
          lambda: _eq(frequency_lattice(_phi()).hnf, ((1, 0), (0, 4)))),
    Claim("lattice.cubic", "lattices", "frequencies (1, 3d, -3d^2) span Z + Z 3d + Z 3d^2",
          lambda: _eq(frequency_lattice(_cubic_flow()).hnf, ((1, 0, 0), (0, 3, 0), (0, 0, 3)))),
    Claim("lattice.contains", "lattices", "7 + 4 sqrt 3 has coordinates (7, 1) in Z + Z 4 sqrt 3",
          lambda: _eq(contains(frequency_lattice(_phi()), _sqrt3().element([7, 4])), (7, 1))),
    Claim("lattice.not_contains", "lattices", "2 + sqrt 3 is not a multiplier of phi",
          lambda: _eq(mul_preserves(frequency_lattice(_phi()), _sqrt3().element([2, 1])), False)),
    Claim("units.d3", "units", "fundamental unit of Q(sqrt 3) is 2 + sqrt 3",
          lambda: _eq(quadratic_fundamental_unit(3).coords, (2, 1))),
    Claim("units.d2", "units", "fundamental unit of Q(sqrt 2) is 1 + sqrt 2",
          lambda: _eq(quadratic_fundamental_unit(2).coords, (1, 1))),
    Claim("units.d5", "units", "fundamental unit of Q(sqrt 5) is (1 + sqrt 5)/2",
          lambda: _eq(quadratic_fundamental_unit(5).coords, (Fraction(1, 2), Fraction(1, 2)))),
    Claim("units.group.sqrt3", "units", "unit group of Q(sqrt 3) is generated by 2 + sqrt 3",
          lambda: _eq(unit_group(_sqrt3()).generators[0].coords, (2, 1))),
    Claim("units.supplied.cubic", "units", "-1 + 2^(1/3) is accepted as a supplied unit",
          lambda: _eq(verify_supplied_unit(_cbrt2(), _cbrt2().gen() - 1).coords, (-1, 1, 0))),
    Claim("mult.cubic", "multipliers", "cubic flow: index 3, generator 1 + 3d - 3d^2, witness [[1,1,1],[-18,1,-3],[-18,6,1]]",
          lambda: _eq(_gen(_cubic_flow()), (3, (1, 3, -3), ((1, 1, 1), (-18, 1, -3), (-18, 6, 1))))),
    Claim("mult.phi", "multipliers", "phi: index 2, generator 7 + 4 sqrt 3, witness [[7,1],[48,7]]",
          lambda: _eq(_gen(_phi()), (2, (7, 4), ((7, 1), (48, 7))))),
    Claim("mult.psi", "multipliers", "psi: index 3, generator 26 + 15 sqrt 3, witness [[26,1],[675,26]]",
          lambda: _eq(_gen(_psi()), (3, (26, 15), ((26, 1), (675, 26))))),
    Claim("mult.zbasis", "multipliers", "Z-basis flow (1, sqrt 3): index 1, generator 2 + sqrt 3",
          lambda: _eq(_gen(_flow("ex_sqrt3_basis.flow"))[:2], (1, (2, 1)))),
    Claim("mult.of_matrix", "multipliers", "[[7,1],[48,7]] realizes 7 + 4 sqrt 3 on phi",
          lambda: _eq(multiplier_of_matrix(_phi(), [[7, 1], [48, 7]]).coords, (7, 4))),
    Claim("mult.witness_psi", "multipliers", "witness of 26 + 15 sqrt 3 on (1, 15 sqrt 3) is [[26,1],[675,26]]",
          lambda: _eq(witness_matrix(validate_flow(FlowSpec.algebraic(_sqrt3(), [[1, 0], [0, 15]])),
                                     _sqrt3().element([26, 15])), ((26, 1), (675, 26)))),
    Claim("oracle.psi", "multipliers", "brute force on (1, 15 sqrt 3), bound 30, finds 26 +- 15 sqrt 3", _brute_15),
    Claim("classify.phi", "multipliers", "phi is F-algebraic, K = Q(4 sqrt 3) has min poly z^2 - 48", _classify_phi),
    Claim("classify.formal", "multipliers", "formal (1, g, g^2): M = {1, -1}, structure T^3 ⋊ Z_2", _formal_report),
    Claim("classify.power_cubic", "multipliers", "power-basis cubic flow: index 1, structure T^3 ⋊ (Z_2 × Z)",
          _power_basis_cubic),
    Claim("conj.scale", "conjugacy", "(4, 60 sqrt 3) = 4 (1, 15 sqrt 3): scale factor 1/4",
          lambda: _eq(scale_equivalence(_psi(), validate_flow(FlowSpec.algebraic(_sqrt3(), [[1, 0], [0, 15]])))
                      .scale_factor.coords, (Fraction(1, 4), 0))),
    Claim("conj.semiconj", "conjugacy", "phi -> psi is semiconjugate via diag(4, 15)",
          lambda: _eq(semiconjugacy_witness(_phi(), _psi()).matrix, ((4, 0), (0, 15)))),
    Claim("conj.not_conj", "conjugacy", "phi and psi are not conjugate (det 60)", _not_conjugate),
    Claim("conj.noncontainment", "conjugacy", "M_psi ⊄ M_phi and M_phi ⊄ M_psi", _noncontainment),
]


def run_claims() -> list[tuple[Claim, bool, str]]:
    results = []
    for c in CLAIMS:
        try:
            ok, observed = c.check()
        except Exception as exc:  # a crash is a failed claim, never an abort
            ok, observed = False, f"{type(exc).__name__}: {exc}"
        results.append((c, bool(ok), observed))
    return results
