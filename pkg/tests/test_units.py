from fractions import Fraction
from math import isqrt

import pytest
from qpmult import make_field, quadratic_fundamental_unit, unit_group, verify_supplied_unit
from qpmult.errors import (
    GeneratorsRequired,
    NotAUnit,
    NotSquarefree,
    OutOfRange,
    StepCapExceeded,
    TorsionOnly,
    WrongGeneratorCount,
)
from qpmult.numberfield import is_algebraic_unit, norm, sign
from qpmult.units import (
    COMPUTED,
    SUPPLIED,
    cf_period,
    is_squarefree,
    pell_brute_force,
    squarefree_decomposition,
)

SQUAREFREE = [d for d in range(2, 1001) if is_squarefree(d)]


def test_squarefree_helpers():
    assert is_squarefree(30) and not is_squarefree(12)
    assert squarefree_decomposition(12) == (2, 3)
    assert squarefree_decomposition(-20) == (2, -5)


@pytest.mark.parametrize("d,coords", [
    (2, (1, 1)), (3, (2, 1)), (5, (Fraction(1, 2), Fraction(1, 2))), (6, (5, 2)),
    (7, (8, 3)), (10, (3, 1)), (13, (Fraction(3, 2), Fraction(1, 2))), (61, (Fraction(39, 2), Fraction(5, 2))),
])
def test_known_fundamental_units(d, coords):
    assert quadratic_fundamental_unit(d).coords == coords


@pytest.mark.parametrize("d", [d for d in SQUAREFREE if d <= 50])
def test_matches_brute_force(d):
    eps = quadratic_fundamental_unit(d)
    assert eps.coords == pell_brute_force(d, 10 ** 4)


def test_d94_is_large():
    eps = quadratic_fundamental_unit(94)
    assert eps.coords == (2143295, 221064)
    assert pell_brute_force(94, 10 ** 4) is None  # beyond the oracle's reach


def test_unit_invariants_all_d_up_to_1000():
    for d in SQUAREFREE:
        _check_unit(d)


def _check_unit(d):
    eps = quadratic_fundamental_unit(d)
    assert is_algebraic_unit(eps)
    assert abs(norm(eps)) == 1
    assert sign(eps - 1) == 1
    u, v = eps.coords
    # maximal order membership
    assert (2 * u).denominator == 1 and (2 * v).denominator == 1
    if d % 4 != 1:
        assert u.denominator == v.denominator == 1


def test_cf_period_is_periodic_all_d_up_to_1000():
    for d in SQUAREFREE:
        _check_period(d)


def _check_period(d):
    start = (1, 2) if d % 4 == 1 else (0, 1)
    states, k = cf_period(d, *start)
    s = isqrt(d)
    p, q = states[-1]
    a = (p + s) // q
    p2 = a * q - p
    assert (p2, (d - p2 * p2) // q) == states[k]
    assert 0 <= k <= 1


def test_errors():
    with pytest.raises(OutOfRange):
        quadratic_fundamental_unit(1)
    with pytest.raises(OutOfRange):
        quadratic_fundamental_unit(-3)
    with pytest.raises(NotSquarefree):
        quadratic_fundamental_unit(12)
    with pytest.raises(StepCapExceeded):
        quadratic_fundamental_unit(94, step_cap=3)


def test_unit_group_quadratic(sqrt3):
    g = unit_group(sqrt3)
    assert g.generators[0].coords == (2, 1)
    assert g.provenance == (COMPUTED,) and g.all_computed


def test_unit_group_nonstandard_quadratic_polynomial():
    # z^2 - z - 1 defines Q(sqrt 5) with delta = golden ratio: the unit is delta itself
    f = make_field([-1, -1, 1], [1, 2])
    assert unit_group(f).generators[0].coords == (0, 1)
    # z^2 - 12 defines Q(sqrt 3): 2 + sqrt3 = 2 + delta/2
    f = make_field([-12, 0, 1], [3, 4])
    assert unit_group(f).generators[0].coords == (2, Fraction(1, 2))


def test_unit_group_cubic(cbrt2):
    with pytest.raises(GeneratorsRequired) as info:
        unit_group(cbrt2)
    assert info.value.required == 1
    g = unit_group(cbrt2, [cbrt2.gen() - 1])
    assert g.provenance == (SUPPLIED,) and not g.all_computed


def test_supplied_unit_validation(cbrt2, sqrt3):
    with pytest.raises(TorsionOnly):
        verify_supplied_unit(cbrt2, -cbrt2.one())
    with pytest.raises(NotAUnit):
        verify_supplied_unit(cbrt2, cbrt2.gen())
    with pytest.raises(NotAUnit):
        verify_supplied_unit(cbrt2, sqrt3.element([2, 1]))
    with pytest.raises(WrongGeneratorCount):
        unit_group(cbrt2, [cbrt2.gen() - 1, (cbrt2.gen() - 1) ** 2])
