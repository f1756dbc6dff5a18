from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from qpmult import make_field, signature
from qpmult.errors import (
    DivisionByZero,
    FieldMismatch,
    InvalidField,
    IrreducibilityUndecided,
    NoRealRoot,
    NotIsolating,
    Reducible,
)
from qpmult.numberfield import (
    approximate,
    check_irreducible,
    evaluate_poly,
    format_element,
    is_algebraic_unit,
    minimal_polynomial,
    multiplication_matrix,
    norm,
    sign,
    to_float,
)

FIELDS = {
    "sqrt3": ([-3, 0, 1], [1, 2]),
    "cbrt2": ([-2, 0, 0, 1], [Fraction(5, 4), Fraction(4, 3)]),
    "quartic": ([-2, 0, -2, 0, 1], [1, 2]),  # x^4 - 2x^2 - 2, Eisenstein at 2
}

rats = st.fractions(min_value=-20, max_value=20, max_denominator=6)


def elements(name):
    f = make_field(*FIELDS[name])
    return st.lists(rats, min_size=f.degree, max_size=f.degree).map(f.element)


any_field = st.sampled_from(sorted(FIELDS))


def sym_value(x):
    """Exact sympy value of an element, from the real root in the field's interval."""
    z = sympy.Symbol("z")
    f = x.field
    poly = sympy.Poly(list(reversed(f.min_poly)), z)
    root = next(r for r in sympy.real_roots(poly)
                if f.root_interval[0] < r < f.root_interval[1])
    return sum(sympy.Rational(c.numerator, c.denominator) * root ** i for i, c in enumerate(x.coords))


def sym_poly(x, z):
    return sympy.Poly(list(reversed([sympy.Rational(c.numerator, c.denominator) for c in x.coords])), z, domain="QQ")


# --- construction --------------------------------------------------------

def test_field_basics(sqrt3, cbrt2):
    assert sqrt3.degree == 2 and cbrt2.degree == 3
    assert sqrt3.gen() ** 2 == 3
    assert cbrt2.gen() ** 3 == 2
    assert "rational-root" in sqrt3.irreducibility


@pytest.mark.parametrize("poly,interval,exc", [
    ([-4, 0, 1], [1, 3], Reducible),
    ([2, -3, 1], [0, 3], Reducible),
    ([1, 0, 1], [0, 1], NoRealRoot),
    ([-3, 0, 1], [-2, 2], NotIsolating),
    ([-3, 0, 1], [2, 3], NotIsolating),
    ([-3, 0, 2], [1, 2], InvalidField),
    ([-3, 1], [1, 4], InvalidField),
    ([-3, 0, 1], [2, 1], InvalidField),
    ([1, 0, 2, 0, 1], [0, 1], Reducible),  # (x^2 + 1)^2
])
def test_field_rejections(poly, interval, exc):
    with pytest.raises(exc):
        make_field(poly, interval)


def test_quartic_with_quadratic_factors():
    # (x^2 - 2)(x^2 - 3) has no rational root but factors
    with pytest.raises(Reducible):
        check_irreducible([6, 0, -5, 0, 1])
    # x^4 + 1 is irreducible over Q but reducible mod every prime
    assert "complete for degree <= 5" in check_irreducible([1, 0, 0, 0, 1])


def test_high_degree_irreducibility():
    # (x^2-2)(x^2-3)(x^2-5): reducible mod every prime, but a quadratic factor is found
    f = sympy.Poly(sympy.expand(sympy.prod([sympy.Symbol("x") ** 2 - k for k in (2, 3, 5)])))
    coeffs = [int(c) for c in reversed(f.all_coeffs())]
    with pytest.raises(Reducible):
        check_irreducible(coeffs)
    # minimal polynomial of sqrt2 + sqrt3 + sqrt5: irreducible, reducible mod every prime
    sd = [576, 0, -960, 0, 352, 0, -40, 0, 1]
    with pytest.raises(IrreducibilityUndecided):
        check_irreducible(sd)


def test_field_equality_is_by_root(sqrt3):
    assert make_field([-3, 0, 1], [Fraction(3, 2), 2]) == sqrt3
    assert make_field([-3, 0, 1], [-2, -1]) != sqrt3


def test_signature():
    assert tuple(signature(make_field(*FIELDS["sqrt3"]))) == (2, 0, 1)
    assert tuple(signature(make_field(*FIELDS["cbrt2"]))) == (1, 1, 1)
    assert tuple(signature(make_field(*FIELDS["quartic"]))) == (2, 1, 2)


# --- arithmetic ----------------------------------------------------------

@given(st.data(), any_field)
def test_field_axioms(data, name):
    x, y, z = (data.draw(elements(name)) for _ in range(3))
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    assert x - x == 0
    if not x.is_zero():
        assert x * x.inverse() == 1
        assert (y / x) * x == y
        assert x ** -2 == (x * x).inverse()


@given(st.data(), any_field)
def test_arithmetic_matches_sympy(data, name):
    x, y = data.draw(elements(name)), data.draw(elements(name))
    z = sympy.Symbol("z")
    f = sympy.Poly(list(reversed(x.field.min_poly)), z)
    expected = sympy.rem(sym_poly(x, z) * sym_poly(y, z), f)
    assert sym_poly(x * y, z) == expected


def test_zero_inverse(sqrt3):
    with pytest.raises(DivisionByZero):
        sqrt3.zero().inverse()
    with pytest.raises(ZeroDivisionError):
        sqrt3.one() / 0


def test_mixing_fields(sqrt3, cbrt2):
    with pytest.raises(FieldMismatch):
        sqrt3.gen() + make_field([-2, 0, 1], [1, 2]).gen()


def test_cube_of_cubic_unit(cbrt2):
    u = cbrt2.gen() - 1
    assert (u ** 3).coords == (1, 3, -3)
    assert format_element(u ** 3) == "1 + 3*d - 3*d^2"


# --- invariants ----------------------------------------------------------

@given(st.data(), any_field)
def test_minimal_polynomial_matches_sympy(data, name):
    x = data.draw(elements(name))
    mp = minimal_polynomial(x)
    assert evaluate_poly(mp, x).is_zero()
    z = sympy.Symbol("z")
    expected = sympy.Poly(sympy.minimal_polynomial(sym_value(x), z), z)
    got = sympy.Poly(list(reversed(mp)), z)
    assert got == expected or got == -expected


def test_minimal_polynomial_of_cubic_multiplier(cbrt2):
    # the multiplier generator of the cubic example
    assert minimal_polynomial(cbrt2.element([1, 3, -3])) == (-1, 57, -3, 1)


@given(st.data(), any_field)
def test_norm_multiplicative(data, name):
    x, y = data.draw(elements(name)), data.draw(elements(name))
    assert norm(x * y) == norm(x) * norm(y)


@given(st.data(), any_field)
def test_norm_matches_sympy(data, name):
    x = data.draw(elements(name))
    z = sympy.Symbol("z")
    f = sympy.Poly(list(reversed(x.field.min_poly)), z)
    g = sym_poly(x, z)
    # N(g(delta)) = resultant(f, g) for monic f
    assert norm(x) == sympy.resultant(f, g)


def test_multiplication_matrix_rows(sqrt3):
    x = sqrt3.element([2, 1])
    assert multiplication_matrix(x) == ((2, 1), (3, 2))


def test_units(sqrt3, cbrt2):
    assert is_algebraic_unit(sqrt3.element([2, 1]))
    assert not is_algebraic_unit(sqrt3.element([1, 1]))
    assert not is_algebraic_unit(sqrt3.element([Fraction(1, 2), Fraction(1, 2)]))
    assert is_algebraic_unit(cbrt2.gen() - 1)
    assert not is_algebraic_unit(sqrt3.zero())


@given(st.data(), any_field)
def test_sign_and_approximation(data, name):
    x = data.draw(elements(name))
    exact = sym_value(x)
    assert sign(x) == int(sympy.sign(exact))
    lo, hi = approximate(x, Fraction(1, 10 ** 12))
    assert lo <= exact <= hi and hi - lo <= Fraction(1, 10 ** 12)
    assert abs(to_float(x) - float(exact)) <= 1e-9 * max(1, abs(float(exact)))


def test_exhausted_quadratic_search_is_not_a_certificate(monkeypatch):
    import qpmult.numberfield as nf
    monkeypatch.setattr(nf, "QUADRATIC_TRIALS", 1)
    with pytest.raises(IrreducibilityUndecided):
        check_irreducible([1, 0, 0, 0, 1])
