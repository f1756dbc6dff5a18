"""Real number fields Q(delta) in the power basis {1, delta, ..., delta^(n-1)}."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from . import exactmath as em
from .errors import (
    DivisionByZero,
    FieldMismatch,
    InvalidField,
    IrreducibilityUndecided,
    NoRealRoot,
    NotIsolating,
    Reducible,
)

WITNESS_PRIMES = [p for p in range(2, 100) if all(p % q for q in range(2, int(p ** 0.5) + 1))]
QUADRATIC_TRIALS = 2_000_000
QUADRATIC_TRIALS_HIGH = 20_000


@dataclass(frozen=True, eq=False)
class NumberField:
    """Q(delta) for delta the unique root of ``min_poly`` in ``root_interval``.

    Build instances with :func:`make_field`, which validates them.
    ``irreducibility`` records how irreducibility was established.
    """

    min_poly: tuple[int, ...]
    root_interval: tuple[Fraction, Fraction]
    irreducibility: str = "unchecked"

    @property
    def degree(self) -> int:
        return len(self.min_poly) - 1

    def element(self, coords: Iterable) -> "FieldElement":
        c = tuple(Fraction(x) for x in coords)
        if len(c) != self.degree:
            raise ValueError(f"expected {self.degree} coordinates, got {len(c)}")
        return FieldElement(self, c)

    def from_rational(self, q) -> "FieldElement":
        return self.element([q] + [0] * (self.degree - 1))

    def zero(self) -> "FieldElement":
        return self.from_rational(0)

    def one(self) -> "FieldElement":
        return self.from_rational(1)

    def gen(self) -> "FieldElement":
        return self.element([0, 1] + [0] * (self.degree - 2))

    def basis(self) -> list["FieldElement"]:
        n = self.degree
        return [self.element([int(i == j) for j in range(n)]) for i in range(n)]

    def __eq__(self, other):
        if not isinstance(other, NumberField):
            return NotImplemented
        if self is other:
            return True
        if self.min_poly != other.min_poly:
            return False
        lo = max(self.root_interval[0], other.root_interval[0])
        hi = min(self.root_interval[1], other.root_interval[1])
        return lo < hi and em.sturm_real_root_count(self.min_poly, (lo, hi)) == 1

    def __hash__(self):
        return hash(self.min_poly)

    def __repr__(self):
        lo, hi = self.root_interval
        return f"NumberField({_poly_str(self.min_poly)}, [{lo}, {hi}])"


def _poly_str(p: Sequence, var: str = "z") -> str:
    terms = []
    for i in range(len(p) - 1, -1, -1):
        c = p[i]
        if c == 0:
            continue
        mono = "" if i == 0 else var if i == 1 else f"{var}^{i}"
        if mono and abs(c) == 1:
            s = mono
        else:
            s = f"{abs(c)}{'*' if mono else ''}{mono}"
        terms.append(("-" if c < 0 else "+", s))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, s in terms[1:]:
        out += f" {sign} {s}"
    return out


def poly_str(p: Sequence, var: str = "z") -> str:
    """Human-readable rendering of an ascending coefficient list."""
    return _poly_str(p, var)


# ---------------------------------------------------------------------------
# arithmetic on F_p[x] for the irreducibility witness search
# ---------------------------------------------------------------------------

def _fp(p: Iterable[int], m: int) -> tuple[int, ...]:
    return em.poly(x % m for x in p)


def _fp_divmod(a, b, m):
    a = list(a)
    inv = pow(b[-1], -1, m)
    db = len(b) - 1
    if len(a) <= db:
        return (), _fp(a, m)
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k] * inv % m
        if c:
            q[k - db] = c
            for j in range(db + 1):
                a[k - db + j] = (a[k - db + j] - c * b[j]) % m
    return _fp(q, m), _fp(a[:db], m)


def _fp_gcd(a, b, m):
    a, b = _fp(a, m), _fp(b, m)
    while b:
        a, b = b, _fp_divmod(a, b, m)[1]
    if a:
        inv = pow(a[-1], -1, m)
        a = tuple(x * inv % m for x in a)
    return a


def _fp_mulmod(a, b, f, m):
    return _fp_divmod(_fp(em.poly_mul(a, b), m), f, m)[1]


def _fp_powmod(a, e, f, m):
    result, base = (1,), _fp_divmod(a, f, m)[1]
    while e:
        if e & 1:
            result = _fp_mulmod(result, base, f, m)
        base = _fp_mulmod(base, base, f, m)
        e >>= 1
    return result


def _fp_degree_pattern(f, m) -> list[int] | None:
    """Degrees of the irreducible factors of f mod m (distinct-degree
    factorization), or None when f is not squarefree mod m."""
    f = _fp(f, m)
    if len(f) - 1 < 1 or f[-1] == 0:
        return None
    if len(_fp_gcd(f, _fp(em.poly_derivative(f), m), m)) > 1:
        return None
    degrees = []
    g = f
    h = (0, 1)
    d = 1
    while len(g) - 1 >= 2 * d:
        h = _fp_powmod(h, m, g, m)
        t = _fp_gcd(g, em.poly_sub(h, (0, 1)), m)
        if len(t) > 1:
            degrees += [d] * ((len(t) - 1) // d)
            g = _fp_divmod(g, t, m)[0]
            h = _fp_divmod(h, g, m)[1]
        d += 1
    if len(g) > 1:
        degrees.append(len(g) - 1)
    return degrees


def _subset_sums(degrees: list[int]) -> set[int]:
    sums = {0}
    for d in degrees:
        sums |= {s + d for s in sums}
    return sums


def _mod_p_witness(f: tuple[int, ...]) -> list[int] | None:
    """Primes whose factorization patterns jointly rule out every proper
    factor degree, or None when primes < 100 do not suffice."""
    n = len(f) - 1
    possible = set(range(1, n))
    used = []
    for p in WITNESS_PRIMES:
        pattern = _fp_degree_pattern(f, p)
        if pattern is None:
            continue
        before = set(possible)
        possible &= _subset_sums(pattern)
        if possible != before:
            used.append(p)
        if not possible:
            return used
    return None


def _quadratic_factor(f: tuple[int, ...], max_trials: int) -> tuple[tuple[int, int, int] | None, bool]:
    """Search monic integer quadratic factors z^2 + b z + c of monic ``f``.

    Roots are bounded by the Cauchy bound R, so |b| <= 2R and c | f(0).
    Returns (factor or None, complete); ``complete`` is False when the trial
    budget ran out before the search space was covered.
    """
    bound = 1 + max(abs(a) for a in f[:-1])
    trials = 0
    for cabs in em.divisors(f[0]):
        if cabs > bound * bound:
            break
        for c in (cabs, -cabs):
            for b in range(-2 * bound, 2 * bound + 1):
                trials += 1
                if trials > max_trials:
                    return None, False
                if not em.poly_divmod(f, (c, b, 1))[1]:
                    return (c, b, 1), True
    return None, True


def check_irreducible(f: Sequence[int]) -> str:
    """Decide irreducibility of a monic integer polynomial of degree >= 2.

    Returns a short note describing the evidence; raises Reducible or
    IrreducibilityUndecided.
    """
    f = em.poly(f)
    n = len(f) - 1
    roots = em.rational_roots(f)
    if roots:
        raise Reducible(f"{poly_str(f)} has rational root {roots[0]}")
    if n <= 3:
        return "rational-root test (complete for degree <= 3)"
    primes = _mod_p_witness(f)
    if primes is not None:
        return f"mod-p factorization patterns at p = {', '.join(map(str, primes))}"
    # beyond degree 5 a quadratic search cannot certify anything; keep it cheap
    q, complete = _quadratic_factor(f, QUADRATIC_TRIALS if n <= 5 else QUADRATIC_TRIALS_HIGH)
    if q is not None:
        raise Reducible(f"{poly_str(f)} is divisible by {poly_str(q)}")
    if n <= 5 and complete:
        return "no rational root and no quadratic factor (complete for degree <= 5)"
    why = "quadratic-factor search exceeded its budget" if n <= 5 else "no mod-p witness among primes < 100"
    raise IrreducibilityUndecided(f"cannot certify {poly_str(f)} irreducible: {why}")


def make_field(min_poly: Sequence[int], root_interval: Sequence) -> NumberField:
    """Validated real number field.

    >>> make_field([-3, 0, 1], [1, 2])
    NumberField(z^2 - 3, [1, 2])
    """
    f = em.poly(int(a) for a in min_poly)
    if len(f) - 1 < 2:
        raise InvalidField("minimal polynomial must have degree >= 2")
    if f[-1] != 1:
        raise InvalidField("minimal polynomial must be monic")
    if len(root_interval) != 2:
        raise InvalidField("root interval must have two endpoints")
    lo, hi = (Fraction(v) for v in root_interval)
    if lo >= hi:
        raise InvalidField("root interval must satisfy lo < hi")
    note = check_irreducible(f)
    if em.sturm_real_root_count(f) == 0:
        raise NoRealRoot(f"{poly_str(f)} has no real root")
    count = em.sturm_real_root_count(f, (lo, hi))
    if count != 1:
        raise NotIsolating(f"[{lo}, {hi}] contains {count} roots of {poly_str(f)}")
    return NumberField(f, (lo, hi), note)


class Signature(NamedTuple):
    r1: int
    r2: int
    unit_rank: int


def signature(field: NumberField) -> Signature:
    r1 = em.sturm_real_root_count(field.min_poly)
    r2 = (field.degree - r1) // 2
    return Signature(r1, r2, r1 + r2 - 1)


# ---------------------------------------------------------------------------
# elements
# ---------------------------------------------------------------------------

def _reduce(p: Sequence, f: Sequence[int]) -> list:
    """Reduce p modulo the monic polynomial f."""
    n = len(f) - 1
    r = list(p)
    for k in range(len(r) - 1, n - 1, -1):
        c = r[k]
        if c:
            for j in range(n):
                r[k - n + j] -= c * f[j]
            r[k] = 0
    r = r[:n]
    return r + [Fraction(0)] * (n - len(r))


@dataclass(frozen=True, eq=False)
class FieldElement:
    field: NumberField
    coords: tuple[Fraction, ...]

    def _check(self, other) -> "FieldElement":
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(other)
        if not isinstance(other, FieldElement):
            raise TypeError(f"cannot combine FieldElement with {type(other).__name__}")
        if other.field is not self.field and other.field != self.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
        return other

    def __add__(self, other):
        o = self._check(other)
        return FieldElement(self.field, tuple(a + b for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        o = self._check(other)
        prod = em.poly_mul(self.coords, o.coords) or (Fraction(0),)
        return FieldElement(self.field, tuple(Fraction(x) for x in _reduce(prod, self.field.min_poly)))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        g, s, _ = em.poly_xgcd(em.poly(self.coords), self.field.min_poly)
        if len(g) != 1:
            raise DivisionByZero("zero divisor: defining polynomial is reducible")
        coeffs = _reduce(s or (Fraction(0),), self.field.min_poly)
        return FieldElement(self.field, tuple(Fraction(x) for x in coeffs))

    def __truediv__(self, other):
        return self * self._check(other).inverse()

    def __rtruediv__(self, other):
        return self._check(other) * self.inverse()

    def __pow__(self, e: int):
        base = self if e >= 0 else self.inverse()
        e = abs(e)
        result = self.field.one()
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coords[0] == other
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.field == other.field and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def sign(self) -> int:
        return sign(self)

    def __repr__(self):
        return f"FieldElement({format_element(self)})"


def format_element(x: FieldElement, var: str = "d") -> str:
    terms = []
    for i, c in enumerate(x.coords):
        if c == 0:
            continue
        mono = "" if i == 0 else var if i == 1 else f"{var}^{i}"
        if mono and abs(c) == 1:
            s = mono
        else:
            s = f"{abs(c)}{'*' if mono else ''}{mono}"
        terms.append(("-" if c < 0 else "+", s))
    if not terms:
        return "0"
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sg, s in terms[1:]:
        out += f" {sg} {s}"
    return out


def multiplication_matrix(x: FieldElement) -> tuple:
    """Row i holds the coordinates of x * delta^i."""
    rows = []
    cur = x
    d = x.field.gen()
    for _ in range(x.field.degree):
        rows.append(cur.coords)
        cur = cur * d
    return tuple(rows)


def minimal_polynomial(x: FieldElement) -> tuple[int, ...]:
    return em.minimal_polynomial_of_matrix(multiplication_matrix(x))


def norm(x: FieldElement) -> Fraction:
    return Fraction(em.det(multiplication_matrix(x)))


def is_algebraic_unit(x: FieldElement) -> bool:
    if x.is_zero():
        return False
    m = minimal_polynomial(x)
    return m[-1] == 1 and abs(m[0]) == 1


def evaluate_poly(p: Sequence, x: FieldElement) -> FieldElement:
    acc = x.field.zero()
    for c in reversed(p):
        acc = acc * x + Fraction(c)
    return acc


# ---------------------------------------------------------------------------
# real embedding
# ---------------------------------------------------------------------------

def _bisect(field: NumberField, lo: Fraction, hi: Fraction, steps: int):
    f = field.min_poly
    s_lo = em._sign(em.poly_eval(f, lo))
    for _ in range(steps):
        mid = (lo + hi) / 2
        s_mid = em._sign(em.poly_eval(f, mid))
        if s_mid == 0:
            return mid, mid
        if s_mid == s_lo:
            lo = mid
        else:
            hi = mid
    return lo, hi


def _imul(a, b):
    p = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return min(p), max(p)


def _enclose(x: FieldElement, lo: Fraction, hi: Fraction):
    acc = (Fraction(0), Fraction(0))
    for c in reversed(x.coords):
        acc = _imul(acc, (lo, hi))
        acc = (acc[0] + c, acc[1] + c)
    return acc


def approximate(x: FieldElement, width) -> tuple[Fraction, Fraction]:
    """Rational interval of width <= ``width`` containing x under the embedding
    selected by the field's root interval."""
    width = Fraction(width)
    if width <= 0:
        raise ValueError("width must be positive")
    if x.is_rational():
        return x.coords[0], x.coords[0]
    lo, hi = x.field.root_interval
    while True:
        a, b = _enclose(x, lo, hi)
        if b - a <= width:
            return a, b
        lo, hi = _bisect(x.field, lo, hi, 8)


def sign(x: FieldElement) -> int:
    if x.is_rational():
        return em._sign(x.coords[0])
    lo, hi = x.field.root_interval
    while True:
        a, b = _enclose(x, lo, hi)
        if a > 0:
            return 1
        if b < 0:
            return -1
        lo, hi = _bisect(x.field, lo, hi, 8)


def to_float(x: FieldElement) -> float:
    """Decimal approximation for display only."""
    a, b = approximate(x, Fraction(1, 10 ** 18))
    return float((a + b) / 2)
