"""Exact integer/rational polynomial and matrix routines.

Polynomials are tuples of coefficients in ascending degree with no trailing
zeros (the zero polynomial is ``()``).  Coefficients are ``int`` or
``fractions.Fraction``.  Matrices are tuples of row tuples.  Nothing in this
module touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import EndpointIsRoot, RankDeficient, ZeroPolynomial

Poly = tuple
Matrix = tuple


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------

def poly(coeffs: Iterable) -> Poly:
    """Normalize a coefficient sequence: strip trailing zeros."""
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def degree(p: Poly) -> int:
    return len(p) - 1


def poly_add(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return poly((p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n))


def poly_sub(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return poly((p[i] if i < len(p) else 0) - (q[i] if i < len(q) else 0) for i in range(n))


def poly_scale(p: Poly, c) -> Poly:
    return poly(a * c for a in p)


def poly_mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return poly(out)


def poly_divmod(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    """Division with remainder over Q."""
    if not q:
        raise ZeroPolynomial("division by the zero polynomial")
    r = [Fraction(a) for a in p]
    dq = len(q) - 1
    lead = Fraction(q[-1])
    if len(r) <= dq:
        return (), poly(r)
    quot = [Fraction(0)] * (len(r) - dq)
    for k in range(len(r) - 1, dq - 1, -1):
        c = r[k] / lead
        if c:
            quot[k - dq] = c
            for j in range(dq + 1):
                r[k - dq + j] -= c * q[j]
    return poly(quot), poly(r[:dq])


def poly_rem(p: Poly, q: Poly) -> Poly:
    return poly_divmod(p, q)[1]


def poly_monic(p: Poly) -> Poly:
    if not p:
        return p
    lead = Fraction(p[-1])
    return tuple(Fraction(a) / lead for a in p)


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Monic gcd over Q."""
    a, b = poly(p), poly(q)
    while b:
        a, b = b, poly_rem(a, b)
    return poly_monic(a)


def poly_xgcd(p: Poly, q: Poly) -> tuple[Poly, Poly, Poly]:
    """Return (g, s, t) with s*p + t*q = g, g monic gcd over Q."""
    r0, r1 = poly(p), poly(q)
    s0, s1 = (Fraction(1),), ()
    t0, t1 = (), (Fraction(1),)
    while r1:
        quo, rem = poly_divmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, poly_sub(s0, poly_mul(quo, s1))
        t0, t1 = t1, poly_sub(t0, poly_mul(quo, t1))
    if not r0:
        return (), s0, t0
    lead = Fraction(r0[-1])
    return poly_scale(r0, 1 / lead), poly_scale(s0, 1 / lead), poly_scale(t0, 1 / lead)


def poly_lcm(p: Poly, q: Poly) -> Poly:
    g = poly_gcd(p, q)
    return poly_monic(poly_divmod(poly_mul(p, q), g)[0])


def poly_derivative(p: Poly) -> Poly:
    return poly(i * p[i] for i in range(1, len(p)))


def poly_eval(p: Poly, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def primitive_part(p: Poly) -> Poly:
    """Integer polynomial with content 1 and positive leading coefficient,
    proportional to ``p`` (whose coefficients may be rational)."""
    p = poly(p)
    if not p:
        return ()
    fr = [Fraction(a) for a in p]
    den = reduce(lcm, (a.denominator for a in fr), 1)
    ints = [int(a * den) for a in fr]
    cont = reduce(gcd, ints, 0)
    if ints[-1] < 0:
        cont = -cont
    return tuple(a // cont for a in ints)


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def sturm_sequence(p: Poly) -> list[Poly]:
    p = poly(p)
    if not p:
        raise ZeroPolynomial("Sturm sequence of the zero polynomial")
    seq = [tuple(Fraction(a) for a in p)]
    d = poly_derivative(seq[0])
    if not d:
        return seq
    seq.append(d)
    while True:
        r = poly_rem(seq[-2], seq[-1])
        if not r:
            return seq
        seq.append(poly_scale(r, -1))


def _variations(signs: Iterable[int]) -> int:
    nz = [s for s in signs if s]
    return sum(1 for a, b in zip(nz, nz[1:]) if a != b)


def _variations_at(seq: list[Poly], x) -> int:
    return _variations(_sign(poly_eval(q, x)) for q in seq)


def _variations_at_infinity(seq: list[Poly], positive: bool) -> int:
    def s(q):
        lead = _sign(q[-1])
        return lead if positive or degree(q) % 2 == 0 else -lead
    return _variations(s(q) for q in seq)


def sturm_real_root_count(p: Poly, interval: tuple | None = None) -> int:
    """Number of distinct real roots of ``p``, optionally inside ``[lo, hi]``."""
    p = poly(p)
    if not p:
        raise ZeroPolynomial("cannot count roots of the zero polynomial")
    seq = sturm_sequence(p)
    if interval is None:
        return _variations_at_infinity(seq, False) - _variations_at_infinity(seq, True)
    lo, hi = (Fraction(v) for v in interval)
    if lo > hi:
        lo, hi = hi, lo
    for end in (lo, hi):
        if poly_eval(p, end) == 0:
            raise EndpointIsRoot(f"interval endpoint {end} is a root")
    return _variations_at(seq, lo) - _variations_at(seq, hi)


def divisors(n: int) -> list[int]:
    """Positive divisors of a nonzero integer, by trial division."""
    n = abs(n)
    if n == 0:
        raise ValueError("0 has infinitely many divisors")
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_roots(p: Poly) -> list[Fraction]:
    """All rational roots of ``p`` (sorted, without multiplicity)."""
    p = primitive_part(p)
    if not p:
        raise ZeroPolynomial("the zero polynomial has every number as a root")
    roots = set()
    k = 0
    while p[k] == 0:
        k += 1
    if k:
        roots.add(Fraction(0))
        p = p[k:]
    if len(p) > 1:
        for num in divisors(p[0]):
            for den in divisors(p[-1]):
                for cand in (Fraction(num, den), Fraction(-num, den)):
                    if cand not in roots and poly_eval(p, cand) == 0:
                        roots.add(cand)
    return sorted(roots)


# ---------------------------------------------------------------------------
# matrices over Q
# ---------------------------------------------------------------------------

def as_matrix(rows: Iterable[Iterable], kind=Fraction) -> Matrix:
    return tuple(tuple(kind(x) for x in r) for r in rows)


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(m: Sequence[Sequence]) -> Matrix:
    return tuple(zip(*m))


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def vec_mat(v: Sequence, m: Sequence[Sequence]) -> tuple:
    return tuple(sum(v[i] * m[i][j] for i in range(len(v))) for j in range(len(m[0])))


def det(m: Sequence[Sequence]):
    """Determinant by fraction-free Bareiss elimination."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(r) for r in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                v = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = v // prev if isinstance(v, int) and isinstance(prev, int) else v / prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rank(m: Sequence[Sequence]) -> int:
    a = [[Fraction(x) for x in r] for r in m]
    if not a:
        return 0
    rows, cols = len(a), len(a[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, rows):
            f = a[i][c] / a[r][c]
            if f:
                for j in range(c, cols):
                    a[i][j] -= f * a[r][j]
        r += 1
        if r == rows:
            break
    return r


def inverse(m: Sequence[Sequence]) -> Matrix:
    """Inverse over Q; raises RankDeficient for singular input."""
    n = len(m)
    a = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)]
         for i, r in enumerate(m)]
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            raise RankDeficient("matrix is singular")
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return tuple(tuple(r[n:]) for r in a)


def is_integral(m: Sequence[Sequence]) -> bool:
    return all(Fraction(x).denominator == 1 for r in m for x in r)


def to_int_matrix(m: Sequence[Sequence]) -> Matrix:
    return tuple(tuple(int(x) for x in r) for r in m)


# ---------------------------------------------------------------------------
# Hermite normal form
# ---------------------------------------------------------------------------

def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


def _hnf(rows: Sequence[Sequence[int]]):
    """Row-style HNF of an arbitrary integer matrix.

    Returns (H, U, r): H = U*M with the r nonzero rows on top, U unimodular.
    """
    a = [list(map(int, r)) for r in rows]
    m = len(a)
    k = len(a[0]) if m else 0
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    r = 0
    for c in range(k):
        if r == m:
            break
        for i in range(r + 1, m):
            b = a[i][c]
            if b == 0:
                continue
            p = a[r][c]
            g, s, t = xgcd(p, b)
            pg, bg = p // g, b // g
            for mat in (a, u):
                ro, ri = mat[r], mat[i]
                mat[r] = [s * x + t * y for x, y in zip(ro, ri)]
                mat[i] = [-bg * x + pg * y for x, y in zip(ro, ri)]
        piv = a[r][c]
        if piv == 0:
            continue
        if piv < 0:
            a[r] = [-x for x in a[r]]
            u[r] = [-x for x in u[r]]
            piv = -piv
        for i in range(r):
            q = a[i][c] // piv
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                u[i] = [x - q * y for x, y in zip(u[i], u[r])]
        r += 1
    return tuple(map(tuple, a)), tuple(map(tuple, u)), r


def hermite_normal_form(m: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix]:
    """Row-style HNF of a full-row-rank integer matrix: returns (H, U), H = U*M.

    H is upper triangular (echelon), pivots positive, entries above each pivot
    reduced into [0, pivot).
    """
    h, u, r = _hnf(m)
    if r < len(m):
        raise RankDeficient(f"rows span a rank-{r} module, expected {len(m)}")
    return h, u


def hnf_basis(rows: Sequence[Sequence[int]]) -> Matrix:
    """Canonical HNF basis (nonzero rows only) of the Z-span of ``rows``."""
    h, _, r = _hnf(rows)
    return h[:r]


# ---------------------------------------------------------------------------
# minimal polynomial of a matrix
# ---------------------------------------------------------------------------

def _krylov_annihilator(v: Sequence[Fraction], m: Matrix) -> Poly:
    """Monic minimal polynomial of M relative to the row vector v (v*p(M) = 0)."""
    n = len(v)
    pivots: list[tuple[int, list[Fraction], Poly]] = []  # (pivot col, row, poly)
    w = list(v)
    k = 0
    while True:
        vec = list(w)
        combo: Poly = (0,) * k + (Fraction(1),)
        for col, row, pc in pivots:
            f = vec[col]
            if f:
                vec = [x - f * y for x, y in zip(vec, row)]
                combo = poly_sub(combo, poly_scale(pc, f))
        lead = next((j for j in range(n) if vec[j] != 0), None)
        if lead is None:
            return poly_monic(combo)
        f = vec[lead]
        row = [x / f for x in vec]
        pc = poly_scale(combo, 1 / f)
        # keep earlier rows reduced in the new pivot column
        pivots = [(c, [x - r[lead] * y for x, y in zip(r, row)] if r[lead] else r,
                   poly_sub(p, poly_scale(pc, r[lead])) if r[lead] else p)
                  for c, r, p in pivots]
        pivots.append((lead, row, pc))
        w = list(vec_mat(w, m))
        k += 1


def minimal_polynomial_of_matrix(m: Sequence[Sequence]) -> Poly:
    """Primitive integer form of the monic minimal polynomial of a square matrix.

    Krylov iteration on each standard basis vector; the lcm of the per-vector
    annihilators is the minimal polynomial.
    """
    mat = as_matrix(m)
    n = len(mat)
    if any(len(r) != n for r in mat):
        raise ValueError("matrix must be square")
    acc: Poly = (Fraction(1),)
    for i in range(n):
        e = [Fraction(int(i == j)) for j in range(n)]
        acc = poly_lcm(acc, _krylov_annihilator(e, mat))
    return primitive_part(acc)
