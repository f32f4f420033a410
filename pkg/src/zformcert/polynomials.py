"""Exact univariate polynomial arithmetic over the integers and rationals.

Coefficient sequences are stored constant term first.  Rational
coefficients are `fractions.Fraction`; nothing in this module touches
floating point.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .arith import divisors
from .errors import (
    NonMonicError,
    NonSquarefreeError,
    PolynomialSyntaxError,
    ReducibleError,
    ZeroPolynomialError,
)

RatPoly = tuple[Fraction, ...]


# ---------------------------------------------------------------------------
# dense rational polynomial helpers
# ---------------------------------------------------------------------------

def poly_trim(coeffs: Iterable[Fraction]) -> RatPoly:
    cs = list(coeffs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def poly_is_zero(p: RatPoly) -> bool:
    return len(p) == 0


def poly_degree(p: RatPoly) -> int:
    """Degree of a trimmed polynomial; -1 for the zero polynomial."""
    return len(p) - 1


def poly_add(a: RatPoly, b: RatPoly) -> RatPoly:
    n = max(len(a), len(b))
    return poly_trim(
        (a[i] if i < len(a) else Fraction(0)) + (b[i] if i < len(b) else Fraction(0))
        for i in range(n)
    )


def poly_neg(a: RatPoly) -> RatPoly:
    return tuple(-c for c in a)


def poly_sub(a: RatPoly, b: RatPoly) -> RatPoly:
    return poly_add(a, poly_neg(b))


def poly_scale(a: RatPoly, s: Fraction) -> RatPoly:
    if s == 0:
        return ()
    return tuple(c * s for c in a)


def poly_mul(a: RatPoly, b: RatPoly) -> RatPoly:
    if poly_is_zero(a) or poly_is_zero(b):
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca == 0:
            continue
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    return poly_trim(out)


def poly_divmod(a: RatPoly, b: RatPoly) -> tuple[RatPoly, RatPoly]:
    if poly_is_zero(b):
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    quo = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(rem) >= len(b) and any(c != 0 for c in rem):
        while rem and rem[-1] == 0:
            rem.pop()
        if len(rem) < len(b):
            break
        shift = len(rem) - len(b)
        factor = rem[-1] / lead
        quo[shift] = factor
        for i, cb in enumerate(b):
            rem[shift + i] -= factor * cb
        rem.pop()
    return poly_trim(quo), poly_trim(rem)


def poly_gcd(a: RatPoly, b: RatPoly) -> RatPoly:
    """Monic greatest common divisor over the rationals."""
    a, b = poly_trim(a), poly_trim(b)
    while not poly_is_zero(b):
        _, r = poly_divmod(a, b)
        a, b = b, r
    if poly_is_zero(a):
        return ()
    return poly_scale(a, 1 / a[-1])


def poly_eval(p: RatPoly, t: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * t + c
    return acc


def poly_derivative(p: RatPoly) -> RatPoly:
    return poly_trim(p[i] * i for i in range(1, len(p)))


# ---------------------------------------------------------------------------
# integer polynomials
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IntegerPolynomial:
    """Univariate integer polynomial, constant coefficient first."""

    coefficients: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.coefficients or all(c == 0 for c in self.coefficients):
            raise ZeroPolynomialError("zero polynomial")
        cs = tuple(int(c) for c in self.coefficients)
        while cs[-1] == 0:
            cs = cs[:-1]
        object.__setattr__(self, "coefficients", cs)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def is_monic(self) -> bool:
        return self.coefficients[-1] == 1

    def __call__(self, t: Fraction | int) -> Fraction:
        return poly_eval(self.rational(), Fraction(t))

    def rational(self) -> RatPoly:
        return tuple(Fraction(c) for c in self.coefficients)

    def derivative(self) -> "IntegerPolynomial":
        return IntegerPolynomial(tuple(self.coefficients[i] * i for i in range(1, len(self.coefficients))))

    def text(self) -> str:
        """Render as e.g. 'x^3-2x^2-x+1'."""
        parts: list[str] = []
        for k in range(self.degree, -1, -1):
            c = self.coefficients[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else ("+" if parts else "")
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                var = "x" if k == 1 else f"x^{k}"
                body = var if mag == 1 else f"{mag}{var}"
            parts.append(sign + body)
        return "".join(parts)

    def __str__(self) -> str:  # pragma: no cover - convenience
        return self.text()


_TERM_RE = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:
            (?P<coef>\d+)\s*\*?\s*x(?:\s*\^\s*(?P<exp1>\d+))?
          | x(?:\s*\^\s*(?P<exp2>\d+))?
          | (?P<const>\d+)
        )""",
    re.VERBOSE,
)


def parse_polynomial(text: str) -> IntegerPolynomial:
    """Parse text like 'x^3-2x^2-x+1' into a monic integer polynomial.

    Rejects non-monic input, empty/garbled text, and the zero polynomial.
    """
    coeffs: dict[int, int] = {}
    pos = 0
    first = True
    stripped = text.strip()
    if not stripped:
        raise PolynomialSyntaxError("empty polynomial text")
    while pos < len(stripped):
        m = _TERM_RE.match(stripped, pos)
        if not m:
            raise PolynomialSyntaxError(f"cannot parse polynomial near {stripped[pos:]!r}")
        if not first and m.group("sign") is None:
            raise PolynomialSyntaxError(f"missing sign before {stripped[m.start():]!r}")
        sign = -1 if m.group("sign") == "-" else 1
        if m.group("const") is not None:
            exp, mag = 0, int(m.group("const"))
        elif m.group("coef") is not None:
            exp = int(m.group("exp1")) if m.group("exp1") else 1
            mag = int(m.group("coef"))
        else:
            exp = int(m.group("exp2")) if m.group("exp2") else 1
            mag = 1
        coeffs[exp] = coeffs.get(exp, 0) + sign * mag
        pos = m.end()
        first = False
    if not coeffs or all(v == 0 for v in coeffs.values()):
        raise ZeroPolynomialError("zero polynomial")
    degree = max(e for e, v in coeffs.items() if v != 0)
    if coeffs.get(degree, 0) != 1:
        raise NonMonicError(f"leading coefficient is {coeffs[degree]}, expected 1")
    return IntegerPolynomial(tuple(coeffs.get(k, 0) for k in range(degree + 1)))


# ---------------------------------------------------------------------------
# Sturm sequences and real-root counting
# ---------------------------------------------------------------------------

def sturm_sequence(p: RatPoly) -> list[RatPoly]:
    """Sturm chain p, p', -rem(...), ... without the trailing zero."""
    p = poly_trim(p)
    if poly_is_zero(p):
        raise ZeroPolynomialError("Sturm sequence of zero polynomial")
    chain = [p, poly_derivative(p)]
    while not poly_is_zero(chain[-1]):
        _, r = poly_divmod(chain[-2], chain[-1])
        chain.append(poly_neg(r))
    chain.pop()
    return chain


def sign_variations(values: Iterable[Fraction]) -> int:
    signs = [1 if v > 0 else -1 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots_half_open(chain: Sequence[RatPoly], a: Fraction, b: Fraction) -> int:
    """Number of distinct real roots in (a, b] for a squarefree chain."""
    va = sign_variations(poly_eval(q, a) for q in chain)
    vb = sign_variations(poly_eval(q, b) for q in chain)
    return va - vb


def cauchy_root_bound(p: IntegerPolynomial) -> int:
    """Integer B such that every real root lies in (-B, B)."""
    lead = abs(p.coefficients[-1])
    top = max(abs(c) for c in p.coefficients[:-1]) if p.degree > 0 else 0
    return 1 + (top + lead - 1) // lead + 1


def count_real_roots(p: IntegerPolynomial) -> int:
    if p.degree == 0:
        return 0
    chain = sturm_sequence(p.rational())
    bound = Fraction(cauchy_root_bound(p))
    return count_roots_half_open(chain, -bound, bound)


# ---------------------------------------------------------------------------
# resultants and discriminants
# ---------------------------------------------------------------------------

def _det_fraction(rows: list[list[Fraction]]) -> Fraction:
    n = len(rows)
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        det *= rows[col][col]
        inv = 1 / rows[col][col]
        for r in range(col + 1, n):
            factor = rows[r][col] * inv
            if factor == 0:
                continue
            for c in range(col, n):
                rows[r][c] -= factor * rows[col][c]
    return det


def resultant(f: RatPoly, g: RatPoly) -> Fraction:
    """Resultant via the Sylvester matrix (exact)."""
    f, g = poly_trim(f), poly_trim(g)
    m, n = poly_degree(f), poly_degree(g)
    if m < 0 or n < 0:
        return Fraction(0)
    if m == 0:
        return f[0] ** n
    if n == 0:
        return g[0] ** m
    size = m + n
    rows: list[list[Fraction]] = []
    frow = list(reversed(f))
    grow = list(reversed(g))
    for i in range(n):
        rows.append([Fraction(0)] * i + frow + [Fraction(0)] * (size - m - 1 - i))
    for i in range(m):
        rows.append([Fraction(0)] * i + grow + [Fraction(0)] * (size - n - 1 - i))
    return _det_fraction(rows)


def discriminant(p: IntegerPolynomial) -> int:
    """Discriminant of a monic integer polynomial (an integer)."""
    if not p.is_monic:
        raise NonMonicError("discriminant implemented for monic input")
    d = p.degree
    res = resultant(p.rational(), p.derivative().rational())
    value = res * (-1) ** (d * (d - 1) // 2)
    if value.denominator != 1:
        raise AssertionError("monic discriminant must be an integer")
    return int(value)


def is_squarefree(p: IntegerPolynomial) -> bool:
    return discriminant(p) != 0


def newton_power_sums(p: IntegerPolynomial, upto: int) -> list[Fraction]:
    """Power sums s_0..s_upto of the roots of a monic polynomial."""
    if not p.is_monic:
        raise NonMonicError("power sums implemented for monic input")
    d = p.degree
    a = p.coefficients  # a[k] multiplies x^k, a[d] == 1
    sums: list[Fraction] = [Fraction(d)]
    for k in range(1, upto + 1):
        acc = Fraction(0)
        if k <= d:
            acc += Fraction(k * a[d - k])
            for i in range(1, k):
                acc += a[d - i] * sums[k - i]
        else:
            for i in range(1, d + 1):
                acc += a[d - i] * sums[k - i]
        sums.append(-acc)
    return sums


# ---------------------------------------------------------------------------
# rational roots and irreducibility for low degree
# ---------------------------------------------------------------------------

def integer_roots(p: IntegerPolynomial) -> list[int]:
    """All integer roots (each listed once), ascending."""
    roots = []
    if p.coefficients[0] == 0:
        roots.append(0)
        # strip powers of x, then use the new constant term
        cs = list(p.coefficients)
        while cs and cs[0] == 0:
            cs.pop(0)
        candidates = divisors(cs[0]) if cs else []
    else:
        candidates = divisors(p.coefficients[0])
    for c in candidates:
        for r in (c, -c):
            if p(r) == 0:
                roots.append(r)
    return sorted(set(roots))


def is_irreducible(p: IntegerPolynomial) -> bool:
    """Irreducibility over Q for monic integer polynomials of degree <= 4."""
    if not p.is_monic:
        raise NonMonicError("irreducibility test implemented for monic input")
    d = p.degree
    if d == 0:
        return False
    if d == 1:
        return True
    if d > 4:
        raise ValueError("irreducibility test supports degree <= 4 only")
    if integer_roots(p):
        return False
    if d != 4:
        return True
    # quartic: search monic integer quadratic factors (x^2+ax+b)(x^2+cx+d)
    _, p1, p2, p3, _ = (p.coefficients + (0,) * 5)[:5]
    const = p.coefficients[0]
    for b in divisors(const):
        for bs in (b, -b):
            dq, rem = divmod(const, bs)
            if rem != 0:
                continue
            # a + c = p3 and a*c = p2 - bs - dq
            s, prod = p3, p2 - bs - dq
            disc = s * s - 4 * prod
            if disc < 0:
                continue
            root = _isqrt_exact(disc)
            if root is None or (s + root) % 2 != 0:
                continue
            a = (s + root) // 2
            c = s - a
            for aa, cc in ((a, c), (c, a)):
                if aa * dq + cc * bs == p1:
                    return False
    return True


def _isqrt_exact(n: int) -> int | None:
    import math

    r = math.isqrt(n)
    return r if r * r == n else None


def is_totally_real(p: IntegerPolynomial) -> bool:
    """True iff all complex roots of p are real; requires p irreducible."""
    if not is_irreducible(p):
        raise ReducibleError(f"{p.text()} is reducible over Q")
    return count_real_roots(p) == p.degree


def require_squarefree(p: IntegerPolynomial) -> None:
    if not is_squarefree(p):
        raise NonSquarefreeError(f"{p.text()} has repeated roots")
