"""Small integer helpers: factorization by trial division, squarefree tests."""

from __future__ import annotations

import math
from fractions import Fraction


def prime_factorization(n: int) -> dict[int, int]:
    """Factor |n| > 0 by trial division; returns {prime: exponent}."""
    if n == 0:
        raise ValueError("cannot factor zero")
    n = abs(n)
    factors: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    f = 5
    while f * f <= n:
        for p in (f, f + 2):
            while n % p == 0:
                factors[p] = factors.get(p, 0) + 1
                n //= p
        f += 6
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def is_squarefree_int(n: int) -> bool:
    if n == 0:
        return False
    return all(e == 1 for e in prime_factorization(n).values())


def squarefree_part(n: int) -> int:
    """Largest squarefree divisor d with n = d * (square), sign preserved."""
    if n == 0:
        raise ValueError("squarefree part of zero is undefined")
    part = 1
    for p, e in prime_factorization(n).items():
        if e % 2 == 1:
            part *= p
    return part if n > 0 else -part


def divisors(n: int) -> list[int]:
    """Positive divisors of |n|, ascending."""
    n = abs(n)
    if n == 0:
        raise ValueError("divisors of zero are unbounded")
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def floor_div_fraction(x: Fraction) -> int:
    """Floor of an exact rational."""
    return x.numerator // x.denominator


def sqrt_enclosure(n: int, width: Fraction) -> tuple[Fraction, Fraction]:
    """Rational interval [lo, hi] with lo <= sqrt(n) <= hi and hi - lo <= width.

    Exact squares collapse to a point; otherwise bisection on exact
    rational squares, so the enclosure is certified.
    """
    if n < 0:
        raise ValueError("negative radicand")
    root = math.isqrt(n)
    if root * root == n:
        return Fraction(root), Fraction(root)
    lo, hi = Fraction(root), Fraction(root + 1)
    while hi - lo > width:
        mid = (lo + hi) / 2
        if mid * mid <= n:
            lo = mid
        else:
            hi = mid
    return lo, hi
