"""Rational interval arithmetic and certified real-root isolation.

Root isolation works in two stages.  Integer roots of the (squarefree)
input are split off exactly by trial division, so the remaining factor
has no rational roots at all; every bisection midpoint is then a
guaranteed non-root and plain sign bisection refines each isolating
interval as far as requested.  Initial disjoint intervals come from
Sturm counts over half-open intervals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NonSquarefreeError
from .polynomials import (
    IntegerPolynomial,
    RatPoly,
    cauchy_root_bound,
    count_roots_half_open,
    integer_roots,
    is_squarefree,
    poly_divmod,
    poly_eval,
    sturm_sequence,
)


@dataclass(frozen=True)
class RatInterval:
    """Closed interval [lo, hi] with exact rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise ValueError("interval endpoints out of order")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    def contains(self, x: Fraction) -> bool:
        return self.lo <= x <= self.hi

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def sign(self) -> int:
        """Certified sign: +1, -1, or 0 only for the exact point zero.

        Raises if the interval straddles zero with nonzero width (the
        sign is then undetermined and the caller must refine).
        """
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        if self.lo == 0 and self.hi == 0:
            return 0
        raise ValueError("sign undetermined; interval straddles zero")

    def is_sign_definite(self) -> bool:
        return self.lo > 0 or self.hi < 0 or self.is_point

    def __add__(self, other: "RatInterval") -> "RatInterval":
        return RatInterval(self.lo + other.lo, self.hi + other.hi)

    def __sub__(self, other: "RatInterval") -> "RatInterval":
        return RatInterval(self.lo - other.hi, self.hi - other.lo)

    def __neg__(self) -> "RatInterval":
        return RatInterval(-self.hi, -self.lo)

    def __mul__(self, other: "RatInterval") -> "RatInterval":
        products = (
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        )
        return RatInterval(min(products), max(products))

    def scale(self, s: Fraction) -> "RatInterval":
        if s >= 0:
            return RatInterval(self.lo * s, self.hi * s)
        return RatInterval(self.hi * s, self.lo * s)

    def shift(self, s: Fraction) -> "RatInterval":
        return RatInterval(self.lo + s, self.hi + s)

    @staticmethod
    def point(x: Fraction) -> "RatInterval":
        x = Fraction(x)
        return RatInterval(x, x)


def interval_eval(p: RatPoly, iv: RatInterval) -> RatInterval:
    """Enclosure of p over iv by interval Horner evaluation."""
    acc = RatInterval.point(Fraction(0))
    for c in reversed(p):
        acc = acc * iv + RatInterval.point(c)
    return acc


def _bisect_once(p: RatPoly, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    # precondition: sign change across [lo, hi], p has no rational roots
    mid = (lo + hi) / 2
    if poly_eval(p, lo) * poly_eval(p, mid) < 0:
        return lo, mid
    return mid, hi


@dataclass(frozen=True)
class RootIsolation:
    """Disjoint ascending isolating intervals for all real roots.

    `core` is the squarefree input with its integer roots divided out;
    exact integer roots are stored as zero-width intervals.  Instances
    are immutable; `refined` returns a narrower copy.
    """

    poly: IntegerPolynomial
    intervals: tuple[RatInterval, ...]
    core: RatPoly

    @property
    def count(self) -> int:
        return len(self.intervals)

    def refined(self, width: Fraction) -> "RootIsolation":
        width = Fraction(width)
        new: list[RatInterval] = []
        for iv in self.intervals:
            lo, hi = iv.lo, iv.hi
            while hi - lo > width:
                lo, hi = _bisect_once(self.core, lo, hi)
            new.append(RatInterval(lo, hi))
        return RootIsolation(self.poly, tuple(new), self.core)

    def max_width(self) -> Fraction:
        return max((iv.width for iv in self.intervals), default=Fraction(0))


def isolate_roots(p: IntegerPolynomial, width: Fraction | int = Fraction(1, 2**20)) -> RootIsolation:
    """Isolate all real roots of a squarefree integer polynomial.

    Returns disjoint intervals of width at most `width`, in ascending
    order, exactly one root per interval; rational roots appear as
    zero-width intervals.
    """
    width = Fraction(width)
    if width <= 0:
        raise ValueError("width must be positive")
    if not is_squarefree(p):
        raise NonSquarefreeError(f"{p.text()} is not squarefree")

    exact = integer_roots(p)
    core = p.rational()
    for r in exact:
        core, rem = poly_divmod(core, (Fraction(-r), Fraction(1)))
        assert not rem, "exact root division must be clean"

    brackets: list[tuple[Fraction, Fraction]] = []
    if len(core) > 1:
        chain = sturm_sequence(core)
        bound = Fraction(cauchy_root_bound(p))
        stack = [(-bound, bound)]
        while stack:
            lo, hi = stack.pop()
            n = count_roots_half_open(chain, lo, hi)
            if n == 0:
                continue
            if n == 1 and poly_eval(core, lo) != 0:
                brackets.append((lo, hi))
                continue
            mid = (lo + hi) / 2
            # midpoints are never roots: core has no rational roots
            stack.append((lo, mid))
            stack.append((mid, hi))

    refined: list[RatInterval] = []
    for lo, hi in brackets:
        while hi - lo > width:
            lo, hi = _bisect_once(core, lo, hi)
        refined.append(RatInterval(lo, hi))

    intervals = [RatInterval.point(Fraction(r)) for r in exact] + refined
    intervals.sort(key=lambda iv: iv.lo)

    # enforce strict pairwise disjointness (roots are distinct, so this
    # terminates); touching can only happen at shared bisection endpoints
    changed = True
    while changed:
        changed = False
        for a, b in zip(intervals, intervals[1:]):
            if a.hi >= b.lo and not (a.is_point and b.is_point):
                idx = intervals.index(a)
                for k in (idx, idx + 1):
                    iv = intervals[k]
                    if not iv.is_point:
                        lo, hi = _bisect_once(core, iv.lo, iv.hi)
                        intervals[k] = RatInterval(lo, hi)
                changed = True
                break

    return RootIsolation(p, tuple(intervals), core)
