"""Real biquadratic fields Q(sqrt(p), sqrt(q)): bases, duals, witnesses.

Elements live on the rational basis (1, sqrt(p), sqrt(q), sqrt(r)) with
r = pq/gcd(p,q)^2.  The four embeddings follow the fixed sign table

    rho1: (+,+,+)   rho2: (-,+,-)   rho3: (+,-,-)   rho4: (-,-,+)

on (sqrt(p), sqrt(q), sqrt(r)).  After normalization every field falls
into one of five integral-basis cases distinguished by residues mod 4;
the dual bases are hard data validated exactly on construction.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .arith import is_squarefree_int, sqrt_enclosure
from .errors import ZeroElementError
from .fields import SignVector
from .intervals import RatInterval
from .polynomials import IntegerPolynomial

_EMBEDDING_SIGNS = ((1, 1, 1), (-1, 1, -1), (1, -1, -1), (-1, -1, 1))

_sqrt_cache: dict[int, tuple[Fraction, Fraction]] = {}
_sqrt_lock = threading.Lock()


def _sqrt_iv(n: int, width: Fraction) -> RatInterval:
    with _sqrt_lock:
        cached = _sqrt_cache.get(n)
        if cached is None or cached[1] - cached[0] > width:
            lo, hi = cached if cached is not None else sqrt_enclosure(n, Fraction(1, 4))
            while hi - lo > width:
                mid = (lo + hi) / 2
                if mid * mid <= n:
                    lo = mid
                else:
                    hi = mid
            _sqrt_cache[n] = (lo, hi)
            return RatInterval(lo, hi)
        return RatInterval(*cached)


@dataclass(frozen=True)
class BiquadField:
    """Normalized presentation of Q(sqrt(p), sqrt(q))."""

    p: int
    q: int
    r: int
    case_id: int
    mu: int | None  # +1 for case 4, -1 for case 5, None otherwise
    source: tuple[int, int]

    @property
    def g(self) -> int:
        return math.gcd(self.p, self.q)

    def element(self, coords) -> "BiquadElement":
        cs = tuple(Fraction(c) for c in coords)
        if len(cs) != 4:
            raise ValueError("biquadratic coordinates have length 4")
        return BiquadElement(self, cs)

    def one(self) -> "BiquadElement":
        return self.element((1, 0, 0, 0))

    def zero(self) -> "BiquadElement":
        return self.element((0, 0, 0, 0))

    def sqrt_of(self, n: int) -> "BiquadElement":
        idx = {self.p: 1, self.q: 2, self.r: 3}[n]
        coords = [Fraction(0)] * 4
        coords[idx] = Fraction(1)
        return self.element(coords)

    def inv_sqrt_of(self, n: int, scale: Fraction) -> "BiquadElement":
        """scale / sqrt(n) as an element (scale * sqrt(n) / n)."""
        idx = {self.p: 1, self.q: 2, self.r: 3}[n]
        coords = [Fraction(0)] * 4
        coords[idx] = Fraction(scale) / n
        return self.element(coords)


def normalize_case(p: int, q: int) -> BiquadField:
    """Reorder {p, q, r} into the unique matching residue case.

    Case search is lexicographic in (case id, ordered pair), so the
    normalization is deterministic even when several orderings of the
    same case match.
    """
    for name, value in (("p", p), ("q", q)):
        if value <= 1 or not is_squarefree_int(value):
            raise ValueError(f"{name} must be a squarefree integer > 1, got {value}")
    if p == q:
        raise ValueError("p and q must be distinct")
    g = math.gcd(p, q)
    r = p * q // (g * g)
    triple = sorted({p, q, r})
    if len(triple) != 3:
        raise AssertionError("p, q, r must be pairwise distinct")
    pairs = [(a, b) for a in triple for b in triple if a != b]

    def match(case: int, a: int, b: int) -> bool:
        if case == 1:
            return a % 4 == 2 and b % 4 == 3
        if case == 2:
            return a % 4 == 2 and b % 4 == 1
        if case == 3:
            return a % 4 == 3 and b % 4 == 1
        gg = math.gcd(a, b)
        if case == 4:
            return a % 4 == 1 and b % 4 == 1 and gg % 4 == 1
        return a % 4 == 1 and b % 4 == 1 and gg % 4 == 3

    for case in (1, 2, 3, 4, 5):
        for a, b in pairs:
            if match(case, a, b):
                third = next(v for v in triple if v not in (a, b))
                gg = math.gcd(a, b)
                if a * b // (gg * gg) != third:
                    raise AssertionError("triple is not closed under the product rule")
                mu = {4: 1, 5: -1}.get(case)
                return BiquadField(p=a, q=b, r=third, case_id=case, mu=mu, source=(p, q))
    raise AssertionError("every squarefree pair matches one of the five cases")


class BiquadElement:
    """Element with exact coordinates (x, y, z, w) over (1, sqrt p, sqrt q, sqrt r)."""

    __slots__ = ("field", "coords")

    def __init__(self, field: BiquadField, coords: tuple[Fraction, ...]) -> None:
        self.field = field
        self.coords = coords

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, BiquadElement)
            and self.field == other.field
            and self.coords == other.coords
        )

    def __hash__(self) -> int:
        return hash((self.field, self.coords))

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"BiquadElement{self.coords}"

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def __add__(self, other: "BiquadElement") -> "BiquadElement":
        self._check(other)
        return self.field.element(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "BiquadElement") -> "BiquadElement":
        self._check(other)
        return self.field.element(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "BiquadElement":
        return self.field.element(tuple(-a for a in self.coords))

    def scale(self, s: Fraction | int) -> "BiquadElement":
        s = Fraction(s)
        return self.field.element(tuple(s * a for a in self.coords))

    def _check(self, other: "BiquadElement") -> None:
        if self.field != other.field:
            raise ValueError("elements belong to different biquadratic fields")

    def __mul__(self, other: "BiquadElement") -> "BiquadElement":
        self._check(other)
        f = self.field
        p, q, r, g = f.p, f.q, f.r, f.g
        x1, y1, z1, w1 = self.coords
        x2, y2, z2, w2 = other.coords
        # sqrt(p)sqrt(q) = g sqrt(r), sqrt(p)sqrt(r) = (p/g) sqrt(q),
        # sqrt(q)sqrt(r) = (q/g) sqrt(p)
        x = x1 * x2 + p * y1 * y2 + q * z1 * z2 + r * w1 * w2
        y = x1 * y2 + y1 * x2 + Fraction(q, g) * (z1 * w2 + w1 * z2)
        z = x1 * z2 + z1 * x2 + Fraction(p, g) * (y1 * w2 + w1 * y2)
        w = x1 * w2 + w1 * x2 + g * (y1 * z2 + z1 * y2)
        return f.element((x, y, z, w))

    def conjugate(self, embedding: int) -> "BiquadElement":
        sy, sz, sw = _EMBEDDING_SIGNS[embedding]
        x, y, z, w = self.coords
        return self.field.element((x, sy * y, sz * z, sw * w))

    def trace(self) -> Fraction:
        return 4 * self.coords[0]

    def norm(self) -> Fraction:
        prod = self
        for k in (1, 2, 3):
            prod = prod * self.conjugate(k)
        if any(c != 0 for c in prod.coords[1:]):
            raise AssertionError("norm must be rational")
        return prod.coords[0]

    def embedding_enclosures(self, width: Fraction) -> tuple[RatInterval, ...]:
        f = self.field
        sp = _sqrt_iv(f.p, width)
        sq = _sqrt_iv(f.q, width)
        sr = _sqrt_iv(f.r, width)
        x, y, z, w = self.coords
        out = []
        for sy, sz, sw in _EMBEDDING_SIGNS:
            iv = (
                RatInterval.point(x)
                + sp.scale(sy * y)
                + sq.scale(sz * z)
                + sr.scale(sw * w)
            )
            out.append(iv)
        return tuple(out)

    def signature(self) -> SignVector:
        """Signs under the four table-order embeddings, certified."""
        if self.is_zero:
            raise ZeroElementError("signature of zero element")
        if all(c == 0 for c in self.coords[1:]):
            s = 1 if self.coords[0] > 0 else -1
            return SignVector((s,) * 4)
        width = Fraction(1, 2**20)
        while True:
            encs = self.embedding_enclosures(width)
            if all(iv.is_sign_definite() for iv in encs):
                return SignVector(iv.sign() for iv in encs)
            width /= 16


# ---------------------------------------------------------------------------
# case tables
# ---------------------------------------------------------------------------

def integral_basis(f: BiquadField) -> tuple[BiquadElement, ...]:
    """The case integral basis over (1, sqrt p, sqrt q, sqrt r)."""
    h = Fraction(1, 2)
    t = Fraction(1, 4)
    if f.case_id == 1:
        rows = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, h, 0, h)]
    elif f.case_id in (2, 3):
        rows = [(1, 0, 0, 0), (0, 1, 0, 0), (h, 0, h, 0), (0, h, 0, h)]
    elif f.case_id == 4:
        rows = [(1, 0, 0, 0), (h, h, 0, 0), (h, 0, h, 0), (t, t, t, t)]
    else:
        rows = [(1, 0, 0, 0), (h, h, 0, 0), (h, 0, h, 0), (t, -t, t, t)]
    return tuple(f.element(row) for row in rows)


def codifferent_basis(f: BiquadField) -> tuple[BiquadElement, ...]:
    """Dual basis of the case integral basis; pairing validated exactly."""
    p, q, r = f.p, f.q, f.r
    quarter = Fraction(1, 4)
    if f.case_id == 1:
        rows = [
            (quarter, 0, 0, 0),
            (0, Fraction(1, 4 * p), 0, Fraction(-1, 4 * r)),
            (0, 0, Fraction(1, 4 * q), 0),
            (0, 0, 0, Fraction(1, 2 * r)),
        ]
    elif f.case_id in (2, 3):
        rows = [
            (quarter, 0, Fraction(-1, 4 * q), 0),
            (0, Fraction(1, 4 * p), 0, Fraction(-1, 4 * r)),
            (0, 0, Fraction(1, 2 * q), 0),
            (0, 0, 0, Fraction(1, 2 * r)),
        ]
    elif f.case_id == 4:
        rows = [
            (quarter, Fraction(-1, 4 * p), Fraction(-1, 4 * q), Fraction(1, 4 * r)),
            (0, Fraction(1, 2 * p), 0, Fraction(-1, 2 * r)),
            (0, 0, Fraction(1, 2 * q), Fraction(-1, 2 * r)),
            (0, 0, 0, Fraction(1, r)),
        ]
    else:
        rows = [
            (quarter, Fraction(-1, 4 * p), Fraction(-1, 4 * q), Fraction(-1, 4 * r)),
            (0, Fraction(1, 2 * p), 0, Fraction(1, 2 * r)),
            (0, 0, Fraction(1, 2 * q), Fraction(-1, 2 * r)),
            (0, 0, 0, Fraction(1, r)),
        ]
    duals = tuple(f.element(row) for row in rows)
    basis = integral_basis(f)
    for i, w in enumerate(basis):
        for j, d in enumerate(duals):
            if (w * d).trace() != (1 if i == j else 0):
                raise AssertionError(
                    f"case {f.case_id} dual pairing failed at ({i}, {j})"
                )
    return duals


def basis_matrix_sqrt(f: BiquadField) -> linalg.Matrix:
    return linalg.as_matrix([e.coords for e in integral_basis(f)])


def is_integral(f: BiquadField, x: BiquadElement) -> bool:
    inv = linalg.invert(basis_matrix_sqrt(f))
    coords = linalg.vec_mat(x.coords, inv)
    return all(c.denominator == 1 for c in coords)


def in_codifferent(f: BiquadField, x: BiquadElement) -> bool:
    return all((x * w).trace().denominator == 1 for w in integral_basis(f))


# ---------------------------------------------------------------------------
# witnesses
# ---------------------------------------------------------------------------

def witness(f: BiquadField) -> tuple[BiquadElement, BiquadElement, SignVector]:
    """Case witness (alpha, delta, epsilon): non-unit alpha, codifferent
    delta of the same signature, trace product exactly 1."""
    if f.case_id == 1:
        alpha = f.sqrt_of(f.q)
        delta = f.inv_sqrt_of(f.q, Fraction(1, 4))
    elif f.case_id in (2, 3):
        if f.p < f.r:
            alpha = f.sqrt_of(f.p)
            delta = f.inv_sqrt_of(f.p, Fraction(1, 4)) - f.inv_sqrt_of(f.r, Fraction(1, 4))
        else:
            alpha = f.sqrt_of(f.r)
            delta = f.inv_sqrt_of(f.r, Fraction(1, 4)) - f.inv_sqrt_of(f.p, Fraction(1, 4))
    else:
        a, b, c = sorted((f.p, f.q, f.r))
        if a != 5:
            first, second = a, b
        else:
            first, second = b, c
        alpha = (f.one() + f.sqrt_of(first)).scale(Fraction(1, 2))
        delta = f.inv_sqrt_of(first, Fraction(1, 2)) - f.inv_sqrt_of(second, Fraction(1, 2))

    if (delta * alpha).trace() != 1:
        raise AssertionError("witness trace product must be 1")
    epsilon = alpha.signature()
    if delta.signature() != epsilon:
        raise AssertionError("witness signatures must agree")
    if abs(alpha.norm()) == 1:
        raise AssertionError("witness must not be a unit")
    if not is_integral(f, alpha):
        raise AssertionError("witness alpha must be integral")
    if not in_codifferent(f, delta):
        raise AssertionError("witness delta must lie in the codifferent")
    return alpha, delta, epsilon


def certify_biquadratic(p: int, q: int):
    """Full obstruction certificate for Q(sqrt p, sqrt q)."""
    from .certificates import certificate_from_biquadratic

    f = normalize_case(p, q)
    alpha, delta, epsilon = witness(f)
    return certificate_from_biquadratic(f, alpha, delta, epsilon)


# ---------------------------------------------------------------------------
# bridge to the generic quartic field machinery (used by the verifier)
# ---------------------------------------------------------------------------

def defining_quartic(f: BiquadField) -> IntegerPolynomial:
    """Minimal polynomial of sqrt(p) + sqrt(q)."""
    p, q = f.p, f.q
    return IntegerPolynomial(((p - q) ** 2, 0, -2 * (p + q), 0, 1))


def power_matrix(f: BiquadField) -> linalg.Matrix:
    """Rows: powers of theta = sqrt(p)+sqrt(q) over (1, sqrt p, sqrt q, sqrt r)."""
    p, q, g = f.p, f.q, f.g
    return linalg.as_matrix(
        [
            (1, 0, 0, 0),
            (0, 1, 1, 0),
            (p + q, 0, 0, 2 * g),
            (0, p + 3 * q, 3 * p + q, 0),
        ]
    )


def sqrt_coords_to_power(f: BiquadField, coords) -> tuple[Fraction, ...]:
    """Convert (1, sqrt p, sqrt q, sqrt r) coordinates to theta power coords."""
    inv = linalg.invert(power_matrix(f))
    return linalg.vec_mat(tuple(Fraction(c) for c in coords), inv)


def power_coords_to_sqrt(f: BiquadField, coords) -> tuple[Fraction, ...]:
    return linalg.vec_mat(tuple(Fraction(c) for c in coords), power_matrix(f))


def table_to_ascending_permutation(f: BiquadField) -> tuple[int, int, int, int]:
    """Map ascending-root position -> table embedding index.

    theta values in table order are (s+t, t-s, s-t, -s-t) for
    s = sqrt(p), t = sqrt(q); the middle pair is decided by p vs q.
    """
    if f.p < f.q:
        return (3, 2, 1, 0)
    return (3, 1, 2, 0)
