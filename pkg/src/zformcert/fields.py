"""Exact arithmetic in totally real number fields.

A field is presented by a monic irreducible totally real integer
polynomial together with an integral basis expressed over the power
basis of a root.  Embeddings are ordered by ascending real root; every
sign decision is certified by refining isolating intervals, with a
symbolic shortcut for rational elements so refinement always
terminates.
"""

from __future__ import annotations

import os
import threading
from fractions import Fraction
from typing import Iterable, Sequence

from . import linalg
from .errors import (
    DegreeError,
    FieldMismatchError,
    NonIntegralElementError,
    NonMonicError,
    NotTotallyRealError,
    ZeroElementError,
)
from .intervals import RatInterval, RootIsolation, interval_eval, isolate_roots
from .polynomials import (
    IntegerPolynomial,
    RatPoly,
    is_totally_real,
    newton_power_sums,
    poly_divmod,
    poly_is_zero,
    poly_mul,
    poly_sub,
    poly_trim,
    resultant,
)

_WIDTH_ENV = "ZFORMCERT_ISOLATION_WIDTH"


def default_isolation_width() -> Fraction:
    """Default isolating-interval width, overridable via environment."""
    raw = os.environ.get(_WIDTH_ENV)
    if raw:
        value = Fraction(raw)
        if value <= 0:
            raise ValueError(f"{_WIDTH_ENV} must be positive")
        return value
    return Fraction(1, 2**20)


class SignVector(tuple):
    """Vector over {-1, +1}, one entry per real embedding."""

    def __new__(cls, entries: Iterable[int]):
        vals = tuple(int(e) for e in entries)
        if any(v not in (-1, 1) for v in vals):
            raise ValueError("sign vector entries must be +1 or -1")
        return super().__new__(cls, vals)

    def __mul__(self, other: "SignVector") -> "SignVector":  # type: ignore[override]
        if len(self) != len(other):
            raise ValueError("sign vector length mismatch")
        return SignVector(a * b for a, b in zip(self, other))

    def describe(self) -> str:
        return "(" + ",".join("+1" if v > 0 else "-1" for v in self) + ")"


class NumberField:
    """Totally real number field with a fixed integral basis.

    `basis_matrix` rows express the basis over the power basis of the
    defining polynomial's root; the first basis element is always 1.
    Root isolation state refines on demand and is guarded by a lock, so
    instances are safe to share between workers.
    """

    def __init__(
        self,
        defining: IntegerPolynomial,
        basis_matrix: linalg.Matrix,
        *,
        isolation_width: Fraction | None = None,
    ) -> None:
        if not defining.is_monic:
            raise NonMonicError("defining polynomial must be monic")
        d = defining.degree
        if d not in (2, 3, 4):
            raise DegreeError(f"field degree {d} outside supported range 2..4")
        if not is_totally_real(defining):
            raise NotTotallyRealError(f"{defining.text()} is not totally real")
        self.defining = defining
        self.degree = d
        self.basis_matrix = linalg.as_matrix(basis_matrix)
        if len(self.basis_matrix) != d or any(len(r) != d for r in self.basis_matrix):
            raise ValueError("integral basis matrix must be d x d")
        if self.basis_matrix[0] != tuple(Fraction(1 if j == 0 else 0) for j in range(d)):
            raise ValueError("first integral basis element must be 1")
        self.basis_inv = linalg.invert(self.basis_matrix)
        self.power_sums = newton_power_sums(defining, d - 1)
        width = isolation_width if isolation_width is not None else default_isolation_width()
        self.isolation_width = Fraction(width)
        self._roots = isolate_roots(defining, self.isolation_width)
        self._lock = threading.Lock()
        self._validate_gram_integrality()

    # -- construction ------------------------------------------------------

    @classmethod
    def from_polynomial(
        cls,
        poly: IntegerPolynomial,
        integral_basis: linalg.Matrix | None = None,
        *,
        isolation_width: Fraction | None = None,
    ) -> "NumberField":
        """Build a field; without a basis, cubic input gets a maximal order.

        For cubic polynomials with no supplied basis, the power order is
        enlarged at every prime whose square divides the polynomial
        discriminant.  Quadratic and quartic raw input keeps the power
        basis as given.
        """
        if integral_basis is not None:
            return cls(poly, integral_basis, isolation_width=isolation_width)
        if poly.degree == 3:
            from .orders import maximal_cubic_order

            basis = maximal_cubic_order(poly)
            return cls(poly, basis, isolation_width=isolation_width)
        return cls(poly, linalg.identity(poly.degree), isolation_width=isolation_width)

    def _validate_gram_integrality(self) -> None:
        # an order must have integer trace pairings
        for i in range(self.degree):
            for j in range(i, self.degree):
                prod = self.element(self.basis_matrix[i]) * self.element(self.basis_matrix[j])
                if prod.trace().denominator != 1:
                    raise ValueError(
                        "integral basis has non-integer trace pairing; not an order"
                    )

    # -- identity ----------------------------------------------------------

    @property
    def key(self) -> tuple:
        return (self.defining.coefficients, self.basis_matrix)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, NumberField) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"NumberField({self.defining.text()})"

    # -- elements ----------------------------------------------------------

    def element(self, coords: Sequence[Fraction | int]) -> "FieldElement":
        cs = tuple(Fraction(c) for c in coords)
        if len(cs) > self.degree:
            if any(c != 0 for c in cs[self.degree:]):
                raise ValueError("coordinate vector longer than field degree")
            cs = cs[: self.degree]
        if len(cs) < self.degree:
            cs = cs + (Fraction(0),) * (self.degree - len(cs))
        return FieldElement(self, cs)

    def from_rational(self, value: Fraction | int) -> "FieldElement":
        return self.element((Fraction(value),) + (Fraction(0),) * (self.degree - 1))

    def zero(self) -> "FieldElement":
        return self.from_rational(0)

    def one(self) -> "FieldElement":
        return self.from_rational(1)

    def generator(self) -> "FieldElement":
        return self.element((0, 1) + (0,) * (self.degree - 2))

    def integral_basis_elements(self) -> tuple["FieldElement", ...]:
        return tuple(self.element(row) for row in self.basis_matrix)

    def from_integral_coords(self, coords: Sequence[Fraction | int]) -> "FieldElement":
        cs = tuple(Fraction(c) for c in coords)
        if len(cs) != self.degree:
            raise ValueError("integral coordinate vector has wrong length")
        return self.element(linalg.vec_mat(cs, self.basis_matrix))

    # -- certified numerics --------------------------------------------------

    def root_enclosures(self, width: Fraction | None = None) -> tuple[RatInterval, ...]:
        """Isolating intervals for the defining roots, ascending, refined."""
        target = Fraction(width) if width is not None else self.isolation_width
        with self._lock:
            if self._roots.max_width() > target:
                self._roots = self._roots.refined(target)
            return self._roots.intervals

    @property
    def root_isolation(self) -> RootIsolation:
        with self._lock:
            return self._roots

    def embedding_enclosures(
        self, x: "FieldElement", width: Fraction | None = None
    ) -> tuple[RatInterval, ...]:
        roots = self.root_enclosures(width)
        coords = poly_trim(x.coords)
        return tuple(interval_eval(coords, iv) for iv in roots)

    def signs(self, x: "FieldElement") -> SignVector:
        if x.is_zero:
            raise ZeroElementError("signature of zero element")
        if x.is_rational:
            s = 1 if x.coords[0] > 0 else -1
            return SignVector((s,) * self.degree)
        width = self.isolation_width
        while True:
            encs = self.embedding_enclosures(x, width)
            if all(iv.is_sign_definite() for iv in encs):
                return SignVector(iv.sign() for iv in encs)
            width /= 16

    def embedding_floor(self, x: "FieldElement", index: int) -> int:
        """Certified floor of the index-th embedding value of x."""
        if x.is_rational:
            v = x.coords[0]
            return v.numerator // v.denominator
        width = self.isolation_width
        while True:
            iv = self.embedding_enclosures(x, width)[index]
            lo = iv.lo.numerator // iv.lo.denominator
            hi = iv.hi.numerator // iv.hi.denominator
            if lo == hi:
                return lo
            width /= 16

    def sorted_embedding_indices(self, x: "FieldElement") -> tuple[int, ...]:
        """Embedding indices ordered by ascending value of x.

        Requires the embedding values of x to be pairwise distinct
        (automatic for non-rational elements of a cubic field);
        otherwise refinement would not terminate.
        """
        width = self.isolation_width
        while True:
            encs = self.embedding_enclosures(x, width)
            disjoint = all(
                encs[i].hi < encs[j].lo or encs[j].hi < encs[i].lo
                for i in range(self.degree)
                for j in range(i + 1, self.degree)
            )
            if disjoint:
                return tuple(sorted(range(self.degree), key=lambda i: encs[i].lo))
            width /= 16


class FieldElement:
    """Element of a NumberField with exact rational power-basis coordinates."""

    __slots__ = ("field", "coords")

    def __init__(self, field: NumberField, coords: tuple[Fraction, ...]) -> None:
        self.field = field
        self.coords = coords

    # -- plumbing ------------------------------------------------------------

    def _check(self, other: "FieldElement") -> None:
        if self.field != other.field:
            raise FieldMismatchError("elements belong to different fields")

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FieldElement)
            and self.field == other.field
            and self.coords == other.coords
        )

    def __hash__(self) -> int:
        return hash((self.field.key, self.coords))

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"FieldElement{self.coords}"

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    @property
    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coords[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational:
            raise ValueError("element is not rational")
        return self.coords[0]

    # -- ring operations -------------------------------------------------

    def __add__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return self.field.element(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return self.field.element(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "FieldElement":
        return self.field.element(tuple(-a for a in self.coords))

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        prod = poly_mul(poly_trim(self.coords), poly_trim(other.coords))
        _, rem = poly_divmod(prod, self.field.defining.rational())
        return self.field.element(rem)

    def scale(self, s: Fraction | int) -> "FieldElement":
        s = Fraction(s)
        return self.field.element(tuple(c * s for c in self.coords))

    def shift(self, s: Fraction | int) -> "FieldElement":
        """Add a rational number."""
        s = Fraction(s)
        return self.field.element((self.coords[0] + s,) + self.coords[1:])

    def __pow__(self, exponent: int) -> "FieldElement":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = self.field.one()
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> "FieldElement":
        if self.is_zero:
            raise ZeroElementError("inversion of zero")
        m = self.field.defining.rational()
        g = poly_trim(self.coords)
        # extended euclid: s*m + t*g = gcd = 1
        r0, r1 = m, g
        t0, t1 = (), (Fraction(1),)
        while not poly_is_zero(r1):
            q, r = poly_divmod(r0, r1)
            r0, r1 = r1, r
            t0, t1 = t1, poly_sub(t0, poly_mul(q, t1))
        assert len(r0) == 1, "defining polynomial must be irreducible"
        inv = tuple(c / r0[0] for c in t0)
        _, rem = poly_divmod(inv, m)
        return self.field.element(rem)

    def __truediv__(self, other: "FieldElement") -> "FieldElement":
        return self * other.inverse()

    # -- invariants --------------------------------------------------------

    def trace(self) -> Fraction:
        return sum(
            (c * s for c, s in zip(self.coords, self.field.power_sums)),
            Fraction(0),
        )

    def norm(self) -> Fraction:
        g = poly_trim(self.coords)
        if poly_is_zero(g):
            return Fraction(0)
        return resultant(self.field.defining.rational(), g)

    def signature(self) -> SignVector:
        return self.field.signs(self)

    def integral_coords(self) -> tuple[Fraction, ...]:
        """Coordinates over the field's integral basis."""
        return linalg.vec_mat(self.coords, self.field.basis_inv)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.integral_coords())

    def is_unit(self) -> bool:
        """|norm| == 1; defined only for algebraic integers."""
        if not self.is_integral():
            raise NonIntegralElementError("unit test requires an algebraic integer")
        return abs(self.norm()) == 1

    def minimal_polynomial(self) -> RatPoly:
        """Monic minimal polynomial over Q, constant term first."""
        d = self.field.degree
        rows: list[tuple[Fraction, ...]] = []
        power = self.field.one()
        for _ in range(d + 1):
            rows.append(power.coords)
            power = power * self
        # find the first power dependent on earlier ones
        for k in range(1, d + 1):
            a = linalg.as_matrix(rows[:k])
            target = rows[k]
            sol = _solve_dependency(a, target)
            if sol is not None:
                return poly_trim(tuple(-c for c in sol) + (Fraction(1),))
        raise AssertionError("element has no minimal polynomial; impossible")

    def multiplication_matrix(self) -> linalg.Matrix:
        """Matrix of y -> x*y on the power basis (rows are images)."""
        rows = []
        for j in range(self.field.degree):
            basis_vec = self.field.element(
                tuple(Fraction(1 if i == j else 0) for i in range(self.field.degree))
            )
            rows.append((self * basis_vec).coords)
        return linalg.as_matrix(rows)


def _solve_dependency(rows: linalg.Matrix, target: tuple[Fraction, ...]):
    """Coefficients expressing target as a combination of rows, or None."""
    n = len(rows)
    cols = len(target)
    aug = [[rows[r][c] for r in range(n)] + [target[c]] for c in range(cols)]
    # gaussian elimination on the cols x n system
    pivots: list[tuple[int, int]] = []
    row = 0
    for col in range(n):
        pivot = next((r for r in range(row, cols) if aug[r][col] != 0), None)
        if pivot is None:
            continue
        aug[row], aug[pivot] = aug[pivot], aug[row]
        inv = 1 / aug[row][col]
        aug[row] = [v * inv for v in aug[row]]
        for r in range(cols):
            if r != row and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [v - f * w for v, w in zip(aug[r], aug[row])]
        pivots.append((row, col))
        row += 1
    # inconsistent if a zero row has nonzero rhs
    for r in range(row, cols):
        if aug[r][n] != 0:
            return None
    sol = [Fraction(0)] * n
    for prow, pcol in pivots:
        sol[pcol] = aug[prow][n]
    return tuple(sol)
