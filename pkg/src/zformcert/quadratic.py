"""Real quadratic fields: the trace-zero witness and the segment-length bound.

The ring of integers of Q(sqrt(D)) is Z[tau] with tau = sqrt(D) or
(1+sqrt(D))/2 depending on D mod 4, so the field always uses the power
basis of tau's minimal polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import is_squarefree_int
from .fields import FieldElement, NumberField, SignVector
from .lattices import dual_basis
from .polynomials import IntegerPolynomial


@dataclass(frozen=True)
class QuadField:
    """Q(sqrt(D)) for squarefree D >= 2, with its maximal order."""

    D: int
    field: NumberField

    @property
    def tau(self) -> FieldElement:
        return self.field.generator()

    @property
    def uses_half_integer(self) -> bool:
        return self.D % 4 == 1


def quad_field(D: int) -> QuadField:
    if D < 2 or not is_squarefree_int(D):
        raise ValueError(f"D must be a squarefree integer >= 2, got {D}")
    if D % 4 == 1:
        poly = IntegerPolynomial((-(D - 1) // 4, -1, 1))  # x^2 - x - (D-1)/4
    else:
        poly = IntegerPolynomial((-D, 0, 1))  # x^2 - D
    return QuadField(D, NumberField.from_polynomial(poly))


def delta_f(D: int) -> FieldElement:
    """Codifferent element with trace 0 pairing to 1 against tau."""
    qf = quad_field(D)
    duals = dual_basis(qf.field, qf.field.integral_basis_elements())
    delta = duals.elements[1]
    assert delta.trace() == 0 and (delta * qf.tau).trace() == 1
    return delta


@dataclass(frozen=True)
class QuadVerdict:
    verdict: str  # "obstruction" | "exceptional"
    D: int
    field: NumberField
    alpha: FieldElement | None = None
    delta: FieldElement | None = None
    epsilon: SignVector | None = None
    norm_alpha: Fraction | None = None
    shift: int | None = None


# signature of a + tau in the ascending-root frame: smaller root negative
_TARGET_SIGNS = SignVector((-1, 1))


def certify_quadratic(D: int) -> QuadVerdict:
    """Search a in [-2, 2] for a non-unit a + tau with mixed signs.

    For every squarefree D except 5 at least one of the shifts -1, 0, 1
    qualifies; D == 5 is the exceptional field.
    """
    qf = quad_field(D)
    tau = qf.tau
    dual = delta_f(D)
    witnesses = []
    for a in range(-2, 3):
        alpha = tau.shift(a)
        if alpha.signature() != _TARGET_SIGNS:
            continue
        if abs(alpha.norm()) == 1:
            continue
        witnesses.append((a, alpha))
    if not witnesses:
        if D != 5:
            raise AssertionError("only D = 5 may lack a quadratic witness")
        return QuadVerdict(verdict="exceptional", D=D, field=qf.field)
    a, alpha = min(witnesses, key=lambda w: (abs(w[0]), 0 if w[0] < 0 else 1))
    assert (dual * alpha).trace() == 1
    epsilon = alpha.signature()
    assert dual.signature() == epsilon
    return QuadVerdict(
        verdict="obstruction",
        D=D,
        field=qf.field,
        alpha=alpha,
        delta=dual,
        epsilon=epsilon,
        norm_alpha=alpha.norm(),
        shift=a,
    )


@dataclass(frozen=True)
class SegmentBoundResult:
    """Exact comparison of the embedding spread of tau with 3.

    The relevant mixed-sign segment holds at most two unit points, so
    the spread rho_max(tau) - rho_min(tau) (a square root of
    `spread_squared`) must stay below 3 for the field to avoid an
    immediate witness; only D = 2 and D = 5 pass.
    """

    D: int
    spread_squared: Fraction
    passes: bool


def segment_bound_check(D: int) -> SegmentBoundResult:
    qf = quad_field(D)
    # spread = sqrt(D) for half-integer tau, 2*sqrt(D) otherwise
    spread_sq = Fraction(D) if qf.uses_half_integer else Fraction(4 * D)
    return SegmentBoundResult(D=D, spread_squared=spread_sq, passes=spread_sq < 9)
