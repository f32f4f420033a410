"""End-to-end certification for totally real cubic fields.

Pipeline: project the ring of integers onto the trace-zero plane, Gauss-
reduce to get a shortest vector u, lift it to a normalized generator
beta, build two codifferent functionals whose sign patterns match the
two bounded octant segments of the line through beta, then search those
segments for a non-unit.  Fields isomorphic to the maximal real
subfield of the seventh cyclotomic field are the single exception: all
segment points there are units, and the field is recognized explicitly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

from . import linalg
from .errors import (
    DegreeError,
    GeometryError,
    NonMonicError,
    NotTotallyRealError,
    ReducibleError,
)
from .fields import FieldElement, NumberField, SignVector
from .intervals import RatInterval, isolate_roots
from .lattices import (
    LatticeVector,
    dual_basis,
    gauss_reduce,
    lambda_basis,
    octant_shifts,
)
from .polynomials import (
    IntegerPolynomial,
    count_real_roots,
    is_irreducible,
    parse_polynomial,
)

_MAX_REFINE_STEPS = 80

CYCLOTOMIC7_POLY = parse_polynomial("x^3+x^2-2x-1")
CYCLOTOMIC7_LABEL = "Q(zeta7+zeta7^-1)"


@dataclass(frozen=True)
class ConeSpec:
    """Open cone on the trace-zero plane: both linear forms strictly positive.

    Forms act on the embedding-value vector in the frame that sorts the
    reference vector's coordinates descending; every form has zero
    coordinate sum, so projection along the all-ones direction does not
    change its value.
    """

    name: str
    forms: tuple[tuple[int, int, int], tuple[int, int, int]]

    def contains(self, x: FieldElement, perm_desc: tuple[int, ...]) -> bool:
        return all(
            _form_sign(x, perm_desc, form) > 0 for form in self.forms
        )


CONE_C0 = ConeSpec("C0", ((1, -1, 0), (0, 1, -1)))
CONE_C1 = ConeSpec("C1", ((1, 0, -1), (0, -1, 1)))
CONE_C2 = ConeSpec("C2", ((-1, 0, 1), (1, -1, 0)))
CONE_D1 = ConeSpec("D1", ((-1, 2, -1), (2, -1, -1)))
CONE_D2 = ConeSpec("D2", ((1, -2, 1), (1, 1, -2)))


def _form_interval(
    x: FieldElement, perm_desc: tuple[int, ...], form: tuple[int, ...], width: Fraction
) -> RatInterval:
    encs = x.field.embedding_enclosures(x, width)
    acc = RatInterval.point(Fraction(0))
    for pos, coeff in enumerate(form):
        acc = acc + encs[perm_desc[pos]].scale(Fraction(coeff))
    return acc


def _form_sign(x: FieldElement, perm_desc: tuple[int, ...], form: tuple[int, ...]) -> int:
    if x.is_rational:
        return 0  # forms have zero coordinate sum
    width = x.field.isolation_width
    for _ in range(_MAX_REFINE_STEPS):
        iv = _form_interval(x, perm_desc, form, width)
        if iv.is_sign_definite():
            return iv.sign()
        width /= 16
    raise GeometryError("sign of cone form undecided after deep refinement")


@dataclass(frozen=True)
class ConeGeometry:
    """Exact audit trail of the two-cone construction."""

    perm_desc: tuple[int, int, int]
    u_coords: tuple[int, int]
    v_coords: tuple[int, int]
    v_flipped: bool
    k1: int
    k2: int
    v1_coords: tuple[int, int]
    v2_coords: tuple[int, int]
    u_norm_sq: Fraction
    line_dist_sq: Fraction


@dataclass(frozen=True)
class DeltaWitnessPair:
    """Codifferent pair covering the two bounded octant segments.

    In the descending frame of the reference vector, delta1 has signs
    (+,+,-) and pairs with the first segment; delta2 has (+,-,-) and
    pairs with the second.  Both have trace 0 and trace product 1
    against every lattice point on the reference line.
    """

    delta1: FieldElement
    delta2: FieldElement
    geometry: ConeGeometry

    SEGMENT1_SIGNS = (1, 1, -1)
    SEGMENT2_SIGNS = (1, -1, -1)


def shortest_beta(field: NumberField) -> FieldElement:
    """Integral element whose projection is a shortest lattice vector,
    shifted so its smallest embedding value lies in (-1, 0)."""
    if field.degree != 3:
        raise DegreeError("shortest-vector lift implemented for cubic fields")
    u, _ = gauss_reduce(lambda_basis(field))
    return _normalized_lift(u)


def _normalized_lift(u: LatticeVector) -> FieldElement:
    x = u.representative
    if x.is_rational:
        raise GeometryError("shortest lattice vector lifted to a rational element")
    field = x.field
    order = field.sorted_embedding_indices(x)
    fmin = field.embedding_floor(x, order[0])
    return x.shift(-(fmin + 1))


def _extend_to_basis(u_coords: tuple[int, int]) -> tuple[int, int]:
    a, b = u_coords
    if math.gcd(a, b) != 1:
        raise GeometryError("shortest vector must be primitive")
    # find (s, t) with s*a + t*b == 1, then (-t, s) completes the basis
    s, t = _ext_gcd(a, b)
    return (-t, s)


def _ext_gcd(a: int, b: int) -> tuple[int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_s, old_t = -old_s, -old_t
    return old_s, old_t


def _cone_window_bounds(
    perm_desc, u_el: FieldElement, v_el: FieldElement, cone: ConeSpec, width: Fraction
) -> tuple[RatInterval, RatInterval] | None:
    """Enclosures (lo, hi) of the open t-window with v + t*u in the cone.

    Each form F gives F(v) + t*F(u) > 0; the sign of F(u) decides
    whether the constraint bounds t from below or above.  Returns None
    while the coefficient enclosures still straddle zero.
    """
    lower: RatInterval | None = None
    upper: RatInterval | None = None
    for form in cone.forms:
        fu = _form_interval(u_el, perm_desc, form, width)
        fv = _form_interval(v_el, perm_desc, form, width)
        if not fu.is_sign_definite():
            return None
        quotients = (-fv.lo / fu.lo, -fv.lo / fu.hi, -fv.hi / fu.lo, -fv.hi / fu.hi)
        bound = RatInterval(min(quotients), max(quotients))
        if fu.sign() > 0:
            lower = bound if lower is None else _iv_max(lower, bound)
        else:
            upper = bound if upper is None else _iv_min(upper, bound)
    if lower is None or upper is None:
        raise GeometryError("cone window must have one lower and one upper bound")
    return lower, upper


def _iv_max(a: RatInterval, b: RatInterval) -> RatInterval:
    return RatInterval(max(a.lo, b.lo), max(a.hi, b.hi))


def _iv_min(a: RatInterval, b: RatInterval) -> RatInterval:
    return RatInterval(min(a.lo, b.lo), min(a.hi, b.hi))


def _smallest_integer_in_window(
    perm_desc, u_el, v_el, cone: ConeSpec
) -> int | None:
    """Smallest integer k with v + k*u strictly inside the cone; None if
    the window is certifiably empty."""
    width = u_el.field.isolation_width
    for _ in range(_MAX_REFINE_STEPS):
        bounds = _cone_window_bounds(perm_desc, u_el, v_el, cone, width)
        if bounds is not None:
            lo, hi = bounds
            k = lo.hi.numerator // lo.hi.denominator + 1  # floor(lo.hi) + 1
            if Fraction(k) < hi.lo:
                return k
            if hi.hi < lo.lo:
                return None
        width /= 16
    raise GeometryError("cone window undecided after deep refinement")


def construct_deltas(field: NumberField, u: LatticeVector) -> DeltaWitnessPair:
    """Build the two codifferent witnesses attached to a shortest vector.

    Verifies the geometric facts it relies on exactly: the line through
    the second basis vector keeps distance^2 at least (3/4)|u|^2 from the
    origin, integer shears land in both target cones, and the resulting
    functionals have trace 0, trace product 1 on the line, and the
    advertised sign patterns.  Any failure raises GeometryError.
    """
    lattice = u.lattice
    field_check = lattice.field
    if field_check != field:
        raise ValueError("lattice vector belongs to a different field")
    if field.degree != 3 or lattice.rank != 2:
        raise DegreeError("delta construction requires a cubic field")
    shortest, _ = gauss_reduce(lattice)
    if u.norm_sq() != shortest.norm_sq():
        raise ValueError("u is not a shortest lattice vector")
    x_u = u.representative
    if x_u.is_rational:
        raise ValueError("shortest vector has repeated embedding values")
    perm_asc = field.sorted_embedding_indices(x_u)
    perm_desc = tuple(reversed(perm_asc))
    if not CONE_C0.contains(x_u, perm_desc):
        raise GeometryError("reference vector must sort strictly descending")

    v_coords = _extend_to_basis(u.coords)
    mu = _round_half_up(lattice.inner(u.coords, v_coords) / u.norm_sq())
    v_coords = (v_coords[0] - mu * u.coords[0], v_coords[1] - mu * u.coords[1])

    # distance from the origin to the line v + t*u (shear/sign invariant)
    v_norm_sq = lattice.norm_sq(v_coords)
    uv = lattice.inner(u.coords, v_coords)
    line_dist_sq = v_norm_sq - uv * uv / u.norm_sq()
    if line_dist_sq < Fraction(3, 4) * u.norm_sq():
        raise GeometryError("line through v is too close to the origin")

    flipped = False
    k1 = None
    for flip in (False, True):
        cand = tuple(-c for c in v_coords) if flip else v_coords
        v_el = lattice.vector(cand).representative
        k1 = _smallest_integer_in_window(perm_desc, x_u, v_el, CONE_C1)
        if k1 is not None:
            flipped = flip
            v_coords = cand
            break
    if k1 is None:
        raise GeometryError("neither orientation of v meets the first cone")
    v_el = lattice.vector(v_coords).representative
    k2 = _smallest_integer_in_window(perm_desc, x_u, v_el, CONE_C2)
    if k2 is None:
        raise GeometryError("line misses the second cone")

    v1 = (v_coords[0] + k1 * u.coords[0], v_coords[1] + k1 * u.coords[1])
    v2 = (v_coords[0] + k2 * u.coords[0], v_coords[1] + k2 * u.coords[1])
    if not CONE_C1.contains(lattice.vector(v1).representative, perm_desc):
        raise GeometryError("sheared vector is not inside the first cone")
    if not CONE_C2.contains(lattice.vector(v2).representative, perm_desc):
        raise GeometryError("sheared vector is not inside the second cone")

    duals = dual_basis(field, field.integral_basis_elements()).elements
    delta1 = _functional_element(field, duals, u.coords, v1)
    delta2 = _functional_element(field, duals, u.coords, v2)

    geometry = ConeGeometry(
        perm_desc=perm_desc,
        u_coords=u.coords,
        v_coords=v_coords,
        v_flipped=flipped,
        k1=k1,
        k2=k2,
        v1_coords=v1,
        v2_coords=v2,
        u_norm_sq=u.norm_sq(),
        line_dist_sq=line_dist_sq,
    )
    pair = DeltaWitnessPair(delta1=delta1, delta2=delta2, geometry=geometry)
    _verify_pair(field, pair, x_u, perm_desc)
    return pair


def _round_half_up(x: Fraction) -> int:
    y = x + Fraction(1, 2)
    return y.numerator // y.denominator


def _functional_element(
    field: NumberField,
    duals,
    u_coords: tuple[int, int],
    w_coords: tuple[int, int],
) -> FieldElement:
    """Codifferent element of the functional with value 1 on u, 0 on w."""
    det = u_coords[0] * w_coords[1] - u_coords[1] * w_coords[0]
    if det not in (1, -1):
        raise GeometryError("functional basis must be unimodular")
    # inverse of [[u0,u1],[w0,w1]] has first column (w1, -w0)/det
    f_omega2 = Fraction(w_coords[1], det)
    f_omega3 = Fraction(-w_coords[0], det)
    return duals[1].scale(f_omega2) + duals[2].scale(f_omega3)


def _verify_pair(
    field: NumberField, pair: DeltaWitnessPair, x_u: FieldElement, perm_desc
) -> None:
    for delta, target in (
        (pair.delta1, DeltaWitnessPair.SEGMENT1_SIGNS),
        (pair.delta2, DeltaWitnessPair.SEGMENT2_SIGNS),
    ):
        if delta.trace() != 0:
            raise GeometryError("witness functional must have trace zero")
        if (delta * x_u).trace() != 1:
            raise GeometryError("witness functional must evaluate to 1 on u")
        sig = delta.signature()
        if tuple(sig[i] for i in perm_desc) != target:
            raise GeometryError("witness functional has the wrong sign pattern")
    if not CONE_D1.contains(pair.delta1, perm_desc):
        raise GeometryError("first witness is outside its rotated cone")
    if not CONE_D2.contains(pair.delta2, perm_desc):
        raise GeometryError("second witness is outside its rotated cone")


# ---------------------------------------------------------------------------
# candidate enumeration
# ---------------------------------------------------------------------------

def candidate_cubics() -> list[IntegerPolynomial]:
    """The 24 monic cubics allowed by the unit constraints.

    Coefficient box: 0 <= c1 <= 5, constant-term norm +-1, value at 1
    equal to +-1; writing m = x^3 - c1 x^2 + c2 x - c3, the value
    constraint fixes c2.
    """
    out = []
    for c1 in range(6):
        for c3 in (1, -1):
            for m1 in (1, -1):
                c2 = m1 - 1 + c1 + c3
                out.append(IntegerPolynomial((-c3, c2, -c1, 1)))
    return out


def _root_strictly_inside(iso, idx: int, lo: int, hi: int) -> bool:
    """Certified test lo < root_idx < hi for integer bounds.

    Roots here are irrational (candidates with rational roots are
    discarded as reducible), so refinement always decides.
    """
    iv = iso.intervals[idx]
    for _ in range(_MAX_REFINE_STEPS):
        if Fraction(lo) < iv.lo and iv.hi < Fraction(hi):
            return True
        if iv.hi < Fraction(lo) or Fraction(hi) < iv.lo:
            return False
        iso = iso.refined(iv.width / 16)
        iv = iso.intervals[idx]
    raise GeometryError("root bound comparison undecided")


def filter_by_bounds(candidates: list[IntegerPolynomial]) -> list[IntegerPolynomial]:
    """Keep candidates that are irreducible, totally real, and whose
    ascending roots lie in (-1,0), (-1,2), (1,4)."""
    survivors = []
    for poly in candidates:
        if not is_irreducible(poly):
            continue
        if count_real_roots(poly) != 3:
            continue
        iso = isolate_roots(poly, Fraction(1, 2**10))
        if not _root_strictly_inside(iso, 0, -1, 0):
            continue
        if not _root_strictly_inside(iso, 1, -1, 2):
            continue
        if not _root_strictly_inside(iso, 2, 1, 4):
            continue
        survivors.append(poly)
    return survivors


# ---------------------------------------------------------------------------
# exceptional-field recognition
# ---------------------------------------------------------------------------

def find_root_in_field(field: NumberField, target: IntegerPolynomial) -> FieldElement | None:
    """Exact root of `target` inside the field, or None.

    Embedding values are matched numerically at high precision, the
    candidate coordinates are reconstructed as small rationals, and the
    result is accepted only after exact polynomial evaluation; the
    final answer therefore never depends on the numerics.
    """
    d = field.degree
    if target.degree != d:
        return None
    if count_real_roots(target) != d:
        return None
    tiny = Fraction(1, 2**90)
    theta = [
        (iv.lo + iv.hi) / 2 for iv in field.root_enclosures(tiny)
    ]
    target_iso = isolate_roots(target, tiny)
    target_mids = [(iv.lo + iv.hi) / 2 for iv in target_iso.intervals]
    vander = linalg.as_matrix([[t**k for k in range(d)] for t in theta])
    for assignment in permutations(range(d)):
        rhs = tuple(target_mids[assignment[i]] for i in range(d))
        approx = linalg.solve(vander, rhs)
        coords = tuple(c.limit_denominator(10**8) for c in approx)
        gamma = field.element(coords)
        value = field.zero()
        power = field.one()
        for coeff in target.coefficients:
            value = value + power.scale(coeff)
            power = power * gamma
        if value.is_zero:
            return gamma
    return None


def recognize_cyclotomic7(field: NumberField) -> FieldElement | None:
    """Generator witnessing isomorphism with the degree-49-discriminant
    cyclotomic subfield, or None."""
    from .lattices import gram

    if field.degree != 3:
        return None
    disc = gram(field, field.integral_basis_elements()).determinant()
    if disc != 49:
        return None
    return find_root_in_field(field, CYCLOTOMIC7_POLY)


# ---------------------------------------------------------------------------
# full certification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CubicVerdict:
    """Outcome of cubic certification plus the full diagnostic trail."""

    verdict: str  # "obstruction" | "exceptional"
    field: NumberField
    beta: FieldElement
    witness_pair: DeltaWitnessPair
    segment_shifts: tuple[tuple[int, ...], tuple[int, ...]]
    beta_in_bounds: bool
    alpha: FieldElement | None = None
    delta: FieldElement | None = None
    epsilon: SignVector | None = None
    norm_alpha: Fraction | None = None
    shift: int | None = None
    segment: int | None = None
    exceptional_generator: FieldElement | None = None


def _beta_bounds_ok(beta: FieldElement) -> bool:
    """Sorted embedding values inside (-1,0), (-1,2), (1,4)."""
    field = beta.field
    order = field.sorted_embedding_indices(beta)
    floors = [field.embedding_floor(beta, i) for i in order]
    return floors[0] == -1 and floors[1] in (-1, 0, 1) and floors[2] in (1, 2, 3)


def certify_cubic(
    poly: IntegerPolynomial, integral_basis: linalg.Matrix | None = None
) -> CubicVerdict:
    """Certify one totally real cubic field.

    Returns an obstruction witness (alpha, delta, epsilon) with
    tr(delta*alpha) == 1, matching signatures, and |N(alpha)| != 1, or
    the exceptional verdict when every point on both segments is a unit
    and the field is recognized as the cyclotomic exception.
    """
    if poly.degree != 3:
        raise DegreeError(f"expected a cubic polynomial, got degree {poly.degree}")
    if not poly.is_monic:
        raise NonMonicError("defining polynomial must be monic")
    if not is_irreducible(poly):
        raise ReducibleError(f"{poly.text()} is reducible")
    if count_real_roots(poly) != 3:
        raise NotTotallyRealError(f"{poly.text()} is not totally real")

    field = NumberField.from_polynomial(poly, integral_basis)
    lattice = lambda_basis(field)
    u, _ = gauss_reduce(lattice)
    beta = _normalized_lift(u)
    pair = construct_deltas(field, u)
    seg1, seg2 = octant_shifts(beta)
    bounds_ok = _beta_bounds_ok(beta)

    nonunits = [
        (t, seg)
        for seg, shifts in ((1, seg1), (2, seg2))
        for t in shifts
        if not beta.shift(-t).is_unit()
    ]
    if nonunits:
        t, seg = min(nonunits, key=lambda ts: (abs(ts[0]), 0 if ts[0] < 0 else 1))
        alpha = beta.shift(-t)
        delta = pair.delta1 if seg == 1 else pair.delta2
        if (delta * alpha).trace() != 1:
            raise GeometryError("trace product is not 1 on the chosen segment")
        epsilon = alpha.signature()
        if delta.signature() != epsilon:
            raise GeometryError("witness signatures disagree")
        return CubicVerdict(
            verdict="obstruction",
            field=field,
            beta=beta,
            witness_pair=pair,
            segment_shifts=(seg1, seg2),
            beta_in_bounds=bounds_ok,
            alpha=alpha,
            delta=delta,
            epsilon=epsilon,
            norm_alpha=alpha.norm(),
            shift=t,
            segment=seg,
        )

    gamma = recognize_cyclotomic7(field)
    if gamma is None:
        raise GeometryError(
            "all segment points are units but the field is not the known exception"
        )
    return CubicVerdict(
        verdict="exceptional",
        field=field,
        beta=beta,
        witness_pair=pair,
        segment_shifts=(seg1, seg2),
        beta_in_bounds=bounds_ok,
        exceptional_generator=gamma,
    )
