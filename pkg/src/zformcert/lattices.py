"""The trace form as a Euclidean lattice.

Gram matrices and dual (codifferent) bases of an integral basis, the
orthogonal projection onto the trace-zero hyperplane, Gauss-Lagrange
reduction of the projected rank-2 lattice, and enumeration of the
integer shifts that land on the two bounded octant segments of a line
parallel to the all-ones vector.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .errors import DegreeError, RationalElementError, SingularMatrixError
from .fields import FieldElement, NumberField


@dataclass(frozen=True)
class GramMatrix:
    """Symmetric matrix of trace pairings tr(w_i w_j)."""

    entries: linalg.Matrix

    def __post_init__(self) -> None:
        n = len(self.entries)
        if any(len(r) != n for r in self.entries):
            raise ValueError("gram matrix must be square")
        if self.entries != linalg.transpose(self.entries):
            raise ValueError("gram matrix must be symmetric")

    @property
    def size(self) -> int:
        return len(self.entries)

    def determinant(self) -> Fraction:
        return linalg.determinant(self.entries)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        return self.entries[ij[0]][ij[1]]

    def inner(self, a: Sequence[int], b: Sequence[int]) -> Fraction:
        """Inner product of integer coordinate vectors under this Gram."""
        total = Fraction(0)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            row = self.entries[i]
            for j, bj in enumerate(b):
                if bj:
                    total += ai * bj * row[j]
        return total


def gram(field: NumberField, basis: Sequence[FieldElement]) -> GramMatrix:
    """Trace pairing matrix of a linearly independent family."""
    entries = tuple(
        tuple((x * y).trace() for y in basis) for x in basis
    )
    g = GramMatrix(entries)
    if g.determinant() == 0:
        raise SingularMatrixError("basis is linearly dependent")
    return g


@dataclass(frozen=True)
class DualBasis:
    """Elements d_j with tr(w_i d_j) equal to the Kronecker delta."""

    elements: tuple[FieldElement, ...]


def dual_basis(field: NumberField, basis: Sequence[FieldElement]) -> DualBasis:
    """Solve the trace pairing system exactly; duals span the codifferent
    when the input is an integral basis."""
    g = gram(field, basis)
    inv = linalg.invert(g.entries)
    duals = []
    for j in range(len(basis)):
        acc = field.zero()
        for k, w in enumerate(basis):
            acc = acc + w.scale(inv[k][j])
        duals.append(acc)
    out = DualBasis(tuple(duals))
    for i, w in enumerate(basis):
        for j, dj in enumerate(out.elements):
            if (w * dj).trace() != (1 if i == j else 0):
                raise AssertionError("dual basis pairing identity failed")
    return out


def projected_inner(x: FieldElement, y: FieldElement) -> Fraction:
    """Inner product of the projections onto the trace-zero hyperplane."""
    if x.field != y.field:
        raise ValueError("elements belong to different fields")
    d = x.field.degree
    return (x * y).trace() - x.trace() * y.trace() / d


@dataclass(frozen=True)
class ProjectedLattice:
    """Rank d-1 lattice of projected integral elements.

    Representatives are coset representatives modulo the integers; the
    canonical representative has trace in [0, d).
    """

    field: NumberField
    representatives: tuple[FieldElement, ...]
    gram: GramMatrix

    @property
    def rank(self) -> int:
        return len(self.representatives)

    def vector(self, coords: Sequence[int]) -> "LatticeVector":
        coords = tuple(int(c) for c in coords)
        if len(coords) != self.rank:
            raise ValueError("coordinate length mismatch")
        elem = self.field.zero()
        for c, rep in zip(coords, self.representatives):
            elem = elem + rep.scale(c)
        return LatticeVector(self, coords, elem)

    def norm_sq(self, coords: Sequence[int]) -> Fraction:
        return self.gram.inner(coords, coords)

    def inner(self, a: Sequence[int], b: Sequence[int]) -> Fraction:
        return self.gram.inner(a, b)


@dataclass(frozen=True)
class LatticeVector:
    """Integer coordinates over the current lattice basis plus a
    representative field element projecting onto the vector."""

    lattice: ProjectedLattice
    coords: tuple[int, ...]
    representative: FieldElement

    def norm_sq(self) -> Fraction:
        return self.lattice.norm_sq(self.coords)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)


def canonical_representative(x: FieldElement) -> FieldElement:
    """Shift by an integer so the trace lands in [0, d)."""
    d = x.field.degree
    t = x.trace()
    k = (t / d).numerator // (t / d).denominator
    return x.shift(-k)


def lambda_basis(field: NumberField) -> ProjectedLattice:
    """Basis of the projected lattice from the non-rational basis elements."""
    basis = field.integral_basis_elements()
    reps = tuple(canonical_representative(w) for w in basis[1:])
    entries = tuple(
        tuple(projected_inner(a, b) for b in reps) for a in reps
    )
    g = GramMatrix(entries)
    if g.determinant() <= 0:
        raise AssertionError("projected Gram must be positive definite")
    return ProjectedLattice(field, reps, g)


def _round_half_up(x: Fraction) -> int:
    return (x + Fraction(1, 2)).numerator // (x + Fraction(1, 2)).denominator


def _sign_normalize(coords: tuple[int, ...]) -> tuple[int, ...]:
    for c in coords:
        if c > 0:
            return coords
        if c < 0:
            return tuple(-v for v in coords)
    return coords


def gauss_reduce(lattice: ProjectedLattice) -> tuple[LatticeVector, LatticeVector]:
    """Gauss-Lagrange reduction of a rank-2 lattice.

    Returns (u, v) with u a shortest nonzero vector, |<u,v>| <= |u|^2/2
    and |v| >= |u|.  Ties |u| == |v| resolve to the lexicographically
    smaller sign-normalized coordinate vector, making output
    deterministic.
    """
    if lattice.rank != 2:
        raise DegreeError("gauss reduction requires a rank-2 lattice")
    a, b = (1, 0), (0, 1)
    if lattice.norm_sq(a) > lattice.norm_sq(b):
        a, b = b, a
    while True:
        mu = _round_half_up(lattice.inner(a, b) / lattice.norm_sq(a))
        b = (b[0] - mu * a[0], b[1] - mu * a[1])
        if lattice.norm_sq(b) < lattice.norm_sq(a):
            a, b = b, a
        else:
            break
    a, b = _sign_normalize(a), _sign_normalize(b)
    if lattice.norm_sq(a) == lattice.norm_sq(b) and b < a:
        a, b = b, a
    return lattice.vector(a), lattice.vector(b)


def octant_shifts(beta: FieldElement) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Integer shifts t placing beta - t on each bounded octant segment.

    In the frame sorting the embedding values of beta descending, the two
    bounded pieces of the line through the embedding image parallel to
    the all-ones direction carry sign patterns (+,+,-) and (+,-,-); the
    lattice points on the line are exactly the integer shifts of beta.
    Membership is decided by certified floors of the embedding values.
    """
    field = beta.field
    if field.degree != 3:
        raise DegreeError("octant segments are defined for cubic fields")
    if beta.is_rational:
        raise RationalElementError("element has repeated embedding values")
    order = field.sorted_embedding_indices(beta)
    floors = [field.embedding_floor(beta, i) for i in order]
    # values v0 < v1 < v2; shifts strictly between consecutive values
    seg1 = tuple(range(floors[0] + 1, floors[1] + 1))
    seg2 = tuple(range(floors[1] + 1, floors[2] + 1))
    # every shift is an integral point on the line; certify the octant
    # sign pattern in the value-sorted frame: (-,+,+) resp. (-,-,+)
    for seg, pattern in ((seg1, (-1, 1, 1)), (seg2, (-1, -1, 1))):
        for t in seg:
            sig = (beta.shift(-t)).signature()
            if tuple(sig[i] for i in order) != pattern:
                raise AssertionError("octant shift has unexpected signature")
    return seg1, seg2
