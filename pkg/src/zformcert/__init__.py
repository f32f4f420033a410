"""Exact-arithmetic obstruction certificates against universal Z-forms.

The package certifies that a totally real quadratic, cubic, or
biquadratic field admits no positive definite quadratic form with
rational-integer coefficients that is universal over its ring of
integers, by constructing a non-unit algebraic integer alpha and a
codifferent element delta of the same signature with tr(delta*alpha)=1,
and independently re-verifying the emitted certificate.
"""

from .biquadratic import (
    BiquadElement,
    BiquadField,
    certify_biquadratic,
    codifferent_basis,
    integral_basis,
    normalize_case,
    witness,
)
from .certificates import (
    ObstructionCertificate,
    VerificationResult,
    deserialize,
    serialize,
    verify_certificate,
)
from .cubic import (
    CubicVerdict,
    candidate_cubics,
    certify_cubic,
    construct_deltas,
    filter_by_bounds,
    shortest_beta,
)
from .fields import FieldElement, NumberField, SignVector, default_isolation_width
from .intervals import RatInterval, RootIsolation, isolate_roots
from .lattices import (
    DualBasis,
    GramMatrix,
    LatticeVector,
    ProjectedLattice,
    dual_basis,
    gauss_reduce,
    gram,
    lambda_basis,
    octant_shifts,
    projected_inner,
)
from .pipeline import FieldListEntry, IngestIssue, ScanReport, ingest_field_list, scan
from .polynomials import IntegerPolynomial, is_totally_real, parse_polynomial
from .quadratic import certify_quadratic, delta_f, quad_field, segment_bound_check

__version__ = "0.1.0"
