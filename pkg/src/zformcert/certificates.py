"""Obstruction certificates: schema, serialization, independent verifier.

Certificates are single-line JSON with every rational serialized as an
exact "numerator/denominator" string; floats never appear.  The
verifier rebuilds the field from the recorded description and re-checks
each condition with the generic field primitives only, sharing no code
with witness construction.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from . import linalg
from .arith import is_squarefree_int
from .errors import CertificateError
from .fields import NumberField
from .polynomials import parse_polynomial

SCHEMA_VERSION = "1"

CONVENTION_ASCENDING = "ascending-roots"
CONVENTION_BIQUAD_TABLE = "biquadratic-table"

ASSUMPTION_NOTE = (
    "Obstruction semantics assume every totally positive unit of the field is "
    "a square; this holds whenever the twisted trace-form lattices of the ring "
    "of integers are of E-type, which is true in every degree up to 43. The "
    "hypothesis is recorded, not re-verified."
)

CHECK_FIELD = "a:field"
CHECK_ALPHA_INTEGRAL = "b:alpha-integral"
CHECK_DELTA_CODIFFERENT = "c:delta-codifferent"
CHECK_SIGNATURE = "d:signature"
CHECK_TRACE_PRODUCT = "e:trace-product"
CHECK_NORM = "f:alpha-norm"
CHECK_VERDICT = "verdict:exceptional"
CHECK_SCHEMA = "schema"

_RATIONAL_RE = re.compile(r"^-?\d+(/[1-9]\d*)?$")


def rational_to_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def str_to_rational(s: str) -> Fraction:
    if not isinstance(s, str) or not _RATIONAL_RE.match(s):
        raise CertificateError(f"bad rational string: {s!r}")
    return Fraction(s)


@dataclass(frozen=True)
class PolynomialFieldDesc:
    degree: int
    defining_poly: str
    integral_basis: tuple[tuple[str, ...], ...]

    kind = "polynomial"


@dataclass(frozen=True)
class BiquadraticFieldDesc:
    p: int
    q: int
    case_id: int
    triple: tuple[int, int, int]

    kind = "biquadratic"


@dataclass(frozen=True)
class QuadraticFieldDesc:
    D: int

    kind = "quadratic"


FieldDesc = Union[PolynomialFieldDesc, BiquadraticFieldDesc, QuadraticFieldDesc]


@dataclass(frozen=True)
class ObstructionCertificate:
    """Serialized witness against a universal integer-coefficient form.

    For verdict "obstruction" the payload carries alpha, delta, the
    shared signature epsilon, the exact trace product (always "1") and
    the norm of alpha; the "exceptional" verdict carries the field only.
    """

    schema_version: str
    field: FieldDesc
    convention: str
    verdict: str
    alpha: tuple[str, ...] | None
    delta: tuple[str, ...] | None
    epsilon: tuple[int, ...] | None
    trace_product: str | None
    norm_alpha: str | None
    isolation_width: str
    assumption_note: str


def serialize(cert: ObstructionCertificate) -> str:
    f = cert.field
    if isinstance(f, PolynomialFieldDesc):
        field_payload = {
            "kind": f.kind,
            "degree": f.degree,
            "defining_poly": f.defining_poly,
            "integral_basis": [list(row) for row in f.integral_basis],
        }
    elif isinstance(f, BiquadraticFieldDesc):
        field_payload = {
            "kind": f.kind,
            "p": f.p,
            "q": f.q,
            "case_id": f.case_id,
            "triple": list(f.triple),
        }
    else:
        field_payload = {"kind": f.kind, "D": f.D}
    payload = {
        "schema_version": cert.schema_version,
        "field": field_payload,
        "convention": cert.convention,
        "verdict": cert.verdict,
        "alpha": list(cert.alpha) if cert.alpha is not None else None,
        "delta": list(cert.delta) if cert.delta is not None else None,
        "epsilon": list(cert.epsilon) if cert.epsilon is not None else None,
        "trace_product": cert.trace_product,
        "norm_alpha": cert.norm_alpha,
        "isolation_width": cert.isolation_width,
        "assumption_note": cert.assumption_note,
    }
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def deserialize(line: str) -> ObstructionCertificate:
    try:
        payload = json.loads(line)
    except json.JSONDecodeError as exc:
        raise CertificateError(f"certificate is not valid JSON: {exc}") from exc
    if not isinstance(payload, dict):
        raise CertificateError("certificate must be a JSON object")
    required = {
        "schema_version",
        "field",
        "convention",
        "verdict",
        "alpha",
        "delta",
        "epsilon",
        "trace_product",
        "norm_alpha",
        "isolation_width",
        "assumption_note",
    }
    missing = required - payload.keys()
    if missing:
        raise CertificateError(f"certificate missing keys: {sorted(missing)}")
    fp = payload["field"]
    if not isinstance(fp, dict) or "kind" not in fp:
        raise CertificateError("field description must be an object with a kind")
    kind = fp["kind"]
    field: FieldDesc
    if kind == "polynomial":
        basis = fp.get("integral_basis")
        if not isinstance(basis, list):
            raise CertificateError("polynomial field needs an integral_basis matrix")
        field = PolynomialFieldDesc(
            degree=int(fp["degree"]),
            defining_poly=str(fp["defining_poly"]),
            integral_basis=tuple(tuple(str(c) for c in row) for row in basis),
        )
    elif kind == "biquadratic":
        field = BiquadraticFieldDesc(
            p=int(fp["p"]),
            q=int(fp["q"]),
            case_id=int(fp["case_id"]),
            triple=tuple(int(v) for v in fp["triple"]),
        )
    elif kind == "quadratic":
        field = QuadraticFieldDesc(D=int(fp["D"]))
    else:
        raise CertificateError(f"unknown field kind {kind!r}")

    def opt_strs(key):
        value = payload[key]
        if value is None:
            return None
        if not isinstance(value, list):
            raise CertificateError(f"{key} must be a list or null")
        return tuple(str(v) for v in value)

    epsilon = payload["epsilon"]
    if epsilon is not None:
        if not isinstance(epsilon, list) or any(int(e) not in (-1, 1) for e in epsilon):
            raise CertificateError("epsilon entries must be +1 or -1")
        epsilon = tuple(int(e) for e in epsilon)
    verdict = payload["verdict"]
    if verdict not in ("obstruction", "exceptional"):
        raise CertificateError(f"unknown verdict {verdict!r}")
    cert = ObstructionCertificate(
        schema_version=str(payload["schema_version"]),
        field=field,
        convention=str(payload["convention"]),
        verdict=verdict,
        alpha=opt_strs("alpha"),
        delta=opt_strs("delta"),
        epsilon=epsilon,
        trace_product=None if payload["trace_product"] is None else str(payload["trace_product"]),
        norm_alpha=None if payload["norm_alpha"] is None else str(payload["norm_alpha"]),
        isolation_width=str(payload["isolation_width"]),
        assumption_note=str(payload["assumption_note"]),
    )
    return cert


# ---------------------------------------------------------------------------
# builders
# ---------------------------------------------------------------------------

def _basis_to_strings(matrix: linalg.Matrix) -> tuple[tuple[str, ...], ...]:
    return tuple(tuple(rational_to_str(c) for c in row) for row in matrix)


def _coords_to_strings(coords) -> tuple[str, ...]:
    return tuple(rational_to_str(c) for c in coords)


def _width_str(field: NumberField) -> str:
    return rational_to_str(field.isolation_width)


def certificate_from_cubic(verdict) -> ObstructionCertificate:
    field = verdict.field
    desc = PolynomialFieldDesc(
        degree=3,
        defining_poly=field.defining.text(),
        integral_basis=_basis_to_strings(field.basis_matrix),
    )
    if verdict.verdict == "exceptional":
        return ObstructionCertificate(
            schema_version=SCHEMA_VERSION,
            field=desc,
            convention=CONVENTION_ASCENDING,
            verdict="exceptional",
            alpha=None,
            delta=None,
            epsilon=None,
            trace_product=None,
            norm_alpha=None,
            isolation_width=_width_str(field),
            assumption_note=ASSUMPTION_NOTE,
        )
    return ObstructionCertificate(
        schema_version=SCHEMA_VERSION,
        field=desc,
        convention=CONVENTION_ASCENDING,
        verdict="obstruction",
        alpha=_coords_to_strings(verdict.alpha.coords),
        delta=_coords_to_strings(verdict.delta.coords),
        epsilon=tuple(verdict.epsilon),
        trace_product="1",
        norm_alpha=rational_to_str(verdict.norm_alpha),
        isolation_width=_width_str(field),
        assumption_note=ASSUMPTION_NOTE,
    )


def certificate_from_quadratic(verdict) -> ObstructionCertificate:
    desc = QuadraticFieldDesc(D=verdict.D)
    if verdict.verdict == "exceptional":
        return ObstructionCertificate(
            schema_version=SCHEMA_VERSION,
            field=desc,
            convention=CONVENTION_ASCENDING,
            verdict="exceptional",
            alpha=None,
            delta=None,
            epsilon=None,
            trace_product=None,
            norm_alpha=None,
            isolation_width=_width_str(verdict.field),
            assumption_note=ASSUMPTION_NOTE,
        )
    return ObstructionCertificate(
        schema_version=SCHEMA_VERSION,
        field=desc,
        convention=CONVENTION_ASCENDING,
        verdict="obstruction",
        alpha=_coords_to_strings(verdict.alpha.coords),
        delta=_coords_to_strings(verdict.delta.coords),
        epsilon=tuple(verdict.epsilon),
        trace_product="1",
        norm_alpha=rational_to_str(verdict.norm_alpha),
        isolation_width=_width_str(verdict.field),
        assumption_note=ASSUMPTION_NOTE,
    )


def certificate_from_biquadratic(f, alpha, delta, epsilon) -> ObstructionCertificate:
    desc = BiquadraticFieldDesc(
        p=f.source[0],
        q=f.source[1],
        case_id=f.case_id,
        triple=(f.p, f.q, f.r),
    )
    return ObstructionCertificate(
        schema_version=SCHEMA_VERSION,
        field=desc,
        convention=CONVENTION_BIQUAD_TABLE,
        verdict="obstruction",
        alpha=_coords_to_strings(alpha.coords),
        delta=_coords_to_strings(delta.coords),
        epsilon=tuple(epsilon),
        trace_product="1",
        norm_alpha=rational_to_str(alpha.norm()),
        isolation_width=rational_to_str(Fraction(1, 2**20)),
        assumption_note=ASSUMPTION_NOTE,
    )


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class VerificationResult:
    ok: bool
    failures: tuple[str, ...]

    def __bool__(self) -> bool:
        return self.ok


def _fail(failures: list[str], name: str, message: str) -> None:
    failures.append(f"{name}: {message}")


def _reconstruct_field(cert: ObstructionCertificate, failures: list[str]):
    """Rebuild (NumberField, sqrt-to-power transform or None, ascending
    permutation of the recorded epsilon frame)."""
    desc = cert.field
    if isinstance(desc, PolynomialFieldDesc):
        if cert.convention != CONVENTION_ASCENDING:
            _fail(failures, CHECK_FIELD, f"unknown convention {cert.convention!r}")
            return None
        try:
            poly = parse_polynomial(desc.defining_poly)
        except Exception as exc:
            _fail(failures, CHECK_FIELD, f"cannot parse defining polynomial: {exc}")
            return None
        if poly.degree != desc.degree:
            _fail(failures, CHECK_FIELD, "recorded degree disagrees with polynomial")
            return None
        if desc.degree > 43:
            _fail(failures, CHECK_FIELD, "degree exceeds the certificate bound 43")
            return None
        if desc.degree not in (2, 3, 4):
            _fail(
                failures,
                CHECK_FIELD,
                "degree outside the range this verifier can reconstruct (2..4)",
            )
            return None
        try:
            basis = tuple(
                tuple(str_to_rational(c) for c in row) for row in desc.integral_basis
            )
            field = NumberField(poly, basis)
        except Exception as exc:
            _fail(failures, CHECK_FIELD, f"field reconstruction failed: {exc}")
            return None
        return field, None, tuple(range(field.degree))
    if isinstance(desc, QuadraticFieldDesc):
        if cert.convention != CONVENTION_ASCENDING:
            _fail(failures, CHECK_FIELD, f"unknown convention {cert.convention!r}")
            return None
        if desc.D < 2 or not is_squarefree_int(desc.D):
            _fail(failures, CHECK_FIELD, "D must be squarefree and at least 2")
            return None
        from .quadratic import quad_field

        return quad_field(desc.D).field, None, (0, 1)
    # biquadratic
    if cert.convention != CONVENTION_BIQUAD_TABLE:
        _fail(failures, CHECK_FIELD, f"unknown convention {cert.convention!r}")
        return None
    from .biquadratic import (
        defining_quartic,
        integral_basis,
        normalize_case,
        sqrt_coords_to_power,
        table_to_ascending_permutation,
    )

    try:
        bf = normalize_case(desc.p, desc.q)
    except Exception as exc:
        _fail(failures, CHECK_FIELD, f"invalid biquadratic pair: {exc}")
        return None
    if bf.case_id != desc.case_id or (bf.p, bf.q, bf.r) != desc.triple:
        _fail(failures, CHECK_FIELD, "recorded case or triple disagrees with normalization")
        return None
    try:
        rows = [sqrt_coords_to_power(bf, e.coords) for e in integral_basis(bf)]
        field = NumberField(defining_quartic(bf), linalg.as_matrix(rows))
    except Exception as exc:
        _fail(failures, CHECK_FIELD, f"field reconstruction failed: {exc}")
        return None
    return field, bf, table_to_ascending_permutation(bf)


def verify_certificate(cert: ObstructionCertificate) -> VerificationResult:
    """Re-check a certificate independently of how it was produced.

    Checks, each reported by name on failure:
      a: the recorded field parses, is totally real, of the recorded degree;
      b: alpha is an algebraic integer (integer coordinates on the basis);
      c: delta pairs integrally with every basis element (codifferent);
      d: signatures of alpha and delta both equal the recorded epsilon;
      e: tr(delta * alpha) == 1, matching the recorded trace product;
      f: |N(alpha)| != 1, matching the recorded norm.
    Exceptional certificates instead re-run the exception recognition.
    """
    failures: list[str] = []
    if cert.schema_version != SCHEMA_VERSION:
        _fail(failures, CHECK_SCHEMA, f"unsupported schema version {cert.schema_version!r}")
        return VerificationResult(False, tuple(failures))
    rebuilt = _reconstruct_field(cert, failures)
    if rebuilt is None:
        return VerificationResult(False, tuple(failures))
    field, bf, perm = rebuilt

    if cert.verdict == "exceptional":
        _verify_exceptional(cert, field, failures)
        return VerificationResult(not failures, tuple(failures))

    if cert.alpha is None or cert.delta is None or cert.epsilon is None:
        _fail(failures, CHECK_SCHEMA, "obstruction certificate is missing witness data")
        return VerificationResult(False, tuple(failures))
    if cert.trace_product is None or cert.norm_alpha is None:
        _fail(failures, CHECK_SCHEMA, "obstruction certificate is missing exact scalars")
        return VerificationResult(False, tuple(failures))

    try:
        alpha_coords = tuple(str_to_rational(c) for c in cert.alpha)
        delta_coords = tuple(str_to_rational(c) for c in cert.delta)
    except CertificateError as exc:
        _fail(failures, CHECK_SCHEMA, str(exc))
        return VerificationResult(False, tuple(failures))
    if bf is not None:
        from .biquadratic import sqrt_coords_to_power

        if len(alpha_coords) != 4 or len(delta_coords) != 4:
            _fail(failures, CHECK_SCHEMA, "biquadratic witness coordinates must have length 4")
            return VerificationResult(False, tuple(failures))
        alpha_coords = sqrt_coords_to_power(bf, alpha_coords)
        delta_coords = sqrt_coords_to_power(bf, delta_coords)
    if len(alpha_coords) != field.degree or len(delta_coords) != field.degree:
        _fail(failures, CHECK_SCHEMA, "witness coordinate length disagrees with degree")
        return VerificationResult(False, tuple(failures))
    if len(cert.epsilon) != field.degree:
        _fail(failures, CHECK_SCHEMA, "epsilon length disagrees with degree")
        return VerificationResult(False, tuple(failures))

    alpha = field.element(alpha_coords)
    delta = field.element(delta_coords)

    if alpha.is_zero:
        _fail(failures, CHECK_ALPHA_INTEGRAL, "alpha is zero")
        return VerificationResult(False, tuple(failures))

    if not alpha.is_integral():
        _fail(failures, CHECK_ALPHA_INTEGRAL, "alpha is not an algebraic integer")

    for i, w in enumerate(field.integral_basis_elements()):
        if (delta * w).trace().denominator != 1:
            _fail(
                failures,
                CHECK_DELTA_CODIFFERENT,
                f"tr(delta * w_{i + 1}) is not an integer",
            )
            break

    if delta.is_zero:
        _fail(failures, CHECK_SIGNATURE, "delta is zero")
    else:
        # epsilon is recorded in the certificate's frame; map ascending
        # positions through the recorded permutation before comparing
        eps_ascending = tuple(cert.epsilon[perm[k]] for k in range(field.degree))
        sig_alpha = tuple(alpha.signature())
        sig_delta = tuple(delta.signature())
        if sig_alpha != eps_ascending or sig_delta != eps_ascending:
            _fail(
                failures,
                CHECK_SIGNATURE,
                "signatures of alpha and delta must both equal epsilon",
            )

    trace_product = (delta * alpha).trace()
    if cert.trace_product != "1" or trace_product != 1:
        _fail(
            failures,
            CHECK_TRACE_PRODUCT,
            f"tr(delta*alpha) = {rational_to_str(trace_product)}, expected 1",
        )

    norm = alpha.norm()
    recorded = cert.norm_alpha
    if bf is not None:
        # recorded norm came from the degree-4 presentation; identical here
        pass
    if abs(norm) == 1:
        _fail(failures, CHECK_NORM, "alpha is a unit")
    elif str_to_rational(recorded) != norm:
        _fail(failures, CHECK_NORM, "recorded norm disagrees with recomputation")

    return VerificationResult(not failures, tuple(failures))


def _verify_exceptional(cert: ObstructionCertificate, field: NumberField, failures: list[str]) -> None:
    desc = cert.field
    if isinstance(desc, QuadraticFieldDesc):
        if desc.D != 5:
            _fail(failures, CHECK_VERDICT, "the only exceptional quadratic field has D = 5")
        return
    if isinstance(desc, BiquadraticFieldDesc):
        _fail(failures, CHECK_VERDICT, "no biquadratic field is exceptional")
        return
    from .cubic import recognize_cyclotomic7

    if field.degree != 3 or recognize_cyclotomic7(field) is None:
        _fail(
            failures,
            CHECK_VERDICT,
            "field is not the cyclotomic cubic exception",
        )
