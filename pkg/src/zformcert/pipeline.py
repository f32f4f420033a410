"""Field-list ingestion and parallel batch certification.

List format: one record per line, `poly[;basis[;disc]]`.
  poly   defining polynomial text, e.g. x^3-x^2-2x+1
  basis  optional row-major comma-separated rationals (d*d entries)
  disc   optional reference discriminant, cross-checked against the
         Gram determinant of the integral basis actually used
Blank lines and lines starting with '#' are skipped.  Malformed lines
become issue records with their line number; the stream continues.
"""

from __future__ import annotations

import hashlib
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Union

from .arith import squarefree_part
from .certificates import (
    certificate_from_cubic,
    certificate_from_quadratic,
    serialize,
)
from .errors import ZformcertError
from .lattices import gram
from .polynomials import IntegerPolynomial, discriminant, parse_polynomial


@dataclass(frozen=True)
class FieldListEntry:
    line_no: int
    poly: IntegerPolynomial
    basis: tuple[tuple[Fraction, ...], ...] | None
    reference_disc: int | None
    raw: str


@dataclass(frozen=True)
class IngestIssue:
    line_no: int
    message: str


def _parse_line(line_no: int, raw: str) -> FieldListEntry:
    parts = [p.strip() for p in raw.split(";")]
    poly = parse_polynomial(parts[0])
    basis = None
    if len(parts) > 1 and parts[1]:
        values = [Fraction(v.strip()) for v in parts[1].split(",")]
        d = poly.degree
        if len(values) != d * d:
            raise ValueError(f"basis needs {d * d} entries, got {len(values)}")
        basis = tuple(tuple(values[i * d + j] for j in range(d)) for i in range(d))
    ref = None
    if len(parts) > 2 and parts[2]:
        ref = int(parts[2])
    if len(parts) > 3:
        raise ValueError("too many fields on line")
    return FieldListEntry(line_no, poly, basis, ref, raw)


def ingest_field_list(path: str | os.PathLike) -> Iterator[Union[FieldListEntry, IngestIssue]]:
    """Yield entries and, for malformed lines, issue records."""
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            stripped = raw.strip()
            if not stripped or stripped.startswith("#"):
                continue
            try:
                yield _parse_line(line_no, stripped)
            except Exception as exc:
                yield IngestIssue(line_no, f"{type(exc).__name__}: {exc}")


@dataclass(frozen=True)
class ScanResult:
    line_no: int
    status: str  # "obstruction" | "exceptional" | "error"
    detail: str  # certificate JSON line, or the error message


@dataclass(frozen=True)
class ScanReport:
    results: tuple[ScanResult, ...]
    obstructions: int
    exceptional: int
    errors: int
    out_dir: str | None

    def summary(self) -> str:
        return (
            f"scanned {len(self.results)} entries: "
            f"{self.obstructions} obstructions, "
            f"{self.exceptional} exceptional, {self.errors} errors"
        )


def _certify_payload(payload) -> ScanResult:
    line_no, coeffs, basis, ref_disc = payload
    try:
        poly = IntegerPolynomial(coeffs)
        if poly.degree == 3:
            from .cubic import certify_cubic

            verdict = certify_cubic(poly, basis)
            field = verdict.field
            cert = certificate_from_cubic(verdict)
        elif poly.degree == 2:
            from .quadratic import certify_quadratic

            d_value = squarefree_part(discriminant(poly))
            qv = certify_quadratic(d_value)
            field = qv.field
            cert = certificate_from_quadratic(qv)
        else:
            return ScanResult(line_no, "error", f"unsupported degree {poly.degree}")
        if ref_disc is not None:
            det = gram(field, field.integral_basis_elements()).determinant()
            if det != ref_disc:
                return ScanResult(
                    line_no,
                    "error",
                    f"reference discriminant {ref_disc} != computed {det}",
                )
        return ScanResult(line_no, cert.verdict, serialize(cert))
    except ZformcertError as exc:
        return ScanResult(line_no, "error", f"{type(exc).__name__}: {exc}")
    except Exception as exc:  # pragma: no cover - defensive
        return ScanResult(line_no, "error", f"{type(exc).__name__}: {exc}")


def _entry_payload(entry: FieldListEntry):
    return (entry.line_no, entry.poly.coefficients, entry.basis, entry.reference_disc)


def certificate_filename(line_no: int, poly_text: str) -> str:
    digest = hashlib.sha256(poly_text.encode()).hexdigest()[:10]
    return f"cert_{line_no:05d}_{digest}.json"


def scan(
    entries: Iterable[Union[FieldListEntry, IngestIssue]],
    out_dir: str | os.PathLike | None = None,
    workers: int = 1,
) -> ScanReport:
    """Certify every entry, optionally in parallel, one certificate file each.

    Certificates depend only on the entry, so output bytes are identical
    for any worker count; per-entry failures are recorded, never raised.
    """
    if workers < 1:
        raise ValueError("workers must be >= 1")
    entry_list: list[FieldListEntry] = []
    results: list[ScanResult] = []
    for item in entries:
        if isinstance(item, IngestIssue):
            results.append(ScanResult(item.line_no, "error", item.message))
        else:
            entry_list.append(item)

    payloads = [_entry_payload(e) for e in entry_list]
    if workers == 1 or len(payloads) <= 1:
        computed = [_certify_payload(p) for p in payloads]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            computed = list(pool.map(_certify_payload, payloads, chunksize=4))
    results.extend(computed)
    results.sort(key=lambda r: r.line_no)

    if out_dir is not None:
        os.makedirs(out_dir, exist_ok=True)
        by_line = {e.line_no: e for e in entry_list}
        for res in results:
            if res.status == "error":
                continue
            entry = by_line[res.line_no]
            name = certificate_filename(res.line_no, entry.poly.text())
            with open(os.path.join(out_dir, name), "w", encoding="utf-8") as fh:
                fh.write(res.detail + "\n")

    return ScanReport(
        results=tuple(results),
        obstructions=sum(1 for r in results if r.status == "obstruction"),
        exceptional=sum(1 for r in results if r.status == "exceptional"),
        errors=sum(1 for r in results if r.status == "error"),
        out_dir=None if out_dir is None else str(out_dir),
    )
