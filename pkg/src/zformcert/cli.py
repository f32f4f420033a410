"""Command line interface.

Exit codes: 0 success, 1 usage or input error, 2 certificate rejected by
the verifier, 3 internal invariant failure.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .certificates import deserialize, serialize, verify_certificate
from .errors import CertificateError, GeometryError, ZformcertError
from .polynomials import parse_polynomial

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_REJECTED = 2
EXIT_INTERNAL = 3


def _read_basis_file(path: str):
    rows = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            rows.append(tuple(Fraction(tok) for tok in line.replace(",", " ").split()))
    return tuple(rows) if rows else None


def _emit(cert_line: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(cert_line + "\n")
    print(cert_line)


def _cmd_certify_cubic(args) -> int:
    from .certificates import certificate_from_cubic
    from .cubic import certify_cubic

    poly = parse_polynomial(args.poly)
    basis = _read_basis_file(args.basis) if args.basis else None
    verdict = certify_cubic(poly, basis)
    _emit(serialize(certificate_from_cubic(verdict)), args.out)
    return EXIT_OK


def _cmd_certify_biquadratic(args) -> int:
    from .biquadratic import certify_biquadratic

    cert = certify_biquadratic(args.p, args.q)
    _emit(serialize(cert), args.out)
    return EXIT_OK


def _cmd_certify_quadratic(args) -> int:
    from .certificates import certificate_from_quadratic
    from .quadratic import certify_quadratic

    cert = certificate_from_quadratic(certify_quadratic(args.D))
    _emit(serialize(cert), args.out)
    return EXIT_OK


def _cmd_scan(args) -> int:
    from .pipeline import ingest_field_list, scan

    report = scan(ingest_field_list(args.input), out_dir=args.out, workers=args.workers)
    print(report.summary())
    for res in report.results:
        if res.status == "error":
            print(f"  line {res.line_no}: error: {res.detail}")
    return EXIT_OK


def _cmd_verify(args) -> int:
    any_invalid = False
    with open(args.cert_file, "r", encoding="utf-8") as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    if not lines:
        print("no certificates in file", file=sys.stderr)
        return EXIT_INPUT
    for idx, line in enumerate(lines, start=1):
        cert = deserialize(line)
        result = verify_certificate(cert)
        if result.ok:
            print(f"certificate {idx}: valid ({cert.verdict})")
        else:
            any_invalid = True
            print(f"certificate {idx}: INVALID")
            for failure in result.failures:
                print(f"  {failure}")
    return EXIT_REJECTED if any_invalid else EXIT_OK


def _cmd_plot(args) -> int:
    from .fields import NumberField
    from .plotting import plot_plane_H

    poly = parse_polynomial(args.poly)
    field = NumberField.from_polynomial(poly)
    path = plot_plane_H(field, args.out)
    print(path)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zformcert",
        description=(
            "Construct and verify exact obstruction certificates against "
            "universal integer-coefficient quadratic forms over totally real fields."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("certify-cubic", help="certify a totally real cubic field")
    p.add_argument("--poly", required=True, help="defining polynomial, e.g. x^3-3x^2+1")
    p.add_argument("--basis", help="optional integral basis file (rows of rationals)")
    p.add_argument("--out", help="write the certificate to this file as well")
    p.set_defaults(func=_cmd_certify_cubic)

    p = sub.add_parser("certify-biquadratic", help="certify Q(sqrt p, sqrt q)")
    p.add_argument("-p", type=int, required=True)
    p.add_argument("-q", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_certify_biquadratic)

    p = sub.add_parser("certify-quadratic", help="certify Q(sqrt D)")
    p.add_argument("-D", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_certify_quadratic)

    p = sub.add_parser("scan", help="certify every field in a list file")
    p.add_argument("--input", required=True)
    p.add_argument("--out", required=True, help="directory for certificate files")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=_cmd_scan)

    p = sub.add_parser("verify", help="independently verify certificate files")
    p.add_argument("cert_file")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("plot", help="draw the trace-zero plane of a cubic field")
    p.add_argument("--poly", required=True)
    p.add_argument("--out", required=True, help="output SVG path")
    p.set_defaults(func=_cmd_plot)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GeometryError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except CertificateError as exc:
        print(f"certificate error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ZformcertError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
