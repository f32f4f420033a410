#!/usr/bin/env python3
"""Walkthrough: certificate anatomy, round-trips, and tamper detection."""

import json
from dataclasses import replace

from zformcert import certify_cubic, deserialize, parse_polynomial, serialize, verify_certificate
from zformcert.certificates import certificate_from_cubic, rational_to_str, str_to_rational

cert = certificate_from_cubic(certify_cubic(parse_polynomial("x^3-4x^2+x+1")))
line = serialize(cert)

print("=== a certificate is one JSON line, rationals as exact strings ===")
print(json.dumps(json.loads(line), indent=2)[:800], "...")

print("\nround trip is the identity:", deserialize(line) == cert)
print("verifier accepts:", verify_certificate(cert).ok)

print("\n=== tampering is caught by name ===")
mutations = {
    "double delta": replace(
        cert, delta=tuple(rational_to_str(str_to_rational(s) * 2) for s in cert.delta)
    ),
    "flip a sign of epsilon": replace(cert, epsilon=(-cert.epsilon[0],) + cert.epsilon[1:]),
    "replace alpha by 1": replace(cert, alpha=("1", "0", "0")),
    "claim the field is exceptional": replace(cert, verdict="exceptional"),
}
for label, bad in mutations.items():
    outcome = verify_certificate(bad)
    print(f"{label:32s} -> valid={outcome.ok}  {outcome.failures}")
