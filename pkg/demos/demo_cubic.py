#!/usr/bin/env python3
"""Walkthrough of the cubic certification pipeline on one field.

Steps, all in exact rational arithmetic:
  1. project the ring of integers onto the trace-zero plane and
     Gauss-reduce the rank-2 image to get a shortest vector u;
  2. lift u to beta with smallest embedding value in (-1, 0);
  3. build two codifferent functionals delta1, delta2 whose sign
     patterns match the two bounded octant segments of the line
     through beta parallel to (1,1,1);
  4. search the segments for a non-unit shift beta - t;
  5. emit and independently verify the certificate.
"""

from fractions import Fraction

from zformcert import (
    candidate_cubics,
    certify_cubic,
    filter_by_bounds,
    gauss_reduce,
    lambda_basis,
    parse_polynomial,
    serialize,
    verify_certificate,
)
from zformcert.certificates import certificate_from_cubic
from zformcert.fields import NumberField

POLY = "x^3-3x^2+1"
print(f"=== field defined by {POLY} ===")
field = NumberField.from_polynomial(parse_polynomial(POLY))
lattice = lambda_basis(field)
print("projected Gram:", [[str(v) for v in row] for row in lattice.gram.entries])

u, v = gauss_reduce(lattice)
print(f"shortest vector u = {u.coords}, |u|^2 = {u.norm_sq()}")
print(f"companion       v = {v.coords}, |v|^2 = {v.norm_sq()}")

verdict = certify_cubic(parse_polynomial(POLY))
geo = verdict.witness_pair.geometry
print(f"descending frame permutation: {geo.perm_desc}")
print(f"line distance^2 = {geo.line_dist_sq} >= (3/4)|u|^2 = {Fraction(3, 4) * geo.u_norm_sq}")
print(f"cone shears: k1 = {geo.k1}, k2 = {geo.k2}")
print(f"segment shifts: {verdict.segment_shifts}")
print(f"witness: alpha = beta - {verdict.shift} on segment {verdict.segment}, "
      f"N(alpha) = {verdict.norm_alpha}")

cert = certificate_from_cubic(verdict)
line = serialize(cert)
print("\ncertificate:", line[:120], "...")
print("independent verification:", verify_certificate(cert).ok)

print("\n=== the global candidate analysis ===")
cands = candidate_cubics()
survivors = filter_by_bounds(cands)
print(f"{len(cands)} coefficient candidates, {len(survivors)} satisfy the root bounds:")
for p in survivors:
    outcome = certify_cubic(p)
    print(f"  {p.text():18s} -> {outcome.verdict}")
