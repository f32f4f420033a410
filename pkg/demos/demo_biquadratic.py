#!/usr/bin/env python3
"""Walkthrough: explicit witnesses for real biquadratic fields.

Every Q(sqrt p, sqrt q) falls into one of five integral-basis cases
after reordering {p, q, r}; each case has a closed-form codifferent
basis and a closed-form witness pair, with one branch for the unit
degeneracy at 5.
"""

from zformcert import certify_biquadratic, normalize_case, verify_certificate, witness
from zformcert.biquadratic import codifferent_basis, integral_basis

print("=== case normalization ===")
for p, q in ((2, 3), (2, 5), (3, 7), (5, 13), (21, 33), (6, 10)):
    f = normalize_case(p, q)
    print(f"({p:2d},{q:2d}) -> case {f.case_id}, triple (p,q,r) = ({f.p},{f.q},{f.r})")

print("\n=== bases and duals for (2, 3) ===")
f = normalize_case(2, 3)
for w, d in zip(integral_basis(f), codifferent_basis(f)):
    print(f"  basis {tuple(str(c) for c in w.coords)}   dual {tuple(str(c) for c in d.coords)}")

print("\n=== witnesses ===")
for p, q in ((2, 3), (5, 13), (13, 17), (3, 7)):
    f = normalize_case(p, q)
    alpha, delta, eps = witness(f)
    print(f"({p:2d},{q:2d}) case {f.case_id}: alpha = {tuple(str(c) for c in alpha.coords)}, "
          f"N(alpha) = {alpha.norm()}, signature {tuple(eps)}")

print("\n=== full certificates ===")
for p, q in ((2, 3), (5, 13)):
    cert = certify_biquadratic(p, q)
    print(f"({p},{q}): verdict {cert.verdict}, verifier says {verify_certificate(cert).ok}")
