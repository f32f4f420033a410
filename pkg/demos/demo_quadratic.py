#!/usr/bin/env python3
"""Walkthrough: why no integer-coefficient universal form exists over
Q(sqrt D) for squarefree D >= 2, except D = 5.

The witness is always the pair (alpha, delta_f) with alpha = a + tau for
a small integer shift a: delta_f pairs to exactly 1 against every such
alpha, has trace zero, and shares alpha's mixed sign pattern, so a
non-unit alpha contradicts universality.
"""

from zformcert import certify_quadratic, delta_f, quad_field, segment_bound_check
from zformcert.arith import is_squarefree_int

print("=== the codifferent witness delta_f ===")
for D in (2, 5, 13):
    qf = quad_field(D)
    d = delta_f(D)
    print(f"D={D:3d}  tau has minimal polynomial {qf.field.defining.text()}")
    print(f"       delta_f coords over (1, tau): {d.coords}")
    print(f"       tr(delta_f) = {d.trace()},  tr(delta_f * tau) = {(d * qf.tau).trace()}")

print("\n=== certification sweep, D squarefree up to 40 ===")
for D in range(2, 41):
    if not is_squarefree_int(D):
        continue
    v = certify_quadratic(D)
    if v.verdict == "obstruction":
        print(f"D={D:3d}  obstruction: alpha = tau + ({v.shift}), N(alpha) = {v.norm_alpha}")
    else:
        print(f"D={D:3d}  EXCEPTIONAL: every candidate shift is a unit")

print("\n=== the segment-length bound ===")
print("the mixed-sign segment contains at most two unit points, so the")
print("embedding spread of tau must stay below 3:")
for D in (2, 3, 5, 13):
    res = segment_bound_check(D)
    verdictor = "passes" if res.passes else "fails"
    print(f"D={D:3d}  spread^2 = {res.spread_squared}  -> {verdictor}")
