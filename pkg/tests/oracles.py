"""Independent oracles used to freeze expected values.

Everything here deliberately avoids the code paths under test: float
root finding comes from numpy, shortest vectors from exhaustive
enumeration, octant membership from float sign checks.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from zformcert.polynomials import IntegerPolynomial


def numpy_real_roots(poly: IntegerPolynomial, tol: float = 1e-9) -> list[float]:
    coeffs = list(reversed(poly.coefficients))
    roots = np.roots(coeffs)
    return sorted(float(r.real) for r in roots if abs(r.imag) < tol)


def enumerate_shortest_sq(gram_rows, box: int = 10) -> Fraction:
    """Minimum squared length over the integer coefficient box, excluding 0."""
    g = [[Fraction(v) for v in row] for row in gram_rows]
    best = None
    for m in range(-box, box + 1):
        for n in range(-box, box + 1):
            if m == 0 and n == 0:
                continue
            val = (
                g[0][0] * m * m + 2 * g[0][1] * m * n + g[1][1] * n * n
            )
            if best is None or val < best:
                best = val
    return best


def float_octant_shifts(poly: IntegerPolynomial, trange: int = 10):
    """Brute-force octant segments from float roots of the generator."""
    roots = numpy_real_roots(poly)
    assert len(roots) == 3
    v0, v1, v2 = roots
    seg1, seg2 = [], []
    for t in range(-trange, trange + 1):
        signs = tuple(np.sign([v0 - t, v1 - t, v2 - t]))
        if signs == (-1.0, 1.0, 1.0):
            seg1.append(t)
        elif signs == (-1.0, -1.0, 1.0):
            seg2.append(t)
    return tuple(seg1), tuple(seg2)


def float_signature_ascending(poly: IntegerPolynomial, coords) -> tuple[int, ...]:
    """Signs of an element's values at the ascending float roots."""
    roots = numpy_real_roots(poly)
    out = []
    for r in roots:
        val = sum(float(c) * r**k for k, c in enumerate(coords))
        assert abs(val) > 1e-9, "oracle cannot decide a near-zero sign"
        out.append(1 if val > 0 else -1)
    return tuple(out)
