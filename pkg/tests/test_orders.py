from fractions import Fraction
from math import gcd

import pytest

from zformcert import linalg
from zformcert.orders import maximal_cubic_order, normalize_unit_first, order_discriminant
from zformcert.polynomials import discriminant, parse_polynomial

from conftest import random_totally_real_cubics


def _sympy_maximal(coeffs):
    from sympy import Poly, QQ
    from sympy.abc import x as sx
    from sympy.polys.numberfields.basis import round_two

    expr = sum(c * sx**k for k, c in enumerate(coeffs))
    ZK, dK = round_two(Poly(expr, sx, domain=QQ))
    mat = ZK.QQ_matrix.to_Matrix()
    rows = [
        [Fraction(int(mat[i, j].p), int(mat[i, j].q)) for i in range(mat.rows)]
        for j in range(mat.cols)
    ]
    return rows, int(dK)


def _lattice_key(rows):
    den = 1
    for r in rows:
        for c in r:
            den = den * c.denominator // gcd(den, c.denominator)
    ints = [[int(c * den) for c in r] for r in rows]
    return den, tuple(tuple(r) for r in linalg.hnf_rows(ints))


def test_known_enlargement():
    # power order of x^3-7x-2 has index 2; maximal order adds (x+x^2)/2
    p = parse_polynomial("x^3-7x-2")
    basis = maximal_cubic_order(p)
    assert order_discriminant(p, basis) == 316
    assert discriminant(p) == 4 * 316
    assert basis[0] == (1, 0, 0)
    assert (0, Fraction(1, 2), Fraction(1, 2)) in basis


def test_already_maximal_kept():
    p = parse_polynomial("x^3-3x^2+1")  # poly disc 81 equals the field disc
    basis = maximal_cubic_order(p)
    assert basis == linalg.identity(3)
    assert order_discriminant(p, basis) == 81


@pytest.mark.parametrize("seed", [11, 23])
def test_matches_sympy_round_two(seed):
    for poly in random_totally_real_cubics(seed, 20):
        mine = maximal_cubic_order(poly)
        disc = order_discriminant(poly, mine)
        srows, sdisc = _sympy_maximal(poly.coefficients)
        assert disc == sdisc, poly.text()
        assert _lattice_key(mine) == _lattice_key([tuple(r) for r in srows]), poly.text()


def test_normalize_unit_first_shape():
    rows = ((Fraction(2), Fraction(0), Fraction(0)),
            (Fraction(1), Fraction(1), Fraction(0)),
            (Fraction(0), Fraction(1, 2), Fraction(1, 2)))
    # span contains 1 = row0 - row1 + ... actually 1 = row0 - row1 + row1 - ...;
    # use a basis that genuinely contains 1: {1, x, (x+x^2)/2} shuffled
    rows = ((Fraction(0), Fraction(1, 2), Fraction(1, 2)),
            (Fraction(1), Fraction(1), Fraction(0)),
            (Fraction(1), Fraction(0), Fraction(0)))
    out = normalize_unit_first(rows)
    assert out[0] == (1, 0, 0)
    # same lattice
    assert _lattice_key(list(rows)) == _lattice_key(list(out))
