"""Maximal-order computation for raw cubic polynomial input.

Starting from the power order Z[x]/(m), the order is enlarged at every
prime p whose square divides the polynomial discriminant: compute the
radical of O/pO via the Frobenius map, then the multiplier ring of the
radical ideal, and repeat until the order is p-stable.  Everything runs
on exact rational matrices; the resulting basis is normalized so its
first element is 1 and remaining rows are in Hermite form.
"""

from __future__ import annotations

from fractions import Fraction

from . import linalg
from .arith import prime_factorization
from .errors import DegreeError
from .polynomials import (
    IntegerPolynomial,
    discriminant,
    newton_power_sums,
    poly_divmod,
    poly_mul,
    poly_trim,
)


def _mult_mod(poly: IntegerPolynomial, a, b):
    prod = poly_mul(poly_trim(a), poly_trim(b))
    _, rem = poly_divmod(prod, poly.rational())
    rem = rem + (Fraction(0),) * (poly.degree - len(rem))
    return rem


def order_gram(poly: IntegerPolynomial, basis: linalg.Matrix) -> linalg.Matrix:
    """Trace pairing matrix tr(w_i w_j) for a basis over the power basis."""
    d = poly.degree
    psums = newton_power_sums(poly, 2 * d - 2)

    def trace_of(coords) -> Fraction:
        return sum((c * psums[k] for k, c in enumerate(coords)), Fraction(0))

    rows = []
    for i in range(d):
        row = []
        for j in range(d):
            row.append(trace_of(_mult_mod(poly, basis[i], basis[j])))
        rows.append(tuple(row))
    return tuple(rows)


def order_discriminant(poly: IntegerPolynomial, basis: linalg.Matrix) -> Fraction:
    return linalg.determinant(order_gram(poly, basis))


def _structure_constants(poly, basis, basis_inv):
    """c[i][j] = integer coords of w_i * w_j over the basis."""
    d = poly.degree
    table = []
    for i in range(d):
        row = []
        for j in range(d):
            coords = linalg.vec_mat(_mult_mod(poly, basis[i], basis[j]), basis_inv)
            ints = []
            for c in coords:
                if c.denominator != 1:
                    raise ValueError("basis is not multiplicatively closed; not an order")
                ints.append(int(c))
            row.append(ints)
        table.append(row)
    return table


def _mat_pow_mod(mat: list[list[int]], e: int, p: int) -> list[list[int]]:
    n = len(mat)
    result = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    base = [[v % p for v in row] for row in mat]
    while e:
        if e & 1:
            result = [
                [sum(result[i][k] * base[k][j] for k in range(n)) % p for j in range(n)]
                for i in range(n)
            ]
        base = [
            [sum(base[i][k] * base[k][j] for k in range(n)) % p for j in range(n)]
            for i in range(n)
        ]
        e >>= 1
    return result


def _enlarge_at(poly: IntegerPolynomial, basis: linalg.Matrix, p: int):
    """One multiplier-ring step at p; returns (new_basis, enlarged)."""
    d = poly.degree
    basis_inv = linalg.invert(basis)
    struct = _structure_constants(poly, basis, basis_inv)

    def mult_coords(a: list[int], b: list[int]) -> list[int]:
        out = [0] * d
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                if bj == 0:
                    continue
                cij = struct[i][j]
                for k in range(d):
                    out[k] += ai * bj * cij[k]
        return [v % p for v in out]

    one_coords = linalg.vec_mat(
        (Fraction(1),) + (Fraction(0),) * (d - 1), basis_inv
    )
    if any(c.denominator != 1 for c in one_coords):
        raise ValueError("order does not contain 1")
    one_ints = [int(c) % p for c in one_coords]

    # Frobenius matrix: row i is coords of w_i^p mod p
    frob = []
    for i in range(d):
        acc = list(one_ints)
        base = [1 if k == i else 0 for k in range(d)]
        e = p
        while e:
            if e & 1:
                acc = mult_coords(acc, base)
            base = mult_coords(base, base)
            e >>= 1
        frob.append(acc)

    m_exp = 1
    while p**m_exp < d:
        m_exp += 1
    fm = _mat_pow_mod(frob, m_exp, p)
    radical = linalg.kernel_mod_p(fm, p)

    ip_rows = [[p if i == j else 0 for j in range(d)] for i in range(d)]
    ip_rows += [list(v) for v in radical]
    r_basis = linalg.hnf_rows(ip_rows)
    r_mat = linalg.as_matrix(r_basis)
    r_inv = linalg.invert(r_mat)

    # condition rows: x corresponds to y with y * gamma_j in p * I_p for all j
    cond_rows = []
    for i in range(d):
        row: list[int] = []
        for j in range(d):
            gamma = [int(c) for c in r_basis[j]]
            prod = [0] * d
            for jj, gj in enumerate(gamma):
                if gj == 0:
                    continue
                cij = struct[i][jj]
                for k in range(d):
                    prod[k] += gj * cij[k]
            z = linalg.vec_mat(tuple(Fraction(v) for v in prod), r_inv)
            for c in z:
                if c.denominator != 1:
                    raise AssertionError("ideal coordinates must be integral")
                row.append(int(c) % p)
        cond_rows.append(row)

    kernel = linalg.kernel_mod_p(cond_rows, p)
    if not kernel:
        return basis, False
    stacked = [[p if i == j else 0 for j in range(d)] for i in range(d)]
    stacked += [list(v) for v in kernel]
    h = linalg.hnf_rows(stacked)
    det_h = linalg.determinant(linalg.as_matrix(h))
    if det_h == p**d:
        return basis, False
    new_coords = tuple(tuple(Fraction(c, p) for c in row) for row in h)
    return linalg.mat_mul(new_coords, basis), True


def normalize_unit_first(basis: linalg.Matrix) -> linalg.Matrix:
    """Unimodular change so the basis is (1, b_2, ..) with Hermite tail rows.

    Works for any order basis: running HNF with the power coordinates
    reversed makes the final pivot land on the rational coordinate, and
    the only pure-rational elements of an order are the integers, so
    that row is exactly 1.
    """
    d = len(basis)
    den = 1
    for row in basis:
        for c in row:
            den = den * c.denominator // _gcd(den, c.denominator)
    ints = [[int(c * den) for c in row] for row in basis]
    rev = [row[::-1] for row in ints]
    h = linalg.hnf_rows(rev)
    if len(h) != d:
        raise ValueError("basis matrix is singular")
    rows = [row[::-1] for row in h]
    rational_row = rows[-1]
    if any(rational_row[1:]) or rational_row[0] != den:
        raise ValueError("order does not contain 1 as a primitive rational element")
    ordered = [rows[-1]] + rows[:-1][::-1]  # ascending leading power
    return tuple(tuple(Fraction(c, den) for c in row) for row in ordered)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def maximal_cubic_order(poly: IntegerPolynomial) -> linalg.Matrix:
    """Integral basis of the maximal order of a cubic field, over the power basis."""
    if poly.degree != 3:
        raise DegreeError("maximal order enlargement implemented for cubic fields")
    disc = discriminant(poly)
    if disc == 0:
        raise ValueError("defining polynomial must be squarefree")
    basis: linalg.Matrix = linalg.identity(3)
    for p, exp in sorted(prime_factorization(abs(disc)).items()):
        if exp < 2:
            continue
        while True:
            basis, grew = _enlarge_at(poly, basis, p)
            if not grew:
                break
    return normalize_unit_first(basis)
