"""Dense exact linear algebra: Fraction matrices, integer HNF, GF(p) kernels."""

from __future__ import annotations

from fractions import Fraction

from .errors import SingularMatrixError

Matrix = tuple[tuple[Fraction, ...], ...]
Vector = tuple[Fraction, ...]


def as_matrix(rows) -> Matrix:
    return tuple(tuple(Fraction(c) for c in row) for row in rows)


def identity(n: int) -> Matrix:
    return tuple(tuple(Fraction(1 if i == j else 0) for j in range(n)) for i in range(n))


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    bt = list(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def vec_mat(v: Vector, a: Matrix) -> Vector:
    return tuple(sum(v[i] * a[i][j] for i in range(len(v))) for j in range(len(a[0])))


def mat_vec(a: Matrix, v: Vector) -> Vector:
    return tuple(sum(row[j] * v[j] for j in range(len(v))) for row in a)


def determinant(a: Matrix) -> Fraction:
    rows = [list(r) for r in a]
    n = len(rows)
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        det *= rows[col][col]
        inv = 1 / rows[col][col]
        for r in range(col + 1, n):
            f = rows[r][col] * inv
            if f == 0:
                continue
            for c in range(col, n):
                rows[r][c] -= f * rows[col][c]
    return det


def invert(a: Matrix) -> Matrix:
    n = len(a)
    rows = [list(r) + [Fraction(1 if i == j else 0) for j in range(n)] for i, r in enumerate(a)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if pivot is None:
            raise SingularMatrixError("matrix is singular")
        rows[col], rows[pivot] = rows[pivot], rows[col]
        inv = 1 / rows[col][col]
        rows[col] = [c * inv for c in rows[col]]
        for r in range(n):
            if r == col or rows[r][col] == 0:
                continue
            f = rows[r][col]
            rows[r] = [rc - f * cc for rc, cc in zip(rows[r], rows[col])]
    return tuple(tuple(row[n:]) for row in rows)


def solve(a: Matrix, b: Vector) -> Vector:
    """Solve a @ x = b for square nonsingular a."""
    return mat_vec(invert(a), b)


def hnf_rows(rows: list[list[int]]) -> list[list[int]]:
    """Row-style Hermite normal form of an integer matrix.

    Returns the nonzero rows: echelon with positive pivots, entries above
    each pivot reduced into [0, pivot).  The returned rows span the same
    integer row lattice as the input.
    """
    mat = [list(r) for r in rows if any(r)]
    if not mat:
        return []
    ncols = len(mat[0])
    out: list[list[int]] = []
    pivot_row = 0
    for col in range(ncols):
        # euclidean elimination below pivot_row in this column
        while True:
            live = [r for r in range(pivot_row, len(mat)) if mat[r][col] != 0]
            if len(live) <= 1:
                break
            live.sort(key=lambda r: abs(mat[r][col]))
            base = live[0]
            for r in live[1:]:
                qfac = mat[r][col] // mat[base][col]
                mat[r] = [x - qfac * y for x, y in zip(mat[r], mat[base])]
        live = [r for r in range(pivot_row, len(mat)) if mat[r][col] != 0]
        if not live:
            continue
        r = live[0]
        mat[pivot_row], mat[r] = mat[r], mat[pivot_row]
        if mat[pivot_row][col] < 0:
            mat[pivot_row] = [-x for x in mat[pivot_row]]
        piv = mat[pivot_row][col]
        for r in range(pivot_row):
            qfac = mat[r][col] // piv
            if qfac:
                mat[r] = [x - qfac * y for x, y in zip(mat[r], mat[pivot_row])]
        pivot_row += 1
    return [row for row in mat[:pivot_row]]


def kernel_mod_p(a: list[list[int]], p: int) -> list[list[int]]:
    """Basis of {x : x A = 0 (mod p)} for row vectors x, entries in [0, p)."""
    nrows = len(a)
    if nrows == 0:
        return []
    ncols = len(a[0])
    # work on transpose: solve A^T x^T = 0 by column reduction of A rows
    mat = [[a[i][j] % p for j in range(ncols)] for i in range(nrows)]
    # Gauss-Jordan on rows of the transposed system: unknowns index rows of a
    # Build matrix M with columns = rows of a; reduce M.
    m = [[mat[i][j] for i in range(nrows)] for j in range(ncols)]
    pivots: list[int] = []
    rank_row = 0
    for col in range(nrows):
        pivot = next((r for r in range(rank_row, len(m)) if m[r][col] % p != 0), None)
        if pivot is None:
            continue
        m[rank_row], m[pivot] = m[pivot], m[rank_row]
        inv = pow(m[rank_row][col], -1, p)
        m[rank_row] = [(x * inv) % p for x in m[rank_row]]
        for r in range(len(m)):
            if r != rank_row and m[r][col] % p != 0:
                f = m[r][col]
                m[r] = [(x - f * y) % p for x, y in zip(m[r], m[rank_row])]
        pivots.append(col)
        rank_row += 1
    free = [c for c in range(nrows) if c not in pivots]
    basis = []
    for fcol in free:
        vec = [0] * nrows
        vec[fcol] = 1
        for prow, pcol in enumerate(pivots):
            vec[pcol] = (-m[prow][fcol]) % p
        basis.append(vec)
    return basis
