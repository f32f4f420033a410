import random
from fractions import Fraction

import pytest

from zformcert import linalg
from zformcert.errors import SingularMatrixError


def _random_matrix(rng, n, lo=-9, hi=9):
    return linalg.as_matrix(
        [[Fraction(rng.randint(lo, hi), rng.randint(1, 3)) for _ in range(n)] for _ in range(n)]
    )


class TestFractionAlgebra:
    def test_inverse_identity(self):
        rng = random.Random(5)
        done = 0
        while done < 25:
            a = _random_matrix(rng, 3)
            if linalg.determinant(a) == 0:
                continue
            assert linalg.mat_mul(a, linalg.invert(a)) == linalg.identity(3)
            done += 1

    def test_singular_rejected(self):
        a = linalg.as_matrix([[1, 2], [2, 4]])
        with pytest.raises(SingularMatrixError):
            linalg.invert(a)
        assert linalg.determinant(a) == 0

    def test_determinant_multiplicative(self):
        rng = random.Random(6)
        for _ in range(20):
            a = _random_matrix(rng, 3)
            b = _random_matrix(rng, 3)
            assert linalg.determinant(linalg.mat_mul(a, b)) == linalg.determinant(a) * linalg.determinant(b)

    def test_solve(self):
        a = linalg.as_matrix([[2, 1], [1, 3]])
        b = (Fraction(5), Fraction(10))
        x = linalg.solve(a, b)
        assert linalg.mat_vec(a, x) == b


def _in_row_lattice(rows, vec):
    """Solve integer combination by rational solve + integrality check."""
    if not rows:
        return all(v == 0 for v in vec)
    # rows is square full-rank in our tests
    mat = linalg.as_matrix(rows)
    sol = linalg.vec_mat(tuple(Fraction(v) for v in vec), linalg.invert(mat))
    return all(c.denominator == 1 for c in sol)


class TestHNF:
    def test_known_example(self):
        h = linalg.hnf_rows([[2, 0, 0], [0, 2, 0], [1, 1, 1]])
        assert h == [[1, 1, 1], [0, 2, 0], [0, 0, 2]]

    def test_span_and_determinant_preserved(self):
        rng = random.Random(7)
        done = 0
        while done < 30:
            rows = [[rng.randint(-9, 9) for _ in range(3)] for _ in range(3)]
            det = linalg.determinant(linalg.as_matrix(rows))
            if det == 0:
                continue
            h = linalg.hnf_rows(rows)
            assert abs(linalg.determinant(linalg.as_matrix(h))) == abs(det)
            for row in rows:
                assert _in_row_lattice(h, row)
            for row in h:
                assert _in_row_lattice(rows, row)
            done += 1

    def test_echelon_shape(self):
        rng = random.Random(8)
        for _ in range(20):
            rows = [[rng.randint(-9, 9) for _ in range(4)] for _ in range(6)]
            h = linalg.hnf_rows(rows)
            pivots = []
            for row in h:
                nz = next(i for i, v in enumerate(row) if v != 0)
                assert row[nz] > 0
                pivots.append(nz)
            assert pivots == sorted(pivots)
            # entries above each pivot are reduced into [0, pivot)
            for r, pcol in enumerate(pivots):
                for above in range(r):
                    assert 0 <= h[above][pcol] < h[r][pcol]


class TestKernelModP:
    @pytest.mark.parametrize("p", [2, 3, 7, 13])
    def test_kernel_vectors_annihilate(self, p):
        rng = random.Random(p)
        for _ in range(10):
            a = [[rng.randrange(p) for _ in range(4)] for _ in range(3)]
            basis = linalg.kernel_mod_p(a, p)
            for vec in basis:
                prod = [sum(vec[i] * a[i][j] for i in range(3)) % p for j in range(4)]
                assert all(v == 0 for v in prod)

    def test_dimension_matches_rank_nullity(self):
        p = 5
        a = [[1, 2, 3], [2, 4, 6], [0, 1, 1]]  # rank 2 mod 5
        basis = linalg.kernel_mod_p(a, p)
        assert len(basis) == 1

    def test_full_rank_trivial_kernel(self):
        assert linalg.kernel_mod_p([[1, 0], [0, 1]], 7) == []
