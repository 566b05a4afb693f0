"""Tests for Hadamard constructions and the scaled block maps."""

from fractions import Fraction

import numpy as np
import pytest

from lpborsuk import (
    PNorm,
    block_diag_map,
    hadamard4_circulant,
    identity_map,
    is_hadamard,
    map_from_matrix,
    map_from_scaled_hadamard,
    sandwich_map,
    sandwich_map_padded,
    sylvester,
)


class TestSylvester:
    def test_base_cases(self):
        assert sylvester(0).tolist() == [[1]]
        assert sylvester(1).tolist() == [[1, 1], [1, -1]]

    @pytest.mark.parametrize("k", range(7))
    def test_orthogonality_exact(self, k):
        h = sylvester(k)
        n = 1 << k
        assert h.dtype == np.int64
        assert np.isin(h, (-1, 1)).all()
        assert np.array_equal(h @ h.T, n * np.eye(n, dtype=np.int64))

    def test_guard(self):
        with pytest.raises(ValueError):
            sylvester(21)
        with pytest.raises(ValueError):
            sylvester(-1)


class TestIsHadamard:
    def test_sylvester_passes(self):
        assert is_hadamard(sylvester(3))

    def test_parallel_rows_fail(self):
        assert not is_hadamard([[1, 1], [1, 1]])

    def test_non_sign_entries_rejected(self):
        with pytest.raises(ValueError):
            is_hadamard([[1, 0], [0, 1]])
        with pytest.raises(ValueError):
            is_hadamard([[2, 1], [1, -1]])

    def test_non_square_rejected(self):
        with pytest.raises(ValueError):
            is_hadamard([[1, 1, -1]])


class TestCirculantOrder4:
    def test_rows(self):
        h = hadamard4_circulant()
        assert h.tolist() == [[1, -1, 1, 1], [1, 1, -1, 1], [1, 1, 1, -1], [-1, 1, 1, 1]]

    def test_first_column_is_slab_normal(self):
        assert hadamard4_circulant()[:, 0].tolist() == [1, 1, 1, -1]

    def test_is_hadamard(self):
        h = hadamard4_circulant()
        assert np.array_equal(h @ h.T, 4 * np.eye(4, dtype=np.int64))
        assert is_hadamard(h)


class TestSandwichMap:
    def test_dim4_p1_is_quarter_sylvester(self):
        g = sandwich_map(4, PNorm(1))
        assert np.array_equal(g.matrix, 0.25 * sylvester(2))
        assert g.scale_exact == Fraction(1, 4)

    def test_dim3_is_block_diagonal(self):
        p = 1.5
        g = sandwich_map(3, PNorm(p))
        expected = np.zeros((3, 3))
        expected[:2, :2] = 2.0 ** (-1.0 / p) * sylvester(1)
        expected[2, 2] = 1.0
        assert np.allclose(g.matrix, expected, atol=0)

    def test_dim1_identity(self):
        assert sandwich_map(1, PNorm(1.5)).matrix.tolist() == [[1.0]]

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6, 7, 8, 9, 12, 16])
    @pytest.mark.parametrize("p", [1.0, 1.5, 2.0])
    def test_inverse_is_exact_enough(self, n, p):
        g = sandwich_map(n, PNorm(p))
        assert np.abs(g.matrix @ g.inverse - np.eye(n)).max() < 1e-12

    def test_exact_rational_identity(self):
        # p in {1, 2} keeps the scale rational; verify g g^{-1} = I in Fractions
        for n, p in [(4, 1.0), (8, 1.0), (4, 2.0), (16, 2.0)]:
            g = sandwich_map(n, PNorm(p))
            assert g.scale_exact is not None and g.sign_part is not None
            s = g.scale_exact
            mat = [[s * int(v) for v in row] for row in g.sign_part]
            inv_scale = 1 / (s * n)
            inv = [[inv_scale * int(g.sign_part[j][i]) for j in range(n)] for i in range(n)]
            for i in range(n):
                for j in range(n):
                    acc = sum(mat[i][k] * inv[k][j] for k in range(n))
                    assert acc == (Fraction(1) if i == j else Fraction(0))

    def test_hadamard_block_inverse_closed_form(self):
        # (n^(-1/p) H)^(-1) == n^(1/p - 1) H^T
        p = 1.25
        for k in range(5):
            n = 1 << k
            g = sandwich_map(n, PNorm(p))
            expected = n ** (1.0 / p - 1.0) * sylvester(k).T
            assert np.allclose(g.inverse, expected, atol=1e-15)

    @pytest.mark.parametrize("n", [3, 5, 6, 7, 9, 12, 13])
    def test_leading_block_structure(self, n):
        p = PNorm(1.5)
        head = 1 << (n.bit_length() - 1)
        g = sandwich_map(n, p)
        sub = sandwich_map(head, p)
        assert np.array_equal(g.matrix[:head, :head], sub.matrix)
        assert not g.matrix[:head, head:].any()
        assert not g.matrix[head:, :head].any()

    def test_regime_guards(self):
        with pytest.raises(ValueError):
            sandwich_map(0, PNorm(1))
        with pytest.raises(ValueError):
            sandwich_map(21, PNorm(1))
        with pytest.raises(ValueError):
            sandwich_map(4, PNorm(3))


class TestSandwichMapPadded:
    def test_5x5_layout(self):
        g = sandwich_map_padded(1, 1, PNorm(1), sylvester(2))
        assert g.dim == 5
        assert g.matrix[0, 0] == 1.0
        assert not g.matrix[0, 1:].any()
        assert np.array_equal(g.matrix[1:, 1:], 0.25 * sylvester(2))

    def test_degenerate_pad_matches_plain_map(self):
        for p in (1.0, 1.5, 2.0):
            a = sandwich_map_padded(1, 0, PNorm(p), sylvester(2))
            b = sandwich_map(4, PNorm(p))
            assert np.array_equal(a.matrix, b.matrix)

    def test_rejects_bad_hadamard(self):
        with pytest.raises(ValueError):
            sandwich_map_padded(1, 1, PNorm(1), np.ones((4, 4), dtype=int))

    def test_rejects_order_mismatch(self):
        with pytest.raises(ValueError):
            sandwich_map_padded(2, 1, PNorm(1), sylvester(2))


class TestLinearMapBasics:
    def test_singular_rejected(self):
        with pytest.raises(ValueError, match="singular"):
            map_from_matrix(np.zeros((3, 3)))

    def test_conditioning_warning(self):
        m = np.diag([1.0, 1e-14])
        with pytest.warns(RuntimeWarning, match="ill-conditioned"):
            map_from_matrix(m)

    def test_scaled(self):
        g = map_from_scaled_hadamard(sylvester(1), 0.5)
        h = g.scaled(2.0)
        assert np.allclose(h.matrix, 2.0 * g.matrix)
        assert np.allclose(h.matrix @ h.inverse, np.eye(2), atol=1e-15)

    def test_block_diag_inverse(self):
        g = block_diag_map([identity_map(2),
                            map_from_scaled_hadamard(sylvester(1), 0.25)])
        assert np.allclose(g.matrix @ g.inverse, np.eye(4), atol=1e-15)
