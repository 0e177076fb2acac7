import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from osserman.errors import ValidationError
from osserman.numkit import (
    Xoshiro256,
    cluster_spectrum,
    complete_basis,
    sample_unit_vectors,
    stream_seed,
    subspace_distance,
    sym_eigen,
)

from conftest import seeded_orthogonal


class TestSymEigen:
    def test_identity(self):
        w, Q = sym_eigen(np.eye(8))
        assert np.allclose(w, np.ones(8))
        assert np.abs(Q.T @ Q - np.eye(8)).max() < 1e-12

    def test_diagonal(self):
        w, Q = sym_eigen(np.diag([3.0, 1.0, 2.0]))
        assert np.allclose(w, [1.0, 2.0, 3.0])
        # eigenvectors are signed coordinate vectors in the sorted order
        expected_cols = [1, 2, 0]
        for k, col in enumerate(expected_cols):
            assert abs(abs(Q[col, k]) - 1.0) < 1e-14

    def test_construct_then_recover(self):
        # oracle: M = Q D Q^t with known D must give back D
        rng = np.random.default_rng(5)
        for trial in range(20):
            d = np.sort(rng.uniform(-4, 4, 8))
            Q = seeded_orthogonal(8, 100 + trial)
            M = Q @ np.diag(d) @ Q.T
            w, V = sym_eigen(M)
            assert np.abs(w - d).max() < 1e-10

    def test_residual_invariant_100_seeded(self):
        rng = np.random.default_rng(7)
        for _ in range(100):
            A = rng.standard_normal((8, 8))
            M = A + A.T
            w, V = sym_eigen(M, tol=1e-12)
            norm = np.linalg.norm(M)
            for k in range(8):
                assert np.linalg.norm(M @ V[:, k] - w[k] * V[:, k]) <= 1e-12 * norm * 10
            assert np.abs(V.T @ V - np.eye(8)).max() < 1e-10

    def test_rejects_non_square(self):
        with pytest.raises(ValidationError):
            sym_eigen(np.ones((3, 4)))

    def test_rejects_asymmetric(self):
        M = np.eye(4)
        M[0, 1] = 1e-3
        with pytest.raises(ValidationError):
            sym_eigen(M)

    def test_zero_matrix(self):
        w, Q = sym_eigen(np.zeros((5, 5)))
        assert np.all(w == 0)


class TestClusterSpectrum:
    def test_forced_merge(self):
        spec = cluster_spectrum([1.0, 1.0 + 1e-12, 5.0], np.eye(3), gap_tol=1e-9)
        assert spec.multiplicities == (2, 1)
        assert abs(spec.values[0] - 1.0) < 1e-9
        assert abs(spec.values[1] - 5.0) < 1e-12

    def test_seven_equal(self):
        spec = cluster_spectrum([2.5] * 7, np.zeros((7, 7)), gap_tol=1e-8)
        assert spec.multiplicities == (7,)
        assert spec.values == (2.5,)

    def test_cliff3_spectrum_direct_eigensolve(self):
        # Cliff(3) with mu = (2, 2, 5), lambda0 = 1: clusters {(1,4),(2,2),(5,1)} on X^perp
        from osserman.cliffrep import rho7
        from osserman.cliffstruct import CliffordStructure, build_cliff
        from osserman.curvature import jacobi

        cs = CliffordStructure(rho7(+1).sub_family(3), 1, (2, 2, 5))
        R = build_cliff(cs)
        X = sample_unit_vectors(8, 1, 11)[0]
        M = jacobi(R, X)
        P = complete_basis(X)
        w, V = sym_eigen(P.T @ M @ P)
        spec = cluster_spectrum(w, V, gap_tol=1e-8)
        assert spec.multiplicities == (4, 2, 1)
        assert np.allclose(spec.values, [1.0, 2.0, 5.0], atol=1e-10)

    def test_empty(self):
        assert cluster_spectrum([], None).clusters == []

    def test_rejects_descending(self):
        with pytest.raises(ValidationError):
            cluster_spectrum([2.0, 1.0], np.eye(2))

    @given(st.lists(st.floats(-100, 100), min_size=1, max_size=40))
    @settings(max_examples=200, deadline=None)
    def test_multiplicities_always_sum_to_input_length(self, values):
        values = sorted(values)
        spec = cluster_spectrum(values, np.zeros((0, len(values))), gap_tol=1e-6)
        assert spec.total() == len(values)


class TestSampleUnitVectors:
    def test_deterministic(self):
        a = sample_unit_vectors(8, 1, 7)
        b = sample_unit_vectors(8, 1, 7)
        assert np.array_equal(a, b)

    def test_unit_norm(self):
        for v in sample_unit_vectors(5, 50, 3):
            assert abs(v @ v - 1.0) < 1e-14

    def test_rejects_zero_dim(self):
        with pytest.raises(ValidationError):
            sample_unit_vectors(0, 1, 1)

    def test_statistical_sanity(self):
        vs = sample_unit_vectors(3, 1000, 1)
        norms = np.linalg.norm(vs, axis=1)
        assert abs(norms.mean() - 1.0) < 1e-12
        assert np.abs(vs.mean(axis=0)).max() < 0.1


class TestRngPlumbing:
    def test_stream_seed_distinct(self):
        assert stream_seed(1, "octonion") != stream_seed(1, "symcheck")
        assert stream_seed(1, "octonion") == stream_seed(1, "octonion")

    def test_integers_in_range(self):
        rng = Xoshiro256(3)
        vals = rng.integers(-4, 5, 1000)
        assert min(vals) >= -4 and max(vals) <= 4
        assert len(set(vals)) == 9

    def test_gauss_reproducible(self):
        assert Xoshiro256(9).gauss() == Xoshiro256(9).gauss()


class TestBases:
    def test_complete_basis_orthonormal(self):
        rng = np.random.default_rng(0)
        for _ in range(10):
            x = rng.standard_normal(8)
            x /= np.linalg.norm(x)
            P = complete_basis(x)
            assert P.shape == (8, 7)
            assert np.abs(P.T @ P - np.eye(7)).max() < 1e-12
            assert np.abs(P.T @ x).max() < 1e-12

    def test_subspace_distance(self):
        e = np.eye(4)
        assert subspace_distance(e[:, :2], e[:, :2]) < 1e-14
        assert abs(subspace_distance(e[:, :1], e[:, 1:2]) - 1.0) < 1e-12
