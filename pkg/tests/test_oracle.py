"""Truncated-basis Hamiltonian and the self-contained eigensolvers."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aqrm.oracle import (
    DenseSymMatrix,
    TruncationConfig,
    certified_eigenvalues,
    convergence_study,
    eigenvalues,
    lowest_eigenvalues,
    truncated_hamiltonian,
)
from aqrm.roots import sym_tridiag_eigenvalues
from aqrm.series import ModelParams


def dense_from_rows(rows):
    n = len(rows)
    return DenseSymMatrix(n, [rows[i][j] for i in range(n) for j in range(n)])


class TestAssembly:
    def test_hermitian_by_construction(self):
        m = truncated_hamiltonian(ModelParams(1.3, 0.7, 0.4), TruncationConfig(M=20))
        assert m.max_asymmetry() == 0.0
        assert m.dim == 42

    def test_decoupled_limit(self):
        # g ~ 0, eps = 0: spectrum is {n +/- delta}
        p = ModelParams(1e-14, 1.5, 0.0)
        eigs = eigenvalues(truncated_hamiltonian(p, TruncationConfig(M=12)), 6)
        expect = sorted([n + s * 1.5 for n in range(4) for s in (+1, -1)])[:6]
        assert eigs == pytest.approx(expect, abs=1e-10)

    def test_zero_coupling_block_spectrum(self):
        # g ~ 0 with bias: blocks give n +/- sqrt(delta^2 + eps^2)
        p = ModelParams(1e-14, 1.0, 0.3)
        r = math.sqrt(1.0 + 0.09)
        eigs = lowest_eigenvalues(p, TruncationConfig(M=15), 4)
        assert eigs == pytest.approx([-r, 1 - r, r, 1 + r][:4] if r < 1 else
                                     sorted([-r, 1 - r, r, 2 - r]), abs=1e-9)

    def test_displaced_oscillator_limit(self):
        # delta -> 0: eigenvalues n - g^2 +/- eps after truncation convergence
        g, eps = 0.6, 0.3
        p = ModelParams(g, 1e-13, eps)
        eigs = lowest_eigenvalues(p, TruncationConfig(M=70), 6)
        expect = sorted(n - g * g + s * eps for n in range(3) for s in (+1, -1))
        assert eigs == pytest.approx(expect, abs=1e-9)


class TestEigensolvers:
    def test_diagonal(self):
        m = dense_from_rows([[1.0, 0.0, 0.0], [0.0, 2.0, 0.0], [0.0, 0.0, 3.0]])
        assert eigenvalues(m, 3) == pytest.approx([1.0, 2.0, 3.0])

    def test_two_by_two(self):
        m = dense_from_rows([[0.0, 1.0], [1.0, 0.0]])
        assert eigenvalues(m, 2) == pytest.approx([-1.0, 1.0])

    def test_count_bound(self):
        m = dense_from_rows([[0.0, 1.0], [1.0, 0.0]])
        with pytest.raises(ValueError):
            eigenvalues(m, 3)

    @given(st.integers(2, 7), st.data())
    @settings(max_examples=20, deadline=None)
    def test_jacobi_matches_tridiagonal_bisection(self, n, data):
        vals = data.draw(st.lists(st.floats(-3, 3), min_size=2 * n - 1,
                                  max_size=2 * n - 1))
        diag, off = vals[:n], vals[n:]
        rows = [[0.0] * n for _ in range(n)]
        for i in range(n):
            rows[i][i] = diag[i]
            if i < n - 1:
                rows[i][i + 1] = rows[i + 1][i] = off[i]
        dense = eigenvalues(dense_from_rows(rows), n)
        bisect = sym_tridiag_eigenvalues(diag, off, tol=1e-13)
        assert dense == pytest.approx(bisect, abs=1e-9)

    def test_householder_path_vs_jacobi(self):
        # dim 82 > jacobi threshold; compare against the banded route
        p = ModelParams(0.9, 1.1, 0.25)
        dense = eigenvalues(truncated_hamiltonian(p, TruncationConfig(M=40)), 8)
        banded = lowest_eigenvalues(p, TruncationConfig(M=40), 8)
        assert dense == pytest.approx(banded, abs=1e-10)

    def test_invariance_under_bias_flip(self):
        cfg = TruncationConfig(M=60)
        a = lowest_eigenvalues(ModelParams(1.0, 1.0, 0.4), cfg, 8)
        b = lowest_eigenvalues(ModelParams(1.0, 1.0, -0.4), cfg, 8)
        assert a == pytest.approx(b, abs=1e-9)

    def test_ground_state_simple(self):
        for (g, d, e) in ((0.5, 1.0, 0.5), (1.0, 1.0, 0.2), (1.5, 2.0, 1.0)):
            eigs = lowest_eigenvalues(ModelParams(g, d, e), TruncationConfig(M=70), 2)
            assert eigs[1] - eigs[0] > 1e-6


class TestConvergence:
    def test_drift_decreases(self):
        rows = convergence_study(ModelParams(1.0, 1.0, 0.2), [30, 45, 60, 80], 8)
        drifts = [r["drift"] for r in rows[1:]]
        assert all(d is not None for d in drifts)
        assert drifts[-1] < drifts[0]
        assert drifts[-1] < 1e-8

    def test_zero_coupling_no_drift(self):
        rows = convergence_study(ModelParams(1e-14, 1.0, 0.1), [20, 32, 40], 6)
        assert all(r["drift"] < 1e-12 for r in rows[1:])

    def test_requires_increasing(self):
        with pytest.raises(ValueError):
            convergence_study(ModelParams(1.0, 1.0, 0.0), [40, 40], 4)

    def test_certified(self):
        eigs, M = certified_eigenvalues(ModelParams(1.0, 1.0, 0.2), 6, tol=1e-8)
        again = lowest_eigenvalues(ModelParams(1.0, 1.0, 0.2), TruncationConfig(M=M + 40), 6)
        assert eigs == pytest.approx(again, abs=1e-7)


class TestDegeneracyStructure:
    def test_near_degenerate_pair_at_juddian_point(self):
        # bias 1/2, g = 1/2, delta 1: doubly degenerate level at 1.5 - 0.25
        eigs = lowest_eigenvalues(ModelParams(0.5, 1.0, 0.5), TruncationConfig(M=80), 6)
        pairs = [(a, b) for a, b in zip(eigs, eigs[1:]) if b - a < 1e-8]
        assert len(pairs) == 1
        mean = (pairs[0][0] + pairs[0][1]) / 2
        assert mean == pytest.approx(1.25, abs=1e-8)
