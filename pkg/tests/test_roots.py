"""Root machinery: continuants, exact Sturm isolation, bisection refinement,
tridiagonal eigenvalues."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aqrm.poly import c_weight, constraint_poly, constraint_value
from aqrm.roots import (
    refine_interval,
    NotSymmetrizableError,
    RootInterval,
    TridiagMatrix,
    UniPoly,
    ZeroPolynomialError,
    continuant,
    count_real_roots,
    isolate_real_roots,
    real_roots,
    refine_root,
    squarefree_decomposition,
    sym_tridiag_eigenvalues,
    symmetrize_tridiag,
    tridiag_count_below,
)

fr = st.fractions(min_value=-4, max_value=4, max_denominator=5)


def dense_det(rows):
    """Fraction-free Gaussian elimination determinant, as an independent oracle."""
    n = len(rows)
    m = [row[:] for row in rows]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        inv = 1 / m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] * inv
            for k in range(c, n):
                m[r][k] -= f * m[c][k]
    return det


def tridiag_to_dense(t: TridiagMatrix):
    n = t.n
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = Fraction(t.diag[i])
        if i < n - 1:
            rows[i][i + 1] = Fraction(t.upper[i])
            rows[i + 1][i] = Fraction(t.lower[i])
    return rows


class TestContinuant:
    def test_small(self):
        assert continuant(TridiagMatrix((Fraction(7),), (), ())) == 7
        m = TridiagMatrix((Fraction(2), Fraction(5)), (Fraction(3),), (Fraction(4),))
        assert continuant(m) == 2 * 5 - 3 * 4

    @given(st.lists(fr, min_size=1, max_size=6), st.data())
    @settings(max_examples=40, deadline=None)
    def test_matches_dense_determinant(self, diag, data):
        n = len(diag)
        upper = data.draw(st.lists(fr, min_size=n - 1, max_size=n - 1))
        lower = data.draw(st.lists(fr, min_size=n - 1, max_size=n - 1))
        m = TridiagMatrix(tuple(diag), tuple(upper), tuple(lower))
        assert continuant(m) == dense_det(tridiag_to_dense(m))

    @given(st.lists(fr, min_size=2, max_size=6), st.data())
    @settings(max_examples=25, deadline=None)
    def test_depends_only_on_products(self, diag, data):
        n = len(diag)
        upper = data.draw(st.lists(fr.filter(lambda v: v != 0),
                                   min_size=n - 1, max_size=n - 1))
        lower = data.draw(st.lists(fr, min_size=n - 1, max_size=n - 1))
        m1 = TridiagMatrix(tuple(diag), tuple(upper), tuple(lower))
        m2 = TridiagMatrix(tuple(diag),
                           tuple(Fraction(1) for _ in upper),
                           tuple(u * l for u, l in zip(upper, lower)))
        assert continuant(m1) == continuant(m2)

    def test_constraint_cross_module(self):
        # determinant-form matrix for N=3, eps=0 at (x, y) = (1, 1)
        from aqrm.poly import constraint_tridiag
        m = constraint_tridiag(3, Fraction(0))
        val = continuant(m).evaluate(Fraction(1), Fraction(1))
        assert val == constraint_value(3, Fraction(0), 3, Fraction(1), Fraction(1))


class TestIsolation:
    def test_rejects_zero(self):
        with pytest.raises(ZeroPolynomialError):
            isolate_real_roots(UniPoly([]))

    def test_quadratic(self):
        ivs = isolate_real_roots(UniPoly([-1, 0, 1]))  # x^2 - 1
        assert len(ivs) == 2
        assert ivs[0].lo < -1 <= ivs[0].hi
        assert ivs[1].lo < 1 <= ivs[1].hi

    def test_no_real_roots(self):
        assert isolate_real_roots(UniPoly([1, 0, 1])) == []

    def test_multiplicities(self):
        # (1-x)^2 (x+2)
        p = UniPoly([1, -1]) * UniPoly([1, -1]) * UniPoly([2, 1])
        found = sorted(real_roots(p))
        assert [(r, m) for r, m in found] == [(Fraction(-2), 1), (Fraction(1), 2)]

    def test_exact_rational_roots(self):
        # roots at 0, 1/2, -3 exactly
        p = UniPoly([0, 1]) * UniPoly([Fraction(-1, 2), 1]) * UniPoly([3, 1])
        got = sorted(r for r, _ in real_roots(p, Fraction(1, 2 ** 30)))
        assert got == [Fraction(-3), Fraction(0), Fraction(1, 2)]

    def test_juddian_linear_case(self):
        # P_1 for eps=3/10 at y=1/4 has the single root x = 27/20
        p = constraint_poly(1, Fraction(3, 10), 1).subs_y(Fraction(1, 4))
        ivs = isolate_real_roots(p)
        assert len(ivs) == 1
        fine = refine_interval(p, ivs[0], Fraction(1, 2 ** 40))
        assert fine.lo <= Fraction(27, 20) <= fine.hi
        assert fine.width() <= Fraction(1, 2 ** 40)
        r = refine_root(p, ivs[0], Fraction(1, 2 ** 40))
        assert r == Fraction(27, 20)
        g = (float(r) ** 0.5) / 2
        assert g == pytest.approx(0.58095, abs=5e-5)

    def test_quadratic_juddian_case(self):
        # P_2 for eps=1 at y=9/4: roots 0.52605 and 4.09891
        p = constraint_poly(2, Fraction(1), 2).subs_y(Fraction(9, 4))
        rs = sorted(float(r) for r, _ in real_roots(p, Fraction(1, 2 ** 40)))
        assert rs == pytest.approx([0.526051, 4.098949], abs=2e-5)
        assert (rs[1] ** 0.5) / 2 == pytest.approx(1.01229, abs=5e-5)

    def test_fig3_larger_root(self):
        p = constraint_poly(2, Fraction(2), 2).subs_y(Fraction(9, 4))
        rs = sorted(float(r) for r, _ in real_roots(p, Fraction(1, 10 ** 7)))
        assert (rs[-1] ** 0.5) / 2 == pytest.approx(1.2836, abs=5e-4)

    @given(st.sets(st.integers(-8, 8), min_size=1, max_size=5))
    @settings(max_examples=30, deadline=None)
    def test_counts_products_of_distinct_linears(self, roots_set):
        p = UniPoly([1])
        for r in roots_set:
            p = p * UniPoly([-r, 1])
        assert count_real_roots(p) == len(roots_set)
        ivs = isolate_real_roots(p)
        assert len(ivs) == len(roots_set)
        assert all(iv.multiplicity_hint == 1 for iv in ivs)

    def test_all_roots_real_for_nonneg_x_slice(self):
        # fixing x >= 0 in P_N^(N,eps), every root in y is real (eps > -1/2)
        for N, eps, xv in ((5, Fraction(1, 4), Fraction(2)),
                           (4, Fraction(0), Fraction(0)),
                           (6, Fraction(-1, 4), Fraction(7, 2))):
            q = constraint_poly(N, eps, N).subs_x(xv)
            assert count_real_roots(q) == N

    def test_all_roots_real_for_fixed_y_slice(self):
        # the transposed statement: fixing any real y, every root in x is real
        for N, eps, yv in ((5, Fraction(1, 4), Fraction(3)),
                           (4, Fraction(1, 2), Fraction(-2)),
                           (6, Fraction(0), Fraction(1, 2))):
            q = constraint_poly(N, eps, N).subs_y(yv)
            assert count_real_roots(q) == N


class TestRefine:
    def test_linear(self):
        p = UniPoly([Fraction(-1, 2), 1])
        iv = RootInterval(Fraction(0), Fraction(1))
        r = refine_root(p, iv, Fraction(1, 2 ** 20))
        assert abs(r - Fraction(1, 2)) <= Fraction(1, 2 ** 20)

    def test_width_contract(self):
        p = UniPoly([-2, 0, 1])  # sqrt(2)
        iv = isolate_real_roots(p)[1]
        tol = Fraction(1, 2 ** 40)
        r = refine_root(p, iv, tol)
        assert abs(float(r) - 2 ** 0.5) < 2 ** -38


class TestSquarefree:
    @given(st.lists(st.integers(-4, 4), min_size=1, max_size=3), st.integers(1, 3))
    @settings(max_examples=25, deadline=None)
    def test_decomposition_reconstructs(self, roots_list, extra_mult):
        p = UniPoly([1])
        for r in set(roots_list):
            p = p * UniPoly([-r, 1])
        for _ in range(extra_mult - 1):
            p = p * UniPoly([-roots_list[0], 1])
        recon = UniPoly([1])
        for q, m in squarefree_decomposition(p):
            for _ in range(m):
                recon = recon * q
        assert recon * p.lc == p * recon.lc


class TestTridiagEigen:
    def test_tiny_cases(self):
        assert sym_tridiag_eigenvalues([0.0, 0.0], [1.0]) == pytest.approx([-1.0, 1.0])
        assert sym_tridiag_eigenvalues([1.0, 2.0, 3.0], [0.0, 0.0]) == pytest.approx(
            [1.0, 2.0, 3.0])

    def test_count_below_consistency(self):
        diag = [2.0, -1.0, 0.5, 3.0]
        off = [0.7, -0.3, 1.1]
        eigs = sym_tridiag_eigenvalues(diag, off, tol=1e-13)
        for sigma in (-2.0, 0.0, 0.6, 2.5, 5.0):
            assert tridiag_count_below(diag, off, sigma) == sum(e < sigma for e in eigs)

    def test_symmetrize_requires_nonneg_products(self):
        m = TridiagMatrix((Fraction(0), Fraction(0)), (Fraction(1),), (Fraction(-1),))
        with pytest.raises(NotSymmetrizableError):
            symmetrize_tridiag(m)

    def test_symmetrize_matches_original_spectrum(self):
        # nonsymmetric with positive products vs symmetrized eigenvalues,
        # via the characteristic polynomial
        m = TridiagMatrix((Fraction(1), Fraction(-2), Fraction(3)),
                          (Fraction(2), Fraction(1)),
                          (Fraction(3), Fraction(4)))
        diag, off = symmetrize_tridiag(m)
        eigs = sym_tridiag_eigenvalues(diag, off, tol=1e-13)
        # char poly det(t I - M) via continuant with polynomial entries
        t = UniPoly([0, 1])
        char = TridiagMatrix(tuple(t - UniPoly([d]) for d in m.diag),
                             tuple(UniPoly([-u]) for u in m.upper),
                             tuple(UniPoly([-l]) for l in m.lower))
        exact = sorted(float(r) for r, _ in real_roots(continuant(char)))
        assert eigs == pytest.approx(exact, abs=1e-10)

    def test_constraint_y_roots_match_matrix(self):
        # eigenvalues of -(D alpha + S) against exact y-roots of P_N(alpha, y)
        N, eps, alpha = 4, Fraction(1, 2), Fraction(2)
        import math as _m
        diag = [-float(i) * float(alpha) + float(i * (2 * (N - i) + 1 + 2 * eps))
                for i in range(1, N + 1)]
        off = [-_m.sqrt(i * (i + 1) * float(c_weight(N - i, eps))) for i in range(1, N)]
        eigs = sym_tridiag_eigenvalues(diag, off, tol=1e-13)
        yslice = constraint_poly(N, eps, N).subs_x(alpha)
        exact = sorted(float(r) for r, _ in real_roots(yslice, Fraction(1, 2 ** 48)))
        assert eigs == pytest.approx(exact, abs=1e-9)
