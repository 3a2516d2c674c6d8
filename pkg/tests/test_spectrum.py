"""Spectrum assembly: Juddian roots, root counts, T-function zeros, regular
and full spectra, sweeps."""

import math
from fractions import Fraction

import pytest

from aqrm import oracle
from aqrm.poly import c_weight
from aqrm.series import ModelParams
from aqrm.spectrum import (
    KIND_JUDDIAN,
    KIND_NON_JUDDIAN,
    KIND_REGULAR,
    SweepConfig,
    count_positive_roots,
    exact_bias,
    exceptional_records,
    expand_multiplicities,
    full_spectrum,
    juddian_roots,
    non_juddian_roots,
    records_to_rows,
    regular_spectrum,
    rows_to_csv,
    spectral_sweep,
)


class TestJuddianRoots:
    def test_figure_anchor_half_integer(self):
        roots = juddian_roots(1, Fraction(1, 2), 1)
        assert roots == [(0.5, 2)]

    def test_figure_anchor_integer_bias(self):
        roots = juddian_roots(2, Fraction(1), Fraction(3, 2))
        gs = [g for g, _ in roots]
        assert len(gs) == 2
        assert min(abs(g - 1.01229) for g in gs) < 5e-5
        assert all(m == 2 for _, m in roots)

    def test_level_zero_empty(self):
        assert juddian_roots(0, Fraction(1, 2), 1.0) == []

    def test_non_half_integer_multiplicity_one(self):
        roots = juddian_roots(1, Fraction(3, 10), Fraction(1, 2))
        assert len(roots) == 1
        g, m = roots[0]
        assert m == 1
        assert g == pytest.approx(math.sqrt(27 / 20) / 2, abs=1e-12)

    def test_no_juddian_below_half_integer_bias(self):
        # P_k with bias -l/2 is positive on the positive quadrant for k <= l
        for ell in range(1, 7):
            for k in range(ell + 1):
                for delta in (Fraction(1, 2), 1, 2):
                    assert juddian_roots(k, Fraction(-ell, 2), delta) == []

    def test_root_isolation_and_counting_agree(self):
        # two different exact paths over the same polynomial
        for N, eps, delta in ((5, Fraction(1, 4), Fraction(3, 2)),
                              (6, Fraction(-1, 4), Fraction(1)),
                              (4, Fraction(2), Fraction(5, 2))):
            n_roots = len(juddian_roots(N, eps, delta))
            assert n_roots == count_positive_roots(N, eps, delta ** 2)


class TestRootCounts:
    def test_above_top_interval(self):
        for N, eps in ((4, Fraction(0)), (6, Fraction(2, 5))):
            top = c_weight(N, eps)
            assert count_positive_roots(N, eps, top) == 0
            assert count_positive_roots(N, eps, top + 3) == 0

    def test_linear_case(self):
        assert count_positive_roots(1, 0, Fraction(1, 2)) == 1

    def test_interval_staircase(self):
        N, eps = 6, Fraction(2, 5)
        for k in range(N):
            lo, hi = c_weight(k, eps), c_weight(k + 1, eps)
            for y in (lo, lo + (hi - lo) / 4, lo + (hi - lo) / 2):
                assert count_positive_roots(N, eps, y) == N - k

    def test_half_integer_negative_bias_matches_divided_family(self):
        N, ell = 4, 2
        for y in (Fraction(0), Fraction(3, 2), Fraction(5), Fraction(12), Fraction(33)):
            big = count_positive_roots(N + ell, Fraction(-ell, 2), y)
            small = count_positive_roots(N, Fraction(ell, 2), y)
            assert big == small

    def test_exploratory_negative_bias_lower_bound(self):
        # negative non-half-integer bias: at least N-k positive roots of the
        # shifted polynomial on each shifted interval (exploratory range)
        eps = Fraction(-2, 5)
        m = 1   # -floor(2 eps)
        N = 4
        for k in range(N):
            lo = c_weight(m + k, eps)
            hi = c_weight(m + k + 1, eps)
            y = lo + (hi - lo) / 3
            assert count_positive_roots(N + m, eps, y) >= N - k


class TestNonJuddian:
    def test_half_integer_anchor(self):
        zeros = non_juddian_roots(1, 1.0, 0.5, "plus", 1.0, 2.0)
        assert len(zeros) == 1
        assert zeros[0] == pytest.approx(1.39303, abs=2e-4)

    def test_fig_anchor_non_half_integer(self):
        zeros = non_juddian_roots(1, 0.5, 0.3, "plus", 0.1, 2.0)
        assert min(abs(z - 0.8695) for z in zeros) < 2e-4

    def test_disjoint_from_juddian(self):
        zeros = non_juddian_roots(1, 0.5, 0.3, "plus", 0.1, 2.0)
        juds = [g for g, _ in juddian_roots(1, Fraction(3, 10), Fraction(1, 2))]
        for z in zeros:
            assert min(abs(z - g) for g in juds) > 1e-6


class TestSpectra:
    def test_full_spectrum_matches_oracle_with_degeneracy(self):
        p = ModelParams(0.5, 1.0, 0.5)
        recs = full_spectrum(p, 5.0)
        jud = [r for r in recs if r.kind == KIND_JUDDIAN]
        assert len(jud) == 1
        assert jud[0].x == pytest.approx(1.5, abs=1e-9)
        assert jud[0].multiplicity == 2
        lams = expand_multiplicities(recs)[:8]
        ev = oracle.lowest_eigenvalues(p, oracle.TruncationConfig(M=100), 8)
        assert lams == pytest.approx(ev, abs=1e-7)

    def test_regular_spectrum_against_oracle(self):
        p = ModelParams(1.0, 1.0, 0.2)
        recs = regular_spectrum(p, (-1.0, 4.0))
        assert all(r.kind == KIND_REGULAR for r in recs)
        ev = oracle.lowest_eigenvalues(p, oracle.TruncationConfig(M=110), len(recs))
        assert [r.lam for r in recs] == pytest.approx(ev, abs=1e-7)

    def test_no_regular_record_on_exceptional_point(self):
        p = ModelParams(1.0, 1.0, 0.2)
        recs = regular_spectrum(p, (-1.0, 4.0))
        for r in recs:
            for e in (p.eps, -p.eps):
                n = round(r.x - e)
                if n >= 0:
                    assert abs(r.x - (n + e)) > 1e-6

    def test_non_half_integer_all_simple(self):
        p = ModelParams(0.8695928362384437, 0.5, 0.3)
        recs = full_spectrum(p, 4.0)
        assert all(r.multiplicity == 1 for r in recs)
        njs = [r for r in recs if r.kind == KIND_NON_JUDDIAN]
        assert len(njs) == 1 and njs[0].x == pytest.approx(1.3, abs=1e-9)

    def test_symmetric_model_degenerate_level(self):
        # zero bias: every exceptional point is a double pole; the level-1
        # root at delta = 4/5 is g = 3/10 exactly and the level is degenerate
        assert juddian_roots(1, Fraction(0), Fraction(4, 5)) == [(0.3, 2)]
        p = ModelParams(0.3, 0.8, 0.0)
        recs = full_spectrum(p, 4.0)
        jud = [r for r in recs if r.kind == KIND_JUDDIAN]
        assert len(jud) == 1
        assert jud[0].x == pytest.approx(1.0, abs=1e-9)
        assert jud[0].multiplicity == 2
        lams = expand_multiplicities(recs)[:7]
        ev = oracle.lowest_eigenvalues(p, oracle.TruncationConfig(M=90), 7)
        assert lams == pytest.approx(ev, abs=1e-7)

    def test_integer_bias_degenerate_level(self):
        # larger quasi-exact root at (N=2, eps=2, delta=3/2): level x = 4
        # carries the double degeneracy and the rest of the spectrum tracks
        # the truncated-basis values
        g = juddian_roots(2, Fraction(2), Fraction(3, 2))[-1][0]
        p = ModelParams(g, 1.5, 2.0)
        recs = full_spectrum(p, 5.5)
        jud = [r for r in recs if r.kind == KIND_JUDDIAN]
        assert len(jud) == 1
        assert jud[0].x == pytest.approx(4.0, abs=1e-9)
        assert jud[0].multiplicity == 2 and jud[0].level_N == 2
        lams = expand_multiplicities(recs)[:9]
        ev = oracle.lowest_eigenvalues(p, oracle.TruncationConfig(M=110), 9)
        assert lams == pytest.approx(ev, abs=1e-7)

    def test_bias_flip_symmetry(self):
        for (g, d, e) in ((0.9, 1.1, 0.27), (0.6, 0.8, 0.45)):
            a = full_spectrum(ModelParams(g, d, e), 4.0)
            b = full_spectrum(ModelParams(g, d, -e), 4.0)
            assert len(a) == len(b)
            for ra, rb in zip(a, b):
                assert ra.x == pytest.approx(rb.x, abs=1e-8)
                assert ra.kind == rb.kind
                assert ra.multiplicity == rb.multiplicity

    def test_exceptional_records_juddian_constructed(self):
        # bias 3/10: place the coupling exactly on the level-1 Juddian root
        g = math.sqrt(27 / 20) / 2
        recs = exceptional_records(ModelParams(g, 0.5, 0.3), -2.0, 4.0)
        assert any(r.kind == KIND_JUDDIAN and r.level_N == 1
                   and r.multiplicity == 1 for r in recs)

    def test_irrational_bias_fallback_warns_and_classifies(self):
        import warnings as w
        eps = math.sqrt(2) / 4
        with w.catch_warnings(record=True) as caught:
            w.simplefilter("always")
            recs = full_spectrum(ModelParams(0.8, 1.0, eps), 3.0)
        assert any(issubclass(c.category, RuntimeWarning) for c in caught)
        assert all(r.kind == KIND_REGULAR for r in recs)
        ev = oracle.lowest_eigenvalues(ModelParams(0.8, 1.0, eps),
                                       oracle.TruncationConfig(M=90), len(recs))
        assert [r.lam for r in recs] == pytest.approx(ev, abs=1e-7)

    def test_tiny_coupling_exceptional_scan(self):
        recs = exceptional_records(ModelParams(1e-5, 1.0, 0.3), -2.0, 2.5)
        assert recs == []

    def test_log_term_obstruction_vanishes_at_juddian_root(self):
        # at a quasi-exact coupling both routes to the constraint value vanish
        from aqrm.series import log_term_coefficient, k_sequence
        from fractions import Fraction as F
        for (N, eps, delta) in ((2, F(1), F(3, 2)), (1, F(3, 10), F(1, 2))):
            for g, _ in juddian_roots(N, eps, delta):
                p = ModelParams(g, float(delta), float(eps))
                assert abs(log_term_coefficient(N, p)) < 1e-8
                ks = k_sequence(N + float(eps), p, "minus", N)
                assert abs(ks[N]) < 1e-8


class TestSweep:
    def test_small_sweep_degeneracy_flags(self):
        cfg = SweepConfig(g_grid=(0.45, 0.5, 0.55), x_max=4.0)
        rows = spectral_sweep(1.0, 0.5, cfg, 6)
        assert {r["g"] for r in rows} == {0.45, 0.5, 0.55}
        jud = [r for r in rows if r["kind"] == KIND_JUDDIAN]
        assert all(abs(r["g"] - 0.5) < 1e-12 for r in jud)
        assert len(jud) == 2  # the degenerate pair expanded
        for g in (0.45, 0.5, 0.55):
            assert sum(1 for r in rows if r["g"] == g) == 6

    def test_small_coupling_limit(self):
        cfg = SweepConfig(g_grid=(0.01,), x_max=4.0)
        rows = spectral_sweep(1.0, 0.3, cfg, 5)
        r = math.sqrt(1.0 + 0.09)
        expect = sorted([n + s * r for n in range(4) for s in (+1, -1)])[:5]
        got = [row["lambda"] for row in rows]
        assert got == pytest.approx(expect, abs=1e-3)


class TestHelpers:
    def test_exact_bias_detection(self):
        assert exact_bias(0.5) == Fraction(1, 2)
        assert exact_bias(0.2) == Fraction(1, 5)
        assert exact_bias(1.4) == Fraction(7, 5)
        assert exact_bias(math.sqrt(2) / 3) is None

    def test_csv_shape(self):
        p = ModelParams(0.5, 1.0, 0.5)
        rows = records_to_rows(full_spectrum(p, 3.0), p.g)
        text = rows_to_csv(rows)
        lines = text.strip().split("\n")
        assert lines[0] == "g,index,lambda,x,kind,multiplicity,level_N,branch"
        assert all(len(line.split(",")) == 8 for line in lines[1:])
