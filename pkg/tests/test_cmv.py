"""Block reflection matrices, the pentadiagonal product, truncations."""

from fractions import Fraction

import numpy as np
import pytest

from circlejacobi.cmv import (
    BandedOperator,
    anticommutator,
    build_m1,
    build_m2,
    cmv_matrix,
    commutator,
    truncated_spectrum,
    verify_gevp_and_five_term,
    verify_reflection_rows,
)
from circlejacobi.errors import BadVerblunsky
from circlejacobi.opuc import JacobiParams, verblunsky

from conftest import GRID

F = Fraction

SM = [F(-1, n + 2) for n in range(40)]  # single-moment coefficients


class TestBuilders:
    def test_m1_frozen_entries(self):
        m1 = build_m1(SM, 5)
        assert m1.row(0) == {0: 1}
        # block with a_1 = -1/3
        assert m1.row(1) == {1: F(-1, 3), 2: 1}
        assert m1.row(2) == {1: F(8, 9), 2: F(1, 3)}
        # block with a_3 = -1/5
        assert m1.row(3) == {3: F(-1, 5), 4: 1}
        assert m1.row(4) == {3: F(24, 25), 4: F(1, 5)}
        assert m1.valid_rows == 5  # odd size: no cut block

    def test_m2_frozen_entries(self):
        m2 = build_m2(SM, 5)
        # block with a_0 = -1/2
        assert m2.row(0) == {0: F(-1, 2), 1: 1}
        assert m2.row(1) == {0: F(3, 4), 1: F(1, 2)}
        # block with a_2 = -1/4
        assert m2.row(2) == {2: F(-1, 4), 3: 1}
        assert m2.row(3) == {2: F(15, 16), 3: F(1, 4)}
        # cut block keeps only the diagonal
        assert m2.row(4) == {4: F(-1, 6)}
        assert m2.valid_rows == 4

    def test_involution_on_valid_rows(self):
        for size in (4, 5, 6, 7):
            for m in (build_m1(SM, size), build_m2(SM, size)):
                sq = m @ m
                eye = BandedOperator.identity(size)
                for i in range(sq.valid_rows):
                    assert sq.row(i) == eye.row(i)

    def test_corner_entry_is_a0(self):
        for alpha, beta in GRID:
            p = JacobiParams(alpha, beta)
            a = [verblunsky(p, n) for n in range(8)]
            assert cmv_matrix(a, 8).entry(0, 0) == a[0]

    def test_pentadiagonal(self):
        c = cmv_matrix(SM, 12)
        assert c.max_band() <= 2
        assert c.bandwidth == 2

    def test_too_few_coefficients(self):
        with pytest.raises(ValueError):
            build_m1(SM[:2], 8)

    def test_bad_coefficient(self):
        with pytest.raises(BadVerblunsky):
            build_m2([F(1)], 2)


class TestOperatorAlgebra:
    def test_matches_dense_float_arithmetic(self):
        m1 = build_m1(SM, 9)
        m2 = build_m2(SM, 9)
        lhs = (m1 @ m2 - m2 @ m1).to_float()
        rhs = m1.to_float() @ m2.to_float() - m2.to_float() @ m1.to_float()
        assert np.allclose(lhs, rhs, atol=1e-14)
        lhs = anticommutator(m1, m2).to_float()
        rhs = m1.to_float() @ m2.to_float() + m2.to_float() @ m1.to_float()
        assert np.allclose(lhs, rhs, atol=1e-14)

    def test_valid_rows_propagation(self):
        m1 = build_m1(SM, 6)  # cut block: valid 5
        m2 = build_m2(SM, 6)  # complete: valid 6
        assert (m1.valid_rows, m2.valid_rows) == (5, 6)
        prod = m1 @ m2
        assert prod.valid_rows == min(m1.valid_rows, m2.valid_rows - m1.bandwidth)
        assert prod.bandwidth == m1.bandwidth + m2.bandwidth
        s = m1 + m2
        assert s.valid_rows == 5
        assert s.bandwidth == 1

    def test_scale_and_sub(self):
        m = build_m1(SM, 5)
        z = m.scale(2) - m - m
        assert not list(z.entries())
        assert commutator(m, m).size == 5

    def test_diagonal(self):
        d = BandedOperator.diagonal([1, 2, 3])
        assert d.entry(1, 1) == 2
        assert d.valid_rows == 3 and d.bandwidth == 0

    def test_apply_row(self):
        from circlejacobi.laurent import LaurentPoly

        m2 = build_m2(SM, 3)
        vecs = [LaurentPoly.one(), LaurentPoly({1: 1}), LaurentPoly({-1: 1})]
        out = m2.apply_row(0, vecs)  # -1/2 * 1 + 1 * z
        assert out == LaurentPoly({0: F(-1, 2), 1: 1})


class TestSpectrum:
    def test_size_one_is_a0(self):
        for alpha, beta in GRID:
            p = JacobiParams(alpha, beta)
            a = [verblunsky(p, 0)]
            evs = truncated_spectrum(cmv_matrix(a, 1))
            assert len(evs) == 1
            assert abs(evs[0] - complex(float(a[0]))) < 1e-14

    def test_free_truncation_is_nilpotent(self):
        """With vanishing coefficients the one-sided matrix is a shift
        chain that leaves every finite window, so all its eigenvalues
        collapse to zero at every size."""
        for size in (2, 3, 4, 6, 9):
            zeros = [F(0)] * size
            c = cmv_matrix(zeros, size)
            evs = truncated_spectrum(c)
            assert max(abs(ev) for ev in evs) < 1e-8
            # exact nilpotency: some power has no nonzero entry at all
            power = BandedOperator.identity(size)
            for _ in range(size + 1):
                power = power @ c
            assert not list(power.entries())

    @pytest.mark.parametrize("alpha,beta", GRID)
    def test_truncations_are_contractions(self, alpha, beta):
        """Truncated one-sided matrices have spectrum in the closed unit
        disk (they are corners of a unitary)."""
        p = JacobiParams(alpha, beta)
        a = [verblunsky(p, n) for n in range(21)]
        evs = truncated_spectrum(cmv_matrix(a, 21))
        assert len(evs) == 21
        assert max(abs(ev) for ev in evs) <= 1 + 1e-10

    def test_sorted_deterministically(self):
        c = cmv_matrix(SM, 10)
        assert truncated_spectrum(c) == truncated_spectrum(c)


class TestRowVerifications:
    @pytest.mark.parametrize("alpha,beta", GRID)
    def test_reflection_rows(self, alpha, beta, family):
        rep = verify_reflection_rows(family(alpha, beta, 12))
        assert rep.ok
        assert rep.to_dict()["status"] == "pass"

    @pytest.mark.parametrize("alpha,beta", GRID)
    def test_gevp_and_five_term(self, alpha, beta, family):
        rep = verify_gevp_and_five_term(family(alpha, beta, 12))
        assert rep.ok

    def test_skips_are_reported_not_asserted(self, family):
        rep = verify_reflection_rows(family(F(1, 2), F(-1, 2), 9))
        assert rep.skipped  # one side always has a cut block
        assert all("row" in s for s in rep.skipped)

    def test_corrupted_family_fails_both(self, family):
        from circlejacobi.opuc import family_from_verblunsky

        p = JacobiParams(F(1, 2), F(-1, 2))
        a = [verblunsky(p, n) for n in range(8)]
        a[1] += F(1, 100)
        bad = family_from_verblunsky(a, params=p)
        assert not verify_reflection_rows(bad).ok
        assert not verify_gevp_and_five_term(bad).ok
