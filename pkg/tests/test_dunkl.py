"""The first-order reflection operator and its eigenvalue structure."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from circlejacobi.dunkl import (
    apply_k,
    apply_k_single_moment,
    lambda_n,
    lambda_single_moment,
    selfadjoint_residual,
    verify_bispectral,
)
from circlejacobi.laurent import LaurentPoly
from circlejacobi.opuc import (
    JacobiParams,
    chi_basis,
    family_from_verblunsky,
    max_chi_index,
)

from conftest import GRID

F = Fraction
P_SM = JacobiParams(F(1, 2), F(-1, 2))


@st.composite
def laurents(draw):
    n = draw(st.integers(0, 5))
    d: dict[int, Fraction] = {}
    for _ in range(n):
        e = draw(st.integers(-6, 6))
        d[e] = d.get(e, F(0)) + F(draw(st.integers(-9, 9)), draw(st.integers(1, 9)))
    return LaurentPoly(d)


class TestEigenvalues:
    def test_single_moment_pattern(self):
        # 0, 2, -1, 3, -2, 4, ...
        want = [F(0), F(2), F(-1), F(3), F(-2), F(4), F(-3)]
        assert [lambda_single_moment(n) for n in range(7)] == want
        assert [lambda_n(P_SM, n) for n in range(7)] == want

    def test_general_closed_form(self):
        p = JacobiParams(1, 2)
        assert lambda_n(p, 0) == 0
        assert lambda_n(p, 2) == -1
        assert lambda_n(p, 1) == 1 + 4  # (n+1)/2 + alpha + beta + 1
        assert lambda_n(p, 5) == 3 + 4

    def test_specialization_agrees_far_out(self):
        assert all(
            lambda_n(P_SM, n) == lambda_single_moment(n) for n in range(101)
        )

    def test_negative_index_rejected(self):
        with pytest.raises(ValueError):
            lambda_n(P_SM, -1)
        with pytest.raises(ValueError):
            lambda_single_moment(-2)

    def test_distinct_across_parity(self):
        # even eigenvalues are <= 0, odd ones are > 0 whenever s > -1
        for alpha, beta in GRID:
            p = JacobiParams(alpha, beta)
            for n in range(0, 30, 2):
                assert lambda_n(p, n) <= 0
            for n in range(1, 30, 2):
                assert lambda_n(p, n) > 0


class TestApplyK:
    def test_frozen_single_moment_actions(self):
        # K psi_1 = 2 psi_1 and K psi_2 = -psi_2 at the single-moment point
        psi1 = LaurentPoly({1: 1, 0: F(1, 2)})
        psi2 = LaurentPoly({-1: 1, 0: F(2, 3), 1: F(1, 3)})
        assert apply_k(psi1, P_SM) == psi1 * 2
        assert apply_k(psi2, P_SM) == -psi2
        assert apply_k_single_moment(psi1) == psi1 * 2
        assert apply_k_single_moment(psi2) == -psi2

    def test_kills_constants(self):
        assert apply_k(LaurentPoly.constant(5), JacobiParams(1, 2)).is_zero
        assert apply_k_single_moment(LaurentPoly.one()).is_zero

    def test_linear(self):
        p = JacobiParams(F(3, 2), F(1, 2))
        f = LaurentPoly({2: 1, -1: 3})
        g = LaurentPoly({0: 1, 1: -2})
        assert apply_k(f + g, p) == apply_k(f, p) + apply_k(g, p)
        assert apply_k(f * F(2, 7), p) == apply_k(f, p) * F(2, 7)

    @given(laurents())
    def test_division_always_exact(self, f):
        """(R - I)f vanishes at z = +-1, so the divided term never
        leaves a remainder, for any Laurent input."""
        for alpha, beta in ((F(1, 2), F(-1, 2)), (F(1), F(2))):
            apply_k(f, JacobiParams(alpha, beta))  # must not raise
        apply_k_single_moment(f)

    @given(laurents())
    def test_specializations_coincide(self, f):
        assert apply_k(f, P_SM) == apply_k_single_moment(f)

    @pytest.mark.parametrize("alpha,beta", GRID)
    def test_triangular_on_chi_flag(self, alpha, beta):
        """K chi_n = lambda_n chi_n + lower chi terms: the operator is
        triangular in the Laurent ordering with the eigenvalues on the
        diagonal, which is why the eigenfunctions exist at every n."""
        p = JacobiParams(alpha, beta)
        for n in range(21):
            res = apply_k(chi_basis(n), p) - chi_basis(n) * lambda_n(p, n)
            assert max_chi_index(res) < n


class TestBispectral:
    @pytest.mark.parametrize("alpha,beta", GRID)
    def test_families_are_eigenfunctions(self, alpha, beta, family):
        rep = verify_bispectral(family(alpha, beta, 12))
        assert rep.ok
        assert len(rep.checks) == 13

    def test_requires_parameters(self):
        fam = family_from_verblunsky([F(-1, 2), F(-1, 3)])
        with pytest.raises(ValueError):
            verify_bispectral(fam)

    def test_perturbed_family_fails(self, family):
        a = [F(-1, n + 2) for n in range(6)]
        a[1] += F(1, 100)
        bad = family_from_verblunsky(a, params=P_SM)
        rep = verify_bispectral(bad)
        assert not rep.ok
        assert any(c.detail for c in rep.failures)


class TestSelfAdjointness:
    def test_residual_small_on_weighted_circle(self):
        f = LaurentPoly({2: 1, 0: F(1, 3)})
        g = LaurentPoly({-1: 1, 1: F(1, 2)})
        for alpha, beta in ((F(1, 2), F(-1, 2)), (F(0), F(0)), (F(1), F(2))):
            assert selfadjoint_residual(f, g, JacobiParams(alpha, beta)) < 1e-10

    def test_minimum_order_enforced(self):
        with pytest.raises(ValueError):
            selfadjoint_residual(
                LaurentPoly.one(), LaurentPoly.one(), P_SM, quad_order=32
            )
