"""The symmetrization map to [-2, 2] and its exact closure."""

from fractions import Fraction

import pytest

from circlejacobi.errors import ParamOutOfRange
from circlejacobi.laurent import LaurentPoly
from circlejacobi.szego import (
    SymmetricLaurent,
    b_coeff,
    bt_coeff,
    build_p,
    build_q,
    build_szego_pair,
    classical_jacobi_oracle,
    fit_recurrence,
    from_x_coefficients,
    rec_coeffs,
    u_coeff,
    ut_coeff,
    verify_classical_match,
    verify_dep_and_pq_identity,
    verify_recurrence_closure,
    verify_three_term,
    verify_transforms,
    x_power,
)

from conftest import GRID

F = Fraction


class TestSymmetricLaurent:
    def test_rejects_asymmetric(self):
        with pytest.raises(ValueError):
            SymmetricLaurent(LaurentPoly({1: 1}))

    def test_x_power(self):
        assert x_power(0) == LaurentPoly.one()
        assert x_power(2) == LaurentPoly({-2: 1, 0: 2, 2: 1})
        with pytest.raises(ValueError):
            x_power(-1)

    def test_x_coefficients_roundtrip(self):
        coeffs = (F(3), F(-1, 2), F(0), F(2, 7))
        s = from_x_coefficients(coeffs)
        assert s.x_coefficients() == coeffs
        assert s.x_degree == 3

    def test_x_coefficients_frozen(self):
        # z^2 + 1/z^2 = x^2 - 2
        s = SymmetricLaurent(LaurentPoly({2: 1, -2: 1}))
        assert s.x_coefficients() == (F(-2), F(0), F(1))


class TestClassicalOracle:
    def test_legendre_frozen(self):
        # monic Legendre rescaled to [-2, 2]: p2 = x^2 - 4/3
        assert classical_jacobi_oracle(0, 0, 0).x_coefficients() == (F(1),)
        assert classical_jacobi_oracle(0, 0, 1).x_coefficients() == (F(0), F(1))
        assert classical_jacobi_oracle(0, 0, 2).x_coefficients() == (
            F(-4, 3),
            F(0),
            F(1),
        )

    def test_chebyshev_frozen(self):
        # the parameter sum -1 case exercises the cancelled n = 1 weight
        assert classical_jacobi_oracle(F(-1, 2), F(-1, 2), 2).x_coefficients() == (
            F(-2),
            F(0),
            F(1),
        )
        assert classical_jacobi_oracle(F(-1, 2), F(-1, 2), 3).x_coefficients() == (
            F(0),
            F(-3),
            F(0),
            F(1),
        )

    def test_asymmetric_frozen(self):
        # alpha = 3/2, beta = 1/2: first moment is -1/2
        assert classical_jacobi_oracle(F(3, 2), F(1, 2), 1).x_coefficients() == (
            F(1, 2),
            F(1),
        )

    def test_domain_guard(self):
        with pytest.raises(ParamOutOfRange):
            classical_jacobi_oracle(-1, 0, 2)
        with pytest.raises(ValueError):
            classical_jacobi_oracle(0, 0, -1)

    def test_three_term_internal_consistency(self):
        # the oracle chain satisfies its own recurrence when refit
        chain = [classical_jacobi_oracle(F(1), F(2), n) for n in range(7)]
        b, u, clean = fit_recurrence(chain)
        assert clean
        assert all(x > 0 for x in u[1:])


class TestBuildPQ:
    def test_single_moment_frozen(self, family):
        fam = family(F(1, 2), F(-1, 2), 7)
        assert build_p(fam, 0).x_coefficients() == (F(1),)
        assert build_p(fam, 1).x_coefficients() == (F(1), F(1))  # x + 1
        assert build_p(fam, 2).x_coefficients() == (F(-1), F(1), F(1))  # x^2+x-1
        assert build_q(fam, 0).x_coefficients() == (F(1),)
        assert build_q(fam, 1).x_coefficients() == (F(1, 2), F(1))  # x + 1/2

    def test_free_point_is_chebyshev(self, family):
        fam = family(F(-1, 2), F(-1, 2), 9)
        assert build_p(fam, 2).x_coefficients() == (F(-2), F(0), F(1))
        assert build_p(fam, 4).x_coefficients() == (F(2), F(0), F(-4), F(0), F(1))

    def test_monic_in_x(self, family):
        fam = family(F(1), F(2), 11)
        for n in range(6):
            assert build_p(fam, n).x_coefficients()[-1] == 1
            assert build_q(fam, n).x_coefficients()[-1] == 1


class TestRecurrenceCoefficients:
    def test_single_moment_frozen(self, family):
        fam = family(F(1, 2), F(-1, 2), 9)
        assert b_coeff(fam, 0) == -1  # 2 a_0
        assert b_coeff(fam, 1) == 0
        assert u_coeff(fam, 0) == 0
        assert u_coeff(fam, 1) == 1
        assert bt_coeff(fam, 0) == F(-1, 2)
        assert ut_coeff(fam, 0) == 0

    def test_free_boundary_convention(self, family):
        # u_1 = (1 + a_1)(1 - a_{-1})(1 - a_0^2) with a_{-1} = -1
        fam = family(F(-1, 2), F(-1, 2), 9)
        assert u_coeff(fam, 1) == 2
        assert all(u_coeff(fam, n) == 1 for n in (2, 3))
        assert all(b_coeff(fam, n) == 0 for n in range(4))

    def test_rec_coeffs_requires_depth(self, family):
        fam = family(F(0), F(0), 6)
        with pytest.raises(ValueError):
            rec_coeffs(fam, 3)  # needs a_8
        b, u, bt, ut = rec_coeffs(fam, 2)
        assert len(b) == len(u) == len(bt) == len(ut) == 3
        assert all(x > 0 for x in u[1:]) and all(x > 0 for x in ut[1:])

    def test_pair_requires_size(self, family):
        with pytest.raises(ValueError):
            build_szego_pair(family(F(0), F(0), 2))


class TestVerifications:
    @pytest.mark.parametrize("alpha,beta", GRID)
    def test_three_term(self, alpha, beta, family):
        fam = family(alpha, beta, 13)
        assert verify_three_term(fam, build_szego_pair(fam)).ok

    @pytest.mark.parametrize("alpha,beta", GRID)
    def test_recurrence_closure(self, alpha, beta, family):
        fam = family(alpha, beta, 13)
        rep = verify_recurrence_closure(fam, build_szego_pair(fam))
        assert rep.ok

    @pytest.mark.parametrize("alpha,beta", GRID)
    def test_transforms(self, alpha, beta, family):
        fam = family(alpha, beta, 13)
        rep = verify_transforms(fam, build_szego_pair(fam))
        assert rep.ok
        labels = {c.label.split(" ")[0] for c in rep.checks}
        assert {
            "christoffel",
            "christoffel'",
            "geronimus",
            "psi(P,Q)",
            "psi(P,P)",
            "P",
            "Q",
        } <= labels

    @pytest.mark.parametrize("alpha,beta", GRID)
    def test_classical_match(self, alpha, beta, family):
        fam = family(alpha, beta, 13)
        assert verify_classical_match(fam, 6).ok

    @pytest.mark.parametrize("alpha,beta", GRID)
    def test_differential_identities(self, alpha, beta, family):
        fam = family(alpha, beta, 13)
        assert verify_dep_and_pq_identity(fam, 6).ok

    def test_fit_detects_broken_chain(self):
        # a chain that is not orthogonal: x p_n - p_{n+1} leaves the span
        chain = [
            SymmetricLaurent(LaurentPoly.one()),
            SymmetricLaurent(x_power(1)),
            SymmetricLaurent(x_power(2)),
            SymmetricLaurent(x_power(3) + x_power(0)),
        ]
        _, _, clean = fit_recurrence(chain)
        assert not clean
