"""Canonical form, representation derivation, and the operator algebra."""

from fractions import Fraction

import pytest

from circlejacobi.algebra import (
    AlgebraParams,
    CanonicalForm,
    big_lambda,
    build_xy,
    build_xy_matrix,
    canonicalize,
    derive_representation,
    op_m1,
    op_m2,
    verify_central_extension,
    verify_relations_functional,
    verify_relations_matrix,
    verify_representation_derivation,
    y_eigencheck,
)
from circlejacobi.errors import Degenerate
from circlejacobi.laurent import LaurentPoly
from circlejacobi.opuc import JacobiParams, verblunsky

from conftest import GRID

F = Fraction


class TestCanonicalForm:
    def test_already_canonical(self):
        # (alpha, beta) = (1, 2): {K,M1} = 4 M1 - 4 I, {K,M2} = 5 M2 - I
        form = canonicalize(AlgebraParams(4, -4, 5, -1))
        assert form == CanonicalForm(alpha=F(1), beta=F(2), mu=F(1), nu=F(0))

    def test_recovers_affine_shift(self):
        # the single-moment relations pushed through K -> (K - 3)/2
        form = canonicalize(AlgebraParams(F(-5, 2), F(-1, 2), -2, F(1, 2)))
        assert form == CanonicalForm(alpha=F(1, 2), beta=F(-1, 2), mu=F(2), nu=F(3))

    def test_degenerate_quadruples(self):
        with pytest.raises(Degenerate):
            canonicalize(AlgebraParams(1, 2, 1, 3))  # g3 == g1
        with pytest.raises(Degenerate):
            canonicalize(AlgebraParams(1, 0, 2, 3))  # g2 == 0

    def test_coercion(self):
        g = AlgebraParams("1/2", 1, 2, 3)
        assert g.g1 == F(1, 2) and isinstance(g.g1, Fraction)


class TestDerivation:
    def test_single_moment_frozen(self):
        lam, a = derive_representation(F(1, 2), F(-1, 2), 6)
        assert lam == (0, 2, -1, 3, -2, 4, -3)
        assert a == (F(-1, 2), F(-1, 3), F(-1, 4), F(-1, 5), F(-1, 6), F(-1, 7), F(-1, 8))

    def test_lambda0_is_forced_to_zero(self):
        for alpha, beta in GRID:
            lam, _ = derive_representation(alpha, beta, 4)
            assert lam[0] == 0

    @pytest.mark.parametrize("alpha,beta", GRID)
    def test_matches_closed_forms(self, alpha, beta):
        rep = verify_representation_derivation(JacobiParams(alpha, beta), 25)
        assert rep.ok
        assert len(rep.checks) == 52

    def test_degenerate_parameter_sum(self):
        # alpha + beta = -2 makes the first diagonal pivot vanish
        with pytest.raises(Degenerate):
            derive_representation(F(-1, 2), F(-3, 2), 3)


class TestFunctionalRealization:
    def test_m_ops(self):
        f = LaurentPoly({2: 1, -1: 3})
        assert op_m1(f) == f.reflect()
        assert op_m2(f) == f.reflect().shift(1)
        assert op_m1(op_m1(f)) == f
        assert op_m2(op_m2(f)) == f

    def test_x_is_multiplication_by_x(self):
        x_op, _ = build_xy(JacobiParams(1, 2))
        f = LaurentPoly({3: 2, 0: 1})
        assert x_op(f) == f.shift(1) + f.shift(-1)

    def test_y_on_free_monomials(self):
        # free point: K = theta, so Y z^k = (k^2 - 0) z^k
        _, y_op = build_xy(JacobiParams(F(-1, 2), F(-1, 2)))
        for k in range(-4, 5):
            assert y_op(LaurentPoly.monomial(k)) == LaurentPoly.monomial(k) * (k * k)

    @pytest.mark.parametrize("alpha,beta", GRID)
    def test_defining_relations(self, alpha, beta):
        assert verify_relations_functional(JacobiParams(alpha, beta), 8).ok

    @pytest.mark.parametrize("alpha,beta", GRID)
    def test_matrix_relations(self, alpha, beta):
        assert verify_relations_matrix(JacobiParams(alpha, beta), 14).ok

    def test_matrix_relations_requires_size(self):
        with pytest.raises(ValueError):
            verify_relations_matrix(JacobiParams(0, 0), 2)


class TestCentralExtension:
    @pytest.mark.parametrize("alpha,beta", GRID)
    def test_closure(self, alpha, beta, family):
        fam = family(alpha, beta, 13)
        rep = verify_central_extension(fam, d=6, matrix_size=13)
        assert rep.ok

    def test_extension_term_checked_at_symmetric_point(self, family):
        fam = family(F(0), F(0), 9)
        rep = verify_central_extension(fam, d=4, matrix_size=9)
        assert any("drops" in c.label for c in rep.checks)

    def test_xy_matrix_shapes(self):
        x, y = build_xy_matrix(JacobiParams(F(1, 2), F(-1, 2)), 9)
        assert x.size == y.size == 9
        assert x.max_band() <= 2
        assert y.max_band() == 0  # diagonal in the eigenbasis


class TestYEigen:
    def test_big_lambda_frozen(self):
        p = JacobiParams(1, 2)
        assert [big_lambda(p, n) for n in range(5)] == [0, 5, 5, 12, 12]

    def test_eigenvalues_pair_up(self):
        for alpha, beta in GRID:
            p = JacobiParams(alpha, beta)
            for n in range(1, 12):
                assert big_lambda(p, 2 * n - 1) == big_lambda(p, 2 * n)
                assert big_lambda(p, 2 * n) == n * (p.alpha + p.beta + n + 1)

    @pytest.mark.parametrize("alpha,beta", GRID)
    def test_y_eigenproblem(self, alpha, beta, family):
        fam = family(alpha, beta, 13)
        rep = y_eigencheck(fam, 5)
        assert rep.ok
        labels = {c.label.split(" ")[0] for c in rep.checks}
        assert {"Lambda", "Y", "R"} <= labels


class TestAsVerblunskySource:
    def test_derivation_agrees_with_direct_formula_far_out(self):
        p = JacobiParams(F(3, 2), F(1, 2))
        _, a = derive_representation(p.alpha, p.beta, 40)
        assert a == tuple(verblunsky(p, n) for n in range(41))
