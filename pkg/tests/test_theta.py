import pytest

from qmgw.errors import InvalidSeries
from qmgw.modular import E2, E4, QMPolynomial, qm_eval, quasimodularize
from qmgw.rational import ONE, rat
from qmgw.theta import (
    ZLaurent,
    b_table,
    log_theta_deriv,
    one_over_theta,
    onepoint_from_b,
    onepoint_qm,
    prime_form,
    sigma_tilde,
    sigma_tilde_from_table,
    theta_z_derivative,
    weierstrass_a,
    weierstrass_table,
)

QM1 = QMPolynomial.constant(ONE)


class TestSigma:
    def test_leading_term(self):
        s = sigma_tilde(7)
        assert s.coefficient(1) == QM1

    def test_z5_coefficient(self):
        # a_{1,0}/5! * (E4/24) with a_{1,0} = -1
        assert sigma_tilde(7).coefficient(5) == E4 * rat(-1, 2880)

    def test_odd_series(self):
        s = sigma_tilde(12)
        for n in range(2, 12, 2):
            assert s.coefficient(n).is_zero()

    def test_two_routes_agree(self):
        assert sigma_tilde(15) == sigma_tilde_from_table(15)


class TestWeierstrassTables:
    def test_a_initial_values(self):
        a = weierstrass_a(12)
        assert a[(0, 0)] == ONE
        # one recursion step: only the last term survives
        assert a[(1, 0)] == rat(-1)
        assert a[(0, 1)] == 3 * a[(1, 0)]

    def test_b_initial_values(self):
        b = b_table(12)
        assert b[(0, 0)] == ONE
        assert b[(1, 0)] == rat(1, 120)

    def test_b_cross_route_weight_four(self):
        # sum over 2l+4m+6n = 4 of the b-formula equals [z^3](1/Theta)
        assert onepoint_from_b(2) == one_over_theta(7).coefficient(3)

    def test_table_wrapper(self):
        t = weierstrass_table(10)
        assert t.a[(0, 0)] == ONE and t.b[(0, 0)] == ONE
        assert t.bound == 10


class TestPrimeForm:
    def test_leading_coefficients(self):
        theta = prime_form(5)
        assert theta.coefficient(1) == QM1
        assert theta.coefficient(3) == E2 * rat(1, 24)

    def test_weight_grading(self):
        theta = prime_form(11)
        for k in range(1, 6):
            coeff = theta.coefficient(2 * k + 1)
            if not coeff.is_zero():
                assert coeff.homogeneous_weight() == 2 * k

    def test_one_over_theta_low_coefficients(self):
        oot = one_over_theta(7)
        assert oot.coefficient(-1) == QM1
        assert oot.coefficient(1) == E2 * rat(-1, 24)
        expected = QMPolynomial(
            {(0, 1, 0): rat(1, 2880), (2, 0, 0): rat(1, 1152)}
        )
        assert oot.coefficient(3) == expected
        # same thing written as (1/576)(E4/5 + E2^2/2)
        assert expected == (E4 / 5 + E2 * E2 / 2) * rat(1, 576)

    def test_product_with_reciprocal(self):
        theta = prime_form(9)
        product = theta * one_over_theta(9)
        assert product.coefficient(0) == QM1
        for n in range(1, 6):
            assert product.coefficient(n).is_zero()


class TestLogThetaDeriv:
    def test_first_derivative(self):
        d1 = log_theta_deriv(1, 6)
        assert d1.val == -1
        assert d1.coefficient(-1) == QM1
        assert d1.coefficient(1) == E2 * rat(1, 12)

    def test_second_derivative(self):
        d2 = log_theta_deriv(2, 6)
        assert d2.val == -2
        assert d2.coefficient(-2) == -QM1

    def test_m_zero_rejected(self):
        with pytest.raises(InvalidSeries):
            log_theta_deriv(0, 6)

    def test_derivative_consistency(self):
        # d/dz of log-derivative order m gives order m+1
        d1 = log_theta_deriv(1, 8)
        d2 = log_theta_deriv(2, 7)
        stepped = d1.derive_z()
        for n in range(-2, 6):
            assert stepped.coefficient(n) == d2.coefficient(n)

    def test_theta_derivative_against_ratio(self):
        # Theta' = (dlog Theta) * Theta
        theta = prime_form(9)
        lhs = theta_z_derivative(1, 8)
        rhs = log_theta_deriv(1, 8) * theta
        for n in range(0, 7):
            assert lhs.coefficient(n) == rhs.coefficient(n)


class TestOnePointTower:
    def test_genus_one(self):
        assert onepoint_qm(1) == E2 * rat(-1, 24)

    def test_genus_two(self):
        assert onepoint_qm(2) == QMPolynomial(
            {(0, 1, 0): rat(1, 2880), (2, 0, 0): rat(1, 1152)}
        )

    def test_b_route_equality_to_genus_seven(self):
        for g in range(1, 8):
            assert onepoint_qm(g, z_order=15) == onepoint_from_b(g)

    def test_membership_at_declared_weight(self):
        for g in range(1, 6):
            p = onepoint_qm(g)
            w = 2 * g
            expansion = qm_eval(p, 24)
            assert quasimodularize(expansion, w) == p

    def test_q_expansion_anchors(self):
        series = qm_eval(onepoint_qm(1), 6)
        assert series.coefficient(0) == rat(-1, 24)
        assert series.coefficient(1) == ONE


class TestZLaurent:
    def test_normalization_strips_leading_zeros(self):
        z = ZLaurent(-2, [QMPolynomial.zero(), QM1, QM1])
        assert z.val == -1

    def test_reciprocal_requires_constant_lead(self):
        with pytest.raises(InvalidSeries):
            ZLaurent(0, [E2]).reciprocal()

    def test_mul_valuations_add(self):
        a = ZLaurent(2, [QM1, QM1])
        b = ZLaurent(-1, [QM1, QM1])
        assert (a * b).val == 1
