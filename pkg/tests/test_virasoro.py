import pytest

from qmgw.errors import InvalidSeries
from qmgw.rational import ONE, ZERO, rat
from qmgw.virasoro import (
    THEORIES,
    DiffOperator,
    mono_var,
    pochhammer,
    poly_add,
    poly_const,
    poly_equal,
    poly_mul_mono,
    poly_scale,
    poly_var,
    quantization_S,
    theories_structurally_equal,
    virasoro_commutator_check,
    virasoro_op,
)


class TestPochhammer:
    def test_convention(self):
        assert pochhammer(rat(5), 0) == ONE
        assert pochhammer(rat(3), 2) == rat(12)
        assert pochhammer(rat(0), 3) == ZERO
        assert pochhammer(rat(1), 4) == rat(24)


class TestOperators:
    def test_l0_scales_by_level(self):
        l0 = virasoro_op("curve", 0, 8)
        for level in (0, 3, 5):
            got = l0.apply(poly_var(0, level))
            want = poly_scale(poly_var(0, level), level)
            assert poly_equal(got, want)

    def test_point_sector_shifted_weight(self):
        l0 = virasoro_op("curve", 0, 8)
        got = l0.apply(poly_var(3, 4))
        assert poly_equal(got, poly_scale(poly_var(3, 4), 5))

    def test_kills_constants(self):
        for k in range(-1, 4):
            op = virasoro_op("curve", k, 8)
            assert op.apply(poly_const(1)) == {}

    def test_affine_term_on_probe(self):
        # L_k contains -(k+1)! d/d t0_{k+1}
        from math import factorial

        for k in range(-1, 3):
            op = virasoro_op("curve", k, 8)
            got = op.apply(poly_var(0, k + 1))
            affine = got.get((), ZERO)
            assert affine == -rat(factorial(k + 1))

    def test_level_cap_guard(self):
        with pytest.raises(InvalidSeries):
            virasoro_op("curve", 3, 2)

    def test_unknown_theory(self):
        with pytest.raises(InvalidSeries):
            virasoro_op("orbifold", 0, 5)


class TestBracket:
    def test_example_pairs(self):
        for n, m, in ((1, 0), (2, -1), (1, -1), (3, 3)):
            for theory in THEORIES:
                report = virasoro_commutator_check(n, m, 10, theory)
                assert report.passed, (theory, n, m)

    def test_symbolic_commutator_interior(self):
        # [L_1, L_-1] = 2 L_0, compared term-by-term away from the cap
        cap = 10
        l1 = virasoro_op("curve", 1, cap)
        lm1 = virasoro_op("curve", -1, cap)
        l0 = virasoro_op("curve", 0, cap)
        comm = l1.commutator(lm1)
        twice = dict(l0.scaled(2).linear)
        got = dict(comm.linear)
        for (src, dst), coeff in twice.items():
            if src[1] <= cap - 2 and dst[1] <= cap - 2:
                assert got.get((src, dst)) == coeff
        assert dict(comm.affine).get((0, 1)) == dict(
            l0.scaled(2).affine
        ).get((0, 1))

    def test_antisymmetry(self):
        report = virasoro_commutator_check(2, 2, 10, "curve")
        assert report.passed

    def test_structural_identity_of_theories(self):
        for k in range(-1, 4):
            assert theories_structurally_equal(k, 10)

    def test_window_guard(self):
        with pytest.raises(InvalidSeries):
            virasoro_commutator_check(1, -2, 10, "curve")


class TestQuantization:
    def test_zero_parameter_is_identity(self):
        op = quantization_S(0, 5)
        probe = poly_add(poly_var(0, 2), poly_const(3))
        assert op.apply(probe) == {0: probe}

    def test_vector_field_first_step(self):
        op = quantization_S(rat(1, 2), 5)
        out = op.apply(poly_var(0, 0))
        h0 = out[0]
        assert h0.get(mono_var(0, 1)) == rat(-1, 2)
        # full flow: q0_n coefficient is (-t)^n / n!
        from math import factorial

        for n in range(5):
            want = rat(-1, 2) ** n / factorial(n)
            assert h0.get(mono_var(0, n), ZERO) == want

    def test_squared_term_is_hbar_graded(self):
        op = quantization_S(rat(1, 3), 4)
        out = op.apply(poly_const(1))
        assert out[0] == poly_const(1)
        assert -1 in out  # the multiplication term lands in hbar^{-1}

    def test_commutes_with_point_sector_multiplication(self):
        op = quantization_S(rat(2, 5), 5)
        probe = poly_add(poly_var(0, 1), poly_const(1))
        lhs = op.apply(poly_mul_mono(probe, mono_var(3, 2), 1))
        rhs = {
            h: poly_mul_mono(p, mono_var(3, 2), 1)
            for h, p in op.apply(probe).items()
        }
        assert lhs == rhs

    def test_fixes_point_sector_pointwise(self):
        op = quantization_S(rat(7, 4), 6)
        poly = poly_mul_mono(poly_var(3, 1), mono_var(3, 4), 1)
        assert op.apply(poly)[0] == poly


class TestDiffOperatorAlgebra:
    def test_commutator_shapes_close(self):
        a = DiffOperator.build({(0, 1): ONE}, {((0, 0), (0, 2)): rat(2)})
        b = DiffOperator.build({}, {((0, 2), (0, 3)): ONE})
        c = a.commutator(b)
        assert isinstance(c, DiffOperator)
        # [d/dt01 + 2 t00 d/dt02, t02 d/dt03] = 2 t00 d/dt03
        assert dict(c.linear) == {((0, 0), (0, 3)): rat(2)}
        assert dict(c.affine) == {}

    def test_action_linearity(self):
        op = virasoro_op("curve", 1, 6)
        p = poly_var(0, 3)
        q = poly_var(3, 2)
        lhs = op.apply(poly_add(p, q))
        rhs = poly_add(op.apply(p), op.apply(q))
        assert poly_equal(lhs, rhs)
