import cmath
import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from cftkit.errors import DomainError, InvalidOrderError
from cftkit.qseries import (
    FractionalQSeries,
    TorusPoint,
    eta_eval,
    eta_qexp,
    partition_count,
    partition_series,
    reduce_to_fundamental_domain,
    theta_eval,
    triple_product,
)

SAMPLE_TAUS = [0.1 + 0.9j, 1.5j, -0.4 + 1.2j, 0.3 + 0.7j, 0.45 + 2.0j]


class TestPartitionCount:
    def test_small_values(self):
        assert partition_count(0) == 1
        assert partition_count(4) == 5

    def test_against_enumeration(self):
        for n in range(0, 16):
            assert partition_count(n) == len(oracles.partitions_brute(n))

    def test_large_is_exact_integer(self):
        assert partition_count(100) == oracles.partition_dp(100)

    def test_negative_rejected(self):
        with pytest.raises(DomainError):
            partition_count(-1)


class TestFractionalQSeries:
    def test_zero_coefficients_dropped(self):
        s = FractionalQSeries({F(1): F(0), F(2): F(3)}, F(5))
        assert s.exponents() == [F(2)]

    def test_terms_beyond_truncation_dropped(self):
        s = FractionalQSeries({F(1): 1, F(7): 1}, F(5))
        assert s.exponents() == [F(1)]

    def test_coefficient_beyond_truncation_raises(self):
        s = FractionalQSeries({F(1): 1}, F(5))
        assert s[F(3)] == 0
        with pytest.raises(InvalidOrderError):
            s[F(5)]

    def test_product_truncation(self):
        # A known below 3 with min exponent 1/2; B known below 2 with min exponent 0
        A = FractionalQSeries({F(1, 2): 1, F(2): 1}, F(3))
        B = FractionalQSeries({F(0): 1, F(1): -1}, F(2))
        assert (A * B).truncation_order == F(5, 2)

    def test_exact_product(self):
        A = FractionalQSeries({F(0): 1, F(1): 1})
        assert (A * A).terms == {F(0): 1, F(1): 2, F(2): 1}
        assert (A * A).truncation_order is None

    def test_inverse_of_euler_product_is_partitions(self):
        inv = eta_qexp(F(241, 24)).shift(F(-1, 24)).inverse()
        for n in range(10):
            assert inv[n] == partition_count(n)

    def test_negative_power(self):
        A = FractionalQSeries({F(0): 1, F(1): -1}, F(6))
        assert A**-1 == FractionalQSeries({F(k): 1 for k in range(6)}, F(6))

    def test_evaluate_monomial(self):
        s = FractionalQSeries.monomial(F(1, 2))
        tau = 0.2 + 1.0j
        assert abs(s.evaluate(tau) - cmath.exp(1j * math.pi * tau)) < 1e-15

    def test_float_exponent_rejected(self):
        with pytest.raises(TypeError):
            FractionalQSeries.monomial(0.5)


class TestEtaQexp:
    def test_single_term_below_first_correction(self):
        s = eta_qexp(F(25, 24))
        assert s.terms == {F(1, 24): 1}

    def test_first_correction(self):
        assert eta_qexp(F(49, 24))[F(1, 24) + 1] == -1

    def test_against_brute_force_product(self):
        coeffs = oracles.euler_product_coeffs(12)
        s = eta_qexp(F(1, 24) + 13)
        for n, c in enumerate(coeffs):
            assert s[F(1, 24) + n] == c

    def test_pentagonal_coefficients(self):
        s = eta_qexp(F(1, 24) + 8)
        assert s[F(1, 24) + 5] == 1
        # brute-force product gives +1 at q^7 (pentagonal number 7)
        assert s[F(1, 24) + 7] == oracles.euler_product_coeffs(7)[7] == 1

    def test_order_too_small(self):
        with pytest.raises(InvalidOrderError):
            eta_qexp(F(1, 24))

    def test_times_partitions_is_monomial(self):
        T = F(1, 24) + 15
        prod = eta_qexp(T) * partition_series(15)
        assert prod.terms == {F(1, 24): 1}
        assert prod.truncation_order == T


class TestEtaEval:
    def test_at_i(self):
        assert abs(eta_eval(1j) - 0.768225) < 1e-6
        assert abs(eta_eval(1j) - oracles.eta_direct(1j)) < 1e-14

    @pytest.mark.parametrize("tau", SAMPLE_TAUS)
    def test_t_transform(self, tau):
        assert abs(eta_eval(tau + 1) / eta_eval(tau) - cmath.exp(1j * math.pi / 12)) < 1e-12

    @pytest.mark.parametrize("tau", SAMPLE_TAUS)
    def test_s_transform_principal_branch(self, tau):
        assert abs(eta_eval(-1 / tau) / eta_eval(tau) - cmath.sqrt(-1j * tau)) < 1e-12

    def test_lower_half_plane(self):
        with pytest.raises(DomainError):
            eta_eval(-1j)
        with pytest.raises(DomainError):
            TorusPoint(0.5)


class TestTheta:
    @pytest.mark.parametrize("tau", SAMPLE_TAUS)
    def test_theta1_odd(self, tau):
        assert abs(theta_eval(1, 0, tau)) < 1e-14

    @pytest.mark.parametrize("tau", SAMPLE_TAUS)
    def test_theta3_is_gaussian_sum(self, tau):
        direct = sum(cmath.exp(1j * math.pi * tau * k * k) for k in range(-40, 41))
        assert abs(theta_eval(3, 0, tau) - direct) < 1e-13

    @pytest.mark.parametrize("w", [0.0, 0.13 + 0.05j, 0.4 - 0.1j])
    @pytest.mark.parametrize("tau", SAMPLE_TAUS)
    def test_triple_product(self, w, tau):
        assert abs(triple_product(w, tau, 200) - theta_eval(3, w, tau)) < 1e-12

    @pytest.mark.parametrize("tau", [0.1 + 0.5j, 0.25j + 0.3, 1.1j])
    def test_specializations(self, tau):
        q = cmath.exp(2j * math.pi * tau)
        qh = cmath.exp(1j * math.pi * tau)
        p3 = p4 = p2 = 1
        for n in range(1, 300):
            qn = q**n
            p3 *= (1 - qn) * (1 + qn / qh) ** 2
            p4 *= (1 - qn) * (1 - qn / qh) ** 2
            p2 *= (1 - qn) * (1 + qn) ** 2
        assert abs(p3 - theta_eval(3, 0, tau)) < 1e-12
        assert abs(p4 - theta_eval(4, 0, tau)) < 1e-12
        assert abs(2 * p2 - theta_eval(2, 0, tau) * cmath.exp(-1j * math.pi * tau / 4)) < 1e-12

    def test_bad_index(self):
        with pytest.raises(DomainError):
            theta_eval(5, 0, 1j)

    def test_nonfinite_w(self):
        with pytest.raises(DomainError):
            theta_eval(3, complex("nan"), 1j)


def test_fundamental_domain_reduction():
    t, word = reduce_to_fundamental_domain(0.7 + 0.1j)
    assert abs(t.tau.real) <= 0.5 + 1e-12 and abs(t.tau) >= 1 - 1e-12
    assert word


rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)
small_series = st.dictionaries(
    st.fractions(min_value=0, max_value=4, max_denominator=4), rationals, max_size=5
)


@settings(max_examples=60, deadline=None)
@given(small_series, small_series, small_series, st.fractions(min_value=1, max_value=6, max_denominator=4))
def test_product_associative(a, b, c, T):
    A, B, C = (FractionalQSeries(x, T) for x in (a, b, c))
    assert (A * B) * C == A * (B * C)


@settings(max_examples=60, deadline=None)
@given(small_series, small_series, st.fractions(min_value=1, max_value=6, max_denominator=4))
def test_product_commutative_and_truncation_consistent(a, b, T):
    A, B = FractionalQSeries(a, T), FractionalQSeries(b, T)
    AB = A * B
    assert AB == B * A
    assert all(e < AB.truncation_order for e in AB.exponents())


@settings(max_examples=40, deadline=None)
@given(st.floats(-0.5, 0.5), st.floats(0.6, 2.5))
def test_eta_modular_property(x, y):
    tau = complex(x, y)
    assert abs(eta_eval(tau + 1) - cmath.exp(1j * math.pi / 12) * eta_eval(tau)) < 1e-12
    assert abs(eta_eval(-1 / tau) - cmath.sqrt(-1j * tau) * eta_eval(tau)) < 1e-11
