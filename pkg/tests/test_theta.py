import cmath
import math

import pytest

from conftest import random_tau

from ellrig.errors import DomainError, PreconditionError
from ellrig.polynomial import ChernPoly, Generators
from ellrig.theta import (
    MoebiusMatrix,
    S_MATRIX,
    T_MATRIX,
    TauPoint,
    ThetaKind,
    jacobi_residual,
    modularity_residual,
    moebius_act,
    s_prefactor,
    shift_factor,
    st_transform_residual,
    subgroup_membership,
    theta_derivative,
    theta_eval,
    theta_prime_zero,
    theta_zero_location,
)

KINDS = list(ThetaKind)


class TestTauPoint:
    def test_margin_enforced(self):
        with pytest.raises(DomainError):
            TauPoint(0.01j)
        TauPoint(0.01j, min_im=0.005)  # override per run

    def test_fractional_powers_come_from_tau(self):
        tau = TauPoint(1.3 + 0.9j)
        assert abs(tau.q_half() ** 2 - tau.q()) < 1e-15
        # the principal root of q would have the wrong sign here
        assert abs(tau.q_half() - cmath.sqrt(tau.q())) > 0.1


class TestThetaEval:
    def test_odd_theta_vanishes_at_zero(self):
        assert theta_eval(ThetaKind.THETA, 0.0, 0.5j) == 0

    def test_truncation_against_doubled_product(self):
        tau = TauPoint(1j)
        v1 = theta_eval(ThetaKind.THETA1, 0.0, tau)
        v2 = theta_eval(ThetaKind.THETA1, 0.0, tau, product_terms=60)
        assert abs(v1 - v2) < 1e-12

    def test_jet_of_odd_theta_is_derivative_times_generator(self):
        gens = Generators(("x",))
        arg = ChernPoly.generator(gens, 1, "x")
        jet = theta_eval(ThetaKind.THETA, arg, 1j)
        assert jet.constant() == 0
        expected = theta_prime_zero(1j)
        assert abs(jet.coefficient({"x": 1}) - expected) < 1e-12

    def test_product_terms_precondition(self):
        with pytest.raises(PreconditionError):
            theta_eval(ThetaKind.THETA, 0.1, 1j, product_terms=0)


class TestDerivatives:
    def test_zeroth_derivative_at_zero(self):
        assert theta_derivative(ThetaKind.THETA, 0, 0.0, 1j) == 0

    def test_even_kinds_have_flat_origin(self):
        for kind in (ThetaKind.THETA1, ThetaKind.THETA2, ThetaKind.THETA3):
            assert abs(theta_derivative(kind, 1, 0.0, 1j)) < 1e-12

    def test_against_central_differences(self):
        h = 1e-5
        tau = TauPoint(1j)
        fd = (theta_eval(ThetaKind.THETA, h, tau)
              - theta_eval(ThetaKind.THETA, -h, tau)) / (2 * h)
        assert abs(theta_derivative(ThetaKind.THETA, 1, 0.0, tau) - fd) < 1e-7

    def test_all_kinds_match_finite_differences(self, rng):
        h = 1e-5
        for kind in KINDS:
            tau = TauPoint(random_tau(rng))
            v = complex(rng.uniform(-0.3, 0.3), rng.uniform(-0.2, 0.2))
            fd = (theta_eval(kind, v + h, tau) - theta_eval(kind, v - h, tau)) / (2 * h)
            assert abs(theta_derivative(kind, 1, v, tau) - fd) < 1e-6


class TestJacobiIdentity:
    def test_reference_points(self):
        assert jacobi_residual(1j) < 1e-10
        assert jacobi_residual(0.3 + 0.8j) < 1e-10

    def test_invariance_under_two_step_translation(self):
        tau = 0.4 + 0.9j
        assert abs(jacobi_residual(tau) - jacobi_residual(tau + 2)) < 1e-10

    def test_random_sample(self, rng):
        for _ in range(20):
            tau = complex(rng.uniform(-0.5, 0.5), rng.uniform(0.5, 2.0))
            assert jacobi_residual(tau) < 1e-10


class TestShiftLaws:
    def test_integer_step_multipliers(self):
        tau = TauPoint(1j)
        assert shift_factor(ThetaKind.THETA, 0.3, tau, 1, 0) == -1
        assert shift_factor(ThetaKind.THETA1, 0.3, tau, 1, 0) == -1
        assert shift_factor(ThetaKind.THETA2, 0.3, tau, 1, 0) == 1
        assert shift_factor(ThetaKind.THETA3, 0.3, tau, 1, 0) == 1

    def test_single_tau_step_signs(self):
        # calibrated table: the odd theta and theta2 pick up the minus sign
        tau = TauPoint(0.2 + 0.8j)
        v = 0.17 + 0.05j
        base = cmath.exp(-2j * cmath.pi * v) / tau.q_half()
        signs = {ThetaKind.THETA: -1, ThetaKind.THETA1: 1,
                 ThetaKind.THETA2: -1, ThetaKind.THETA3: 1}
        for kind in KINDS:
            mu = shift_factor(kind, v, tau, 0, 1)
            direct = theta_eval(kind, v + tau.value, tau) / theta_eval(kind, v, tau)
            assert abs(mu - signs[kind] * base) < 1e-14
            assert abs(mu - direct) < 1e-10

    def test_double_tau_step_against_direct_ratio(self):
        tau = TauPoint(1j)
        v = 0.2
        mu = shift_factor(ThetaKind.THETA, v, tau, 0, 2)
        direct = theta_eval(ThetaKind.THETA, v + 2j, tau) / theta_eval(
            ThetaKind.THETA, v, tau)
        assert abs(mu - direct) < 1e-9

    def test_double_periodicity_with_explicit_factors(self, rng):
        for kind in KINDS:
            tau = TauPoint(random_tau(rng))
            v = complex(rng.uniform(-0.4, 0.4), rng.uniform(-0.2, 0.2))
            assert abs(theta_eval(kind, v + 2, tau)
                       - theta_eval(kind, v, tau)) < 1e-9
            mu = shift_factor(kind, v, tau, 0, 2)
            assert abs(theta_eval(kind, v + 2 * tau.value, tau)
                       - mu * theta_eval(kind, v, tau)) < 1e-9 * max(1.0, abs(mu))

    def test_polynomial_argument_multiplier(self):
        gens = Generators(("z",))
        z = ChernPoly.generator(gens, 2, "z")
        tau = TauPoint(0.9j)
        v = 0.1 + z
        mu = shift_factor(ThetaKind.THETA2, v, tau, 0, 2)
        scalar = shift_factor(ThetaKind.THETA2, 0.1, tau, 0, 2)
        assert abs(mu.constant() - scalar) < 1e-12
        assert abs(mu.coefficient({"z": 1}) - scalar * (-4j * cmath.pi)) < 1e-9 * abs(scalar)


class TestMoebius:
    def test_generator_actions(self):
        tau = TauPoint(1j)
        t, new = moebius_act(S_MATRIX, 0.3, tau)
        assert abs(t - 0.3 / 1j) < 1e-15
        assert abs(new.value - (-1 / 1j)) < 1e-15
        t, new = moebius_act(T_MATRIX, 0.3, tau)
        assert t == 0.3 and new.value == 1j + 1
        t, new = moebius_act(MoebiusMatrix(1, 0, 0, 1), 0.3, tau)
        assert t == 0.3 and new.value == 1j

    def test_determinant_enforced(self):
        with pytest.raises(DomainError):
            MoebiusMatrix(1, 1, 1, 1)

    def test_subgroup_membership(self):
        flags = subgroup_membership(T_MATRIX)
        assert flags["gamma0_lower"] and not flags["gamma0_upper"]
        flags = subgroup_membership(S_MATRIX)
        assert not flags["gamma0_lower"] and not flags["gamma0_upper"]
        st2st = S_MATRIX @ (T_MATRIX @ T_MATRIX) @ S_MATRIX @ T_MATRIX
        assert subgroup_membership(st2st)["gamma0_lower"]
        # generators of the even-upper-entry subgroup
        sts = S_MATRIX @ T_MATRIX @ S_MATRIX
        t2sts = T_MATRIX @ T_MATRIX @ sts
        assert subgroup_membership(sts)["gamma0_upper"]
        assert subgroup_membership(t2sts)["gamma0_upper"]


class TestTransformationLaws:
    def test_reference_point(self):
        assert st_transform_residual(ThetaKind.THETA3, 0.1, 1j, "S") < 1e-8

    def test_t_swaps_the_half_integer_kinds(self):
        tau = TauPoint(0.7j)
        v = 0.21 + 0.04j
        res = abs(theta_eval(ThetaKind.THETA2, v, tau.value + 1)
                  - theta_eval(ThetaKind.THETA3, v, tau))
        assert res < 1e-8

    def test_odd_theta_trivial_at_zero(self):
        assert st_transform_residual(ThetaKind.THETA, 0.0, 1j, "S") == 0

    def test_full_suite_random(self, rng):
        for _ in range(10):
            tau = TauPoint(random_tau(rng))
            v = complex(rng.uniform(-0.3, 0.3), rng.uniform(-0.15, 0.15))
            for kind in KINDS:
                assert st_transform_residual(kind, v, tau, "S") < 1e-8
                assert st_transform_residual(kind, v, tau, "T") < 1e-8

    def test_s_squared_roundtrip(self, rng):
        # composing the law at tau and at -1/tau lands on theta(-v, tau)
        from ellrig.theta import S_PERM

        for kind in KINDS:
            tau = TauPoint(random_tau(rng))
            v = complex(rng.uniform(-0.3, 0.3), rng.uniform(-0.1, 0.1))
            tau_s = tau.shifted(-1.0 / tau.value)
            pref = s_prefactor(kind, tau_s) * s_prefactor(S_PERM[kind], tau)
            lhs = theta_eval(kind, -v, tau)
            rhs = pref * theta_eval(kind, v, tau)
            assert abs(lhs - rhs) < 1e-8

    def test_prime_zero_weight(self):
        tau = TauPoint(0.8j)
        lhs = theta_prime_zero(tau.shifted(-1.0 / tau.value))
        rhs = (tau.value / 1j) ** 1.5 * theta_prime_zero(tau)
        assert abs(lhs - rhs) < 1e-9


class TestModularity:
    def test_constant_function_weight_zero(self):
        res = modularity_residual(lambda tau: 4.2, T_MATRIX, 1j, 0, 1.0)
        assert res == 0

    def test_derivative_two_thirds_power(self):
        # theta'(0, tau+1) picks up an eighth root of unity; the 2/3 power
        # on the principal branch gives the character exp(i pi/6)
        f = lambda tau: theta_prime_zero(tau) ** (2.0 / 3.0)
        chi = cmath.exp(1j * cmath.pi / 6)
        assert modularity_residual(f, T_MATRIX, 1.5j, 0, chi) < 1e-8

    def test_measurement_has_no_verdict(self):
        f = lambda tau: theta_eval(ThetaKind.THETA3, 0.0, TauPoint(tau)) ** 4
        res = modularity_residual(f, S_MATRIX, 1.3j, 2, 1.0)
        assert res >= 0.0


class TestZeroLattice:
    def test_zero_sets(self):
        tau = TauPoint(0.6 + 0.9j)
        assert theta_zero_location(ThetaKind.THETA, 2 + 3 * tau.value, tau) == (2, 3)
        assert theta_zero_location(ThetaKind.THETA1, 0.5 + tau.value, tau) == (0, 1)
        assert theta_zero_location(ThetaKind.THETA2, tau.value / 2, tau) == (0, 0)
        assert theta_zero_location(ThetaKind.THETA3, 0.5 + tau.value / 2, tau) == (0, 0)
        assert theta_zero_location(ThetaKind.THETA, 0.3, tau) is None

    def test_located_zeros_really_vanish(self):
        tau = TauPoint(0.6 + 0.9j)
        for kind, point in [
            (ThetaKind.THETA, 1 + tau.value),
            (ThetaKind.THETA1, 0.5),
            (ThetaKind.THETA2, tau.value / 2),
            (ThetaKind.THETA3, 0.5 + tau.value / 2),
        ]:
            assert abs(theta_eval(kind, point, tau)) < 1e-10


class TestFormalNumericConsistency:
    def test_qseries_evaluates_to_the_product(self, rng):
        from ellrig.theta import theta_qseries

        for kind in KINDS:
            tau = TauPoint(complex(rng.uniform(-0.2, 0.2), rng.uniform(1.0, 1.4)))
            centre = complex(rng.uniform(-0.2, 0.2), rng.uniform(0.0, 0.1))
            series = theta_qseries(kind, centre, None, 12)
            direct = theta_eval(kind, centre, tau)
            assert abs(series.evaluate(tau.q()) - direct) < 1e-10

    def test_jet_coefficients_match_numeric_jets(self):
        from ellrig.theta import theta_qseries

        gens = Generators(("x",))
        jet = ChernPoly.generator(gens, 2, "x")
        tau = TauPoint(1.1j)
        series = theta_qseries(ThetaKind.THETA3, 0.1, jet, 10)
        direct = theta_eval(ThetaKind.THETA3, jet + 0.1, tau)
        total = ChernPoly.zero(gens, 2)
        for e in series.support():
            total = total + series.coeff(e) * tau.q() ** (e.eighths / 8.0)
        assert (total - direct).max_abs_coeff() < 1e-10
