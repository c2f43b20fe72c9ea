"""Tests for the test-polynomial families."""
import math
import unittest

import numpy as np
from numpy.testing import assert_allclose, assert_array_equal

from qspc.numerics.poly import ComplexPoly, sup_norm_on_circle
from qspc.services.convention_service import cheb_to_circle
from qspc.services.family_service import (
    EIG_FILTER_SHRINK,
    ChebSeries,
    RandomSpec,
    build_family,
    eig_filter,
    eig_filter_value,
    jacobi_anger,
    random_poly,
    signum_params,
    signum_poly,
)
from qspc.utils.errors import DomainError, InvalidInputError


class TestChebSeries(unittest.TestCase):
    def test_trims_trailing_zeros(self):
        self.assertEqual(ChebSeries([1, 2, 0, 0]).degree, 1)

    def test_parity_is_checked(self):
        with self.assertRaises(DomainError):
            ChebSeries([1, 1], parity="even")
        with self.assertRaises(DomainError):
            ChebSeries([1, 1], parity="odd")
        with self.assertRaises(DomainError):
            ChebSeries([1], parity="twisted")

    def test_evaluate(self):
        series = ChebSeries([0, 0, 1])
        assert_allclose(series.evaluate([0.0, 0.5, 1.0]), [-1.0, -0.5, 1.0])


class TestRandomPoly(unittest.TestCase):
    def test_deterministic(self):
        spec = RandomSpec(degree=12, delta=0.2, seed=42)
        assert_array_equal(random_poly(spec).coeffs, random_poly(spec).coeffs)

    def test_seeds_differ(self):
        a = random_poly(RandomSpec(degree=4, seed=1)).coeffs
        b = random_poly(RandomSpec(degree=4, seed=2)).coeffs
        self.assertFalse(np.allclose(a, b))

    def test_sup_norm(self):
        for delta in (0.0, 0.2, 0.5):
            P = random_poly(RandomSpec(degree=20, delta=delta, seed=3))
            self.assertEqual(P.degree, 20)
            self.assertAlmostEqual(sup_norm_on_circle(P, refine=True), 1.0 - delta, places=12)
            self.assertLessEqual(sup_norm_on_circle(P), 1.0 - delta + 1e-12)

    def test_degree_zero(self):
        P = random_poly(RandomSpec(degree=0, delta=0.4, seed=0))
        self.assertAlmostEqual(abs(P.coeffs[0]), 0.6)

    def test_invalid_spec(self):
        with self.assertRaises(DomainError):
            RandomSpec(degree=3, delta=1.0)
        with self.assertRaises(DomainError):
            RandomSpec(degree=-1)


class TestJacobiAnger(unittest.TestCase):
    def test_truncation_order(self):
        self.assertEqual(jacobi_anger(10.0, 1e-6).degree, 28)

    def test_approximates_time_evolution(self):
        series = jacobi_anger(10.0, 1e-6)
        x = np.linspace(-1, 1, 10_000)
        error = np.max(np.abs(series.evaluate(x) - np.exp(-10j * x)))
        self.assertLessEqual(error, 1e-6 * (1 + 1e-4))

    def test_truncation_bound(self):
        x = np.linspace(-1, 1, 4001)
        for tau in (0.0, 0.5, 2.0, 10.0, 30.0):
            for eps in (1e-3, 1e-6, 1e-10):
                series = jacobi_anger(tau, eps)
                M = math.ceil(0.5 * math.e * tau + math.log(1 / eps))
                self.assertLessEqual(series.degree, M)
                unscaled = series.evaluate(x) * (1 + eps)
                error = np.max(np.abs(unscaled - np.exp(-1j * tau * x)))
                bound = math.exp(0.5 * math.e * tau - M)
                self.assertLessEqual(bound, eps)
                self.assertLess(error, bound + 1e-14, msg=(tau, eps))

    def test_bounded_by_one(self):
        series = jacobi_anger(10.0, 1e-6)
        x = np.linspace(-1, 1, 10_000)
        self.assertLess(np.max(np.abs(series.evaluate(x))), 1.0)

    def test_zero_time(self):
        series = jacobi_anger(0.0, 1e-3)
        self.assertEqual(series.degree, 0)
        self.assertAlmostEqual(series.coeffs[0].real, 1 / (1 + 1e-3))

    def test_invalid(self):
        with self.assertRaises(DomainError):
            jacobi_anger(-1.0, 1e-6)
        with self.assertRaises(DomainError):
            jacobi_anger(1.0, 0.0)


class TestEigFilter(unittest.TestCase):
    def test_peak(self):
        self.assertAlmostEqual(float(eig_filter_value(0.0, 0.5, 8)), 1.0, places=15)

    def test_gap_edge(self):
        a, M = 0.5, 8
        y0 = (1 + a**2) / (1 - a**2)
        expected = 1.0 / math.cosh(M * math.acosh(y0))
        for x in (a, -a):
            self.assertAlmostEqual(float(eig_filter_value(x, a, M)), expected, delta=1e-12 * expected)

    def test_large_order_stays_finite(self):
        values = eig_filter_value(np.linspace(-1, 1, 101), 0.01, 2000)
        self.assertTrue(np.all(np.isfinite(values)))
        self.assertLessEqual(np.max(np.abs(values)), 1.0 + 1e-12)

    def test_interpolant(self):
        a, M = 0.2, 12
        series = eig_filter(a, M)
        self.assertEqual(series.degree, 2 * M)
        self.assertEqual(series.parity, "even")
        self.assertTrue(series.is_real)
        assert_array_equal(series.coeffs[1::2], 0)
        x = np.random.default_rng(5).uniform(-1, 1, 100)
        assert_allclose(series.evaluate(x).real / EIG_FILTER_SHRINK, eig_filter_value(x, a, M), atol=1e-12)

    def test_invalid(self):
        with self.assertRaises(DomainError):
            eig_filter(1.0, 4)


class TestSignum(unittest.TestCase):
    def test_parameter_table(self):
        for eps, beta, M in ((1e-1, 120, 29), (1e-4, 433, 99), (1e-7, 765, 172), (1e-10, 1101, 246)):
            params = signum_params(0.1, eps)
            self.assertEqual((int(params.beta), params.M), (beta, M), msg=eps)

    def test_invalid_parameters(self):
        with self.assertRaises(DomainError):
            signum_params(0.1, 0.8)
        with self.assertRaises(DomainError):
            signum_params(1.0, 1e-3)

    def test_approximates_sign(self):
        series = signum_poly(signum_params(0.1, 1e-4))
        self.assertEqual(series.degree, 199)
        self.assertEqual(series.parity, "odd")
        assert_array_equal(series.coeffs[0::2], 0)
        self.assertEqual(series.evaluate(0.0).real, 0.0)
        x = np.linspace(0.1, 1.0, 1000)
        values = series.evaluate(x).real
        self.assertLessEqual(np.max(np.abs(values - 1.0)), 2e-4)
        assert_allclose(series.evaluate(-x).real, -values, atol=1e-15)


class TestCircleNorms(unittest.TestCase):
    def test_families_fit_in_unit_disk(self):
        for series in (jacobi_anger(10.0, 1e-6), eig_filter(0.2, 12)):
            P = cheb_to_circle(series, "full")
            self.assertLessEqual(sup_norm_on_circle(P, refine=True), 1.0)


class TestBuildFamily(unittest.TestCase):
    def test_random(self):
        P = build_family("random", d=5, delta=0.2, seed=1, tau=None)
        self.assertIsInstance(P, ComplexPoly)
        self.assertEqual(P.degree, 5)

    def test_random_defaults(self):
        P = build_family("random", d=3, delta=None, seed=None)
        assert_array_equal(P.coeffs, random_poly(RandomSpec(degree=3)).coeffs)

    def test_chebyshev_families(self):
        self.assertEqual(build_family("hamiltonian", tau=10.0, eps=1e-6).degree, 28)
        self.assertEqual(build_family("eigfilter", a=0.2, m=4).degree, 8)
        self.assertEqual(build_family("signum", a=0.1, eps=1e-1).degree, 59)

    def test_missing_parameter(self):
        with self.assertRaises(InvalidInputError) as ctx:
            build_family("signum", a=0.1, eps=None)
        self.assertIn("--eps", str(ctx.exception))

    def test_unknown_family(self):
        with self.assertRaises(InvalidInputError):
            build_family("gaussian")


if __name__ == "__main__":
    unittest.main()
