"""Tests for polynomial primitives and grid evaluation."""
import math
import unittest

import numpy as np
from numpy.testing import assert_allclose, assert_array_equal

from qspc.numerics.poly import (
    ComplexPoly,
    LaurentPoly,
    abs_sq_on_grid,
    conj_reciprocal,
    eval_horner,
    eval_roots_of_unity,
    laurent_coefficients,
    one_minus_abs_sq_laurent,
    sup_norm_on_circle,
)
from qspc.utils.errors import DomainError, InsufficientGridError


def random_poly(rng, d):
    return ComplexPoly(rng.normal(size=d + 1) + 1j * rng.normal(size=d + 1))


class TestComplexPoly(unittest.TestCase):
    def test_trims_trailing_zeros(self):
        p = ComplexPoly([1, 0, 0])
        self.assertEqual(p.degree, 0)
        assert_array_equal(p.coeffs, [1])

    def test_zero_polynomial(self):
        p = ComplexPoly([0, 0])
        self.assertEqual(p.degree, 0)
        assert_array_equal(p.coeffs, [0])

    def test_keep_declared_degree(self):
        self.assertEqual(ComplexPoly([0.8, 0], trim=False).degree, 1)

    def test_read_only(self):
        with self.assertRaises(ValueError):
            ComplexPoly([1, 2]).coeffs[0] = 3

    def test_padded(self):
        assert_array_equal(ComplexPoly([1, 2]).padded(4), [1, 2, 0, 0])
        with self.assertRaises(InsufficientGridError):
            ComplexPoly([1, 2, 3]).padded(2)

    def test_rotated(self):
        p = ComplexPoly([0.3, -0.2j, 0.1])
        alpha = 0.7
        z = np.exp(1j * np.linspace(0, 2 * np.pi, 17))
        assert_allclose(p.rotated(alpha)(z), p(np.exp(1j * alpha) * z), atol=1e-15)


class TestEvaluation(unittest.TestCase):
    def test_horner(self):
        p = ComplexPoly([1, 2, 3])
        self.assertEqual(eval_horner(p, 2), 17)
        assert_allclose(eval_horner(p, np.array([0, 1j])), [1, 1 + 2j - 3])

    def test_roots_of_unity_examples(self):
        assert_allclose(eval_roots_of_unity(ComplexPoly([1]), 4).values, [1, 1, 1, 1])
        assert_allclose(eval_roots_of_unity(ComplexPoly([0, 1]), 2).values, [1, -1], atol=1e-15)
        assert_allclose(
            eval_roots_of_unity(ComplexPoly([0.5, 0.5]), 4).values,
            [1, 0.5 + 0.5j, 0, 0.5 - 0.5j],
            atol=1e-15,
        )

    def test_insufficient_grid(self):
        with self.assertRaises(InsufficientGridError) as ctx:
            eval_roots_of_unity(ComplexPoly([1, 2, 3]), 2)
        self.assertIn("insufficient grid", str(ctx.exception))

    def test_agrees_with_horner(self):
        rng = np.random.default_rng(11)
        for d in (0, 5, 64, 1024):
            p = random_poly(rng, d)
            N = 2 * (d + 1) + 3
            z = np.exp(2j * np.pi * np.arange(N) / N)
            scale = np.sum(np.abs(p.coeffs))
            assert_allclose(eval_roots_of_unity(p, N).values, eval_horner(p, z), rtol=0, atol=1e-12 * scale)

    def test_abs_sq_on_grid(self):
        values = abs_sq_on_grid(ComplexPoly([0, 0.6]), ComplexPoly([0.8, 0], trim=False), 8)
        assert_allclose(values, np.ones(8), atol=1e-15)


class TestConjReciprocal(unittest.TestCase):
    def test_examples(self):
        assert_array_equal(conj_reciprocal(ComplexPoly([1, 2j])).coeffs, [-2j, 1])
        assert_array_equal(conj_reciprocal(ComplexPoly([0.5, 0.5])).coeffs, [0.5, 0.5])

    def test_involution(self):
        rng = np.random.default_rng(2)
        p = random_poly(rng, 7)
        assert_array_equal(conj_reciprocal(conj_reciprocal(p)).coeffs, p.coeffs)

    def test_modulus_on_circle(self):
        rng = np.random.default_rng(12)
        p = random_poly(rng, 5)
        z = np.exp(1j * np.linspace(0, 6, 11))
        assert_allclose(np.abs(conj_reciprocal(p)(z)), np.abs(p(z)), rtol=1e-13)


class TestLaurent(unittest.TestCase):
    def test_trims_both_ends(self):
        lp = LaurentPoly(-2, [0, 1, 2, 0])
        self.assertEqual(lp.min_exp, -1)
        self.assertEqual(lp.max_exp, 0)
        self.assertEqual(lp.coefficient(5), 0)
        self.assertEqual(lp.as_dict(), {-1: 1, 0: 2})

    def test_evaluate(self):
        lp = LaurentPoly(-1, [0.5, 0, 0.5])
        self.assertAlmostEqual(lp(1j), 0.5 * (-1j) + 0.5 * 1j)
        self.assertAlmostEqual(lp(2.0), 0.25 + 1.0)

    def test_gap_coefficients_of_half_sum(self):
        coeffs = laurent_coefficients(ComplexPoly([0.5, 0.5]))
        assert_allclose(coeffs, [0.25, -0.5, 0.25], atol=1e-15)

    def test_exact_pair_vanishes(self):
        coeffs = laurent_coefficients(ComplexPoly([0.6]), ComplexPoly([0.8]))
        self.assertLessEqual(np.max(np.abs(coeffs)), 1e-15)

    def test_zero_pair(self):
        self.assertEqual(one_minus_abs_sq_laurent(ComplexPoly([0]), ComplexPoly([0])).as_dict(), {0: -1})

    def test_conjugate_symmetry(self):
        rng = np.random.default_rng(9)
        p, q = random_poly(rng, 6), random_poly(rng, 6)
        coeffs = laurent_coefficients(p, q)
        assert_allclose(coeffs[::-1], np.conj(coeffs), atol=1e-13)

    def test_value_at_one(self):
        rng = np.random.default_rng(10)
        p, q = random_poly(rng, 4), random_poly(rng, 4)
        expected = abs(p(1.0)) ** 2 + abs(q(1.0)) ** 2 - 1
        self.assertAlmostEqual(np.sum(laurent_coefficients(p, q)).real, expected, places=12)

    def test_degree_mismatch(self):
        with self.assertRaises(DomainError):
            one_minus_abs_sq_laurent(ComplexPoly([0.1, 0.2]), ComplexPoly([0.3]))


class TestSupNorm(unittest.TestCase):
    def test_examples(self):
        self.assertAlmostEqual(sup_norm_on_circle(ComplexPoly([0.6])), 0.6)
        self.assertAlmostEqual(sup_norm_on_circle(ComplexPoly([0, 1])), 1.0)
        self.assertAlmostEqual(sup_norm_on_circle(ComplexPoly([0.5, 0.5])), 1.0)

    def test_refine_is_tighter_lower_bound(self):
        rng = np.random.default_rng(21)
        for _ in range(5):
            p = random_poly(rng, 9)
            coarse = sup_norm_on_circle(p, oversample=1)
            refined = sup_norm_on_circle(p, oversample=1, refine=True)
            size = 2**16
            dense = np.max(np.abs(eval_roots_of_unity(p, size).values))
            # the true maximum is at most the grid maximum over cos(pi d / N)
            upper = dense / math.cos(math.pi * p.degree / size)
            self.assertGreaterEqual(refined, coarse)
            self.assertLessEqual(refined, upper * (1 + 1e-14))

    def test_invalid_oversample(self):
        with self.assertRaises(DomainError):
            sup_norm_on_circle(ComplexPoly([1]), oversample=0)


if __name__ == "__main__":
    unittest.main()
