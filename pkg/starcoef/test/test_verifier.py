#!/usr/bin/env python3
import os
import sys

import logging
import unittest
from unittest import mock

import numpy as np
from hypothesis import given, settings, strategies as st

sys.path.insert(0, os.path.abspath(os.path.dirname(__file__) + "/../.."))

from starcoef import verifier
from starcoef.error import ConfigErrors, Error, OrderExhausted, PrecisionErosion, WrongRegime
from starcoef.utils import unslurp
from starcoef.verifier import Check, Tolerance, VerificationReport
from starcoef.zoo import StarlikeSpec, koebe_alpha, koebe_alpha_n, sample_starlike
from starcoef.test.common import SUITES_INI, go_to_temp_dir

log = logging.getLogger('starcoef')
log.setLevel(logging.ERROR)


class TestTolerance(unittest.TestCase):
    def test_within_bound(self):
        tol = Tolerance(1e-8, 1e-12)
        self.assertTrue(tol.within_bound(1.0, 1.0))
        self.assertTrue(tol.within_bound(1.0 + 1e-9, 1.0))
        self.assertFalse(tol.within_bound(1.0 + 1e-7, 1.0))
        self.assertTrue(tol.within_bound(1e-13, 0.0))
        self.assertFalse(tol.within_bound(float("nan"), 1.0))

    def test_matches(self):
        tol = Tolerance(1e-8, 0.0)
        self.assertTrue(tol.matches(0.2 + 1e-12, 0.2))
        self.assertFalse(tol.matches(0.19, 0.2))
        self.assertFalse(tol.matches(float("nan"), 0.2))


class TestReport(unittest.TestCase):
    def test_check_ratio(self):
        self.assertEqual(0.5, Check("s", "x", 2, 0.1, 1.0, 2.0, True).ratio)
        self.assertIsNone(Check("s", "x", 2, 0.1, 1.0, 0.0, False).ratio)

    def test_report(self):
        rep = VerificationReport([Check("s", "b", 2, 0.1, 1.0, 2.0, True),
                                  Check("s", "a", 3, 0.1, 2.2, 2.0, False)])
        self.assertEqual(2, len(rep))
        self.assertFalse(rep.passed)
        self.assertEqual(1, len(rep.failures))
        self.assertAlmostEqual(0.1, rep.max_relative_excess, places=12)
        merged = rep.merge(VerificationReport([Check("s", "a", 1, 0.1, 0.0, 1.0, True)]))
        self.assertEqual([("a", 1), ("a", 3), ("b", 2)], [(c.name, c.n) for c in merged])

    def test_excess(self):
        self.assertEqual(0.0, VerificationReport().max_relative_excess)
        self.assertTrue(VerificationReport().passed)
        rep = VerificationReport([Check("s", "x", 1, 0.0, float("nan"), 0.0, False)])
        self.assertEqual(float("inf"), rep.max_relative_excess)


class TestIdentities(unittest.TestCase):
    def test_jabotinsky(self):
        for seed in range(5):
            spec = sample_starlike(0.3, seed, 19)
            rep = verifier.verify_jabotinsky(spec.realize(), [-3, -2, -1, 1, 2, 3], 15,
                                             Tolerance(1e-9, 0.0), 0.3, seed)
            self.assertEqual(6, len(rep))
            self.assertTrue(rep.passed, rep.failures)
            self.assertEqual("jabotinsky p=-3", rep.checks[0].name)

    def test_jabotinsky_order(self):
        f = koebe_alpha(0.2, 10)
        self.assertRaises(OrderExhausted, verifier.verify_jabotinsky, f, [-3, 2], 10)

    def test_roundtrip(self):
        for f in (koebe_alpha(0, 16), koebe_alpha_n(0.3, 2, 16),
                  sample_starlike(0.3, 7, 16).realize()):
            rep = verifier.verify_roundtrip(f, 16, Tolerance(1e-8, 0.0))
            self.assertEqual(["roundtrip f(finv)", "roundtrip finv(f)"], [c.name for c in rep])
            self.assertTrue(rep.passed, rep.failures)
        self.assertRaises(OrderExhausted, verifier.verify_roundtrip, koebe_alpha(0, 8), 9)

    def test_lemma1(self):
        grid = [(n, alpha, g) for n in range(1, 7) for alpha in (0, 0.13, 0.5, 0.86)
                for g in range(1, 11)]
        rep = verifier.verify_lemma1(grid, Tolerance(1e-12, 0.0))
        self.assertEqual(len(grid), len(rep))
        self.assertTrue(rep.passed, rep.failures)
        self.assertEqual("lemma1 g=1", rep.checks[0].name)


class TestBoundCompliance(unittest.TestCase):
    def test_koebe_alpha(self):
        for alpha in (0, 0.45, 0.9):
            checks = verifier.bound_checks_for_function(koebe_alpha(alpha, 16), alpha)
            self.assertTrue(all(c.passed for c in checks), [c for c in checks if not c.passed])
            names = set(c.name for c in checks)
            self.assertIn("thm1", names)
            self.assertIn("thm2", names)
            self.assertIn("thm3", names)
            self.assertIn("lemma2 g=15", names)

    @given(st.sampled_from([i / 10.0 for i in range(10)]), st.integers(min_value=0, max_value=10 ** 6))
    @settings(max_examples=100, deadline=None)
    def test_sampled(self, alpha, seed):
        f = sample_starlike(alpha, seed, 20).realize()
        failures = [c for c in verifier.bound_checks_for_function(f, alpha, seed=seed)
                    if not c.passed]
        self.assertEqual([], failures)

    def test_sample_report(self):
        rep = verifier.verify_bounds_sample(0.3, 10, 16, 100)
        self.assertTrue(rep.passed, rep.failures)
        # per function: 8 * 15 lemma2, 11 thm1, 15 thm2, 13 thm3
        self.assertEqual(10 * 159, len(rep))
        self.assertEqual(set(range(100, 110)), set(c.seed for c in rep))
        for seed in range(100, 110):
            keys = [(c.name, c.n) for c in rep if c.seed == seed]
            self.assertEqual(159, len(set(keys)))
        self.assertLessEqual(rep.max_relative_excess, 1e-8)

    def test_thousand_functions(self):
        seeds = set()
        for i in range(10):
            alpha = i / 10.0
            rep = verifier.verify_bounds_sample(alpha, 100, 24, 100 * i)
            self.assertTrue(rep.passed, rep.failures[:5])
            seeds.update(c.seed for c in rep)
        self.assertEqual(1000, len(seeds))


class TestSharpness(unittest.TestCase):
    def test_t1c(self):
        rep = verifier.verify_sharpness(3, 0.8, 24)
        self.assertTrue(rep.passed, rep.failures)
        thm1 = [c for c in rep if c.name.startswith("thm1")][0]
        self.assertEqual("thm1 sharp KoebeAlphaN(2)", thm1.name)
        self.assertAlmostEqual(0.2, thm1.observed, places=12)
        self.assertAlmostEqual(1.0, thm1.ratio, places=10)

    def test_thm2(self):
        rep = verifier.verify_sharpness(2, 0.5, 24)
        thm2 = [c for c in rep if c.name.startswith("thm2")][0]
        self.assertEqual("thm2 sharp SigmaExtremal(2)", thm2.name)
        self.assertAlmostEqual(1.0 / 3.0, thm2.observed, places=14)
        self.assertTrue(thm2.passed)

    def test_open(self):
        rep = verifier.verify_sharpness(4, 0.55, 24)
        self.assertTrue(rep.passed, rep.failures)
        thm1 = [c for c in rep if c.name.startswith("thm1")][0]
        self.assertEqual("thm1 open KoebeAlpha", thm1.name)
        self.assertAlmostEqual(0.8, thm1.ratio, places=10)
        names = [c.name for c in rep]
        self.assertIn("lemma2 g=5 open KoebeAlpha", names)
        self.assertIn("thm3 open KoebeAlpha", names)

    def test_grid(self):
        for n in range(0, 11):
            for alpha in (0, 0.1, 0.35, 0.5, 0.75, 0.95):
                rep = verifier.verify_sharpness(n, alpha, 24)
                self.assertTrue(rep.passed, rep.failures)
        self.assertEqual(2, len(verifier.verify_sharpness(0, 0.3, 24)))

    def test_candidates(self):
        ratios = verifier.candidate_ratios('thm1', 4, 0.55, 24)
        self.assertEqual(4, len(ratios))
        self.assertEqual("KoebeAlpha", str(ratios[0][0]))
        self.assertEqual(sorted([r for _, _, r in ratios], reverse=True), [r for _, _, r in ratios])


class TestSearch(unittest.TestCase):
    def test_search(self):
        result = verifier.search_extremal(4, 0.55, 300, 1, 24)
        self.assertEqual(300, result.evaluations)
        self.assertGreater(result.best_ratio, 0)
        self.assertLessEqual(result.best_ratio, 1 + 1e-8)
        self.assertAlmostEqual(0.78, result.bound, places=12)
        self.assertAlmostEqual(0.8, result.baseline_ratio, places=10)
        self.assertIsInstance(result.best_spec, StarlikeSpec)
        again = verifier.search_extremal(4, 0.55, 300, 1, 24)
        self.assertEqual(result.best_ratio, again.best_ratio)

    def test_single_evaluation(self):
        result = verifier.search_extremal(5, 0.5, 1, 3, 24, target='thm3')
        self.assertEqual(1, result.evaluations)
        f = result.best_spec.realize()
        expected = verifier.target_coefficient('thm3', f, 5) / result.bound
        self.assertAlmostEqual(expected, result.best_ratio, places=12)

    def test_errors(self):
        self.assertRaises(WrongRegime, verifier.search_extremal, 2, 0.3, 10, 0, 24)
        self.assertRaises(ConfigErrors, verifier.search_extremal, 4, 0.55, 0, 0, 24)

    def test_nothing_evaluated(self):
        eroded = PrecisionErosion("realize", 1e15, 1e14)
        with mock.patch.object(StarlikeSpec, "realize", side_effect=eroded):
            with self.assertLogs("starcoef.verifier", level="WARNING"):
                result = verifier.search_extremal(4, 0.55, 20, 0, 24)
        self.assertEqual(20, result.evaluations)
        self.assertEqual(20, result.discarded)
        self.assertFalse(result.found_candidate)
        self.assertEqual(-1.0, result.best_ratio)
        self.assertTrue(verifier.search_extremal(4, 0.55, 20, 0, 24).found_candidate)

    def test_project_simplex(self):
        w = verifier.project_simplex([0.7, 0.6, -0.2])
        self.assertAlmostEqual(1.0, w.sum(), places=14)
        self.assertTrue(np.all(w >= 0))
        np.testing.assert_allclose([0.2, 0.3, 0.5], verifier.project_simplex([0.2, 0.3, 0.5]))


class TestSuites(unittest.TestCase):
    def test_default_ini(self):
        config = verifier.SuiteConfiguration(SUITES_INI)
        self.assertEqual(sorted(verifier.SUITE_KEYS), sorted(config.suites))
        self.assertEqual([-3, -2, -1, 1, 2, 3], config.suites['jabotinsky'].powers)
        self.assertEqual(list(range(1, 11)), config.suites['lemma1'].gs)
        self.assertEqual(16, config.suites['roundtrip'].order)

    def test_bad_ini(self):
        go_to_temp_dir()
        with open(SUITES_INI) as fh:
            contents = fh.read()
        unslurp("bad.ini", contents.replace("powers=-3 -2 -1 1 2 3", "powers=-1 0 1"))
        with self.assertRaises(ConfigErrors) as ctx:
            verifier.SuiteConfiguration("bad.ini")
        self.assertIn("must not contain 0", str(ctx.exception))

        unslurp("missing.ini", "[suite lemma1]\nn=1\nalphas=0\ng=1\n")
        self.assertRaises(ConfigErrors, verifier.SuiteConfiguration, "missing.ini")
        self.assertRaises(Error, verifier.SuiteConfiguration, "nonexistent.ini")

    def test_run_suite(self):
        settings_ = verifier.SuiteSettings('lemma1', [0.2], ns=[1, 2], gs=[1, 2, 3])
        rep = verifier.run_suite('lemma1', settings_, 24, 0)
        self.assertEqual(6, len(rep))
        self.assertTrue(rep.passed)
        settings_ = verifier.SuiteSettings('roundtrip', [0.5], count=2, order=12)
        rep = verifier.run_suite('roundtrip', settings_, 24, 0)
        self.assertEqual(8, len(rep))
        self.assertTrue(rep.passed, rep.failures)
        self.assertRaises(Error, verifier.run_suite, 'nope', settings_, 24, 0)


if __name__ == '__main__':
    unittest.main()
