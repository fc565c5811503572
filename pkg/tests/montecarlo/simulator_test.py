# -*- coding: utf-8 -*-

"""
    Licensed to the Apache Software Foundation (ASF) under one
    or more contributor license agreements.  See the NOTICE file
    distributed with this work for additional information
    regarding copyright ownership.  The ASF licenses this file
    to you under the Apache License, Version 2.0 (the
    "License"); you may not use this file except in compliance
    with the License.  You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

    Unless required by applicable law or agreed to in writing,
    software distributed under the License is distributed on an
    "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
    KIND, either express or implied.  See the License for the
    specific language governing permissions and limitations
    under the License.
"""


import math
import unittest
import numpy as np
import pytest

from dss.dme.analytic import transponder_cumulants, airborne_cumulants
from dss.dme.montecarlo import (
    McSample, THREADS_ENV, resolve_threads, simulate_transponder, simulate_airborne,
    empirical_tail
)
from dss.dme.propagation import DomainError
from dss.dme.scenario import TransponderScenario, AirborneScenario, dbm_to_mw

TRIALS = 2000
# Several comparisons per run: 4 standard errors
TOLERANCE = 4.0


def _transponder(**changes):
    values = {"r_min_km": 0.5, "r_max_km": 20.0, "lambda_su": 2.0}
    values.update(changes)
    return TransponderScenario(**values)


class TestTransponderSimulation(unittest.TestCase):
    """ Monte Carlo simulation of the ground transponder """

    def test_reproducible(self):
        """ Same seed, same realisations, whatever the number of workers """
        scenario = _transponder(rho=0.5)
        threshold = dbm_to_mw(-130.0)
        single = simulate_transponder(scenario, threshold, 50, seed=3, threads=1)
        pooled = simulate_transponder(scenario, threshold, 50, seed=3, threads=4)
        other = simulate_transponder(scenario, threshold, 50, seed=4, threads=1)

        self.assertTrue(np.array_equal(single.values, pooled.values))
        self.assertFalse(np.array_equal(single.values, other.values))
        self.assertEqual(single.trials, 50)
        self.assertEqual(single.seed, 3)
        self.assertEqual(single.victim, "transponder")
        self.assertEqual(single.parameter, threshold)
        self.assertEqual(single.scenario_digest, scenario.digest())

    def test_moments_match_cumulants(self):
        """ Sample mean and variance against the analytic cumulants """
        scenario = _transponder(rho=1.0)
        threshold = dbm_to_mw(-130.0)
        sample = simulate_transponder(scenario, threshold, TRIALS, seed=11, threads=1)
        cumulants = transponder_cumulants(scenario, threshold, order=4)

        self.assertLess(abs(sample.mean - cumulants.mean),
                        TOLERANCE * math.sqrt(cumulants.variance / TRIALS))
        self.assertLess(abs(sample.variance - cumulants.variance),
                        TOLERANCE * sample.variance_standard_error(cumulants.cumulant(4)))

    def test_monotone_in_threshold(self):
        """ A larger threshold never lowers the interference of a trial """
        scenario = _transponder(rho=0.3)
        levels = (-150.0, -140.0, -130.0, -120.0)
        samples = [simulate_transponder(scenario, dbm_to_mw(level), 100, seed=8, threads=1)
                   for level in levels]
        samples.append(simulate_transponder(scenario, math.inf, 100, seed=8, threads=1))

        for low, high in zip(samples, samples[1:]):
            self.assertTrue(np.all(low.values <= high.values))

    def test_silenced_users(self):
        """ Nobody transmits with a null threshold """
        sample = simulate_transponder(_transponder(), 0.0, 20, seed=1, threads=1)
        self.assertTrue(np.all(sample.values == 0.0))

    def test_invalid_arguments(self):
        with self.assertRaises(DomainError):
            simulate_transponder(_transponder(), -1.0, 10, seed=1)
        with self.assertRaises(DomainError):
            simulate_transponder(_transponder(), 1e-12, 0, seed=1)
        with self.assertRaises(DomainError):
            simulate_transponder(_transponder(), 1e-12, 10, seed=-5)


class TestAirborneSimulation(unittest.TestCase):
    """ Monte Carlo simulation of the airborne interrogator """

    def test_mean_matches_cumulant(self):
        scenario = AirborneScenario(r_max_km=20.0, lambda_su=2.0)
        sample = simulate_airborne(scenario, 2.0, TRIALS, seed=21, threads=2)
        cumulants = airborne_cumulants(scenario, 2.0)

        self.assertEqual(sample.victim, "airborne")
        self.assertEqual(sample.parameter, 2.0)
        self.assertLess(abs(sample.mean - cumulants.mean),
                        TOLERANCE * math.sqrt(cumulants.variance / TRIALS))

    def test_full_exclusion(self):
        scenario = AirborneScenario(r_max_km=20.0, lambda_su=2.0)
        sample = simulate_airborne(scenario, 20.0, 10, seed=0, threads=1)
        self.assertTrue(np.all(sample.values == 0.0))

    def test_invalid_radius(self):
        scenario = AirborneScenario(r_max_km=20.0, lambda_su=2.0)
        for r_o_km in (-1.0, 21.0):
            with self.assertRaises(DomainError):
                simulate_airborne(scenario, r_o_km, 10, seed=0)


def test_sample_statistics():
    """
    Moments and quantiles of a small hand-made sample
    """
    sample = McSample(np.array([1.0, 2.0, 3.0, 4.0]), 0, "digest")
    assert sample.trials == 4
    assert sample.mean == 2.5
    assert sample.variance == pytest.approx(5.0 / 3.0)
    assert sample.standard_error == pytest.approx(math.sqrt(5.0 / 12.0))
    assert sample.variance_standard_error(0.0) == pytest.approx(math.sqrt(2 * (5.0 / 3.0) ** 2 / 3))
    assert sample.quantile(0.5) == pytest.approx(2.5)
    assert np.allclose(sample.quantile([0.0, 1.0]), [1.0, 4.0])
    assert math.isnan(sample.parameter)

    assert McSample(np.array([7.0]), 0, "digest").variance == 0.0


def test_wilson_interval():
    """
    3 exceedances out of 10, and none at all
    """
    sample = McSample(np.arange(10, dtype=float), 0, "digest")
    estimate = empirical_tail(sample, 6.5)
    assert estimate.probability == pytest.approx(0.3)
    assert estimate.lower == pytest.approx(0.1078, abs=1e-3)
    assert estimate.upper == pytest.approx(0.6032, abs=1e-3)

    none = empirical_tail(sample, 100.0)
    assert none.probability == 0.0
    assert none.lower == pytest.approx(0.0, abs=1e-12)
    assert 0 < none.upper < 0.35

    wider = empirical_tail(sample, 6.5, confidence=0.99)
    assert wider.lower < estimate.lower and wider.upper > estimate.upper


def test_resolve_threads(monkeypatch):
    """
    Explicit values win over the environment, 0 means every CPU
    """
    monkeypatch.setenv(THREADS_ENV, "3")
    assert resolve_threads() == 3
    assert resolve_threads(2) == 2

    monkeypatch.delenv(THREADS_ENV)
    assert resolve_threads() >= 1
    assert resolve_threads(0) == resolve_threads()

    with pytest.raises(DomainError):
        resolve_threads(-1)
