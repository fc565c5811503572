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

Monte Carlo simulation of the aggregate interference received by the DME
victims. Every trial draws a whole Poisson field, streams it chunk by
chunk and only keeps the aggregate interference.

.. code-block:: python

    from dss.dme.scenario import TransponderScenario, dbm_to_mw
    from dss.dme.montecarlo import simulate_transponder, empirical_tail

    sample = simulate_transponder(TransponderScenario(), dbm_to_mw(-150),
                                  trials=10000, seed=42)
    print(empirical_tail(sample, dbm_to_mw(-122)))
"""

import logging
import math
import os
from collections import namedtuple
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
import numpy as np
from scipy.stats import norm

from dss.dme.propagation import DomainError, path_gain, slant_gain, sample_fading_pair
from dss.dme.scenario import effective_tx_power
from .sampling import CHUNK_SIZE, trial_generator, stream_annulus_ppp

_LOGGER = logging.getLogger("dss.dme.montecarlo.simulator")

THREADS_ENV = "DMESHARE_THREADS"


TailEstimate = namedtuple("TailEstimate", ["probability", "lower", "upper"])
TailEstimate.__doc__ = """
Empirical exceedance probability and the bounds of its Wilson score
interval
"""


@dataclass(frozen=True, eq=False)
class McSample:
    """
    Aggregate interference realisations (mW), one per trial, in trial order

    Args:
        values (numpy.ndarray): realisations
        seed (int): experiment seed
        scenario_digest (str): digest of the simulated scenario
        victim (str): "transponder" or "airborne"
        parameter (float): censoring threshold (mW) of a transponder
            simulation, exclusion radius (km) of an airborne one
    """
    values: np.ndarray
    seed: int
    scenario_digest: str
    victim: str = "transponder"
    parameter: float = math.nan

    @property
    def trials(self):
        return len(self.values)

    @property
    def mean(self):
        return float(np.mean(self.values))

    @property
    def variance(self):
        """
        Unbiased sample variance
        """
        if self.trials < 2:
            return 0.0
        return float(np.var(self.values, ddof=1))

    @property
    def standard_error(self):
        """
        Standard error of the sample mean
        """
        return math.sqrt(self.variance / self.trials)

    def variance_standard_error(self, k4):
        """
        Standard error of the sample variance given the fourth cumulant of
        the simulated distribution

        Args:
            k4 (float): fourth cumulant (mW^4)

        Returns:
            float
        """
        k2 = self.variance
        return math.sqrt(max(k4, 0.0) / self.trials + 2 * k2 * k2 / max(self.trials - 1, 1))

    def quantile(self, levels):
        """
        Empirical quantiles

        Args:
            levels (float or list[float]): probabilities in [0, 1]

        Returns:
            float or numpy.ndarray: interference levels (mW)
        """
        return np.quantile(self.values, levels)[()]


def resolve_threads(threads=None):
    """
    Number of workers to use. ``None`` reads the ``DMESHARE_THREADS``
    environment variable, ``0`` means one worker per CPU

    Args:
        threads (int, optional): requested number of workers

    Returns:
        int
    """
    if threads is None:
        threads = int(os.getenv(THREADS_ENV, "0"))
    if threads < 0:
        raise DomainError(f"The number of threads must be nonnegative, got {threads!r}")
    return threads or os.cpu_count() or 1


def _run_trials(worker, trials, threads):
    if int(trials) != trials or trials < 1:
        raise DomainError(f"At least one trial is required, got {trials!r}")

    threads = resolve_threads(threads)
    _LOGGER.debug("Running %d trials on %d worker(s)", trials, threads)

    if threads == 1:
        return np.fromiter(map(worker, range(trials)), dtype=float, count=trials)

    # map() yields in submission order, whatever the completion order
    with ThreadPoolExecutor(max_workers=threads) as executor:
        return np.fromiter(executor.map(worker, range(trials)), dtype=float, count=trials)


def simulate_transponder(scenario, i_thr, trials, seed, threads=None, chunk_size=CHUNK_SIZE):
    """
    Simulates the aggregate interference received by the ground
    transponder. A secondary user transmits if the interference it senses,
    ``P_eff g(r) X``, does not exceed ``i_thr``; it then creates the
    interference ``P_eff g(r) Y``

    Args:
        scenario (TransponderScenario): scenario
        i_thr (float): individual interference threshold (mW), may be ``inf``
        trials (int): number of trials
        seed (int): experiment seed
        threads (int, optional): number of workers
        chunk_size (int, optional): number of users processed at once

    Returns:
        :class:`McSample`
    """
    if not i_thr >= 0:
        raise DomainError(f"The interference threshold must be nonnegative, got {i_thr!r}")

    p_eff = effective_tx_power(scenario)

    def trial(index):
        rng = trial_generator(seed, index)
        partial = []

        for radii in stream_annulus_ppp(scenario.lambda_su, scenario.r_min_km,
                                        scenario.r_max_km, rng, chunk_size):
            fading = sample_fading_pair(scenario.sigma_ln, scenario.rho, rng, size=radii.size)
            median = p_eff * path_gain(radii, scenario.c_pathloss, scenario.alpha)
            allowed = median * fading.x <= i_thr
            # Censored users are zeroed, not removed: the summation tree stays the same
            partial.append(float(np.sum(np.where(allowed, median * fading.y, 0.0))))

        return math.fsum(partial)

    _LOGGER.info("Simulating %d transponder trials (seed %d)", trials, seed)
    values = _run_trials(trial, trials, threads)
    return McSample(values, seed, scenario.digest(), "transponder", float(i_thr))


def simulate_airborne(scenario, r_o_km, trials, seed, threads=None, chunk_size=CHUNK_SIZE):
    """
    Simulates the aggregate interference received by the airborne
    interrogator when no secondary user transmits within ``r_o_km`` of the
    point below the aircraft. There is no fading

    Args:
        scenario (AirborneScenario): scenario
        r_o_km (float): exclusion radius (km), in [0, R]
        trials (int): number of trials
        seed (int): experiment seed
        threads (int, optional): number of workers
        chunk_size (int, optional): number of users processed at once

    Returns:
        :class:`McSample`
    """
    if not 0 <= r_o_km <= scenario.r_max_km:
        raise DomainError(f"The exclusion radius must lie in [0, {scenario.r_max_km}], "
                          f"got {r_o_km!r}")

    p_eff = effective_tx_power(scenario)

    def trial(index):
        if r_o_km == scenario.r_max_km:
            return 0.0

        rng = trial_generator(seed, index)
        partial = [float(np.sum(p_eff * slant_gain(radii, scenario.h_km, scenario.c_pathloss,
                                                    scenario.alpha)))
                   for radii in stream_annulus_ppp(scenario.lambda_su, r_o_km,
                                                   scenario.r_max_km, rng, chunk_size)]
        return math.fsum(partial)

    _LOGGER.info("Simulating %d airborne trials (seed %d)", trials, seed)
    values = _run_trials(trial, trials, threads)
    return McSample(values, seed, scenario.digest(), "airborne", float(r_o_km))


def empirical_tail(sample, threshold, confidence=0.95):
    """
    Fraction of the realisations exceeding ``threshold`` with its Wilson
    score interval

    Args:
        sample (McSample): simulated realisations
        threshold (float): interference level (mW)
        confidence (float, optional): confidence level of the interval

    Returns:
        :class:`TailEstimate`
    """
    trials = sample.trials
    if trials < 1:
        raise DomainError("An empty sample has no tail")

    exceed = int(np.count_nonzero(sample.values > threshold))
    estimate = exceed / trials
    z_value = float(norm.ppf(0.5 + confidence / 2))

    z2n = z_value * z_value / trials
    center = (estimate + z2n / 2) / (1 + z2n)
    half_width = (z_value * math.sqrt(estimate * (1 - estimate) / trials + z2n / (4 * trials))
                  / (1 + z2n))

    return TailEstimate(estimate, max(0.0, center - half_width), min(1.0, center + half_width))
