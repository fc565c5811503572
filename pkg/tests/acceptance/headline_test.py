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
import pytest

from dss.dme.analytic import uncensored_cumulant, transponder_cumulant, airborne_cumulant
from dss.dme.scenario import TransponderScenario, AirborneScenario, effective_tx_power
from dss.dme.solver import FeasibilityStatus, exclusion_radius, solve_ithr, max_density_for_power


@pytest.mark.parametrize("rho", [0.0, 0.5, 0.9])
@pytest.mark.parametrize("order", [1, 2])
def test_quadrature_meets_uncensored_formula(order, rho):
    """
    A normalised threshold of 1e9 censors nobody on the annulus
    """
    scenario = TransponderScenario(r_min_km=2.0, rho=rho)
    i_thr = 1e9 * effective_tx_power(scenario) * scenario.c_pathloss

    assert transponder_cumulant(order, scenario, i_thr) == pytest.approx(
        uncensored_cumulant(order, scenario), rel=1e-6)


def test_logarithmic_limit_is_continuous():
    """
    The n alpha = 2 branch agrees with the general form on both sides
    """
    value = airborne_cumulant(1, AirborneScenario(), 5.0)
    for alpha in (2.0 - 1e-6, 2.0 + 1e-6):
        assert airborne_cumulant(1, AirborneScenario(alpha=alpha), 5.0) == pytest.approx(
            value, rel=1e-4)
    assert value == pytest.approx(math.pi * 20.0 * math.log(40001.0 / 26.0), rel=1e-12)


@pytest.mark.parametrize("t_u_s", [0.0, 60.0, 300.0])
def test_no_exclusion_with_adjacent_channel(t_u_s):
    """
    20 users/km² on an adjacent channel need no exclusion region, even
    with a long database delay
    """
    scenario = AirborneScenario(lambda_su=20.0, acr_db=60.0, margin_db=10.0, t_u_s=t_u_s)
    result = exclusion_radius(scenario)
    assert result.status is FeasibilityStatus.FEASIBLE
    assert result.value == 0.0


DENSITIES = (10.0, 100.0, 1000.0, 10000.0)
ADJACENT = {"acr_db": 60.0, "margin_db": 10.0}
CO_CHANNEL = {"acr_db": 0.0, "margin_db": 3.0}
# Neighbouring thresholds of uncorrelated fields differ by about 0.01 dB
ORDERING_TOL_DB = 1e-4


def _threshold(lambda_su, rho=0.0, **channel):
    result = solve_ithr(TransponderScenario(lambda_su=lambda_su, rho=rho, **channel),
                        tol=ORDERING_TOL_DB)
    if channel == ADJACENT:
        assert result.is_feasible
    return result.value


def test_threshold_falls_with_density():
    """
    Denser fields need a stricter individual threshold
    """
    values = [_threshold(lambda_su, **ADJACENT) for lambda_su in DENSITIES]
    gaps = [high - low for high, low in zip(values, values[1:])]
    assert min(gaps) > 10 * ORDERING_TOL_DB, f"thresholds {values}"


@pytest.mark.parametrize("lambda_su", DENSITIES)
def test_threshold_falls_with_decorrelation(lambda_su):
    """
    Losing the correlation between sensed and created interference never
    relaxes the threshold; co-channel use is far stricter
    """
    values = [_threshold(lambda_su, rho, **ADJACENT) for rho in (1.0, 0.5, 0.0)]
    assert all(high >= low - ORDERING_TOL_DB for high, low in zip(values, values[1:])), \
        f"thresholds {values}"

    assert values[-1] - _threshold(lambda_su, **CO_CHANNEL) >= 50.0


def test_thousand_users_on_adjacent_channel():
    """
    More than 1000 users/km² keep transmitting at 5 km with probability 0.9,
    even with uncorrelated fading
    """
    result = max_density_for_power(TransponderScenario(rho=0.0, **ADJACENT))
    assert result.is_feasible
    assert result.value > 1000.0
