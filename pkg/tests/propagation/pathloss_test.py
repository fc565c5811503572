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

import numpy as np
import pytest

from dss.dme.propagation import (
    DomainError, path_gain, slant_gain, free_space_constant,
    saturation_probability, saturation_constraint_holds
)
from dss.dme.scenario import TransponderScenario


def test_path_gain_values():
    """
    Direct evaluations of C r^-alpha
    """
    assert path_gain(1.0, 4.5e-13, 3.5) == pytest.approx(4.5e-13)
    assert path_gain(5.0, 4.5e-13, 3.5) == pytest.approx(4.5e-13 * 5.0 ** -3.5)
    assert path_gain(2.0, 1.0, 2.0) == pytest.approx(0.25)


def test_path_gain_properties():
    """
    Strictly decreasing and homogeneous of degree -alpha
    """
    distances = np.linspace(0.1, 200.0, 500)
    gains = path_gain(distances, 4.5e-13, 3.5)
    assert np.all(np.diff(gains) < 0)

    for factor in (0.5, 2.0, 7.0):
        assert np.allclose(path_gain(factor * distances, 4.5e-13, 3.5),
                           factor ** -3.5 * gains, rtol=1e-12)


def test_path_gain_domain():
    """
    Nonpositive distances are rejected
    """
    with pytest.raises(DomainError):
        path_gain(0.0, 1.0, 2.0)
    with pytest.raises(DomainError):
        path_gain(np.array([1.0, -1.0]), 1.0, 2.0)


def test_slant_gain():
    """
    Gain towards an elevated receiver
    """
    assert slant_gain(0.0, 1.0, 5.7e-10, 2.0) == pytest.approx(5.7e-10)
    assert slant_gain(3.0, 4.0, 1.0, 2.0) == pytest.approx(1.0 / 25.0)
    assert slant_gain(10.0, 1.0, 5.7e-10, 2.0) == pytest.approx(5.7e-10 / 101.0)

    ground = np.linspace(0.0, 50.0, 101)
    for height in (0.3, 1.0, 10.0):
        assert np.allclose(slant_gain(ground, height, 5.7e-10, 2.0),
                           path_gain(np.sqrt(height ** 2 + ground ** 2), 5.7e-10, 2.0),
                           rtol=1e-12)

    with pytest.raises(DomainError):
        slant_gain(1.0, 0.0, 1.0, 2.0)


def test_free_space_constant():
    """
    The airborne path-loss constant is the free-space constant at 1 GHz
    with distances in km
    """
    assert free_space_constant(1000.0) == pytest.approx(5.7e-10, rel=0.01)
    assert free_space_constant(2000.0) == pytest.approx(free_space_constant(1000.0) / 4)

    with pytest.raises(DomainError):
        free_space_constant(0.0)


def test_saturation_median():
    """
    The saturation probability is 1/2 where the median received power
    equals the saturation level
    """
    scenario = TransponderScenario()
    # P_pu C r^-alpha = I_sat, i.e. 60 dBm + C r^-alpha = -30 dBm
    distance = (1e-9 / scenario.c_pathloss) ** (-1.0 / scenario.alpha)
    assert saturation_probability(scenario, distance) == pytest.approx(0.5, abs=1e-9)


def test_saturation_far_away():
    """
    The probability vanishes with the distance
    """
    scenario = TransponderScenario()
    probabilities = [saturation_probability(scenario, r_km) for r_km in (1.0, 10.0, 100.0)]
    assert probabilities[0] > probabilities[1] > probabilities[2]
    assert probabilities[2] < 1e-12


def test_saturation_is_not_limiting():
    """
    With the reference parameters the saturation constraint holds beyond
    1 km
    """
    scenario = TransponderScenario()
    for r_km in (1.0, 1.5, 2.0, 5.0, 10.0, 50.0, 200.0):
        assert saturation_probability(scenario, r_km) < 0.02
        assert saturation_constraint_holds(scenario, r_km)
    assert not saturation_constraint_holds(scenario, 0.05)
