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

Deterministic path loss (power-law model ``C r^-alpha``) and the link
budget of the DME pulses received by a secondary user.
"""

import math
import numpy as np
from scipy.special import ndtr

from dss.dme.scenario import dbm_to_mw

SPEED_OF_LIGHT_KM_S = 299792.458


class DomainError(ValueError):
    """
    Exception raised when a function is evaluated outside of its domain
    (nonpositive distance, negative channel offset, ...)
    """


def path_gain(r_km, c, alpha):
    """
    Power-law path gain ``C r^-alpha``

    Args:
        r_km (float or numpy.ndarray): distance (km), must be > 0
        c (float): path-loss constant
        alpha (float): path-loss exponent

    Returns:
        float or numpy.ndarray: linear gain
    """
    r_km = np.asarray(r_km, dtype=float)

    if np.any(~(r_km > 0)):
        raise DomainError("The path gain is only defined for positive distances")

    return (c * np.power(r_km, -alpha))[()]


def slant_gain(r_km, h_km, c, alpha):
    """
    Path gain towards a receiver located at height ``h_km`` above the point
    of the ground at distance zero

    Args:
        r_km (float or numpy.ndarray): ground distance (km), >= 0
        h_km (float): height of the receiver (km), > 0
        c (float): path-loss constant
        alpha (float): path-loss exponent

    Returns:
        float or numpy.ndarray: linear gain ``C (h² + r²)^(-alpha/2)``
    """
    r_km = np.asarray(r_km, dtype=float)

    if not h_km > 0:
        raise DomainError(f"The height must be positive, got {h_km!r}")
    if np.any(~(r_km >= 0)):
        raise DomainError("The ground distance must be nonnegative")

    return (c * np.power(h_km * h_km + r_km * r_km, -alpha / 2.0))[()]


def free_space_constant(freq_mhz):
    """
    Free-space path-loss constant ``(c / 4 pi f)²`` for distances expressed
    in kilometres. At 1 GHz this is the constant used for the airborne
    interrogator (about 5.7e-10)

    Args:
        freq_mhz (float): carrier frequency (MHz)

    Returns:
        float
    """
    if not freq_mhz > 0:
        raise DomainError(f"The frequency must be positive, got {freq_mhz!r}")
    wavelength_km = SPEED_OF_LIGHT_KM_S / (freq_mhz * 1e6)
    return (wavelength_km / (4 * math.pi)) ** 2


def saturation_probability(scenario, r_km):
    """
    Probability that a DME pulse saturates a secondary receiver located at
    ``r_km`` from the transponder, i.e. ``Pr[P_pu g(r) X > I_sat]`` where
    ``X`` is the log-normal composite fading

    Args:
        scenario (TransponderScenario): scenario
        r_km (float): distance to the transponder (km)

    Returns:
        float: probability
    """
    received_mw = dbm_to_mw(scenario.p_pu_dbm) * path_gain(r_km, scenario.c_pathloss,
                                                            scenario.alpha)
    margin = np.log(dbm_to_mw(scenario.i_sat_dbm) / received_mw) / scenario.sigma_ln
    return float(ndtr(-margin))


def saturation_constraint_holds(scenario, r_km):
    """
    Checks the saturation constraint of the secondary receiver at distance
    ``r_km``

    Returns:
        bool: True if the saturation probability is below ``beta_su``
    """
    return saturation_probability(scenario, r_km) <= scenario.beta_su
