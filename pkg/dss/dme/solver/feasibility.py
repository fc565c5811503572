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

Feasibility of the secondary access: inversion of the analytic engine by
bisection. Every search runs in the dB or log domain on an objective that
increases with the search variable; the protection threshold is always
derived by :func:`dss.dme.scenario.effective_protection_threshold`.

A search that cannot be satisfied is not an error: the returned
:class:`FeasibilityResult` carries a :class:`FeasibilityStatus`.
"""

import logging
import math
from dataclasses import dataclass, replace
from enum import Enum

from dss.dme.analytic import (
    transponder_cumulants, airborne_cumulants, fit_lognormal, fit_gaussian,
    prob_exceed, transmission_probability
)
from dss.dme.propagation import DomainError
from dss.dme.scenario import dbm_to_mw, effective_protection_threshold
from .bisection import bisect_monotone

_LOGGER = logging.getLogger("dss.dme.solver.feasibility")

ITHR_TOLERANCE_DB = 0.01
ITHR_TOP_DBM = 0.0
ITHR_BOTTOM_DBM = -200.0
ITHR_EXPANSION_DB = 100.0
ITHR_FLOOR_DBM = -600.0

DENSITY_TOLERANCE_DECADES = 1e-3
DENSITY_BRACKET = (1e-3, 1e6)
DEFAULT_PROB_FLOOR = 0.9
DEFAULT_R_REF_KM = 5.0

RADIUS_TOLERANCE_KM = 0.1

POWER_TOLERANCE_DB = 0.01
POWER_BRACKET_DBM = (-60.0, 60.0)


class FeasibilityStatus(Enum):
    """
    Outcome of a feasibility search
    """
    FEASIBLE = "feasible"
    # The constraint holds over the whole bracket, the value is its feasible end
    UNBOUNDED = "unbounded"
    # The constraint fails over the whole bracket
    INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class FeasibilityResult:
    """
    Solution of a feasibility search

    Args:
        quantity (str): name of the solved quantity ("i_thr_dbm",
            "lambda_su", "r_thr_km", "r_o_km" or "p_su_dbm")
        value (float): solution
        achieved_prob (float): probability constrained by the search,
            evaluated at the solution
        iterations (int): number of bisection steps
        bracket (tuple[float, float]): final search interval
        status (FeasibilityStatus): outcome
    """
    quantity: str
    value: float
    achieved_prob: float
    iterations: int
    bracket: tuple
    status: FeasibilityStatus = FeasibilityStatus.FEASIBLE

    @property
    def is_feasible(self):
        return self.status is not FeasibilityStatus.INFEASIBLE


def transponder_tail_probability(scenario, i_thr, options=None):
    """
    Probability that the aggregate interference received by the transponder
    exceeds the protection threshold, with the log-normal approximation

    Args:
        scenario (TransponderScenario): scenario
        i_thr (float): individual interference threshold (mW)
        options (QuadratureOptions, optional): quadrature settings

    Returns:
        float
    """
    cumulants = transponder_cumulants(scenario, i_thr, order=2, options=options)
    if cumulants.is_empty():
        return 0.0
    return prob_exceed(fit_lognormal(cumulants), effective_protection_threshold(scenario))


def airborne_tail_probability(scenario, r_o_km):
    """
    Probability that the aggregate interference received by the
    interrogator exceeds the protection threshold, with the Gaussian
    approximation

    Args:
        scenario (AirborneScenario): scenario
        r_o_km (float): exclusion radius (km)

    Returns:
        float
    """
    cumulants = airborne_cumulants(scenario, r_o_km, order=2)
    threshold = effective_protection_threshold(scenario)
    if cumulants.variance == 0:
        return float(cumulants.mean > threshold)
    return prob_exceed(fit_gaussian(cumulants), threshold)


def solve_ithr(scenario, tol=ITHR_TOLERANCE_DB, options=None):
    """
    Largest individual interference threshold keeping the probability of
    harmful interference below ``beta_pu``

    The search starts on ``[-200, 0]`` dBm; the lower end moves down by
    100 dB steps (down to -600 dBm) while it is still too permissive.

    Args:
        scenario (TransponderScenario): scenario
        tol (float, optional): resolution (dB)
        options (QuadratureOptions, optional): quadrature settings

    Returns:
        :class:`FeasibilityResult` (``quantity="i_thr_dbm"``)
    """
    def excess(i_thr_dbm):
        return (transponder_tail_probability(scenario, dbm_to_mw(i_thr_dbm), options)
                - scenario.beta_pu)

    f_top = excess(ITHR_TOP_DBM)
    if f_top <= 0:
        _LOGGER.info("I_thr unbounded (lambda=%g)", scenario.lambda_su)
        return FeasibilityResult("i_thr_dbm", ITHR_TOP_DBM, f_top + scenario.beta_pu, 0,
                                 (ITHR_TOP_DBM, ITHR_TOP_DBM), FeasibilityStatus.UNBOUNDED)

    bottom = ITHR_BOTTOM_DBM
    f_bottom = excess(bottom)
    while f_bottom > 0 and bottom > ITHR_FLOOR_DBM:
        bottom -= ITHR_EXPANSION_DB
        f_bottom = excess(bottom)
        _LOGGER.debug("Expanding the I_thr bracket down to %g dBm", bottom)

    if f_bottom > 0:
        _LOGGER.info("No positive-probability operation (lambda=%g)", scenario.lambda_su)
        return FeasibilityResult("i_thr_dbm", bottom, f_bottom + scenario.beta_pu, 0,
                                 (bottom, ITHR_TOP_DBM), FeasibilityStatus.INFEASIBLE)

    bracket = bisect_monotone(excess, bottom, ITHR_TOP_DBM, tol)
    _LOGGER.info("I_thr = %.2f dBm (lambda=%g, rho=%g, %d iterations)",
                 bracket.lower, scenario.lambda_su, scenario.rho, bracket.iterations)
    return FeasibilityResult("i_thr_dbm", bracket.lower, bracket.f_lower + scenario.beta_pu,
                             bracket.iterations, (bracket.lower, bracket.upper))


def max_density_for_power(scenario, p_su_dbm=None, prob_floor=DEFAULT_PROB_FLOOR,
                          r_ref_km=DEFAULT_R_REF_KM, bracket=DENSITY_BRACKET,
                          tol=DENSITY_TOLERANCE_DECADES, options=None):
    """
    Largest secondary density for which a user located at ``r_ref_km`` from
    the transponder still transmits with probability ``prob_floor``, the
    threshold being re-solved for every density

    Args:
        scenario (TransponderScenario): scenario template
        p_su_dbm (float, optional): secondary transmission power, overrides
            the template's
        prob_floor (float, optional): required transmission probability
        r_ref_km (float, optional): reference distance (km)
        bracket (tuple[float, float], optional): searched densities (/km²)
        tol (float, optional): resolution (decades)
        options (QuadratureOptions, optional): quadrature settings

    Returns:
        :class:`FeasibilityResult` (``quantity="lambda_su"``, the achieved
        probability being the transmission probability)
    """
    if not 0 <= prob_floor < 1:
        raise DomainError(f"The transmission probability floor must lie in [0, 1), "
                          f"got {prob_floor!r}")
    if p_su_dbm is not None:
        scenario = replace(scenario, p_su_dbm=p_su_dbm)

    def shortfall(log_density):
        candidate = replace(scenario, lambda_su=10.0 ** log_density)
        solution = solve_ithr(candidate, options=options)
        if solution.status is FeasibilityStatus.INFEASIBLE:
            return prob_floor
        return prob_floor - transmission_probability(candidate, dbm_to_mw(solution.value),
                                                     r_ref_km)

    low, high = math.log10(bracket[0]), math.log10(bracket[1])

    f_high = shortfall(high)
    if f_high <= 0:
        return FeasibilityResult("lambda_su", bracket[1], prob_floor - f_high, 0,
                                 (bracket[1], bracket[1]), FeasibilityStatus.UNBOUNDED)
    f_low = shortfall(low)
    if f_low > 0:
        return FeasibilityResult("lambda_su", bracket[0], prob_floor - f_low, 0,
                                 (bracket[0], bracket[1]), FeasibilityStatus.INFEASIBLE)

    found = bisect_monotone(shortfall, low, high, tol)
    _LOGGER.info("Maximum density %.4g /km² (p_su=%.2f dBm)",
                 10.0 ** found.lower, scenario.p_su_dbm)
    return FeasibilityResult("lambda_su", 10.0 ** found.lower, prob_floor - found.f_lower,
                             found.iterations, (10.0 ** found.lower, 10.0 ** found.upper))


def solve_exclusion_radius(scenario, tol=RADIUS_TOLERANCE_KM):
    """
    Smallest exclusion radius protecting the airborne interrogator, before
    any database delay is accounted for

    Args:
        scenario (AirborneScenario): scenario
        tol (float, optional): resolution (km)

    Returns:
        :class:`FeasibilityResult` (``quantity="r_thr_km"``)
    """
    def margin(r_km):
        return scenario.beta_pu - airborne_tail_probability(scenario, r_km)

    f_zero = margin(0.0)
    if f_zero >= 0:
        return FeasibilityResult("r_thr_km", 0.0, scenario.beta_pu - f_zero, 0, (0.0, 0.0))

    top = max(scenario.r_max_km - tol, 0.0)
    f_top = margin(top)
    if f_top <= 0:
        _LOGGER.info("No exclusion radius below R protects the interrogator")
        return FeasibilityResult("r_thr_km", scenario.r_max_km, scenario.beta_pu - f_top, 0,
                                 (top, scenario.r_max_km), FeasibilityStatus.INFEASIBLE)

    # The margin increases with the radius: the upper end is the feasible one
    found = bisect_monotone(margin, 0.0, top, tol)
    _LOGGER.info("r_thr = %.2f km (%d iterations)", found.upper, found.iterations)
    return FeasibilityResult("r_thr_km", found.upper, scenario.beta_pu - found.f_upper,
                             found.iterations, (found.lower, found.upper))


def error_region_radius(t_u_s, v_kmh):
    """
    Distance flown by the aircraft between two database updates

    Args:
        t_u_s (float): update delay (s)
        v_kmh (float): aircraft speed (km/h)

    Returns:
        float: radius (km)
    """
    if not (t_u_s >= 0 and v_kmh >= 0):
        raise DomainError(f"Delay and speed must be nonnegative, got {t_u_s!r} and {v_kmh!r}")
    return t_u_s * v_kmh / 3600.0


def apply_update_delay(r_thr_km, t_u_s, v_kmh):
    """
    Exclusion radius enforced by the database. It is extended by the error
    region of the aircraft, unless no exclusion is needed at all

    Args:
        r_thr_km (float): exclusion radius without delay (km)
        t_u_s (float): update delay (s)
        v_kmh (float): aircraft speed (km/h)

    Returns:
        float: radius (km)
    """
    if not r_thr_km >= 0:
        raise DomainError(f"The exclusion radius must be nonnegative, got {r_thr_km!r}")

    error_region = error_region_radius(t_u_s, v_kmh)
    if r_thr_km > 0:
        return r_thr_km + error_region
    return 0.0


def exclusion_radius(scenario, tol=RADIUS_TOLERANCE_KM):
    """
    Exclusion radius enforced around the reported aircraft position,
    database delay included (uses the scenario's ``t_u_s`` and ``v_kmh``)

    Returns:
        :class:`FeasibilityResult` (``quantity="r_o_km"``)
    """
    result = solve_exclusion_radius(scenario, tol)
    return replace(result, quantity="r_o_km",
                   value=apply_update_delay(result.value, scenario.t_u_s, scenario.v_kmh))


def max_power_no_exclusion(scenario, lambda_su=None, bracket=POWER_BRACKET_DBM,
                           tol=POWER_TOLERANCE_DB):
    """
    Largest secondary transmission power for which the interrogator needs
    no exclusion region

    Args:
        scenario (AirborneScenario): scenario template
        lambda_su (float, optional): secondary density, overrides the
            template's
        bracket (tuple[float, float], optional): searched powers (dBm)
        tol (float, optional): resolution (dB)

    Returns:
        :class:`FeasibilityResult` (``quantity="p_su_dbm"``)
    """
    if lambda_su is not None:
        scenario = replace(scenario, lambda_su=lambda_su)

    def excess(p_su_dbm):
        candidate = replace(scenario, p_su_dbm=p_su_dbm)
        return airborne_tail_probability(candidate, 0.0) - scenario.beta_pu

    low, high = bracket

    f_high = excess(high)
    if f_high <= 0:
        return FeasibilityResult("p_su_dbm", high, f_high + scenario.beta_pu, 0,
                                 (high, high), FeasibilityStatus.UNBOUNDED)
    f_low = excess(low)
    if f_low > 0:
        return FeasibilityResult("p_su_dbm", low, f_low + scenario.beta_pu, 0,
                                 (low, high), FeasibilityStatus.INFEASIBLE)

    found = bisect_monotone(excess, low, high, tol)
    _LOGGER.info("Maximum power %.2f dBm without exclusion (lambda=%g)",
                 found.lower, scenario.lambda_su)
    return FeasibilityResult("p_su_dbm", found.lower, found.f_lower + scenario.beta_pu,
                             found.iterations, (found.lower, found.upper))
