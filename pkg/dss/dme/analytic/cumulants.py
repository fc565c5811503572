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

Cumulants of the aggregate interference of a Poisson field of secondary
users (Campbell's theorem).

Ground transponder
------------------

A secondary user at distance ``r`` transmits only if the interference it
believes to create, ``P_eff C r^-alpha X``, stays below ``I_thr``, while
the interference it actually creates is ``P_eff C r^-alpha Y``. With
``I_hat = I_thr / (P_eff C)``, the ``n``-th cumulant of the normalised sum
``sum r^-alpha Y`` over the annulus ``[r_o, R]`` is::

    k(n) = 2 pi lambda / (n alpha - 2) * E[ Y^n T_n(ln Y) ]

    T_n(u) = r_o^(2-n alpha) Phi(L_o) - R^(2-n alpha) Phi(L_R)
             + I_hat^((n alpha-2)/alpha) * int_{r_o^alpha I_hat}^{R^alpha I_hat}
                   x^((2-n alpha)/alpha) f_{X|Y}(x | e^u) dx

``L_o`` and ``L_R`` being the standardised conditional log-fading at the
two radii. The inner integral is a Gaussian integral in ``w = ln x`` and
has a closed form; the outer expectation is computed by adaptive
quadrature in ``u = ln y``. The ``e^(n u)`` factor is absorbed by shifting
the Gaussian weight of ``u`` by ``n sigma²``, so the truncation at
``+/- truncation`` standard deviations is centred where the integrand
lives.

For ``rho = 1`` the censoring becomes deterministic in ``Y``: a user
transmits iff ``r >= (Y / I_hat)^(1 / alpha)`` and ``T_n`` is a difference of
two powers of the radius.

Airborne interrogator
---------------------

No fading and no censoring besides the exclusion disc of radius ``r_o``::

    k(n) = 2 pi lambda / (n alpha - 2) * (B^((2-n alpha)/2) - A^((2-n alpha)/2))

with ``A = h² + R²`` and ``B = h² + r_o²``; ``n alpha = 2`` is the limit
``pi lambda ln(A / B)``.
"""

import logging
import math
import warnings
from dataclasses import dataclass
import numpy as np
from scipy.integrate import quad
from scipy.special import log_ndtr, ndtr

from dss.dme.propagation import DomainError, path_gain
from dss.dme.scenario import effective_tx_power
from .fitting import CumulantSet

_LOGGER = logging.getLogger("dss.dme.analytic.cumulants")

MAX_ORDER = 4
# The log-normal composite fading model is accurate above this shadowing spread
MIN_ACCURATE_SIGMA_DB = 6.0
# Accepted ratio between achieved and requested quadrature error
_TOLERANCE_SLACK = 1e3
_INV_SQRT_2PI = 1.0 / math.sqrt(2 * math.pi)


class IntegrabilityError(DomainError):
    """
    Exception raised when the cumulant integral diverges (``n alpha <= 2``)
    """

    def __init__(self, order, alpha):
        super().__init__(order, alpha)
        self.order = order
        self.alpha = alpha

    def __str__(self):
        return (f"The cumulant of order {self.order} diverges for alpha={self.alpha!r} "
                "(n * alpha must exceed 2)")


class QuadratureError(RuntimeError):
    """
    Exception raised when the adaptive quadrature does not reach the
    requested tolerance
    """

    def __init__(self, achieved, requested, message=None):
        super().__init__(achieved, requested, message)
        self.achieved = achieved
        self.requested = requested
        self.message = message

    def __str__(self):
        base = f"Quadrature did not converge: error {self.achieved:.3e} > {self.requested:.3e}"
        return f"{base} ({self.message})" if self.message else base


@dataclass(frozen=True)
class QuadratureOptions:
    """
    Settings of the outer adaptive Gauss-Kronrod quadrature

    Args:
        epsabs (float): absolute tolerance (on the normalised integrand)
        epsrel (float): relative tolerance
        limit (int): maximum number of subintervals
        truncation (float): half-width of the integration range, in standard
            deviations of the log-fading
    """
    epsabs: float = 1e-12
    epsrel: float = 1e-9
    limit: int = 200
    truncation: float = 8.0


DEFAULT_QUADRATURE = QuadratureOptions()


def _log_diff_ndtr(lower, upper):
    """
    Returns ``log(Phi(upper) - Phi(lower))`` for ``lower <= upper``, without
    cancellation in either tail
    """
    if not upper > lower:
        return -math.inf

    # Both bounds in the upper tail: use the symmetric form
    if lower > 0:
        lower, upper = -upper, -lower

    log_upper = float(log_ndtr(upper))
    delta = float(log_ndtr(lower)) - log_upper

    if delta == -math.inf:
        return log_upper
    if delta > -math.log(2):
        return log_upper + math.log(-math.expm1(delta))
    return log_upper + math.log1p(-math.exp(delta))


def _check_order(n, alpha):
    if int(n) != n or not 1 <= n <= MAX_ORDER:
        raise DomainError(f"Cumulant orders range from 1 to {MAX_ORDER}, got {n!r}")
    if not n * alpha > 2:
        raise IntegrabilityError(n, alpha)


class _TransponderIntegrand:
    """
    Bracket ``T_n(u)`` of the transponder cumulant, with all the constants
    of a given (order, scenario, threshold) precomputed
    """

    def __init__(self, n, scenario, i_hat):
        self.rho = scenario.rho
        self.exponent = 2 - n * scenario.alpha
        self.alpha = scenario.alpha
        self.log_i_hat = math.log(i_hat)
        self.log_r_o = math.log(scenario.r_min_km) if scenario.r_min_km > 0 else -math.inf
        self.log_r_max = math.log(scenario.r_max_km)
        # Log censoring bounds for the sensing fading at r_o and R
        self.lower = self.log_i_hat + self.alpha * self.log_r_o
        self.upper = self.log_i_hat + self.alpha * self.log_r_max
        self.scale = scenario.sigma_ln * math.sqrt(max(0.0, 1.0 - self.rho ** 2))
        self.slope = self.exponent / self.alpha

    def __call__(self, u):
        if self.rho == 1:
            return self._deterministic(u)
        return self._correlated(u)

    def _deterministic(self, u):
        # Closest transmitting user: r = (y / I_hat)^(1 / alpha)
        log_r_lo = max(self.log_r_o, (u - self.log_i_hat) / self.alpha)
        if log_r_lo >= self.log_r_max:
            return 0.0
        return (math.exp(self.exponent * log_r_lo)
                - math.exp(self.exponent * self.log_r_max))

    def _correlated(self, u):
        shift = self.rho * u
        z_upper = (self.upper - shift) / self.scale
        z_lower = (self.lower - shift) / self.scale

        inner_term = 0.0
        if self.log_r_o > -math.inf:
            inner_term = math.exp(self.exponent * self.log_r_o + float(log_ndtr(z_lower)))
        outer_term = math.exp(self.exponent * self.log_r_max + float(log_ndtr(z_upper)))

        tilt = self.slope * self.scale
        log_band = (-self.slope * self.log_i_hat + self.slope * shift + 0.5 * tilt * tilt
                    + _log_diff_ndtr(z_lower - tilt, z_upper - tilt))
        band_term = math.exp(log_band) if log_band > -math.inf else 0.0

        return max(inner_term - outer_term + band_term, 0.0)

    def breakpoints(self):
        """
        Values of ``u`` where the integrand changes regime
        """
        if self.rho == 0:
            return []
        points = [self.upper / self.rho]
        if self.lower > -math.inf:
            points.append(self.lower / self.rho)
        return points


def uncensored_cumulant(n, scenario):
    """
    Cumulant of order ``n`` of ``sum r^-alpha Y`` without any censoring
    (every user transmits). Closed-form Campbell formula, used as oracle

    Args:
        n (int): order
        scenario (TransponderScenario): scenario, with ``r_min_km > 0``

    Returns:
        float
    """
    _check_order(n, scenario.alpha)
    if not scenario.r_min_km > 0:
        raise DomainError("Without censoring the cumulants diverge unless r_min_km > 0")

    exponent = 2 - n * scenario.alpha
    annulus = scenario.r_min_km ** exponent - scenario.r_max_km ** exponent
    fading_moment = math.exp(0.5 * (n * scenario.sigma_ln) ** 2)
    return 2 * math.pi * scenario.lambda_su / (n * scenario.alpha - 2) * annulus * fading_moment


def transponder_cumulant(n, scenario, i_thr, options=None):
    """
    Cumulant of order ``n`` of the normalised aggregate interference
    ``sum r^-alpha Y`` received by the ground transponder when the secondary
    users apply the individual threshold ``i_thr``

    Args:
        n (int): order (1 to 4, with ``n alpha > 2``)
        scenario (TransponderScenario): scenario
        i_thr (float): individual interference threshold (mW), ``inf``
            disables the censoring
        options (QuadratureOptions, optional): quadrature settings

    Returns:
        float
    """
    options = options or DEFAULT_QUADRATURE
    _check_order(n, scenario.alpha)

    if scenario.sigma_db < MIN_ACCURATE_SIGMA_DB:
        warnings.warn(f"A composite fading of {scenario.sigma_db} dB is below "
                      f"{MIN_ACCURATE_SIGMA_DB} dB, the log-normal model may be inaccurate",
                      stacklevel=2)

    if scenario.lambda_su == 0 or not i_thr > 0:
        return 0.0
    if math.isinf(i_thr):
        return uncensored_cumulant(n, scenario)

    i_hat = i_thr / (effective_tx_power(scenario) * scenario.c_pathloss)
    bracket = _TransponderIntegrand(n, scenario, i_hat)
    sigma = scenario.sigma_ln
    center = n * sigma * sigma

    def integrand(t):
        return _INV_SQRT_2PI * math.exp(-0.5 * t * t) * bracket(center + sigma * t)

    # Normalise the integrand so that the absolute tolerance is meaningful
    half_width = options.truncation
    grid = np.linspace(-half_width, half_width, 65)
    magnitude = max(integrand(t) for t in grid)
    if magnitude == 0:
        _LOGGER.debug("k(%d) vanishes for I_hat=%g", n, i_hat)
        return 0.0

    points = [(u - center) / sigma for u in bracket.breakpoints()]
    points = [point for point in points if -half_width < point < half_width] or None

    result = quad(lambda t: integrand(t) / magnitude, -half_width, half_width,
                  points=points, epsabs=options.epsabs, epsrel=options.epsrel,
                  limit=options.limit, full_output=1)
    value, abserr = result[0], result[1]
    requested = max(options.epsabs, options.epsrel * abs(value))

    if abserr > _TOLERANCE_SLACK * requested:
        raise QuadratureError(abserr, requested, result[3] if len(result) > 3 else None)

    _LOGGER.debug("k(%d) for I_hat=%g, rho=%g: %d evaluations, error %.2e",
                  n, i_hat, scenario.rho, result[2]["neval"], abserr)

    prefactor = 2 * math.pi * scenario.lambda_su / (n * scenario.alpha - 2)
    return prefactor * math.exp(0.5 * center * n) * magnitude * value


def airborne_cumulant(n, scenario, r_o_km):
    """
    Cumulant of order ``n`` of the normalised aggregate interference
    ``sum l^-alpha`` received by the interrogator when no user transmits
    closer than ``r_o_km`` (ground distance)

    Args:
        n (int): order
        scenario (AirborneScenario): scenario
        r_o_km (float): exclusion radius (km), in [0, R]

    Returns:
        float
    """
    if int(n) != n or n < 1:
        raise DomainError(f"Cumulant orders start at 1, got {n!r}")
    if not 0 <= r_o_km <= scenario.r_max_km:
        raise DomainError(f"The exclusion radius must lie in [0, {scenario.r_max_km}], "
                          f"got {r_o_km!r}")

    log_a = math.log(scenario.h_km ** 2 + scenario.r_max_km ** 2)
    log_b = math.log(scenario.h_km ** 2 + r_o_km ** 2)
    excess = n * scenario.alpha - 2

    # l'Hopital limit of the closed form
    if excess == 0:
        return math.pi * scenario.lambda_su * (log_a - log_b)

    half = -excess / 2
    return (2 * math.pi * scenario.lambda_su / excess
            * (math.expm1(half * log_b) - math.expm1(half * log_a)))


def scale_cumulants(raw, p_eff, c):
    """
    Cumulants of the aggregate interference in mW from the cumulants of
    the normalised sum: ``k_out(n) = (p_eff c)^n k_in(n)``

    Args:
        raw (CumulantSet): normalised cumulants
        p_eff (float): effective transmission power (mW)
        c (float): path-loss constant

    Returns:
        :class:`CumulantSet`
    """
    factor = p_eff * c
    return CumulantSet(tuple(value * factor ** order
                             for order, value in enumerate(raw.k, start=1)))


def transponder_cumulants(scenario, i_thr, order=2, options=None):
    """
    Cumulants of the aggregate interference (mW) received by the
    ground transponder

    Args:
        scenario (TransponderScenario): scenario
        i_thr (float): individual interference threshold (mW)
        order (int): number of cumulants
        options (QuadratureOptions, optional): quadrature settings

    Returns:
        :class:`CumulantSet`
    """
    raw = CumulantSet(tuple(transponder_cumulant(n, scenario, i_thr, options)
                            for n in range(1, order + 1)))
    return scale_cumulants(raw, effective_tx_power(scenario), scenario.c_pathloss)


def airborne_cumulants(scenario, r_o_km, order=2):
    """
    Cumulants of the aggregate interference (mW) received by the
    airborne interrogator

    Args:
        scenario (AirborneScenario): scenario
        r_o_km (float): exclusion radius (km)
        order (int): number of cumulants

    Returns:
        :class:`CumulantSet`
    """
    raw = CumulantSet(tuple(airborne_cumulant(n, scenario, r_o_km)
                            for n in range(1, order + 1)))
    return scale_cumulants(raw, effective_tx_power(scenario), scenario.c_pathloss)


def transmission_probability(scenario, i_thr, r_km):
    """
    Probability that a secondary user located at ``r_km`` from the
    transponder is allowed to transmit, ``Pr[P_eff g(r) X <= I_thr]``

    Args:
        scenario (TransponderScenario): scenario
        i_thr (float): individual interference threshold (mW)
        r_km (float): distance to the transponder (km)

    Returns:
        float: probability
    """
    if not i_thr > 0:
        return 0.0

    median = effective_tx_power(scenario) * path_gain(r_km, scenario.c_pathloss, scenario.alpha)
    return float(ndtr(math.log(i_thr / median) / scenario.sigma_ln))
