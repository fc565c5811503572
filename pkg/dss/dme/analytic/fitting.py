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

Moment matching of the aggregate interference. The interference received
by the transponder is approximated by a log-normal distribution, the one
received by the interrogator (no fading, central limit regime) by a
Gaussian distribution. Both only use the first two cumulants.
"""

import math
from dataclasses import dataclass
from enum import Enum
import numpy as np
from scipy.special import ndtr, ndtri

from dss.dme.propagation import DomainError


@dataclass(frozen=True)
class CumulantSet:
    """
    First cumulants of an aggregate interference, ``k[0]`` being the first
    order cumulant (mean, mW), ``k[1]`` the second one (variance, mW²), ...

    Args:
        k (tuple[float]): cumulants, at least two of them
    """
    k: tuple

    def __post_init__(self):
        values = tuple(float(value) for value in self.k)
        object.__setattr__(self, "k", values)

        if len(values) < 2:
            raise DomainError("A cumulant set holds at least two cumulants")
        if not all(math.isfinite(value) for value in values):
            raise DomainError(f"Cumulants must be finite, got {values!r}")
        if values[0] < 0 or values[1] < 0:
            raise DomainError("The mean and the variance of a nonnegative sum "
                              f"are nonnegative, got {values[:2]!r}")

    @property
    def order(self):
        """
        Returns:
            int: number of cumulants
        """
        return len(self.k)

    def cumulant(self, n):
        """
        Args:
            n (int): order (starting at 1)

        Returns:
            float: n-th cumulant
        """
        return self.k[n - 1]

    @property
    def mean(self):
        return self.k[0]

    @property
    def variance(self):
        return self.k[1]

    @property
    def skewness(self):
        """
        Skewness ``k3 / k2^1.5`` (diagnostic, requires three cumulants)
        """
        if self.order < 3 or self.k[1] == 0:
            raise DomainError("The skewness requires a third cumulant and a positive variance")
        return self.k[2] / self.k[1] ** 1.5

    def is_empty(self):
        """
        Returns:
            bool: True if the interference is identically null
        """
        return self.k[0] == 0 or self.k[1] == 0


class DistributionKind(Enum):
    """
    Families used to approximate the aggregate interference
    """
    LOGNORMAL = "log-normal"
    GAUSSIAN = "gaussian"


@dataclass(frozen=True)
class FittedDistribution:
    """
    Moment-matched model of the aggregate interference

    Args:
        kind (DistributionKind): distribution family
        mu (float): location (log-mW for a log-normal, mW for a Gaussian)
        sigma (float): scale (log units for a log-normal, mW for a Gaussian)
    """
    kind: DistributionKind
    mu: float
    sigma: float

    def __post_init__(self):
        if not (math.isfinite(self.mu) and self.sigma > 0 and math.isfinite(self.sigma)):
            raise DomainError(f"Invalid {self.kind.value} parameters mu={self.mu!r}, "
                              f"sigma={self.sigma!r}")

    def _standardize(self, value):
        value = np.asarray(value, dtype=float)

        if self.kind is DistributionKind.GAUSSIAN:
            return (value - self.mu) / self.sigma

        with np.errstate(divide="ignore"):
            return (np.log(value) - self.mu) / self.sigma

    @property
    def mean(self):
        if self.kind is DistributionKind.GAUSSIAN:
            return self.mu
        return math.exp(self.mu + self.sigma ** 2 / 2)

    @property
    def variance(self):
        if self.kind is DistributionKind.GAUSSIAN:
            return self.sigma ** 2
        return math.expm1(self.sigma ** 2) * math.exp(2 * self.mu + self.sigma ** 2)

    def cdf(self, value):
        """
        Cumulative distribution function
        """
        return ndtr(self._standardize(value))[()]

    def sf(self, value):
        """
        Survival function, evaluated without ``1 - cdf`` cancellation
        """
        return ndtr(-self._standardize(value))[()]

    def quantile(self, level):
        """
        Inverse of the cumulative distribution function

        Args:
            level (float or numpy.ndarray): probability in (0, 1)

        Returns:
            float or numpy.ndarray: interference level (mW)
        """
        standard = ndtri(np.asarray(level, dtype=float))

        if self.kind is DistributionKind.GAUSSIAN:
            return (self.mu + self.sigma * standard)[()]
        return np.exp(self.mu + self.sigma * standard)[()]

    def isf(self, probability):
        """
        Inverse of the survival function, accurate for tiny probabilities

        Args:
            probability (float or numpy.ndarray): exceedance probability

        Returns:
            float or numpy.ndarray: interference level (mW)
        """
        standard = -ndtri(np.asarray(probability, dtype=float))

        if self.kind is DistributionKind.GAUSSIAN:
            return (self.mu + self.sigma * standard)[()]
        return np.exp(self.mu + self.sigma * standard)[()]


def lognormal_cumulants(mu, sigma):
    """
    First two cumulants of a log-normal distribution

    Args:
        mu (float): log mean
        sigma (float): log standard deviation

    Returns:
        :class:`CumulantSet`
    """
    return CumulantSet((math.exp(mu + sigma ** 2 / 2),
                        math.expm1(sigma ** 2) * math.exp(2 * mu + sigma ** 2)))


def fit_lognormal(cumulants):
    """
    Log-normal distribution having the same mean and variance as the
    given cumulants

    Args:
        cumulants (CumulantSet): cumulants (mW units)

    Returns:
        :class:`FittedDistribution`
    """
    mean, variance = cumulants.k[0], cumulants.k[1]

    if not (mean > 0 and variance > 0):
        raise DomainError("A log-normal fit requires a positive mean and variance, "
                          f"got {mean!r} and {variance!r}")

    # log1p keeps precision for nearly deterministic interference
    sigma2 = math.log1p(variance / (mean * mean))
    return FittedDistribution(DistributionKind.LOGNORMAL,
                              math.log(mean) - sigma2 / 2, math.sqrt(sigma2))


def fit_gaussian(cumulants):
    """
    Gaussian distribution whose mean and variance are the first two
    cumulants

    Args:
        cumulants (CumulantSet): cumulants (mW units)

    Returns:
        :class:`FittedDistribution`
    """
    if not cumulants.k[1] > 0:
        raise DomainError(f"A Gaussian fit requires a positive variance, got {cumulants.k[1]!r}")
    return FittedDistribution(DistributionKind.GAUSSIAN, cumulants.k[0],
                              math.sqrt(cumulants.k[1]))


def prob_exceed(distribution, threshold):
    """
    Probability that the interference exceeds ``threshold``

    Args:
        distribution (FittedDistribution): interference model
        threshold (float): interference level (mW)

    Returns:
        float: probability
    """
    if distribution.kind is DistributionKind.LOGNORMAL and not threshold > 0:
        return 1.0
    return float(distribution.sf(threshold))
