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

Correlated composite fading of the sensing channel (``X``) and of the
interfering channel (``Y``). Both are log-normal with a 0 dB median and
share the same log standard deviation; their logarithms have correlation
``rho``.
"""

import math
from collections import namedtuple
import numpy as np

from .pathloss import DomainError


FadingPair = namedtuple("FadingPair", ["x", "y"])
FadingPair.__doc__ = """
Linear fading of the sensing channel (``x``) and of the interfering
channel (``y``). Fields are floats or arrays of identical shape
"""


def sample_fading_pair(sigma_ln, rho, rng, size=None):
    """
    Draws correlated fading factors. ``ln x`` is drawn from N(0, sigma_ln²)
    and ``ln y = rho ln x + sqrt(1 - rho²) sigma_ln Z``

    Args:
        sigma_ln (float): log standard deviation (natural log units)
        rho (float): correlation coefficient in [0, 1]
        rng (numpy.random.Generator): random source owned by the caller
        size (int, optional): number of pairs (a single pair if None)

    Returns:
        :class:`FadingPair`
    """
    if not 0 <= rho <= 1:
        raise DomainError(f"rho must lie in [0, 1], got {rho!r}")
    if not sigma_ln > 0:
        raise DomainError(f"sigma_ln must be positive, got {sigma_ln!r}")

    log_x = sigma_ln * rng.standard_normal(size)

    # Full correlation: both channels experience the very same fading
    if rho == 1:
        x_value = np.exp(log_x)
        return FadingPair(x_value, x_value.copy() if size is not None else x_value)

    log_y = rho * log_x + math.sqrt(1.0 - rho * rho) * sigma_ln * rng.standard_normal(size)
    return FadingPair(np.exp(log_x), np.exp(log_y))


def conditional_fading_density(x, y, sigma_ln, rho):
    """
    Density of the sensing fading ``X`` at ``x`` given that the interfering
    fading ``Y`` equals ``y``

    Args:
        x (float or numpy.ndarray): sensing fading (> 0)
        y (float): interfering fading (> 0)
        sigma_ln (float): log standard deviation
        rho (float): correlation in [0, 1)

    Returns:
        float or numpy.ndarray
    """
    if rho >= 1:
        raise DomainError("The conditional density is singular for rho = 1, "
                          "the fading of both channels is then identical")
    if not 0 <= rho:
        raise DomainError(f"rho must lie in [0, 1), got {rho!r}")

    x = np.asarray(x, dtype=float)
    if np.any(~(x > 0)) or not y > 0:
        raise DomainError("Fading values must be positive")

    scale = sigma_ln * math.sqrt(1.0 - rho * rho)
    deviation = (np.log(x) - rho * math.log(y)) / scale
    return (np.exp(-0.5 * deviation * deviation) / (x * scale * math.sqrt(2 * math.pi)))[()]
