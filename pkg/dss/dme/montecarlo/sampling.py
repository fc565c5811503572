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

Random sources and homogeneous Poisson fields on an annulus.

Each Monte Carlo trial owns its generator, derived from the experiment seed
and the trial index only (``SeedSequence(seed, spawn_key=(trial,))``), so
a trial draws the same field whatever the number of workers.
"""

import math
import numpy as np

from dss.dme.propagation import DomainError

# Number of users drawn at once when a field is streamed
CHUNK_SIZE = 1 << 18


def trial_generator(seed, trial):
    """
    Independent random generator of a Monte Carlo trial

    Args:
        seed (int): experiment seed (nonnegative, up to 64 bits)
        trial (int): trial index

    Returns:
        :class:`numpy.random.Generator`
    """
    if int(seed) != seed or seed < 0:
        raise DomainError(f"Seeds are nonnegative integers, got {seed!r}")
    return np.random.default_rng(np.random.SeedSequence(int(seed), spawn_key=(int(trial),)))


def _check_annulus(lambda_su, r_min_km, r_max_km):
    if not lambda_su >= 0:
        raise DomainError(f"The density must be nonnegative, got {lambda_su!r}")
    if not 0 <= r_min_km < r_max_km:
        raise DomainError(f"Invalid annulus [{r_min_km!r}, {r_max_km!r}]")


def _radii(count, r_min_km, r_max_km, rng):
    # Inverse CDF of the density 2r / (R² - r_o²), uniform in (0, 1] so r > r_o
    uniform = 1.0 - rng.random(count)
    return np.sqrt(r_min_km * r_min_km + uniform * (r_max_km * r_max_km - r_min_km * r_min_km))


def sample_annulus_ppp(lambda_su, r_min_km, r_max_km, rng):
    """
    Distances to the center of the points of a homogeneous Poisson point
    process of density ``lambda_su`` restricted to the annulus
    ``[r_min_km, r_max_km]``

    Args:
        lambda_su (float): density (points/km²)
        r_min_km (float): inner radius (km)
        r_max_km (float): outer radius (km)
        rng (numpy.random.Generator): random source

    Returns:
        numpy.ndarray: radii (km), in drawing order
    """
    _check_annulus(lambda_su, r_min_km, r_max_km)
    area = math.pi * (r_max_km * r_max_km - r_min_km * r_min_km)
    return _radii(rng.poisson(lambda_su * area), r_min_km, r_max_km, rng)


def stream_annulus_ppp(lambda_su, r_min_km, r_max_km, rng, chunk_size=CHUNK_SIZE):
    """
    Same field as :func:`sample_annulus_ppp` delivered in chunks of at most
    ``chunk_size`` radii, so that fields of millions of points never live
    in memory at once

    Yields:
        numpy.ndarray: radii of the next chunk
    """
    _check_annulus(lambda_su, r_min_km, r_max_km)
    area = math.pi * (r_max_km * r_max_km - r_min_km * r_min_km)
    remaining = int(rng.poisson(lambda_su * area))

    while remaining > 0:
        count = min(remaining, chunk_size)
        remaining -= count
        yield _radii(count, r_min_km, r_max_km, rng)
