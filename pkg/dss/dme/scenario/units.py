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

Power units. Every power in this package is expressed per MHz: the DME
channel is 1 MHz wide and the secondary users are described per MHz too,
so no bandwidth conversion is ever applied.
"""

import math
import numpy as np


def db_to_linear(value_db):
    """
    Converts a ratio in dB into a linear ratio

    Args:
        value_db (float or numpy.ndarray): ratio in dB

    Returns:
        float or numpy.ndarray
    """
    return np.power(10.0, np.asarray(value_db, dtype=float) / 10.0)[()]


def linear_to_db(value):
    """
    Converts a linear ratio into dB. A null ratio is mapped on -inf

    Args:
        value (float or numpy.ndarray): linear ratio (>= 0)

    Returns:
        float or numpy.ndarray
    """
    with np.errstate(divide="ignore"):
        return (10.0 * np.log10(np.asarray(value, dtype=float)))[()]


def dbm_to_mw(value_dbm):
    """
    Converts a power in dBm into mW
    """
    return db_to_linear(value_dbm)


def mw_to_dbm(value_mw):
    """
    Converts a power in mW into dBm
    """
    return linear_to_db(value_mw)


class PowerDbm(float):
    """
    Power expressed in dBm/MHz. This is a :class:`float`, so it can be used
    in any arithmetic expression, but its construction rejects non finite
    values.

    .. code-block:: python

        threshold = PowerDbm(-119)
        threshold.to_mw()             # 1.2589e-12
        PowerDbm.from_mw(1.0)         # PowerDbm(0.0)
    """

    def __new__(cls, value):
        value = float(value)
        if not math.isfinite(value):
            raise ValueError(f"A power in dBm must be finite, got {value!r}")
        return super().__new__(cls, value)

    @classmethod
    def from_mw(cls, value_mw):
        """
        Builds a power from a linear value

        Args:
            value_mw (float): power in mW (> 0)

        Returns:
            :class:`PowerDbm`
        """
        if not value_mw > 0:
            raise ValueError(f"Cannot express {value_mw!r} mW in dBm")
        return cls(10.0 * math.log10(value_mw))

    def to_mw(self):
        """
        Returns:
            float: power in mW
        """
        return 10.0 ** (float(self) / 10.0)

    def __repr__(self):
        return f"PowerDbm({float(self)!r})"
