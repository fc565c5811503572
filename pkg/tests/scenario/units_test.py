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
import numpy as np
import pytest

from dss.dme.scenario import PowerDbm, db_to_linear, linear_to_db, dbm_to_mw, mw_to_dbm


def test_known_conversions():
    """
    Checks a few hand computed conversions
    """
    assert db_to_linear(10) == pytest.approx(10.0)
    assert db_to_linear(-30) == pytest.approx(1e-3)
    assert linear_to_db(100.0) == pytest.approx(20.0)
    assert dbm_to_mw(0) == pytest.approx(1.0)
    assert mw_to_dbm(1e-12) == pytest.approx(-120.0)
    assert linear_to_db(0.0) == -math.inf


def test_round_trip():
    """
    dBm -> mW -> dBm is the identity on finite values
    """
    values = np.linspace(-300.0, 100.0, 4001)
    assert np.allclose(mw_to_dbm(dbm_to_mw(values)), values, rtol=1e-12, atol=1e-12)

    powers = np.logspace(-30, 10, 401)
    assert np.allclose(dbm_to_mw(mw_to_dbm(powers)), powers, rtol=1e-12, atol=0)


def test_scalar_in_scalar_out():
    """
    Scalars are not turned into 0-d arrays
    """
    assert isinstance(dbm_to_mw(-119.0), float)
    assert dbm_to_mw([0.0, 10.0]).shape == (2,)


def test_power_dbm():
    """
    PowerDbm behaves as a float and rejects non finite values
    """
    power = PowerDbm(-119)
    assert power == -119.0
    assert power + 3 == -116.0
    assert power.to_mw() == pytest.approx(10 ** -11.9)
    assert PowerDbm.from_mw(1.0) == 0.0
    assert "PowerDbm" in repr(power)

    for value in (math.inf, -math.inf, math.nan):
        with pytest.raises(ValueError):
            PowerDbm(value)

    with pytest.raises(ValueError):
        PowerDbm.from_mw(0.0)
