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

from dss.dme.solver import Bracket, BracketError, NonMonotoneError, bisect_monotone


def test_square_root():
    bracket = bisect_monotone(lambda x: x * x - 2, 0.0, 2.0, 1e-9)
    assert isinstance(bracket, Bracket)
    assert bracket.lower <= math.sqrt(2) < bracket.upper
    assert bracket.upper - bracket.lower <= 1e-9
    assert bracket.f_lower <= 0 < bracket.f_upper


def test_iteration_count():
    """
    Each iteration halves the interval
    """
    bracket = bisect_monotone(lambda x: x - 0.3, 0.0, 1.0, 1.0 / 1024)
    assert bracket.iterations == 10
    assert bracket.upper - bracket.lower == 1.0 / 1024


def test_step_function():
    """
    Only the sign matters, the objective may be discontinuous
    """
    bracket = bisect_monotone(lambda x: -1.0 if x < 0.3 else 1.0, 0.0, 1.0, 1e-6)
    assert bracket.lower < 0.3 <= bracket.upper
    assert bracket.upper - 0.3 <= 1e-6


def test_zero_is_feasible():
    """
    The lower end may be a root
    """
    bracket = bisect_monotone(lambda x: max(x - 0.5, 0.0), 0.0, 1.0, 1e-3)
    assert bracket.f_lower == 0.0
    assert bracket.lower >= 0.5 - 1e-3


def test_decreasing_objective():
    with pytest.raises(NonMonotoneError) as error:
        bisect_monotone(lambda x: 1.0 - x, 0.0, 2.0, 1e-3)
    assert error.value.f_lower == 1.0
    assert "decreases" in str(error.value)


def test_no_sign_change():
    with pytest.raises(BracketError) as error:
        bisect_monotone(lambda x: x + 10.0, 0.0, 1.0, 1e-3)
    assert error.value.reason == "no sign change"

    with pytest.raises(BracketError):
        bisect_monotone(lambda x: x - 10.0, 0.0, 1.0, 1e-3)


def test_iteration_budget():
    with pytest.raises(BracketError) as error:
        bisect_monotone(lambda x: x - 0.3, 0.0, 1.0, 1e-12, max_iter=3)
    assert "not converged" in str(error.value)


@pytest.mark.parametrize("lower, upper, tol", [(1.0, 0.0, 1e-3), (0.0, 0.0, 1e-3),
                                               (0.0, 1.0, 0.0)])
def test_invalid_interval(lower, upper, tol):
    with pytest.raises(ValueError):
        bisect_monotone(lambda x: x, lower, upper, tol)
