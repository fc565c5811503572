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

import logging
from collections import namedtuple

_LOGGER = logging.getLogger("dss.dme.solver.bisection")

MAX_ITERATIONS = 200


Bracket = namedtuple("Bracket", ["lower", "upper", "f_lower", "f_upper", "iterations"])
Bracket.__doc__ = """
Final search interval of a bisection. The objective is nonpositive at
``lower`` and positive at ``upper``
"""


class BracketError(RuntimeError):
    """
    Exception raised when the objective does not change sign over the
    search interval, or when the interval cannot be shrunk below the
    tolerance within the iteration budget
    """

    def __init__(self, lower, upper, f_lower, f_upper, reason="no sign change"):
        super().__init__(lower, upper, f_lower, f_upper, reason)
        self.lower = lower
        self.upper = upper
        self.f_lower = f_lower
        self.f_upper = f_upper
        self.reason = reason

    def __str__(self):
        return (f"Bisection failed on [{self.lower!r}, {self.upper!r}] ({self.reason}): "
                f"f(lower)={self.f_lower!r}, f(upper)={self.f_upper!r}")


class NonMonotoneError(RuntimeError):
    """
    Exception raised when the values of the objective at both ends of the
    interval contradict its assumed increase
    """

    def __init__(self, f_lower, f_upper):
        super().__init__(f_lower, f_upper)
        self.f_lower = f_lower
        self.f_upper = f_upper

    def __str__(self):
        return (f"The objective decreases over the search interval: "
                f"f(lower)={self.f_lower!r} > 0 >= f(upper)={self.f_upper!r}")


def bisect_monotone(func, lower, upper, tol, max_iter=MAX_ITERATIONS):
    """
    Locates the sign change of a nondecreasing function. The function is
    evaluated at both ends first: it must be nonpositive at ``lower`` and
    positive at ``upper``

    .. code-block:: python

        bracket = bisect_monotone(lambda x: x * x - 2, 0.0, 2.0, 1e-9)
        bracket.lower   # 1.41421356...

    Args:
        func (callable): nondecreasing function of a float
        lower (float): lower end of the search interval
        upper (float): upper end of the search interval
        tol (float): width of the final interval
        max_iter (int, optional): maximum number of halvings

    Returns:
        :class:`Bracket`
    """
    if not (lower < upper and tol > 0):
        raise ValueError(f"Invalid search interval [{lower!r}, {upper!r}] "
                         f"or tolerance {tol!r}")

    f_lower = func(lower)
    f_upper = func(upper)

    if f_lower > 0 >= f_upper:
        raise NonMonotoneError(f_lower, f_upper)
    if f_lower > 0 or f_upper <= 0:
        raise BracketError(lower, upper, f_lower, f_upper)

    iterations = 0
    while upper - lower > tol:
        if iterations >= max_iter:
            raise BracketError(lower, upper, f_lower, f_upper,
                               f"not converged after {max_iter} iterations")

        middle = 0.5 * (lower + upper)
        f_middle = func(middle)
        iterations += 1

        if f_middle <= 0:
            lower, f_lower = middle, f_middle
        else:
            upper, f_upper = middle, f_middle

        _LOGGER.debug("Iteration %d: [%.6g, %.6g]", iterations, lower, upper)

    return Bracket(lower, upper, f_lower, f_upper, iterations)
