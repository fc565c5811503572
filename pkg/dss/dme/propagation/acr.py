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

import bisect
import math
import warnings

from .pathloss import DomainError


class AcrMask:
    """
    Adjacent channel rejection of the DME receiver as a step function of the
    channel offset. The rejection at a given offset is the value of the
    largest breakpoint lower than or equal to this offset

    The default mask rejects nothing in co-channel use and 60 dB (lower end
    of the 60-70 dB range measured at 2 MHz) for any other offset. No value
    is known for a 1 MHz offset: the 2 MHz value is extended downward, which
    may be optimistic.

    .. code-block:: python

        mask = AcrMask({0: 0.0, 1: 45.0, 2: 60.0, 5: 70.0})
        mask(3)     # 60.0

    Args:
        table (dict[float, float], optional): offset (MHz) -> rejection (dB).
            Must contain offset 0
    """

    DEFAULT_TABLE = {0: 0.0, 1: 60.0, 2: 60.0}

    def __init__(self, table=None):
        self._is_default = table is None
        table = dict(self.DEFAULT_TABLE if table is None else table)

        if not table or min(table) != 0:
            raise DomainError("An ACR mask must define the co-channel (offset 0) rejection")
        if any(not math.isfinite(value) for value in table.values()):
            raise DomainError("ACR values must be finite")

        self.offsets = sorted(float(offset) for offset in table)
        self.values = [float(table[key]) for key in sorted(table)]

    def __call__(self, delta_f_mhz):
        if not delta_f_mhz >= 0:
            raise DomainError(f"The channel offset must be nonnegative, got {delta_f_mhz!r}")

        if self._is_default and 0 < delta_f_mhz < 2:
            warnings.warn("No ACR value is documented below a 2 MHz offset, "
                          "the 2 MHz value is used")

        index = bisect.bisect_right(self.offsets, delta_f_mhz) - 1
        return self.values[index]

    def as_dict(self):
        """
        Returns:
            dict[float, float]: offset -> rejection table
        """
        return dict(zip(self.offsets, self.values))


DEFAULT_ACR_MASK = AcrMask()


def acr_for_offset(delta_f_mhz, mask=None):
    """
    Adjacent channel rejection for a channel offset

    Args:
        delta_f_mhz (float): offset between the secondary channel and the
            victim channel (MHz, 1 MHz channel grid)
        mask (AcrMask, optional): rejection mask (default: step mask
            0 dB / 60 dB)

    Returns:
        float: rejection in dB
    """
    return (mask or DEFAULT_ACR_MASK)(delta_f_mhz)
