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

Scenario parameter sets for the two DME victims.

Distances are expressed in kilometres. The study never states the unit of
its path-loss constants; kilometres are inferred from them: with
``C = 4.5e-13`` and ``alpha = 3.5`` the loss at 5 km is about 148 dB (a
plausible suburban value around 1 GHz) and ``C = 5.7e-10`` with
``alpha = 2`` is the free-space constant ``(c / 4 pi f)^2`` at 1 GHz once
expressed in km². See :func:`dss.dme.propagation.free_space_constant`.

Both scenario classes are frozen dataclasses. Derive variants with
:func:`dataclasses.replace`, which validates the new instance again:

.. code-block:: python

    from dataclasses import replace
    from dss.dme.scenario import TransponderScenario

    base = TransponderScenario()                # reference values
    adjacent = replace(base, acr_db=60.0, margin_db=10.0, rho=0.5)
"""

import hashlib
import json
import math
from collections import namedtuple
from dataclasses import dataclass, fields, asdict

from .units import PowerDbm, dbm_to_mw

# Protection targets of the DME receivers
A_THR_TRANSPONDER_DBM = -119.0
A_THR_INTERROGATOR_DBM = -111.0
# Maximum probability of harmful interference (0.001 %)
BETA_PU = 1e-5
# Margins accounting for the aggregation over several channels
CO_CHANNEL_MARGIN_DB = 3.0
ADJACENT_CHANNEL_MARGIN_DB = 10.0


Violation = namedtuple("Violation", ["field", "message"])


class ScenarioError(ValueError):
    """
    Exception raised when a scenario violates one or several of its
    invariants. All the violations are reported at once

    Args:
        scenario_kind (str): name of the scenario class
        violations (list[Violation]): violated invariants
    """

    def __init__(self, scenario_kind, violations):
        super().__init__(scenario_kind, violations)
        self.scenario_kind = scenario_kind
        self.violations = list(violations)

    def __str__(self):
        details = "; ".join(f"{item.field}: {item.message}" for item in self.violations)
        return f"Invalid {self.scenario_kind} ({len(self.violations)} violation(s)): {details}"


class _Checker:
    """
    Accumulates invariant violations of a scenario
    """

    def __init__(self, scenario):
        self.scenario = scenario
        self.violations = []

    def finite(self, *names):
        for name in names:
            value = getattr(self.scenario, name)
            if not isinstance(value, (int, float)) or isinstance(value, bool) \
                    or not math.isfinite(value):
                self.violations.append(Violation(name, f"must be a finite number, got {value!r}"))

    def check(self, name, condition, message):
        # Fields already reported as non finite are not checked twice
        if any(item.field == name for item in self.violations):
            return
        if not condition(getattr(self.scenario, name)):
            self.violations.append(Violation(name, f"{message}, got {getattr(self.scenario, name)!r}"))


class _ScenarioBase:
    """
    Behaviour shared by both scenario kinds. The dataclass fields
    are declared by the subclasses
    """
    _POWER_FIELDS = ("p_pu_dbm", "p_su_dbm", "a_thr_dbm")

    def __post_init__(self):
        checker = _Checker(self)
        self._check(checker)

        if checker.violations:
            raise ScenarioError(type(self).__name__, checker.violations)

        # Frozen dataclass: normalise dBm fields to PowerDbm
        for name in self._POWER_FIELDS:
            object.__setattr__(self, name, PowerDbm(getattr(self, name)))

    def _check(self, checker):
        checker.finite(*(item.name for item in fields(self)))
        checker.check("c_pathloss", lambda value: value > 0, "must be > 0")
        checker.check("alpha", lambda value: value > 0, "must be > 0")
        checker.check("lambda_su", lambda value: value >= 0, "must be >= 0")
        checker.check("r_max_km", lambda value: value > 0, "must be > 0")
        checker.check("beta_pu", lambda value: 0 < value < 1, "must lie in (0, 1)")
        checker.check("acr_db", lambda value: value >= 0, "must be >= 0")
        checker.check("margin_db", lambda value: value >= 0, "must be >= 0")

    @property
    def kind(self):
        """
        Returns:
            str: "transponder" or "airborne"
        """
        return self.KIND

    def digest(self):
        """
        Content hash of the scenario (SHA-256 of its canonical JSON form)

        Returns:
            str: hexadecimal digest
        """
        payload = {"kind": self.KIND}
        payload.update({key: float(value) for key, value in asdict(self).items()})
        canonical = json.dumps(payload, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class TransponderScenario(_ScenarioBase):
    """
    Secondary access protecting a DME ground transponder. Defaults are the
    parameters of the reference study (co-channel use).

    Args:
        p_pu_dbm: transponder transmission power (dBm/MHz)
        p_su_dbm: secondary user transmission power (dBm/MHz)
        g_su_dbi: secondary user antenna gain (dBi)
        g_dme_dbi: DME antenna gain (dBi)
        penetration_db: building penetration loss (dB)
        c_pathloss: path-loss constant C (distances in km)
        alpha: path-loss exponent
        sigma_db: standard deviation of the composite fading (dB)
        rho: correlation of the sensing and interfering fading, in [0, 1]
        lambda_su: secondary user density (users/km²)
        r_min_km: inner radius r_o of the annulus (km)
        r_max_km: outer radius R of the annulus (km)
        a_thr_dbm: maximum tolerable interference (dBm/MHz)
        beta_pu: maximum probability of harmful interference
        acr_db: adjacent channel rejection (dB, 0 for co-channel use)
        margin_db: spectral aggregation margin (dB)
        i_sat_dbm: saturation level of the secondary receiver (dBm)
        beta_su: maximum saturation probability
    """
    KIND = "transponder"

    p_pu_dbm: float = 60.0
    p_su_dbm: float = 1.0
    g_su_dbi: float = 0.0
    g_dme_dbi: float = 5.4
    penetration_db: float = 10.0
    c_pathloss: float = 4.5e-13
    alpha: float = 3.5
    sigma_db: float = 10.0
    rho: float = 0.0
    lambda_su: float = 20.0
    r_min_km: float = 0.0
    r_max_km: float = 200.0
    a_thr_dbm: float = A_THR_TRANSPONDER_DBM
    beta_pu: float = BETA_PU
    acr_db: float = 0.0
    margin_db: float = CO_CHANNEL_MARGIN_DB
    i_sat_dbm: float = -30.0
    beta_su: float = 0.02

    def _check(self, checker):
        super()._check(checker)
        checker.check("rho", lambda value: 0 <= value <= 1, "must lie in [0, 1]")
        checker.check("sigma_db", lambda value: value > 0, "must be > 0")
        # Every fit needs the first cumulant, which requires n * alpha > 2
        checker.check("alpha", lambda value: value > 2, "must be > 2")
        checker.check("r_min_km", lambda value: value >= 0, "must be >= 0")
        if not any(item.field in ("r_min_km", "r_max_km") for item in checker.violations):
            checker.check("r_min_km", lambda value: value < self.r_max_km,
                          f"must be lower than r_max_km ({self.r_max_km!r})")
        checker.check("beta_su", lambda value: 0 < value < 1, "must lie in (0, 1)")

    @property
    def sigma_ln(self):
        """
        Standard deviation of the fading in natural-log units

        Returns:
            float
        """
        return self.sigma_db * math.log(10.0) / 10.0


@dataclass(frozen=True)
class AirborneScenario(_ScenarioBase):
    """
    Secondary access protecting an airborne DME interrogator. The
    secondary users rely on a location database updated every ``t_u_s``
    seconds; the propagation is free space without fading.

    Args:
        p_pu_dbm: interrogator transmission power (dBm/MHz)
        p_su_dbm, g_su_dbi, g_dme_dbi, penetration_db: see
            :class:`TransponderScenario`
        c_pathloss: free-space constant (distances in km)
        alpha: path-loss exponent (2 in free space)
        h_km: height of the interrogator (km)
        t_u_s: database update delay (s)
        v_kmh: aircraft speed (km/h)
        lambda_su, r_max_km, a_thr_dbm, beta_pu, acr_db, margin_db: see
            :class:`TransponderScenario`
    """
    KIND = "airborne"

    p_pu_dbm: float = 55.0
    p_su_dbm: float = 1.0
    g_su_dbi: float = 0.0
    g_dme_dbi: float = 5.4
    penetration_db: float = 10.0
    c_pathloss: float = 5.7e-10
    alpha: float = 2.0
    h_km: float = 1.0
    t_u_s: float = 0.0
    v_kmh: float = 900.0
    lambda_su: float = 20.0
    r_max_km: float = 200.0
    a_thr_dbm: float = A_THR_INTERROGATOR_DBM
    beta_pu: float = BETA_PU
    acr_db: float = 0.0
    margin_db: float = CO_CHANNEL_MARGIN_DB

    def _check(self, checker):
        super()._check(checker)
        checker.check("h_km", lambda value: value > 0, "must be > 0")
        checker.check("t_u_s", lambda value: value >= 0, "must be >= 0")
        checker.check("v_kmh", lambda value: value >= 0, "must be >= 0")


def effective_tx_power(scenario):
    """
    Effective transmission power of a secondary user, including both
    antenna gains and the building penetration loss

    Args:
        scenario (TransponderScenario or AirborneScenario): scenario

    Returns:
        float: power in mW
    """
    return float(dbm_to_mw(scenario.p_su_dbm + scenario.g_su_dbi + scenario.g_dme_dbi
                           - scenario.penetration_db))


def effective_protection_threshold(scenario):
    """
    Interference level that the aggregate interference may exceed only with
    probability ``beta_pu``. The adjacent channel rejection relaxes the
    DME threshold, the spectral aggregation margin tightens it

    Args:
        scenario (TransponderScenario or AirborneScenario): scenario

    Returns:
        float: threshold in mW
    """
    return float(dbm_to_mw(scenario.a_thr_dbm + scenario.acr_db - scenario.margin_db))
