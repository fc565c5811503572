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

Experiment runner. Each experiment maps one sweep point to one row of a
:class:`ResultTable`; the columns of each experiment are fixed:

=================  ==========================================================
experiment         columns (after the sweep axis)
=================  ==========================================================
fig3-cdf           k1_mw, k2_mw, mu, sigma, q<level>_analytic_dbm...,
                   q<level>_mc_dbm...
fig4-ithr          i_thr_dbm, achieved_prob, iterations, status
fig5-frontier      max_lambda_su_per_km2, achieved_prob, iterations, status
fig6-exclusion     r_thr_km, r_o_km_tu<delay>s..., achieved_prob, status
fig7-power         max_p_su_dbm, achieved_prob, iterations, status
custom             mean_mw, std_mw, prob_exceed, mc_mean_mw, mc_tail_prob,
                   mc_tail_low, mc_tail_high
=================  ==========================================================

Monte Carlo columns are NaN when the experiment has no ``[mc]`` trials.
"""

import csv
import json
import logging
import math
from collections import namedtuple
from concurrent.futures import ThreadPoolExecutor

from dss.dme.analytic import (
    transponder_cumulants, airborne_cumulants, fit_lognormal, fit_gaussian, prob_exceed
)
from dss.dme.montecarlo import (
    simulate_transponder, simulate_airborne, empirical_tail, resolve_threads
)
from dss.dme.scenario import dbm_to_mw, mw_to_dbm, effective_protection_threshold
from dss.dme.solver import (
    solve_ithr, max_density_for_power, solve_exclusion_radius, apply_update_delay,
    max_power_no_exclusion
)
from .scenario_parser import file_key

_LOGGER = logging.getLogger("dss.dme.cli.experiments")

NUMBER_FORMAT = "%.8e"

ResultTable = namedtuple("ResultTable", ["experiment", "columns", "rows"])
ResultTable.__doc__ = """
Output of an experiment: one row (list of values) per sweep point, in
sweep order
"""


def _label(value):
    return f"{value:g}"


def _status_row(result):
    return [result.value, result.achieved_prob, result.iterations, result.status.value]


def _fig3_columns(spec):
    return (["k1_mw", "k2_mw", "mu", "sigma"]
            + [f"q{_label(level)}_analytic_dbm" for level in spec.levels]
            + [f"q{_label(level)}_mc_dbm" for level in spec.levels])


def _fig3_row(spec, scenario, threads):
    i_thr = dbm_to_mw(spec.i_thr_dbm)
    cumulants = transponder_cumulants(scenario, i_thr)

    if cumulants.is_empty():
        analytic = [-math.inf] * len(spec.levels)
        row = [cumulants.mean, cumulants.variance, math.nan, math.nan]
    else:
        fitted = fit_lognormal(cumulants)
        analytic = [float(mw_to_dbm(fitted.quantile(level))) for level in spec.levels]
        row = [cumulants.mean, cumulants.variance, fitted.mu, fitted.sigma]

    empirical = [math.nan] * len(spec.levels)
    if spec.trials:
        sample = simulate_transponder(scenario, i_thr, spec.trials, spec.seed, threads)
        empirical = [float(mw_to_dbm(value)) for value in sample.quantile(list(spec.levels))]

    return row + analytic + empirical


def _fig4_row(spec, scenario, threads):
    return _status_row(solve_ithr(scenario))


def _fig5_row(spec, scenario, threads):
    return _status_row(max_density_for_power(scenario, prob_floor=spec.prob_floor,
                                             r_ref_km=spec.r_ref_km))


def _fig6_columns(spec):
    return (["r_thr_km"] + [f"r_o_km_tu{_label(delay)}s" for delay in spec.delays_s]
            + ["achieved_prob", "status"])


def _fig6_row(spec, scenario, threads):
    result = solve_exclusion_radius(scenario)
    radii = [apply_update_delay(result.value, delay, scenario.v_kmh) for delay in spec.delays_s]
    return [result.value] + radii + [result.achieved_prob, result.status.value]


def _fig7_row(spec, scenario, threads):
    return _status_row(max_power_no_exclusion(scenario))


CUSTOM_COLUMNS = ["mean_mw", "std_mw", "prob_exceed", "mc_mean_mw", "mc_tail_prob",
                  "mc_tail_low", "mc_tail_high"]


def _custom_row(spec, scenario, threads):
    threshold = effective_protection_threshold(scenario)

    if scenario.kind == "transponder":
        cumulants = transponder_cumulants(scenario, dbm_to_mw(spec.i_thr_dbm))
        fit = fit_lognormal
    else:
        cumulants = airborne_cumulants(scenario, spec.r_o_km)
        fit = fit_gaussian

    if cumulants.is_empty():
        probability = float(cumulants.mean > threshold)
    else:
        probability = prob_exceed(fit(cumulants), threshold)
    row = [cumulants.mean, math.sqrt(cumulants.variance), probability]

    if not spec.trials:
        return row + [math.nan] * 4

    if scenario.kind == "transponder":
        sample = simulate_transponder(scenario, dbm_to_mw(spec.i_thr_dbm), spec.trials,
                                      spec.seed, threads)
    else:
        sample = simulate_airborne(scenario, spec.r_o_km, spec.trials, spec.seed, threads)
    tail = empirical_tail(sample, threshold)
    return row + [sample.mean, tail.probability, tail.lower, tail.upper]


# Experiment -> (columns after the axis, row function, whether rows simulate)
RUNNERS = {
    "fig3-cdf": (_fig3_columns, _fig3_row, True),
    "fig4-ithr": (lambda spec: ["i_thr_dbm", "achieved_prob", "iterations", "status"],
                  _fig4_row, False),
    "fig5-frontier": (lambda spec: ["max_lambda_su_per_km2", "achieved_prob", "iterations",
                                    "status"], _fig5_row, False),
    "fig6-exclusion": (_fig6_columns, _fig6_row, False),
    "fig7-power": (lambda spec: ["max_p_su_dbm", "achieved_prob", "iterations", "status"],
                   _fig7_row, False),
    "custom": (lambda spec: list(CUSTOM_COLUMNS), _custom_row, True),
}


def run_experiment(spec, threads=None):
    """
    Runs an experiment over its sweep

    Analytic rows are computed in parallel; rows running a Monte Carlo
    simulation are computed one after the other, the simulation using the
    workers itself. Rows are returned in sweep order in both cases.

    Args:
        spec (ExperimentSpec): experiment
        threads (int, optional): number of workers (see
            :func:`dss.dme.montecarlo.resolve_threads`)

    Returns:
        :class:`ResultTable`
    """
    columns_of, row_of, simulates = RUNNERS[spec.kind]
    columns = [file_key(spec.sweep_axis)] + columns_of(spec)
    threads = resolve_threads(threads)

    _LOGGER.info("Running %s over %d %s value(s)", spec.kind, len(spec.sweep_values),
                 spec.sweep_axis)

    def row(value):
        return [value] + row_of(spec, spec.scenario_at(value), threads)

    if simulates and spec.trials or threads == 1:
        rows = [row(value) for value in spec.sweep_values]
    else:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            rows = list(executor.map(row, spec.sweep_values))

    _LOGGER.info("%s done", spec.kind)
    return ResultTable(spec.kind, columns, rows)


def _format(value):
    if isinstance(value, str):
        return value
    if isinstance(value, int):
        return str(value)
    return NUMBER_FORMAT % value


def write_table(table, stream, fmt="csv"):
    """
    Writes a result table: CSV with a header row, numbers in ``%.8e`` and
    LF line endings, or JSON ``{"experiment", "columns", "rows"}`` where
    non-finite numbers are written as null

    Args:
        table (ResultTable): table
        stream (file): text stream
        fmt (str): "csv" or "json"
    """
    if fmt == "csv":
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(table.columns)
        writer.writerows([_format(value) for value in row] for row in table.rows)
        return

    if fmt != "json":
        raise ValueError(f"Unknown table format {fmt!r}")

    def clean(value):
        if isinstance(value, float) and not math.isfinite(value):
            return None
        return value

    document = {"experiment": table.experiment, "columns": table.columns,
                "rows": [[clean(value) for value in row] for row in table.rows]}
    json.dump(document, stream, indent=1)
    stream.write("\n")
