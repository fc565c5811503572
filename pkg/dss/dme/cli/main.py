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

Command line entry point::

    dmeshare run <file> [--output PATH] [--format csv|json] [--seed N] [--trials N] [--threads N]
    dmeshare validate <file>
    dmeshare mc-export <file> [--output PATH] [--format csv|npz] [--seed N] [--trials N]

Invalid input files exit with status 2 and a JSON report on stderr. A
numerical failure exits with status 3 and the same kind of report.
"""

import argparse
import json
import logging
import sys
from dataclasses import asdict, replace

from dss.dme import VERSION
from dss.dme.montecarlo import (
    THREADS_ENV, SAMPLE_FORMATS, simulate_transponder, simulate_airborne, write_sample
)
from dss.dme.analytic import QuadratureError
from dss.dme.propagation import DomainError
from dss.dme.scenario import ScenarioError, dbm_to_mw
from dss.dme.solver import BracketError, NonMonotoneError
from .experiments import run_experiment, write_table
from .scenario_parser import OUTPUT_FORMATS, ScenarioFileError, load_experiment, file_key

_LOGGER = logging.getLogger("dss.dme.cli.main")

EXIT_INVALID_INPUT = 2
EXIT_COMPUTATION_FAILED = 3
DEFAULT_EXPORT_TRIALS = 1000


def _parser():
    parser = argparse.ArgumentParser(
        prog="dmeshare",
        description="Feasibility of secondary spectrum access to the DME band")
    parser.add_argument("--version", action="version", version=f"%(prog)s {VERSION}")
    verbs = parser.add_subparsers(dest="verb", required=True)

    def common(verb, formats):
        verb.add_argument("spec_file", help="scenario / experiment file")
        verb.add_argument("--output", "-o", help="output file (default: standard output)")
        verb.add_argument("--format", choices=formats, help="output format")
        verb.add_argument("--seed", type=int, help="Monte Carlo seed")
        verb.add_argument("--trials", type=int, help="number of Monte Carlo trials")
        verb.add_argument("--threads", type=int,
                          help=f"number of workers, 0 for one per CPU (default: ${THREADS_ENV})")
        verb.add_argument("-v", "--verbose", action="count", default=0,
                          help="log more (repeat for debug output)")

    common(verbs.add_parser("run", help="run the experiment of a file"), OUTPUT_FORMATS)
    common(verbs.add_parser("mc-export", help="export raw Monte Carlo realisations"),
           SAMPLE_FORMATS)

    validate = verbs.add_parser("validate", help="check a file and print its scenario")
    validate.add_argument("spec_file", help="scenario / experiment file")
    validate.add_argument("-v", "--verbose", action="count", default=0)
    return parser


def _configure_logging(verbosity):
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbosity, logging.DEBUG)
    logging.basicConfig(level=level, stream=sys.stderr,
                        format="%(asctime)s %(name)s %(levelname)s: %(message)s")


def _fail(report, status=EXIT_INVALID_INPUT):
    json.dump(report, sys.stderr)
    sys.stderr.write("\n")
    return status


def _overridden(spec, args):
    changes = {}
    if args.seed is not None:
        changes["seed"] = args.seed
    if args.trials is not None:
        changes["trials"] = args.trials
    return replace(spec, **changes)


def _check_run_flags(args):
    if args.trials is not None and args.trials < 1:
        return "--trials must be >= 1"
    if args.seed is not None and args.seed < 0:
        return "--seed must be >= 0"
    if args.threads is not None and args.threads < 0:
        return "--threads must be >= 0"
    return None


def _run(args, spec):
    spec = _overridden(spec, args)
    fmt = args.format or spec.output_format
    path = args.output or spec.output_path

    table = run_experiment(spec, args.threads)

    if path is None or path == "-":
        write_table(table, sys.stdout, fmt)
    else:
        with open(path, "w", encoding="utf-8", newline="") as stream:
            write_table(table, stream, fmt)
        _LOGGER.info("Wrote %d row(s) to %s", len(table.rows), path)
    return 0


def _validate(spec):
    scenario = spec.scenario
    document = {"kind": scenario.kind, "experiment": spec.kind}
    document.update({file_key(name): float(value) for name, value in asdict(scenario).items()})
    json.dump(document, sys.stdout, indent=1)
    sys.stdout.write("\n")
    return 0


def _mc_export(args, spec):
    spec = _overridden(spec, args)
    fmt = args.format or "csv"
    trials = spec.trials or DEFAULT_EXPORT_TRIALS
    path = args.output

    to_stdout = path is None or path == "-"
    if to_stdout and fmt == "npz":
        return _fail({"error": "npz exports need an --output file", "violations": []})

    if spec.scenario.kind == "transponder":
        sample = simulate_transponder(spec.scenario, dbm_to_mw(spec.i_thr_dbm), trials,
                                      spec.seed, args.threads)
    else:
        sample = simulate_airborne(spec.scenario, spec.r_o_km, trials, spec.seed, args.threads)

    if to_stdout:
        write_sample(sample, sys.stdout, "csv")
    else:
        write_sample(sample, path, fmt)
    return 0


def main(argv=None):
    """
    Runs the command line

    Args:
        argv (list[str], optional): arguments (default: ``sys.argv[1:]``)

    Returns:
        int: exit status
    """
    args = _parser().parse_args(argv)
    _configure_logging(args.verbose)

    if args.verb != "validate":
        problem = _check_run_flags(args)
        if problem:
            return _fail({"error": problem, "violations": []})

    try:
        spec = load_experiment(args.spec_file)
    except ScenarioFileError as error:
        return _fail(error.as_dict())
    except OSError as error:
        return _fail({"error": f"{args.spec_file}: {error.strerror}", "violations": []})

    if args.verb == "validate":
        return _validate(spec)

    try:
        if args.verb == "run":
            return _run(args, spec)
        return _mc_export(args, spec)
    except (DomainError, ScenarioError) as error:
        return _fail({"error": str(error), "violations": []})
    except (QuadratureError, BracketError, NonMonotoneError) as error:
        _LOGGER.debug("Computation failed", exc_info=True)
        return _fail({"error": str(error), "violations": []}, EXIT_COMPUTATION_FAILED)
