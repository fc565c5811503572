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

Parser of scenario and experiment files.

.. code-block:: text

    # exclusion radius vs ACR
    kind = airborne
    lambda_su_per_km2 = 20

    [experiment]
    name = fig6-exclusion
    delays_s = 0, 60, 300

    [sweep]
    axis = acr_db
    values = 30, 40, 50, 60, 70

    [acr_mask]
    0 = 0
    2 = 65

Top-level keys are scenario fields, suffixed with their unit. Every
omitted field keeps its default value. The whole file is checked before
reporting: :class:`ScenarioFileError` lists every violation found.
"""

import logging
import math
from collections import namedtuple
from dataclasses import dataclass, fields, replace
import ply.yacc as yacc

from dss.dme.propagation import AcrMask, DomainError
from dss.dme.scenario import (
    TransponderScenario, AirborneScenario, ScenarioError,
    CO_CHANNEL_MARGIN_DB, ADJACENT_CHANNEL_MARGIN_DB
)
from .scenario_lexer import ScenarioLexer

_LOGGER = logging.getLogger("dss.dme.cli.scenario_parser")

SCENARIO_KINDS = {TransponderScenario.KIND: TransponderScenario,
                  AirborneScenario.KIND: AirborneScenario}

# Experiment name -> (victim kind or None for both, default sweep axis)
EXPERIMENTS = {
    "fig3-cdf": ("transponder", "lambda_su"),
    "fig4-ithr": ("transponder", "lambda_su"),
    "fig5-frontier": ("transponder", "p_su_dbm"),
    "fig6-exclusion": ("airborne", "acr_db"),
    "fig7-power": ("airborne", "lambda_su"),
    "custom": (None, "lambda_su"),
}

# File keys whose name differs from the scenario field
FILE_KEYS = {"lambda_su_per_km2": "lambda_su"}
CHANNEL_OFFSET_KEY = "channel_offset_mhz"

DEFAULT_I_THR_DBM = -150.0
DEFAULT_DELAYS_S = (0.0, 60.0, 300.0)
DEFAULT_LEVELS = (0.01, 0.1, 0.5, 0.9, 0.99)
OUTPUT_FORMATS = ("csv", "json")

Entry = namedtuple("Entry", ["section", "key", "values", "lineno"])
FileViolation = namedtuple("FileViolation", ["line", "field", "message"])


class ParsingError(Exception):
    """
    Standard exception for parsing errors.
    """

    def __init__(self, token):
        super(ParsingError, self).__init__()
        self.token = token

    @property
    def lineno(self):
        return self.token.lineno if self.token is not None else 0

    def __str__(self):
        if self.token is None:
            return "Unexpected end of file"
        base = "Line {} : Parsing error around '{}'"
        return base.format(self.token.lineno, self.token.value)


class ScenarioFileError(ValueError):
    """
    Exception raised when a scenario file cannot be turned into an
    experiment. Carries every violation found

    Args:
        path (str): file name
        violations (list[FileViolation]): problems, with their line
            (0 when the problem is not tied to a line)
    """

    def __init__(self, path, violations):
        super(ScenarioFileError, self).__init__(path, violations)
        self.path = path
        self.violations = sorted(violations, key=lambda item: item.line)

    def __str__(self):
        return "{}: {} problem(s) found".format(self.path, len(self.violations))

    def as_dict(self):
        """
        Machine readable report
        """
        return {"error": str(self),
                "violations": [item._asdict() for item in self.violations]}


@dataclass(frozen=True)
class ExperimentSpec:
    """
    Fully resolved experiment: victim scenario, sweep and run settings

    Args:
        kind: experiment name (see :data:`EXPERIMENTS`)
        scenario: base scenario
        sweep_axis: swept scenario field (or ``channel_offset_mhz``)
        sweep_values: swept values, in output order
        trials: number of Monte Carlo trials (None: no simulation)
        seed: Monte Carlo seed
        output_path: destination of the table (None: standard output)
        output_format: "csv" or "json"
        i_thr_dbm: individual threshold of the fig3-cdf and custom
            transponder experiments
        r_o_km: exclusion radius of the custom airborne experiment
        prob_floor, r_ref_km: transmission probability floor of fig5-frontier
        delays_s: update delays reported by fig6-exclusion
        levels: probability levels reported by fig3-cdf
        margin_explicit: whether the file sets ``margin_db``. If not, the
            margin follows the channel use: 3 dB co-channel, 10 dB adjacent
        acr_mask: rejection mask used for channel offsets
    """
    kind: str
    scenario: object
    sweep_axis: str
    sweep_values: tuple = ()
    trials: int = None
    seed: int = 0
    output_path: str = None
    output_format: str = "csv"
    i_thr_dbm: float = DEFAULT_I_THR_DBM
    r_o_km: float = 0.0
    prob_floor: float = 0.9
    r_ref_km: float = 5.0
    delays_s: tuple = DEFAULT_DELAYS_S
    levels: tuple = DEFAULT_LEVELS
    margin_explicit: bool = False
    acr_mask: AcrMask = None

    def scenario_at(self, value):
        """
        Scenario of one sweep point

        Args:
            value (float): value of the sweep axis

        Returns:
            TransponderScenario or AirborneScenario
        """
        if self.sweep_axis == CHANNEL_OFFSET_KEY:
            changes = {"acr_db": (self.acr_mask or AcrMask())(value)}
        else:
            changes = {self.sweep_axis: value}

        if not self.margin_explicit and "acr_db" in changes:
            changes["margin_db"] = default_margin(changes["acr_db"])
        return replace(self.scenario, **changes)


def default_margin(acr_db):
    """
    Spectral aggregation margin of a channel use

    Returns:
        float: 3 dB for co-channel use (no rejection), 10 dB otherwise
    """
    return ADJACENT_CHANNEL_MARGIN_DB if acr_db > 0 else CO_CHANNEL_MARGIN_DB


def file_key(field_name):
    """
    Name of a scenario field in scenario files
    """
    for key, name in FILE_KEYS.items():
        if name == field_name:
            return key
    return field_name


class ScenarioParser(object):
    """
    Scenario file parser (PLY LALR grammar)

    .. code-block:: text

        document : <empty>
                 | document line
        line     : NEWLINE
                 | SECTION NEWLINE
                 | key '=' values NEWLINE
                 | error NEWLINE
        key      : WORD | NUMBER
        values   : value | values ',' value
        value    : NUMBER | WORD | STRING

    :meth:`parse` returns the list of :class:`Entry`; syntax errors are
    collected in :attr:`errors` and the parser resumes at the next line.
    :meth:`compile` turns a text into an :class:`ExperimentSpec`.
    """

    def __init__(self):
        self.start = "document"
        self.lexer = ScenarioLexer()
        self.lexer.build()
        self.tokens = self.lexer.tokens
        self.section = None
        self.entries = []
        self.errors = []
        self.parser = None

    # ---- Begin the PLY parser ----

    def p_document(self, t):
        """
        document :
                 | document line
        """

    def p_line_blank(self, t):
        """
        line : NEWLINE
        """

    def p_line_section(self, t):
        """
        line : SECTION NEWLINE
        """
        self.section = t[1]
        self.entries.append(Entry(t[1], None, [], t.lineno(1)))

    def p_line_entry(self, t):
        """
        line : key '=' values NEWLINE
        """
        key, lineno = t[1]
        self.entries.append(Entry(self.section, key, t[3], lineno))

    def p_line_error(self, t):
        """
        line : error NEWLINE
        """

    def p_key(self, t):
        """
        key : WORD
            | NUMBER
        """
        t[0] = (t[1], t.lineno(1))

    def p_values_0(self, t):
        """
        values : value
        """
        t[0] = [t[1]]

    def p_values_1(self, t):
        """
        values : values ',' value
        """
        t[0] = t[1]
        t[0].append(t[3])

    def p_value(self, t):
        """
        value : NUMBER
              | WORD
              | STRING
        """
        t[0] = t[1]

    def p_error(self, t):
        self.errors.append(ParsingError(t))

    ##########################
    #      Parser build      #
    ##########################
    def build(self, write_tables=False, debug=False, **kwargs):
        """Takes care of building a parser

        Args:
            debug: whether to activate debug output or not
            write_tables: generate parser table file or not
        """
        self.parser = yacc.yacc(
            module=self,
            write_tables=write_tables,
            debug=debug,
            errorlog=yacc.NullLogger(),
            **kwargs
        )

    def parse(self, text, debug=False):
        """Parses the text of a scenario file

        Args:
            text: file content
            debug: whether to activate debug output or not

        Returns:
            list[Entry]: entries, in file order (section headers included
            with a ``None`` key)
        """
        if self.parser is None:
            self.build()

        self.section = None
        self.entries = []
        self.errors = []
        self.lexer.build()
        # The last line may lack its newline
        self.parser.parse(text + "\n", lexer=self.lexer.lexer, debug=debug)
        return self.entries

    def compile(self, text, path="<string>"):
        """Compiles the text of a scenario file into an experiment

        Args:
            text: file content
            path: file name used in error reports

        Returns:
            :class:`ExperimentSpec`
        """
        entries = self.parse(text)
        violations = [FileViolation(lineno, "", f"unexpected character {char!r}")
                      for lineno, char in self.lexer.errors]
        violations += [FileViolation(error.lineno, "", str(error)) for error in self.errors]

        spec = _SpecBuilder(entries, violations).build()
        if violations:
            raise ScenarioFileError(path, violations)

        _LOGGER.debug("Compiled %s: %s experiment on a %s scenario", path, spec.kind,
                      spec.scenario.kind)
        return spec


class _SpecBuilder:
    """
    Checks the entries of a file and assembles the experiment. Problems are
    appended to the shared ``violations`` list
    """

    SECTIONS = (None, "experiment", "sweep", "mc", "output", "acr_mask")

    def __init__(self, entries, violations):
        self.entries = entries
        self.violations = violations
        self.lines = {}

    def report(self, lineno, name, message):
        self.violations.append(FileViolation(lineno, name, message))

    def _grouped(self):
        groups = {section: {} for section in self.SECTIONS}

        for entry in self.entries:
            if entry.section not in groups:
                if entry.key is None:
                    self.report(entry.lineno, entry.section, "unknown section")
                continue
            if entry.key is None:
                continue

            group = groups[entry.section]
            if entry.key in group:
                self.report(entry.lineno, str(entry.key), "duplicate key")
                continue
            group[entry.key] = entry

        return groups

    def _number(self, entry, integer=False):
        if len(entry.values) != 1 or not isinstance(entry.values[0], float):
            self.report(entry.lineno, str(entry.key), "a single number is expected")
            return None
        value = entry.values[0]
        if integer and (not math.isfinite(value) or value != int(value)):
            self.report(entry.lineno, str(entry.key), "an integer is expected")
            return None
        return int(value) if integer else value

    def _numbers(self, entry):
        if not all(isinstance(value, float) for value in entry.values):
            self.report(entry.lineno, str(entry.key), "a list of numbers is expected")
            return None
        return tuple(entry.values)

    def _text(self, entry, choices=None):
        if len(entry.values) != 1 or isinstance(entry.values[0], float):
            self.report(entry.lineno, str(entry.key), "a single word is expected")
            return None
        value = entry.values[0]
        if choices is not None and value not in choices:
            self.report(entry.lineno, str(entry.key),
                        f"{value!r} is not one of {', '.join(sorted(choices))}")
            return None
        return value

    def _acr_mask(self, group):
        if not group:
            return None
        table = {}
        for key, entry in group.items():
            if not isinstance(key, float):
                self.report(entry.lineno, str(key), "ACR mask rows are '<offset MHz> = <dB>'")
                continue
            value = self._number(entry)
            if value is not None:
                table[key] = value
        try:
            return AcrMask(table)
        except DomainError as error:
            self.report(min(entry.lineno for entry in group.values()), "acr_mask", str(error))
            return None

    def _scenario(self, group, kind, acr_mask):
        cls = SCENARIO_KINDS[kind]
        names = {file_key(item.name): item.name for item in fields(cls)}
        values = {}

        for key, entry in group.items():
            if key in ("kind", CHANNEL_OFFSET_KEY):
                continue
            if key not in names:
                self.report(entry.lineno, str(key), f"unknown key for a {kind} scenario")
                continue
            value = self._number(entry)
            if value is not None:
                values[names[key]] = value
                self.lines[names[key]] = entry.lineno

        if CHANNEL_OFFSET_KEY in group:
            entry = group[CHANNEL_OFFSET_KEY]
            offset = self._number(entry)
            if "acr_db" in values:
                self.report(entry.lineno, CHANNEL_OFFSET_KEY, "conflicts with acr_db")
            elif offset is not None:
                try:
                    values["acr_db"] = (acr_mask or AcrMask())(offset)
                    self.lines["acr_db"] = entry.lineno
                except DomainError as error:
                    self.report(entry.lineno, CHANNEL_OFFSET_KEY, str(error))

        margin_explicit = "margin_db" in values
        if not margin_explicit and "acr_db" in values:
            values["margin_db"] = default_margin(values["acr_db"])

        try:
            return cls(**values), margin_explicit
        except ScenarioError as error:
            for item in error.violations:
                self.report(self.lines.get(item.field, 0), file_key(item.field), item.message)
            return None, margin_explicit

    def build(self):
        groups = self._grouped()
        top, experiment = groups[None], groups["experiment"]

        kind = TransponderScenario.KIND
        if "kind" in top:
            kind = self._text(top["kind"], SCENARIO_KINDS) or kind

        acr_mask = self._acr_mask(groups["acr_mask"])
        scenario, margin_explicit = self._scenario(top, kind, acr_mask)

        settings = {"margin_explicit": margin_explicit, "acr_mask": acr_mask}

        name = "custom"
        if "name" in experiment:
            name = self._text(experiment["name"], EXPERIMENTS) or name
        victim, default_axis = EXPERIMENTS[name]
        if victim is not None and victim != kind:
            line = experiment["name"].lineno if "name" in experiment else 0
            self.report(line, "name", f"{name} requires a {victim} scenario")

        self._experiment_settings(experiment, settings)
        self._run_settings(groups["mc"], groups["output"], settings)
        axis, values = self._sweep(groups["sweep"], kind, default_axis, scenario)

        spec = ExperimentSpec(name, scenario or SCENARIO_KINDS[kind](), axis, values, **settings)
        # Sweep points are only meaningful on top of a valid scenario
        if scenario is None:
            return spec

        for value in values:
            try:
                swept = spec.scenario_at(value)
            except (ScenarioError, DomainError) as error:
                line = groups["sweep"]["values"].lineno if "values" in groups["sweep"] else 0
                self.report(line, "values", f"{value!r}: {error}")
                continue
            if swept.kind == AirborneScenario.KIND and spec.r_o_km > swept.r_max_km:
                line = experiment["r_o_km"].lineno if "r_o_km" in experiment else 0
                self.report(line, "r_o_km", f"must not exceed r_max_km ({swept.r_max_km!r})")
                break
        return spec

    def _experiment_settings(self, group, settings):
        numbers = {"i_thr_dbm": "i_thr_dbm", "r_o_km": "r_o_km",
                   "prob_floor": "prob_floor", "r_ref_km": "r_ref_km"}
        lists = {"delays_s": "delays_s", "levels": "levels"}

        for key, entry in group.items():
            if key == "name":
                continue
            if key in numbers:
                value = self._number(entry)
            elif key in lists:
                value = self._numbers(entry)
            else:
                self.report(entry.lineno, str(key), "unknown experiment setting")
                continue
            if value is None:
                continue
            settings[key] = value

        if not 0 <= settings.get("prob_floor", 0.9) < 1:
            self.report(group["prob_floor"].lineno, "prob_floor", "must lie in [0, 1)")
        if any(not 0 < level < 1 for level in settings.get("levels", ())):
            self.report(group["levels"].lineno, "levels", "levels must lie in (0, 1)")
        if any(not delay >= 0 for delay in settings.get("delays_s", ())):
            self.report(group["delays_s"].lineno, "delays_s", "delays must be >= 0")
        if not settings.get("r_o_km", 0.0) >= 0:
            self.report(group["r_o_km"].lineno, "r_o_km", "must be >= 0")

    def _run_settings(self, mc_group, output_group, settings):
        for key, entry in mc_group.items():
            if key not in ("trials", "seed"):
                self.report(entry.lineno, str(key), "unknown [mc] setting")
                continue
            value = self._number(entry, integer=True)
            if value is None:
                continue
            if key == "trials" and value < 1:
                self.report(entry.lineno, "trials", "at least one trial is required")
            elif key == "seed" and value < 0:
                self.report(entry.lineno, "seed", "must be >= 0")
            else:
                settings[key] = value

        for key, entry in output_group.items():
            if key == "path":
                value = self._text(entry)
                if value is not None:
                    settings["output_path"] = value
            elif key == "format":
                value = self._text(entry, OUTPUT_FORMATS)
                if value is not None:
                    settings["output_format"] = value
            else:
                self.report(entry.lineno, str(key), "unknown [output] setting")

    def _sweep(self, group, kind, default_axis, scenario):
        axes = {file_key(item.name): item.name for item in fields(SCENARIO_KINDS[kind])}
        axes[CHANNEL_OFFSET_KEY] = CHANNEL_OFFSET_KEY

        for key, entry in group.items():
            if key not in ("axis", "values"):
                self.report(entry.lineno, str(key), "unknown [sweep] setting")

        if not group:
            if scenario is None:
                return default_axis, ()
            return default_axis, (float(getattr(scenario, default_axis)),)

        axis = default_axis
        if "axis" in group:
            name = self._text(group["axis"])
            if name is not None and name not in axes:
                self.report(group["axis"].lineno, "axis", f"{name!r} is not a scenario field")
            elif name is not None:
                axis = axes[name]

        values = ()
        if "values" in group:
            values = self._numbers(group["values"]) or ()
        return axis, values


def validate_scenario_file(path):
    """
    Reads a scenario file and returns its validated scenario

    Args:
        path (str): file name

    Returns:
        TransponderScenario or AirborneScenario
    """
    return load_experiment(path).scenario


def load_experiment(path):
    """
    Reads and compiles a scenario/experiment file

    Args:
        path (str): file name

    Returns:
        :class:`ExperimentSpec`
    """
    with open(path, "r", encoding="utf-8") as stream:
        text = stream.read()
    return ScenarioParser().compile(text, path)
