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


import os
import unittest
import pytest

from dss.dme.cli import (
    ScenarioLexer, ScenarioParser, ScenarioFileError, ExperimentSpec, validate_scenario_file,
    load_experiment
)
from dss.dme.scenario import TransponderScenario, AirborneScenario

EXAMPLES = os.path.join(os.path.dirname(__file__), "examples")


def _compile(text):
    parser = ScenarioParser()
    parser.build()
    return parser.compile(text)


def _violations(text):
    with pytest.raises(ScenarioFileError) as error:
        _compile(text)
    return [(item.line, item.field) for item in error.value.violations]


def test_tokens():
    """
    Sections, numbers, words, strings and line ends
    """
    lexer = ScenarioLexer()
    lexer.build()
    tokens = lexer.tokenize('[sweep]\nvalues = -1.5e3, 2 # comment\npath = "a b.csv"\n')

    assert [token[0] for token in tokens] == [
        "SECTION", "NEWLINE", "WORD", "=", "NUMBER", ",", "NUMBER", "NEWLINE",
        "WORD", "=", "STRING", "NEWLINE"]
    assert tokens[0][1] == "sweep"
    assert tokens[4][1] == -1500.0
    assert tokens[10][1] == "a b.csv"
    assert tokens[-1][2] == 3
    assert not lexer.errors


def test_entries():
    parser = ScenarioParser()
    entries = parser.parse("kind = airborne\n\n[sweep]\nvalues = 1, 2, 3")

    assert [(entry.section, entry.key, entry.values, entry.lineno) for entry in entries] == [
        (None, "kind", ["airborne"], 1),
        ("sweep", None, [], 3),
        ("sweep", "values", [1.0, 2.0, 3.0], 4)]
    assert not parser.errors


class TestCompile(unittest.TestCase):
    """ From file text to experiments """

    def test_defaults(self):
        """ An empty file is a custom experiment on the default transponder """
        spec = _compile("")
        self.assertIsInstance(spec, ExperimentSpec)
        self.assertEqual(spec.kind, "custom")
        self.assertEqual(spec.scenario, TransponderScenario())
        self.assertEqual(spec.sweep_axis, "lambda_su")
        self.assertEqual(spec.sweep_values, (20.0,))
        self.assertIsNone(spec.trials)
        self.assertEqual(spec.output_format, "csv")

    def test_example_file(self):
        spec = load_experiment(os.path.join(EXAMPLES, "exclusion.dme"))
        self.assertEqual(spec.kind, "fig6-exclusion")
        self.assertIsInstance(spec.scenario, AirborneScenario)
        self.assertEqual(spec.scenario.lambda_su, 20.0)
        self.assertEqual(spec.sweep_axis, "acr_db")
        self.assertEqual(spec.sweep_values, (40.0, 50.0, 60.0))
        self.assertEqual(spec.delays_s, (0.0, 60.0, 300.0))

        self.assertEqual(validate_scenario_file(os.path.join(EXAMPLES, "exclusion.dme")),
                         spec.scenario)

    def test_margin_follows_channel_use(self):
        """ 3 dB co-channel, 10 dB adjacent, unless margin_db is given """
        spec = _compile("acr_db = 60\n[sweep]\naxis = acr_db\nvalues = 0, 60")
        self.assertEqual(spec.scenario.margin_db, 10.0)
        self.assertEqual(spec.scenario_at(0.0).margin_db, 3.0)
        self.assertEqual(spec.scenario_at(60.0).margin_db, 10.0)

        explicit = _compile("acr_db = 60\nmargin_db = 5\n[sweep]\naxis = acr_db\nvalues = 0")
        self.assertEqual(explicit.scenario_at(0.0).margin_db, 5.0)

    def test_channel_offset(self):
        """ Channel offsets are turned into rejections through the mask """
        spec = _compile("channel_offset_mhz = 2")
        self.assertEqual(spec.scenario.acr_db, 60.0)
        self.assertEqual(spec.scenario.margin_db, 10.0)

        masked = _compile("[acr_mask]\n0 = 0\n2 = 65\n5 = 70\n"
                          "[sweep]\naxis = channel_offset_mhz\nvalues = 0, 3, 6")
        self.assertEqual(masked.sweep_axis, "channel_offset_mhz")
        self.assertEqual([masked.scenario_at(value).acr_db for value in masked.sweep_values],
                         [0.0, 65.0, 70.0])

    def test_file_keys(self):
        """ The density is written with its unit """
        spec = _compile("lambda_su_per_km2 = 1000\n[experiment]\nname = fig4-ithr")
        self.assertEqual(spec.scenario.lambda_su, 1000.0)
        self.assertEqual(spec.sweep_values, (1000.0,))

        self.assertIn((1, "lambda_su"), _violations("lambda_su = 3"))

    def test_settings(self):
        spec = _compile("kind = airborne\n[experiment]\nname = custom\nr_o_km = 12\n"
                        "[mc]\ntrials = 500\nseed = 7\n"
                        "[output]\nformat = json\npath = \"out/table.json\"")
        self.assertEqual(spec.r_o_km, 12.0)
        self.assertEqual((spec.trials, spec.seed), (500, 7))
        self.assertIsInstance(spec.trials, int)
        self.assertEqual(spec.output_format, "json")
        self.assertEqual(spec.output_path, "out/table.json")


class TestViolations(unittest.TestCase):
    """ Every problem of a file is reported, with its line """

    def test_example_file(self):
        with self.assertRaises(ScenarioFileError) as context:
            load_experiment(os.path.join(EXAMPLES, "invalid.dme"))

        error = context.exception
        self.assertEqual([item.line for item in error.violations], [3, 4, 5, 8])
        self.assertEqual([item.field for item in error.violations],
                         ["rho", "unknown_key", "", "trials"])
        self.assertIn("Parsing error", error.violations[2].message)

        report = error.as_dict()
        self.assertIn("4 problem(s)", report["error"])
        self.assertEqual(report["violations"][0]["line"], 3)

    def test_scenario_invariants(self):
        self.assertEqual(_violations("kind = airborne\nh_km = 0\nv_kmh = -1"),
                         [(2, "h_km"), (3, "v_kmh")])
        self.assertEqual(_violations("r_min_km = 50\nr_max_km = 10"), [(1, "r_min_km")])
        self.assertEqual(_violations("rho = 0.5\nalpha = 1.5"), [(2, "alpha")])

    def test_structure(self):
        self.assertEqual(_violations("rho = 0.5\nrho = 0.6"), [(2, "rho")])
        self.assertEqual(_violations("[nowhere]\nx = 1"), [(1, "nowhere")])
        self.assertEqual(_violations("kind = satellite"), [(1, "kind")])
        self.assertEqual(_violations("rho = high"), [(1, "rho")])
        self.assertEqual(_violations("rho = 0.1 $"), [(1, "")])

    def test_experiment_needs_its_victim(self):
        self.assertEqual(_violations("[experiment]\nname = fig6-exclusion"), [(2, "name")])
        self.assertEqual(_violations("kind = airborne\n[experiment]\nname = fig4-ithr"),
                         [(3, "name")])

    def test_conflicting_channel(self):
        self.assertEqual(_violations("acr_db = 10\nchannel_offset_mhz = 2"),
                         [(2, "channel_offset_mhz")])

    def test_sweep(self):
        self.assertEqual(_violations("[sweep]\naxis = colour\nvalues = 1"), [(2, "axis")])
        self.assertEqual(_violations("[sweep]\naxis = rho\nvalues = 0.5, 2"), [(3, "values")])
        self.assertEqual(_violations("[acr_mask]\n2 = 60"), [(2, "acr_mask")])

    def test_experiment_settings(self):
        self.assertEqual(
            _violations("[experiment]\nlevels = 0.5, 1.5\nprob_floor = 1\ncolour = 3"),
            [(2, "levels"), (3, "prob_floor"), (4, "colour")])
        self.assertEqual(_violations("[mc]\ntrials = 2.5\nseed = -1"),
                         [(2, "trials"), (3, "seed")])
        self.assertEqual(_violations("[output]\nformat = xml"), [(2, "format")])

    def test_exclusion_radius_within_field(self):
        self.assertEqual(_violations("kind = airborne\nr_max_km = 50\n[experiment]\nr_o_km = 60"),
                         [(4, "r_o_km")])
        self.assertEqual(
            _violations("kind = airborne\n[experiment]\nr_o_km = 60\n"
                        "[sweep]\naxis = r_max_km\nvalues = 100, 50"),
            [(3, "r_o_km")])
        self.assertEqual(_compile("kind = airborne\nr_max_km = 50\n[experiment]\nr_o_km = 50")
                         .r_o_km, 50.0)


def test_missing_file(tmp_path):
    with pytest.raises(OSError):
        load_experiment(str(tmp_path / "missing.dme"))
