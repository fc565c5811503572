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
import numpy as np

from .simulator import McSample

_LOGGER = logging.getLogger("dss.dme.montecarlo.export")

SAMPLE_FORMATS = ("csv", "npz")


def _header(sample):
    return "\n".join([f"seed={sample.seed}",
                      f"trials={sample.trials}",
                      f"scenario_digest={sample.scenario_digest}",
                      f"victim={sample.victim}",
                      f"parameter={sample.parameter:.8e}"])


def write_sample(sample, path, fmt="csv"):
    """
    Exports raw Monte Carlo realisations

    ``csv`` writes the metadata as ``# key=value`` comment lines followed
    by one ``%.8e`` value (mW) per line; ``npz`` stores the values and the
    metadata as arrays of a numpy archive

    Args:
        sample (McSample): realisations
        path (str or file): destination
        fmt (str): "csv" or "npz"
    """
    if fmt not in SAMPLE_FORMATS:
        raise ValueError(f"Unknown sample format {fmt!r}, expected one of {SAMPLE_FORMATS}")

    _LOGGER.debug("Writing %d realisations to %s (%s)", sample.trials, path, fmt)

    if fmt == "csv":
        np.savetxt(path, sample.values, fmt="%.8e", newline="\n",
                   header=_header(sample) + "\ninterference_mw", comments="# ")
        return

    np.savez(path, values=sample.values, seed=np.uint64(sample.seed),
             scenario_digest=np.array(sample.scenario_digest),
             victim=np.array(sample.victim), parameter=np.float64(sample.parameter))


def read_sample(path, fmt="csv"):
    """
    Reads realisations exported by :func:`write_sample`

    Returns:
        :class:`McSample`
    """
    if fmt == "npz":
        with np.load(path) as archive:
            return McSample(archive["values"], int(archive["seed"]),
                            str(archive["scenario_digest"]), str(archive["victim"]),
                            float(archive["parameter"]))

    if fmt != "csv":
        raise ValueError(f"Unknown sample format {fmt!r}, expected one of {SAMPLE_FORMATS}")

    metadata = {}
    with open(path, "r", encoding="utf-8") as stream:
        for line in stream:
            if not line.startswith("#"):
                break
            key, _, value = line[1:].strip().partition("=")
            metadata[key] = value

    values = np.atleast_1d(np.loadtxt(path, comments="#", dtype=float))
    return McSample(values, int(metadata["seed"]), metadata["scenario_digest"],
                    metadata["victim"], float(metadata["parameter"]))
