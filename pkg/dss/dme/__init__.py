#!/usr/bin/env python
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

Secondary access to the 960-1215 MHz DME band.

This package evaluates whether a dense population of indoor secondary
users can share DME channels without harming the ground transponders and
the airborne interrogators. It is organised in sub-packages:

 - :mod:`dss.dme.scenario`: physical units and scenario parameter sets
 - :mod:`dss.dme.propagation`: path loss, correlated fading, ACR mask
 - :mod:`dss.dme.analytic`: cumulants and moment-matched distributions
 - :mod:`dss.dme.montecarlo`: Poisson field simulator
 - :mod:`dss.dme.solver`: thresholds, exclusion radii and frontiers
 - :mod:`dss.dme.cli`: experiment runner
"""

from pkgutil import extend_path
# Try to find other DSS packages in other folders
__path__ = extend_path(__path__, __name__)

VERSION = "0.3.0"
