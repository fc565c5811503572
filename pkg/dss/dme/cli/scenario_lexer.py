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

import ply.lex as lex


class ScenarioLexer(object):
    """Scenario file lexer.

    Scenario files are made of ``key = value`` lines grouped in
    ``[section]`` blocks. Lines are significant, ``#`` starts a comment.
    Characters matching no rule are recorded in :attr:`errors` as
    ``(lineno, character)`` pairs and skipped.
    """
    # pylint: disable=invalid-name,missing-docstring,unused-argument
    # pylint: disable=attribute-defined-outside-init

    def __init__(self):
        self.tokens = ScenarioLexer.tokens
        self.errors = []

    # ---- Beginning of the PLY lexer ----
    literals = "=,"
    tokens = [
        "SECTION",
        "NUMBER",
        "WORD",
        "STRING",
        "NEWLINE",
    ]

    def t_SECTION(self, t):
        r"\[[ \t]*[A-Za-z_][A-Za-z0-9_]*[ \t]*\]"
        t.value = t.value[1:-1].strip()
        return t

    def t_NUMBER(self, t):
        r"[+-]?(([0-9]+\.?[0-9]*)|(\.[0-9]+))([eE][+-]?[0-9]+)?"
        t.value = float(t.value)
        return t

    def t_WORD(self, t):
        r"[A-Za-z_][A-Za-z0-9_.\-]*"
        return t

    def t_STRING(self, t):
        r"\"([^\\\"\n]|\\.)*\""
        t.value = t.value[1:-1].replace('\\"', '"')
        return t

    def t_COMMENT(self, t):
        r"\#[^\n]*"
        pass

    def t_NEWLINE(self, t):
        r"\n+"
        t.lexer.lineno += len(t.value)
        return t

    t_ignore = " \t\r"

    def t_error(self, t):
        self.errors.append((t.lexer.lineno, t.value[0]))
        t.lexer.skip(1)

    def build(self, **kwargs):
        """ Builds the lexer """
        self.errors = []
        self.lexer = lex.lex(module=self, **kwargs)

    def tokenize(self, text):
        """
        Lists the tokens of a text (debugging helper)

        Returns:
            list[tuple[str, object, int]]: (type, value, lineno) triples
        """
        self.lexer.input(text)
        return [(token.type, token.value, token.lineno) for token in iter(self.lexer.token, None)]
