"""
Tests for the report and automaton formatters.
"""

import json

from tioakit.formatters import DotFormatter, JSONReportFormatter, ModelFormatter, NullFormatter
from tioakit.model import parse_models

HALF_ADM1 = '\n'.join([
    'digraph "HalfAdm1" {',
    '  rankdir=LR;',
    '  "h0" [shape=doublecircle label="h0"];',
    '  "h1" [shape=circle label="h1\\nx<=2"];',
    '  "h0" -> "h1" [label="grant? / x=0"];',
    '  "h1" -> "h0" [label="coin!"];',
    '  "h1" -> "h1" [label="grant?"];',
    '}',
]) + '\n'


class TestDot:

    def test_half_administration(self, models):

        assert DotFormatter().format(models['HalfAdm1']) == HALF_ADM1

    def test_reproducible(self, models):

        form = DotFormatter()

        assert form.format(models['Researcher']) == form.format(models['Researcher'])

    def test_guards_and_quotes(self, models):

        text = DotFormatter().format(models['Machine'])

        assert '  "busy" -> "idle" [label="cof! y>=4"];' in text.splitlines()
        assert '  "idle" -> "busy" [label="coin? / y=0"];' in text.splitlines()

    def test_pruned_spec(self, client):

        text = DotFormatter().format(client.evaluate('prune(PartiallyInconsistent)'))

        assert text.startswith('digraph "prune(PartiallyInconsistent)" {')
        assert '"trap"' not in text


class TestReports:

    def test_null(self):

        report = {'holds': True}

        assert NullFormatter().format(report) is report

    def test_json_is_sorted(self):

        text = JSONReportFormatter().format({'query': 'q', 'holds': False})

        assert text.index('"holds"') < text.index('"query"')
        assert json.loads(text) == {'query': 'q', 'holds': False}

    def test_model_formatter_parses_back(self, models):

        data = ModelFormatter().format(models['Spec'])
        again = parse_models(json.dumps({'automata': [data]}))

        assert again['Spec'] == models['Spec']
