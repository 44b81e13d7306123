"""
Tests for the command line front end.
"""

import json

import pytest

from tioakit.cli import ERROR, FAILS, HOLDS, error_report, main, read_queries, run_query


def output(capsys):

    return json.loads(capsys.readouterr().out)


class TestCheck:

    def test_holds(self, corpus_path, capsys):

        assert main(['check', '-m', corpus_path, '-q', 'refinement: Machine2 <= Machine']) == HOLDS
        assert output(capsys)['holds'] is True

    def test_fails(self, corpus_path, capsys):

        assert main(['check', '-m', corpus_path, '-q', 'consistency: Inconsistent']) == FAILS

        report = output(capsys)

        assert report['holds'] is False
        assert report['counterexample']

    def test_oracle(self, corpus_path, capsys):

        assert main(['check', '-m', corpus_path, '-q', 'consistency: Inconsistent', '--oracle']) == FAILS
        assert output(capsys)['oracle'] == {'holds': False}

    def test_no_reach_prune(self, corpus_path, capsys):

        assert main(['check', '-m', corpus_path, '-q', 'get: S || T', '--no-reach-prune']) == HOLDS
        assert len(output(capsys)['automaton']['locations']) == 9

    @pytest.mark.parametrize('query,kind', [
        ('consistency: Nobody', 'unknown_automaton'),
        ('consistency Machine', 'query_syntax'),
        ('refinement: Machine <= Researcher', 'refinement_alphabet'),
        ('get: Machine || Machine2', 'not_composable'),
    ])
    def test_errors(self, corpus_path, capsys, query, kind):

        assert main(['check', '-m', corpus_path, '-q', query]) == ERROR
        assert output(capsys)['error']['kind'] == kind

    def test_missing_model(self, tmp_path, capsys):

        assert main(['check', '-m', str(tmp_path / 'missing.json'), '-q', 'consistency: A']) == ERROR
        assert output(capsys)['error']['kind'] == 'io_error'

    def test_bad_model(self, tmp_path, capsys):

        model = tmp_path / 'bad.json'
        model.write_text('{"automata": [{"name": "A"}]}')

        assert main(['check', '-m', str(model), '-q', 'consistency: A']) == ERROR
        assert output(capsys)['error']['kind'] == 'schema_violation'

    def test_dot_output(self, corpus_path, tmp_path, capsys):

        out = tmp_path / 'half.dot'

        assert main(['check', '-m', corpus_path, '-q', 'consistency: HalfAdm1', '--dot', str(out)]) == HOLDS
        assert out.read_text().startswith('digraph "HalfAdm1" {')

        capsys.readouterr()


class TestQueryFiles:

    @pytest.fixture
    def queries(self, tmp_path) -> str:

        path = tmp_path / 'queries.txt'
        path.write_text('# University checks\n\nconsistency: Machine\nconsistency: Inconsistent\n')

        return str(path)

    def test_read_queries(self, queries):

        assert read_queries(queries) == ['consistency: Machine', 'consistency: Inconsistent']

    def test_worst_code_wins(self, corpus_path, queries, capsys):

        assert main(['check', '-m', corpus_path, '-f', queries]) == FAILS
        assert [r['holds'] for r in output(capsys)] == [True, False]

    def test_jobs(self, corpus_path, queries, capsys):

        assert main(['check', '-m', corpus_path, '-f', queries, '--jobs', '2']) == FAILS
        assert [r['holds'] for r in output(capsys)] == [True, False]

    def test_missing_file(self, corpus_path, tmp_path, capsys):

        assert main(['check', '-m', corpus_path, '-f', str(tmp_path / 'none.txt')]) == ERROR
        assert output(capsys)['error']['kind'] == 'io_error'

    @pytest.mark.parametrize('extra', [['--dot', 'out.dot'], ['--jobs', '0']])
    def test_usage_errors(self, corpus_path, queries, extra):

        with pytest.raises(SystemExit) as info:

            main(['check', '-m', corpus_path, '-f', queries] + extra)

        assert info.value.code == 2


class TestOtherCommands:

    def test_dot(self, corpus_path, capsys):

        assert main(['dot', '-m', corpus_path, '-e', 'HalfAdm1']) == HOLDS
        assert capsys.readouterr().out.splitlines()[0] == 'digraph "HalfAdm1" {'

    def test_dot_error(self, corpus_path, capsys):

        assert main(['dot', '-m', corpus_path, '-e', 'Machine && Researcher']) == ERROR
        assert output(capsys)['error']['kind'] == 'alphabet'

    def test_validate(self, corpus_path, capsys):

        assert main(['validate', '-m', corpus_path]) == HOLDS

        automata = {a['name']: a for a in output(capsys)['automata']}

        assert len(automata) == 15
        assert automata['Machine']['input_enabled'] is True
        assert automata['Machine']['input_gaps'] == []


class TestHelpers:

    def test_run_query(self, corpus_path):

        code, report = run_query(corpus_path, 'bisim: Machine == Machine', {})

        assert code == HOLDS
        assert report['query'] == 'bisim: Machine == Machine'

    def test_error_report(self):

        assert error_report(ValueError('boom'))['error']['kind'] == 'internal'
