"""
Tests for the handler framework, the client and its reports.
"""

import json

import pytest

from tioakit.classes.base import Verdict
from tioakit.classes.options import CheckOptions
from tioakit.errors import HandlerNotImplemented, HandlerRaise, OracleDisagreement, UnknownAutomaton
from tioakit.formatters import JSONReportFormatter
from tioakit.handlers.base import NullHandler, RaiseHandler
from tioakit.handlers.queries import Consistency, OracleRefinement, Refinement
from tioakit.wrapper import TioaClient


class LyingConsistency(Consistency):
    """
    Claims every expression is consistent.
    """

    def pre_process(self, data):

        return Verdict(True)


class TestCollection:
    """
    Registration, priority and callbacks.
    """

    def test_defaults(self, client):

        assert isinstance(client.get_handler(client.REFINEMENT), Refinement)
        assert isinstance(client.get_handler(client.CONSISTENCY), Consistency)

    def test_without_defaults(self, models):

        bare = TioaClient(load_default=False)
        bare.models.update(models)

        assert all(isinstance(bare.get_handler(num), NullHandler) for num in bare.KIND_IDS.values())
        assert bare.consistency('Machine') is None

        with pytest.raises(HandlerNotImplemented):

            bare.check('consistency: Machine')

    def test_load_priority(self):

        bare = TioaClient(load_default=False)
        oracle = OracleRefinement()
        bare.load_handlers(({0: oracle}, (Refinement(), Consistency())))

        assert isinstance(bare.get_handler(0), OracleRefinement)
        assert bare.get_handler(0) is not oracle
        assert isinstance(bare.get_handler(1), Consistency)
        assert bare.get_handler(1).hand_collection is bare

    def test_load_rejects_non_iterables(self):

        with pytest.raises(ValueError):

            TioaClient(load_default=False).load_handlers(5)

    def test_add_and_remove(self, client):

        with pytest.raises(TypeError):

            client.add_handler(object())

        client.remove_handler(client.CONSISTENCY)

        assert isinstance(client.get_handler(client.CONSISTENCY), NullHandler)

    def test_raise_handler(self, client):

        client.add_handler(RaiseHandler(id=client.CONSISTENCY))

        with pytest.raises(HandlerRaise):

            client.consistency('Machine')

    def test_reset(self, client):

        client.reset()

        assert client.consistency('Machine') is None
        assert 'Machine' in client.models

    def test_callbacks(self, client):

        seen = []

        client.bind_callback(lambda report, out: out.append(report['holds']), client.CONSISTENCY, seen)
        client.consistency('Machine')
        client.consistency('Inconsistent')

        assert seen == [True, False]
        assert client.clear_callback(client.CONSISTENCY) == 1
        assert client.clear_callback(client.BISIM) == 0

    def test_formatter(self, client):

        with pytest.raises(TypeError):

            client.default_formatter('json')

        client.default_formatter(JSONReportFormatter())
        report = json.loads(client.consistency('Machine'))

        assert report['holds'] is True
        assert report['query'] == 'consistency: Machine'
        assert set(report['stats']) == {'symbolic_states', 'fixpoint_iterations', 'wall_ms'}

    def test_unknown_automaton(self, client):

        with pytest.raises(UnknownAutomaton):

            client.consistency('Nobody')


class TestReports:

    def test_refinement(self, client):

        report = client.refinement('Machine2', 'Machine')

        assert report['holds'] is True
        assert report['query'] == 'refinement: Machine2 <= Machine'
        assert report['witness']

    def test_implementation(self, client):

        assert client.implementation('MachineImpl')['violations'] == []
        assert client.implementation('Machine')['holds'] is False

    def test_local_consistency(self, client):

        assert client.local_consistency('Machine')['holds'] is True

        report = client.local_consistency('PartiallyInconsistent')

        assert report['holds'] is False
        assert report['immediate_errors'] == {'trap': 'y==0'}

    def test_get(self, client):

        automaton = client.get('HalfAdm1 && HalfAdm2')['automaton']

        assert automaton['name'] == '(HalfAdm1 && HalfAdm2)'
        assert len(automaton['locations']) == 4

    def test_prune(self, client):

        automaton = client.prune('PartiallyInconsistent')['automaton']

        assert automaton['name'] == 'prune(PartiallyInconsistent)'
        assert [loc['id'] for loc in automaton['locations']] == ['idle', 'busy']

    def test_prune_inconsistent(self, client):

        report = client.prune('Inconsistent')

        assert report['holds'] is False
        assert report['counterexample'][1] == {'action': 'coin', 'role': 'input'}

    def test_check(self, client):

        report = client.check('consistency: Inconsistent')

        assert report['holds'] is False
        assert 'oracle' not in report


class TestPruningAndComposition:
    """
    Pruning the operands of a composition is not the same as pruning the composition.
    """

    def test_not_bisimilar(self, client):

        assert client.bisim('prune(S) || prune(T)', 'prune(S || T)')['holds'] is False

    def test_shapes(self, client):

        together = client.get('prune(S || T)')['automaton']
        separately = client.get('prune(S) || prune(T)')['automaton']

        assert len(together['locations']) == 2
        assert [e['action'] for e in together['edges']] == ['a']
        assert len(separately['locations']) == 1
        assert separately['edges'] == []


class TestQuotientDuality:
    """
    Administration || X refines Spec exactly when X refines Spec \\\\ Administration.
    """

    @pytest.mark.parametrize('name,holds', [('Accept', True), ('Slow', False), ('Premature', False)])
    def test_duality(self, duality_client, name, holds):

        composed = duality_client.refinement(f"Administration || {name}", 'Spec')
        divided = duality_client.refinement(name, 'Spec \\\\ Administration')

        assert composed['holds'] is holds
        assert divided['holds'] is holds

    def test_loaded_names(self, client):

        assert client.load_models(b'{"automata": []}') == []


class TestOracle:

    @pytest.fixture
    def checked(self, client) -> TioaClient:

        client.options = CheckOptions(oracle=True)

        return client

    @pytest.mark.parametrize('query', [
        'consistency: Inconsistent',
        'consistency: PartiallyInconsistent',
        'refinement: Machine2 <= Machine',
        'refinement: Machine <= Machine2',
        'bisim: Machine == Machine2',
        'refinement: HalfAdm1 && HalfAdm2 <= Administration',
        'refinement: Administration <= HalfAdm1 && HalfAdm2',
    ])
    def test_agreement(self, checked, query):

        report = checked.check(query)

        assert report['oracle'] == {'holds': report['holds']}

    def test_half_administrations_do_not_refine(self, checked):

        assert checked.check('refinement: HalfAdm1 && HalfAdm2 <= Administration')['holds'] is False

    def test_administration_outwaits_the_half_administrations(self, checked):

        # Every move is answered, only a delay can not be followed:

        report = checked.check('refinement: Administration <= HalfAdm1 && HalfAdm2')

        assert report['holds'] is False
        assert list(report['counterexample'][-1]) == ['delay']

    def test_skipped_when_too_large(self, checked):

        report = checked.check('refinement: Spec <= Spec')

        assert report['holds'] is True
        assert 'skipped' in report['oracle']

    def test_skipped_kind(self, checked):

        report = checked.check('implementation: MachineImpl')

        assert report['oracle'] == {'skipped': 'The oracle does not answer implementation queries'}

    def test_disagreement(self, checked):

        checked.add_handler(LyingConsistency())

        with pytest.raises(OracleDisagreement):

            checked.check('consistency: Inconsistent')
