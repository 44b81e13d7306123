"""
Tests for the symbolic semantics and zone graph exploration.
"""

from tioakit.classes.base import Stats
from tioakit.classes.guards import Region
from tioakit.semantics import PrunedSpec, Semantics, delay_successor, discrete_successors, initial_state, reachable, reachable_locations
from tioakit.zones import Federation

Y = ('y',)


class TestSuccessors:

    def test_initial_state(self, models):

        state = initial_state(models['Machine'])

        assert state.location == 'idle'
        assert state.valuations.equals(Federation.zero(Y))
        assert state.describe() == 'idle: y==0'

    def test_disabled_action(self, models):

        machine = models['Machine']

        assert discrete_successors(initial_state(machine), 'cof', machine) == []

    def test_edge_then_delay(self, models):

        sem = Semantics(models['Machine2'])
        [busy] = discrete_successors(initial_state(sem), 'coin', sem)

        assert busy.location == 'busy'
        assert busy.valuations.equals(Federation.zero(Y))

        delayed = delay_successor(busy, sem.inv['busy'])

        assert delayed.valuations.equals(Federation.atom(Y, 'y', '<=', 5))

    def test_guarded_edge(self, models):

        sem = Semantics(models['Machine'])
        idle = delay_successor(initial_state(sem), sem.inv['idle'])
        [after] = discrete_successors(idle, 'tea', sem)

        assert after.valuations.equals(Federation.atom(Y, 'y', '>=', 2))

    def test_delay_stops_at_a_gap(self, models):

        gappy = Federation.atom(Y, 'y', '<=', 1).union(
            Federation.atom(Y, 'y', '>=', 3).intersect(Federation.atom(Y, 'y', '<=', 6)))
        sem = Semantics(models['Machine2'], cons={'idle': Federation.universe(Y), 'busy': gappy})
        [busy] = discrete_successors(initial_state(sem), 'coin', sem)

        assert delay_successor(busy, sem.inv['busy']).valuations.equals(Federation.atom(Y, 'y', '<=', 1))

    def test_moves(self, models):

        sem = Semantics(models['Machine'])

        assert [m.action for m in sem.moves_from('busy', 'output')] == ['cof', 'tea']
        assert [m.action for m in sem.moves_from('busy', 'input')] == ['coin']
        assert sem.ceilings() == {'y': 6}


class TestExploration:

    def test_reachable_locations(self, models):

        assert reachable_locations(models['Machine']) == ['idle', 'busy']
        assert reachable_locations(models['PartiallyInconsistent']) == ['idle', 'busy', 'trap']
        assert reachable_locations(models['ErrorChain']) == ['q1', 'q2', 'q3']

    def test_unreachable_location(self, models):

        assert '4' not in reachable_locations(models['A2'])

    def test_stats(self, models):

        stats = Stats()
        found = reachable(models['Researcher'], stats=stats)

        assert stats.symbolic_states == len(found) > 0

    def test_extrapolation_terminates(self, models):

        assert reachable(models['Researcher'], extrapolate=True)


class TestPrunedSpec:

    def test_to_tioa(self, models):

        machine = models['Machine']
        pruned = PrunedSpec(machine, {'idle': Federation.universe(Y), 'busy': Federation.empty(Y)})
        tioa = pruned.to_tioa()

        assert pruned.name == 'prune(Machine)'
        assert pruned.is_consistent()
        assert tioa.locations == ('idle',)
        assert [e.action for e in tioa.edges] == ['tea']
        assert isinstance(tioa.invariant('idle'), Region)

    def test_inconsistent(self, models):

        assert not PrunedSpec(models['Machine'], {}).is_consistent()

    def test_semantics_uses_the_consistent_sets(self, models):

        cons = {'idle': Federation.universe(Y), 'busy': Federation.atom(Y, 'y', '<=', 2)}
        sem = PrunedSpec(models['Machine'], cons).semantics()

        assert sem.inv['busy'].equals(cons['busy'])
        assert reachable_locations(sem) == ['idle', 'busy']
