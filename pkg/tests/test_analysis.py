"""
Tests for consistency, implementation checks, refinement and bisimulation.
"""

from fractions import Fraction

import pytest

from tioakit.analysis.base import StateSet, first_delay, regrid
from tioakit.analysis.consistency import (all_states, consistency, consistent_states, controllable_predecessors, error_states, immediate_errors,
                                          inconsistent_layers, is_implementation, is_locally_consistent, no_states, prune_adversarial)
from tioakit.analysis.simulation import bisimilar, check_refinement_alphabets, refinement
from tioakit.classes.base import Alphabet, Stats, Tioa
from tioakit.errors import InconsistentSpecification, RefinementAlphabetError
from tioakit.zones import Federation


class TestConsistency:

    def test_consistent(self, models):

        stats = Stats()

        assert consistency(models['Machine'], stats).holds
        assert stats.fixpoint_iterations > 0

    def test_inconsistent_with_trace(self, models):

        verdict = consistency(models['Inconsistent'])

        assert not verdict.holds
        assert verdict.counterexample == [{'delay': '0'}, {'action': 'coin', 'role': 'input'}]

    def test_partially_inconsistent(self, models):

        spec = models['PartiallyInconsistent']

        assert consistency(spec).holds
        assert immediate_errors(spec).describe() == {'trap': 'y==0'}
        assert not is_locally_consistent(spec)

    def test_error_chain(self, models):

        chain = models['ErrorChain']
        first = immediate_errors(chain)

        assert first.locations() == ['q3']
        assert sorted(error_states(chain, first).locations()) == ['q2', 'q3']

    def test_layers_grow(self, models):

        layers = inconsistent_layers(models['Inconsistent'])

        assert layers[0].is_empty()
        assert all(a.issubset(b) for a, b in zip(layers, layers[1:]))

    def test_controllable_predecessors_of_nothing(self, models):

        spec = models['Machine']

        assert controllable_predecessors(spec, no_states(spec)).equals(immediate_errors(spec))

    def test_consistent_states_of_a_consistent_spec(self, models):

        spec = models['Machine']

        assert consistent_states(spec).equals(all_states(spec))


class TestPruning:

    def test_prune_drops_the_trap(self, models):

        pruned = prune_adversarial(models['PartiallyInconsistent'])

        assert pruned.is_consistent()
        assert pruned.to_tioa().locations == ('idle', 'busy')
        assert is_locally_consistent(pruned)

    def test_prune_inconsistent(self, models):

        with pytest.raises(InconsistentSpecification):

            prune_adversarial(models['Inconsistent'])

    def test_prune_twice(self, models):

        once = prune_adversarial(models['PartiallyInconsistent'])
        twice = prune_adversarial(once)

        assert twice.base is once.base
        assert all(twice.cons[loc].equals(once.cons[loc]) for loc in once.cons)


class TestImplementation:

    def test_machine_impl(self, models):

        report = is_implementation(models['MachineImpl'])

        assert report.holds
        assert report.violations == []

    def test_lazy_outputs(self, models):

        report = is_implementation(models['Machine'])

        assert not report
        assert 'output_urgency' in {v.reason for v in report.violations}

    def test_refused_input(self):

        deaf = Tioa('Deaf', ('l0',), 'l0', Alphabet({'a'}, set()), ('x',))
        report = is_implementation(deaf)

        assert [(v.location, v.reason, v.action) for v in report.violations] == [('l0', 'input_enabledness', 'a')]
        assert report.violations[0].asdict() == {'location': 'l0', 'region': 'true', 'reason': 'input_enabledness', 'action': 'a'}

    def test_stuck(self, models):

        report = is_implementation(models['PartiallyInconsistent'])

        assert ('trap', 'independent_progress') in {(v.location, v.reason) for v in report.violations}


class TestRefinement:

    def test_machine2_refines_machine(self, models):

        verdict = refinement(models['Machine2'], models['Machine'])

        assert verdict.holds
        assert {'left': 'idle', 'right': 'idle'}.items() <= verdict.witness[0].items()

    def test_machine_does_not_refine_machine2(self, models):

        verdict = refinement(models['Machine'], models['Machine2'])

        assert not verdict.holds
        assert verdict.counterexample[:2] == [{'delay': '0'}, {'action': 'coin', 'role': 'input'}]
        assert verdict.counterexample[-1] == {'action': 'tea', 'role': 'output'}

    def test_reflexive(self, models):

        for name in ('Machine', 'Researcher', 'Administration', 'Spec'):

            assert refinement(models[name], models[name]).holds

    def test_alphabets(self, models):

        with pytest.raises(RefinementAlphabetError):

            refinement(models['Machine'], models['Researcher'])

        check_refinement_alphabets(models['Machine2'], models['Machine'])

    def test_pruned_operand(self, models):

        pruned = prune_adversarial(models['PartiallyInconsistent'])

        assert refinement(pruned, models['PartiallyInconsistent']).holds


class TestBisimulation:

    def test_self(self, models):

        assert bisimilar(models['Machine'], models['Machine']).holds

    def test_different(self, models):

        verdict = bisimilar(models['Machine'], models['Machine2'])

        assert not verdict.holds
        assert verdict.counterexample


class TestStateSets:

    def test_empty_members_are_dropped(self):

        states = StateSet(('x',), {'a': Federation.empty(('x',)), 'b': Federation.universe(('x',))})

        assert states.locations() == ['b']
        assert 'a' not in states
        assert states.get('a').is_empty()


class TestTracePoints:

    def test_open_window_takes_a_grid_point(self):

        target = Federation.atom(('x',), 'x', '>', 0)
        nothing = Federation.empty(('x',))

        assert first_delay((Fraction(0),), target, nothing, 3) == Fraction(1, 3)
        assert first_delay((Fraction(0),), target, nothing) == Fraction(1, 2)

    def test_closed_window_starts_at_its_bound(self):

        target = Federation.atom(('x',), 'x', '>=', 2)

        assert first_delay((Fraction(1, 2),), target, Federation.empty(('x',)), 2) == Fraction(3, 2)

    def test_narrow_window_falls_back_to_the_midpoint(self):

        clocks = ('x', 'y')
        target = Federation.atom(clocks, 'x', '>', 1).intersect(Federation.atom(clocks, 'y', '<', 1))

        assert first_delay((Fraction(1, 3), Fraction(0)), target, Federation.empty(clocks), 3) == Fraction(5, 6)

    def test_regrid_moves_delays_onto_the_grid(self):

        third, late = Fraction(1, 3), Fraction(7, 6)
        trace = [{'delay': '1/3'}, {'action': 'a', 'role': 'input'}, {'delay': '5/6'}]
        marks = [(Fraction(0), (Fraction(0), Fraction(0))), (third, (third, third)), (third, (third, Fraction(0))),
                 (late, (late, Fraction(5, 6)))]

        assert regrid(trace, marks, 3) == [{'delay': '2/3'}, {'action': 'a', 'role': 'input'}, {'delay': '2/3'}]

    def test_regrid_keeps_traces_the_grid_can_not_hold(self):

        # Three resets of x while y stays below one:

        trace, marks, now = [], [(Fraction(0), (Fraction(0), Fraction(0)))], Fraction(0)

        for _ in range(3):

            now += Fraction(1, 4)
            trace += [{'delay': '1/4'}, {'action': 'a', 'role': 'input'}]
            marks += [(now, (Fraction(1, 4), now)), (now, (Fraction(0), now))]

        assert regrid(trace, marks, 3) == trace

    def test_regrid_keeps_grid_traces(self):

        trace = [{'delay': '1/3'}, {'action': 'a', 'role': 'input'}]

        assert regrid(trace, [], 3) is trace
