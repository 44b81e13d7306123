"""
Tests for the region graph oracle and its cross-checks against the symbolic algorithms.
"""

from fractions import Fraction

import pytest

from tioakit.errors import AlphabetError, InconsistentSpecification, RegionGraphTooLarge
from tioakit.operators import conjunction, quotient
from tioakit.oracle.checks import (check_size, discrete_transitions, oracle_bisim, oracle_consistency, oracle_refinement, prune, reachable_labels,
                                   region_graph)
from tioakit.oracle.regions import all_keys, region_key, representative, time_successor
from tioakit.oracle.systems import AutomatonSystem, CompositionSystem, ConjunctionSystem, QuotientSystem


def system(models, name):

    return AutomatonSystem(models[name])


class TestRegions:

    def test_counts(self):

        assert len(list(all_keys([2]))) == 6
        assert len(list(all_keys([]))) == 1

    def test_representative_stays_in_its_region(self):

        for key in all_keys([2, 1]):

            assert region_key(representative(key), [2, 1]) == key

    def test_keys(self):

        assert region_key((Fraction(1, 2), Fraction(1, 3)), [2, 2]) == region_key((Fraction(1, 3), Fraction(1, 4)), [2, 2])
        assert region_key((Fraction(1, 2),), [2]) != region_key((Fraction(1),), [2])
        assert region_key((7,), [2]) == region_key((3,), [2])

    def test_time_successor_leaves_the_region(self):

        point = representative(region_key((0,), [2]))
        after = time_successor(point, [2])

        assert region_key(after, [2]) != region_key(point, [2])
        assert after[0] > point[0]


class TestGraph:

    def test_size_guard(self, models):

        with pytest.raises(RegionGraphTooLarge):

            check_size(system(models, 'Spec'))

    def test_reachable_labels(self, models):

        assert reachable_labels(system(models, 'Machine')) == {'idle', 'busy'}

    def test_region_graph_attributes(self, models):

        graph = region_graph(system(models, 'Machine'))

        assert all('location' in data and 'admitted' in data for _, data in graph.nodes(data=True))
        assert {data['label'] for _, _, data in graph.edges(data=True)} >= {'coin', 'delay'}


class TestConsistency:

    def test_agrees_on_the_corpus(self, models):

        assert oracle_consistency(system(models, 'Machine'))
        assert oracle_consistency(system(models, 'PartiallyInconsistent'))
        assert not oracle_consistency(system(models, 'Inconsistent'))

    def test_prune(self, models):

        pruned = prune(system(models, 'PartiallyInconsistent'))

        assert pruned.name == 'prune(PartiallyInconsistent)'
        assert reachable_labels(pruned) == {'idle', 'busy'}

        with pytest.raises(InconsistentSpecification):

            prune(system(models, 'Inconsistent'))


class TestRelations:

    def test_refinement(self, models):

        assert oracle_refinement(system(models, 'Machine2'), system(models, 'Machine'))
        assert not oracle_refinement(system(models, 'Machine'), system(models, 'Machine2'))

    def test_bisim(self, models):

        assert oracle_bisim(system(models, 'Machine'), system(models, 'Machine'))
        assert not oracle_bisim(system(models, 'Machine'), system(models, 'Machine2'))


class TestOperators:

    def test_conjunction_system_alphabet(self, models):

        with pytest.raises(AlphabetError):

            ConjunctionSystem(system(models, 'Machine'), system(models, 'Researcher'))

    def test_conjunction_differs_before_pruning(self, models):

        symbolic = AutomatonSystem(conjunction(models['A1'], models['A2'], reach_prune=False))
        explicit = ConjunctionSystem(system(models, 'A1'), system(models, 'A2'))

        assert discrete_transitions(explicit) - discrete_transitions(symbolic) == {('(1,4)', 'a', '(2,4)')}
        assert discrete_transitions(symbolic) - discrete_transitions(explicit) == set()

    @pytest.mark.parametrize('names', [('A1', 'A2'), ('HalfAdm1', 'HalfAdm2')])
    def test_conjunction_agrees_after_pruning(self, models, names):

        left, right = (models[n] for n in names)
        symbolic = prune(AutomatonSystem(conjunction(left, right)))
        explicit = prune(ConjunctionSystem(AutomatonSystem(left), AutomatonSystem(right)))

        assert oracle_bisim(symbolic, explicit)

    def test_quotient_agrees_after_pruning(self, models):

        first, second = models['HalfAdm1'], models['HalfAdm2']
        symbolic = prune(AutomatonSystem(quotient(first, second)))
        explicit = prune(QuotientSystem(AutomatonSystem(first), AutomatonSystem(second), fresh_input='i_new'))

        assert oracle_bisim(symbolic, explicit)

    def test_pruning_does_not_distribute_over_composition(self, models):

        s, t = system(models, 'S'), system(models, 'T')
        separately = CompositionSystem(prune(s), prune(t))
        together = prune(CompositionSystem(s, t))

        assert reachable_labels(separately) == {'(1,4)'}
        assert reachable_labels(together) == {'(1,4)', '(2,5)'}
        assert not oracle_bisim(separately, together)
