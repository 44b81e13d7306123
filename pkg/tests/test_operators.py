"""
Tests for conjunction, composition and quotient.
"""

import pytest

from tioakit.errors import AlphabetError, NotComposable, QuotientPreconditionError
from tioakit.operators import ERROR, UNIVERSAL, composition, conjunction, cooperative_prune, fresh, pair, quotient


class TestConjunction:

    def test_half_administrations(self, models):

        both = conjunction(models['HalfAdm1'], models['HalfAdm2'])

        assert both.name == '(HalfAdm1 && HalfAdm2)'
        assert set(both.locations) == {'(h0,k0)', '(h0,k1)', '(h1,k0)', '(h1,k1)'}
        assert both.initial == '(h0,k0)'
        assert len(both.edges) == 12
        assert both.inputs == frozenset({'grant', 'pub'})
        assert both.outputs == frozenset({'coin', 'news'})
        assert both.clocks == ('x', 'y')
        assert both.invariant('(h1,k1)').text() == 'x<=2 && y<=2'

    def test_role_clash(self, models):

        with pytest.raises(AlphabetError):

            conjunction(models['Machine'], models['Researcher'])

    def test_shared_clocks_are_renamed(self, models):

        both = conjunction(models['Machine'], models['Machine2'])

        assert both.clocks == ('left.y', 'right.y')

    def test_shared_action_synchronises(self, models):

        both = conjunction(models['Machine'], models['Machine2'], reach_prune=False)
        coins = [e for e in both.edges if e.source == '(idle,idle)' and e.action == 'coin']

        assert len(coins) == 1
        assert coins[0].resets == frozenset({'left.y', 'right.y'})
        assert coins[0].target == '(busy,busy)'


class TestComposition:

    def test_alphabet(self, models):

        system = composition(models['Machine'], models['Researcher'])

        assert system.inputs == frozenset({'coin'})
        assert system.outputs == frozenset({'cof', 'tea', 'pub'})

    def test_shared_output(self, models):

        with pytest.raises(NotComposable):

            composition(models['Machine'], models['Machine2'])

    def test_reach_prune(self, models):

        full = composition(models['S'], models['T'], reach_prune=False)
        pruned = composition(models['S'], models['T'])

        assert len(full.locations) == 9
        assert set(pruned.locations) == {'(1,4)', '(2,5)', '(3,6)'}
        assert len(pruned.edges) == 2


class TestQuotient:

    def test_precondition(self, models):

        with pytest.raises(QuotientPreconditionError):

            quotient(models['Researcher'], models['Machine'])

    def test_alphabet_and_clocks(self, models):

        rest = quotient(models['Spec'], models['Administration'], reach_prune=False)

        assert rest.inputs == frozenset({'grant', 'coin', 'news', 'i_new'})
        assert rest.outputs == frozenset({'pub'})
        assert rest.clocks == ('u', 'z', 'x_new')
        assert UNIVERSAL in rest.locations
        assert ERROR in rest.locations
        assert rest.initial == '(s0,a0)'

    def test_special_locations(self, models):

        rest = quotient(models['Spec'], models['Administration'], reach_prune=False)

        assert rest.invariant(ERROR).text() == 'x_new<=0'
        assert {e.action for e in rest.edges_from(UNIVERSAL)} == rest.alphabet.actions
        assert all(e.guard.text() == 'x_new==0' for e in rest.edges_from(ERROR))


class TestHelpers:

    def test_fresh(self):

        assert fresh('i_new', ['a']) == 'i_new'
        assert fresh('i_new', ['i_new', 'i_new_1']) == 'i_new_2'

    def test_pair(self):

        assert pair('a', 'b') == '(a,b)'

    def test_cooperative_prune_is_the_identity(self, models):

        spec = models['Spec']

        assert cooperative_prune(spec) is spec
