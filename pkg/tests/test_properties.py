"""
Property checks: the symbolic engine against the region graph oracle
on seeded random automata, and algebraic laws on the corpus.

Set TIOA_SEED to move every random suite to another range of seeds.
"""

import random

from fractions import Fraction
from itertools import combinations, permutations

import pytest

from tioakit.analysis.base import StateSet
from tioakit.analysis.consistency import consistency, controllable_predecessors, inconsistent_layers, is_locally_consistent, prune_adversarial
from tioakit.analysis.simulation import bisimilar, refinement
from tioakit.errors import OperatorError
from tioakit.model import check_input_enabled
from tioakit.operators import composition
from tioakit.oracle.checks import oracle_bisim, oracle_consistency, oracle_refinement
from tioakit.oracle.generate import default_seed, random_tioa
from tioakit.oracle.systems import AutomatonSystem
from tioakit.zones import Federation, pred_t

SEED = default_seed()

CONSISTENCY_SEEDS = range(SEED, SEED + 200)
PAIR_SEEDS = range(SEED, SEED + 200)
FEDERATION_SEEDS = range(SEED, SEED + 100)
STATE_SET_SEEDS = range(SEED, SEED + 50)

SAME_ALPHABET = ('Machine', 'Machine2', 'MachineImpl', 'Inconsistent', 'PartiallyInconsistent')


def random_pair(seed: int):

    return random_tioa(seed, locations=2), random_tioa(seed + 10000, locations=2)


def off_grid(verdict, clocks: int):

    # Counterexample delays must be multiples of 1 / (clocks + 1):

    return [step['delay'] for step in verdict.counterexample or () if 'delay' in step
            and (Fraction(step['delay']) * (clocks + 1)).denominator != 1]


def random_federation(rng: random.Random, clocks):

    def atom():

        return Federation.atom(clocks, rng.choice(clocks), rng.choice(('<', '<=', '>', '>=')), rng.randint(0, 5))

    return atom().intersect(atom()).union(atom().intersect(atom()))


def random_state_set(rng: random.Random, tioa):

    return StateSet(tioa.clocks, {loc: random_federation(rng, tioa.clocks) for loc in tioa.locations
                                  if rng.random() < 0.7})


class TestAgainstOracle:

    @pytest.mark.parametrize('seed', CONSISTENCY_SEEDS)
    def test_consistency(self, seed):

        tioa = random_tioa(seed)
        verdict = consistency(tioa)

        assert verdict.holds == oracle_consistency(AutomatonSystem(tioa))
        assert not off_grid(verdict, len(tioa.clocks))

    @pytest.mark.parametrize('seed', PAIR_SEEDS)
    def test_refinement(self, seed):

        left, right = random_pair(seed)
        verdict = refinement(left, right)

        assert verdict.holds == oracle_refinement(AutomatonSystem(left), AutomatonSystem(right))
        assert not off_grid(verdict, len(left.clocks) + len(right.clocks))

    @pytest.mark.parametrize('seed', PAIR_SEEDS)
    def test_bisimulation(self, seed):

        left, right = random_pair(seed)
        verdict = bisimilar(left, right)

        assert verdict.holds == oracle_bisim(AutomatonSystem(left), AutomatonSystem(right))
        assert not off_grid(verdict, len(left.clocks) + len(right.clocks))

    @pytest.mark.parametrize('seed', PAIR_SEEDS)
    def test_bisimilar_to_itself(self, seed):

        tioa = random_tioa(seed)

        assert bisimilar(tioa, tioa).holds
        assert oracle_bisim(AutomatonSystem(tioa), AutomatonSystem(tioa))


class TestFixpoint:

    @pytest.mark.parametrize('seed', STATE_SET_SEEDS)
    def test_controllable_predecessors_are_monotone(self, seed):

        rng = random.Random(seed)
        tioa = random_tioa(seed)
        smaller = random_state_set(rng, tioa)
        larger = smaller.union(random_state_set(rng, tioa))

        assert controllable_predecessors(tioa, smaller).issubset(controllable_predecessors(tioa, larger))

    @pytest.mark.parametrize('seed', STATE_SET_SEEDS)
    def test_layers_grow(self, seed):

        tioa = random_tioa(seed)
        layers = inconsistent_layers(tioa)

        for smaller, larger in zip(layers, layers[1:]):

            assert smaller.issubset(larger)
            assert controllable_predecessors(tioa, smaller).issubset(controllable_predecessors(tioa, larger))

    @pytest.mark.parametrize('seed', FEDERATION_SEEDS)
    def test_timed_predecessors_keep_the_target(self, seed):

        rng = random.Random(seed)
        clocks = ('x', 'y')
        good = random_federation(rng, clocks)
        bad = random_federation(rng, clocks)

        assert good.issubset(pred_t(good, bad))


class TestCorpusLaws:

    def test_local_consistency_implies_consistency(self, models):

        for tioa in models.values():

            if is_locally_consistent(tioa):

                assert consistency(tioa).holds, tioa.name

    def test_pruned_specs_are_locally_consistent(self, models):

        for tioa in models.values():

            if consistency(tioa).holds:

                assert is_locally_consistent(prune_adversarial(tioa)), tioa.name

    def test_composition_keeps_local_consistency(self, models):

        good = [t for t in models.values() if not check_input_enabled(t) and is_locally_consistent(t)]
        checked = 0

        for left, right in combinations(good, 2):

            try:

                product = composition(left, right)

            except OperatorError:

                continue

            checked += 1

            assert is_locally_consistent(product), product.name

        assert checked > 0

    def test_refinement_is_reflexive(self, models):

        for tioa in models.values():

            assert refinement(tioa, tioa).holds, tioa.name

    def test_refinement_is_transitive(self, models):

        related = {}

        for a, b in permutations(SAME_ALPHABET, 2):

            related[a, b] = refinement(models[a], models[b]).holds

        for a, b, c in permutations(SAME_ALPHABET, 3):

            if related[a, b] and related[b, c]:

                assert related[a, c], (a, b, c)
