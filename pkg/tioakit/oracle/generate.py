"""
Seeded generation of small random automata.

The automata are deterministic and well formed, but nothing more:
they may refuse inputs, block time or be inconsistent,
which is exactly what the cross-checks against the oracle need.
"""

from __future__ import annotations

import os
import random

from typing import List, Optional, Sequence

from tioakit.classes.base import Alphabet, Edge, Tioa
from tioakit.classes.guards import TRUE, Atom, Guard
from tioakit.model import validate

SEED_VARIABLE = 'TIOA_SEED'


def default_seed() -> int:
    """
    Seed taken from the TIOA_SEED environment variable, zero if unset.
    """

    return int(os.environ.get(SEED_VARIABLE, '0'))


def _bound(rng: random.Random, clocks: Sequence[str], max_constant: int) -> Optional[Atom]:

    if not clocks:

        return None

    return Atom(rng.choice(list(clocks)), rng.choice(('<', '<=')), rng.randint(0, max_constant))


def _complement(atom: Atom) -> Atom:

    return Atom(atom.clock, '>=' if atom.op == '<' else '>', atom.value)


def random_tioa(seed: int, name: Optional[str]=None, locations: int=3, clocks: int=2, max_constant: int=6,
                inputs: Sequence[str]=('a',), outputs: Sequence[str]=('b',)) -> Tioa:
    """
    Generates a random deterministic automaton.

    Every (location, action) pair gets no edge, one edge,
    or two edges with complementary guards on one clock.
    Invariants are either 'true' or an upper bound on one clock.

    :param seed: Seed of the generator, equal seeds give equal automata
    :type seed: int
    :param name: Name of the automaton, 'R<seed>' by default
    :type name: Optional[str]
    :param locations: Number of locations
    :type locations: int
    :param clocks: Number of clocks
    :type clocks: int
    :param max_constant: Largest constant in guards and invariants
    :type max_constant: int
    :param inputs: Input actions
    :type inputs: Sequence[str]
    :param outputs: Output actions
    :type outputs: Sequence[str]
    :return: A validated automaton
    :rtype: Tioa
    """

    rng = random.Random(seed)
    names = [f"l{num}" for num in range(locations)]
    clock_names = tuple(f"x{num}" for num in range(clocks))

    # Invariants, the initial one must admit zero and every bound here does:

    invariants = {}

    for loc in names:

        if rng.random() < 0.5:

            bound = _bound(rng, clock_names, max_constant)

            if bound is not None and bound.op == '<' and bound.value == 0:

                bound = Atom(bound.clock, '<=', 0)

            if bound is not None:

                invariants[loc] = bound

    # Edges:

    edges: List[Edge] = []

    for loc in names:

        for action in list(inputs) + list(outputs):

            shape = rng.random()

            if shape < 0.25:

                continue

            guards: List[Guard] = [TRUE]

            if shape > 0.6:

                atom = _bound(rng, clock_names, max_constant)

                if atom is not None:

                    guards = [atom, _complement(atom)]

            for guard in guards:

                resets = frozenset(c for c in clock_names if rng.random() < 0.4)
                edges.append(Edge(loc, action, guard, resets, rng.choice(names)))

    tioa = Tioa(name=name or f"R{seed}", locations=tuple(names), initial=names[0],
                alphabet=Alphabet(frozenset(inputs), frozenset(outputs)), clocks=clock_names,
                edges=tuple(edges), invariants=invariants)

    return validate(tioa)
