"""
General classes for representing timed I/O automata and query results.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Any, Dict, FrozenSet, List, Mapping, Optional, Tuple

import numpy

from tioakit.classes.guards import TRUE, Guard, Region
from tioakit.errors import SchemaViolation
from tioakit.zones import INF, Federation

INPUT = 'input'
OUTPUT = 'output'


@dataclass(frozen=True)
class Alphabet(object):
    """
    Alphabet - Actions of an automaton, split into inputs and outputs.

        * inputs - Input action names
        * outputs - Output action names

    An action can not be both an input and an output.
    """

    inputs: FrozenSet[str] = frozenset()
    outputs: FrozenSet[str] = frozenset()

    def __post_init__(self):

        object.__setattr__(self, 'inputs', frozenset(self.inputs))
        object.__setattr__(self, 'outputs', frozenset(self.outputs))

        both = self.inputs & self.outputs

        if both:

            raise SchemaViolation(f"Actions {sorted(both)} are declared as both input and output")

    @property
    def actions(self) -> FrozenSet[str]:
        """
        Every action, inputs and outputs together.
        """

        return self.inputs | self.outputs

    def role(self, action: str) -> Optional[str]:
        """
        Returns INPUT, OUTPUT, or None if the action is not ours.
        """

        if action in self.inputs:

            return INPUT

        if action in self.outputs:

            return OUTPUT

        return None

    def mark(self, action: str) -> str:
        """
        Returns the action with its role suffix, '?' for inputs and '!' for outputs.
        """

        return action + ('?' if action in self.inputs else '!')


@dataclass(frozen=True)
class Edge(object):
    """
    Edge - A guarded, resetting transition between two locations.

        * source - Source location
        * action - Action name
        * guard - Clock guard
        * resets - Clocks set to zero
        * target - Target location
    """

    source: str
    action: str
    guard: Guard = TRUE
    resets: FrozenSet[str] = frozenset()
    target: str = ''

    def __post_init__(self):

        object.__setattr__(self, 'resets', frozenset(self.resets))


@dataclass(frozen=True)
class Tioa(object):
    """
    Tioa - A timed I/O automaton.

        * name - Name of the automaton
        * locations - Location identifiers, in declaration order
        * initial - Initial location
        * alphabet - Input and output actions
        * clocks - Clock names, in declaration order
        * edges - Transitions
        * invariants - Location invariants, locations that are missing have 'true'

    Instances are checked by 'tioakit.model.validate()' when they come from a model file
    or from an operator.
    """

    name: str
    locations: Tuple[str, ...]
    initial: str
    alphabet: Alphabet = field(default_factory=Alphabet)
    clocks: Tuple[str, ...] = ()
    edges: Tuple[Edge, ...] = ()
    invariants: Mapping[str, Guard] = field(default_factory=dict)

    def __post_init__(self):

        object.__setattr__(self, 'locations', tuple(self.locations))
        object.__setattr__(self, 'clocks', tuple(self.clocks))
        object.__setattr__(self, 'edges', tuple(self.edges))
        object.__setattr__(self, 'invariants', dict(self.invariants))

    def __hash__(self) -> int:

        return hash((self.name, self.locations, self.initial, self.clocks, self.edges))

    @property
    def inputs(self) -> FrozenSet[str]:
        """
        Input actions.
        """

        return self.alphabet.inputs

    @property
    def outputs(self) -> FrozenSet[str]:
        """
        Output actions.
        """

        return self.alphabet.outputs

    def invariant(self, location: str) -> Guard:
        """
        Returns the invariant of the given location.
        """

        return self.invariants.get(location, TRUE)

    def edges_from(self, location: str, action: Optional[str]=None) -> List[Edge]:
        """
        Returns the edges leaving a location, optionally for one action only.

        :param location: Source location
        :type location: str
        :param action: Action to filter by, None for all
        :type action: Optional[str]
        :return: Matching edges in declaration order
        :rtype: List[Edge]
        """

        return [e for e in self.edges if e.source == location and (action is None or e.action == action)]

    def max_constants(self) -> Dict[str, int]:
        """
        Computes the largest constant each clock is compared against.

        :return: Clock name to maximum constant, zero for unused clocks
        :rtype: Dict[str, int]
        """

        out = {c: 0 for c in self.clocks}

        for guard in list(self.invariants.values()) + [e.guard for e in self.edges]:

            _collect_constants(guard, out)

        return out

    def rename_clocks(self, mapping: Mapping[str, str]) -> Tioa:
        """
        Returns a copy with clocks renamed through the given mapping.

        :param mapping: Old clock name to new clock name
        :type mapping: Mapping[str, str]
        :return: Renamed automaton
        :rtype: Tioa
        """

        if not mapping:

            return self

        edges = [replace(e, guard=e.guard.rename(mapping), resets=frozenset(mapping.get(c, c) for c in e.resets))
                 for e in self.edges]

        return replace(self,
                       clocks=tuple(mapping.get(c, c) for c in self.clocks),
                       edges=tuple(edges),
                       invariants={l: g.rename(mapping) for l, g in self.invariants.items()})

    def with_name(self, name: str) -> Tioa:
        """
        Returns a copy carrying a different name.
        """

        return replace(self, name=name)


def _collect_constants(guard: Guard, out: Dict[str, int]):

    # Walk the tree and keep the largest constant per clock:

    if isinstance(guard, Region):

        fed = guard.fed

        for zone in fed.zones:

            for k, name in enumerate(fed.clocks, start=1):

                row = numpy.concatenate((zone.m[k, :], zone.m[:, k]))
                finite = numpy.abs(row[row < INF] >> 1)

                if name in out and finite.size:

                    out[name] = max(out[name], int(finite.max()))

        return

    value = getattr(guard, 'value', None)

    if value is not None:

        if guard.clock in out:

            out[guard.clock] = max(out[guard.clock], value)

        return

    for part in getattr(guard, 'parts', ()):

        _collect_constants(part, out)

    if hasattr(guard, 'part'):

        _collect_constants(guard.part, out)


@dataclass
class Verdict(object):
    """
    Verdict - Result of a query.

        * holds - Whether the query holds
        * witness - Certificate when it holds, for example a simulation relation
        * counterexample - Trace of delays and actions when it does not

    At most one of witness and counterexample is set.
    Queries with no natural certificate leave both empty.
    """

    holds: bool
    witness: Optional[List[Dict[str, Any]]] = None
    counterexample: Optional[List[Dict[str, Any]]] = None

    def __bool__(self) -> bool:

        return self.holds


@dataclass
class Stats(object):
    """
    Stats - Counters collected while a query runs.

        * symbolic_states - Symbolic states or state pairs explored
        * fixpoint_iterations - Iterations of every fixpoint loop
    """

    symbolic_states: int = 0
    fixpoint_iterations: int = 0

    def merge(self, other: Stats):
        """
        Adds the counters of another Stats object to ours.
        """

        self.symbolic_states += other.symbolic_states
        self.fixpoint_iterations += other.fixpoint_iterations


@dataclass
class Violation(object):
    """
    Violation - A region where an implementation requirement fails.

        * location - Location identifier
        * valuations - Offending valuations
        * reason - One of 'output_urgency', 'independent_progress', 'input_enabledness'
        * action - Refused input, for input-enabledness violations
    """

    location: str
    valuations: Federation
    reason: str
    action: Optional[str] = None

    def asdict(self) -> Dict[str, Any]:
        """
        Converts this violation into a JSON ready dictionary.
        """

        out = {'location': self.location, 'region': self.valuations.reduce().describe(), 'reason': self.reason}

        if self.action is not None:

            out['action'] = self.action

        return out


@dataclass
class ImplementationReport(object):
    """
    ImplementationReport - Outcome of an implementation check.

        * violations - Every violated requirement, empty for an implementation
    """

    violations: List[Violation] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        """
        True if nothing was violated.
        """

        return not self.violations

    def __bool__(self) -> bool:

        return self.holds
