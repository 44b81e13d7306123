"""
Symbolic semantics of timed I/O automata.

An automaton is compiled once into a Semantics object,
which holds the invariant of every location as a federation
and every edge as a Move with its enabling valuations.
On top of that we offer the symbolic successor operations
and a zone graph exploration.

A delay from a valuation is allowed only if every point on the way,
both ends included, satisfies the invariant.
For conjunctive invariants this is the usual 'future then intersect',
for the unions of zones produced by pruning we compute the exact closure
with 'tioakit.zones.post_t()'.

Pruned specifications are handled by compiling the base automaton
with their admissible sets in place of the invariants.
"""

from __future__ import annotations

import logging

from collections import deque
from dataclasses import dataclass, field, replace
from typing import Dict, FrozenSet, List, Mapping, Optional, Sequence, Tuple, Union

from tioakit.classes.base import INPUT, OUTPUT, Stats, Tioa
from tioakit.classes.guards import Region
from tioakit.zones import Federation, post_t

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Move(object):
    """
    Move - A compiled edge.

        * source - Source location
        * action - Action name
        * role - INPUT or OUTPUT
        * guard - Compiled guard
        * resets - Reset clocks
        * target - Target location
        * enabled - Valuations where the guard holds and the reset
          valuation lands inside the target invariant
    """

    source: str
    action: str
    role: str
    guard: Federation
    resets: FrozenSet[str]
    target: str
    enabled: Federation


@dataclass(frozen=True)
class SymbolicState(object):
    """
    SymbolicState - A location together with a set of valuations.

        * location - Location identifier
        * valuations - Non-empty federation inside the location invariant
    """

    location: str
    valuations: Federation

    def describe(self) -> str:
        """
        Renders this state as 'location: constraints'.
        """

        return f"{self.location}: {self.valuations.describe()}"


class Semantics(object):
    """
    Semantics - The compiled, symbolic view of an automaton.

    We compile invariants and edges over a clock list,
    which defaults to the automaton's own clocks.
    A larger clock list is used when two automata are explored side by side.

    If 'cons' is given, it replaces the invariants,
    this is how pruned specifications are run.
    """

    def __init__(self, tioa: Tioa, clocks: Optional[Sequence[str]]=None,
                 cons: Optional[Mapping[str, Federation]]=None) -> None:

        self.tioa = tioa  # Automaton we compile
        self.clocks: Tuple[str, ...] = tuple(tioa.clocks if clocks is None else clocks)  # Clock list in use
        self.inv: Dict[str, Federation] = {}  # Location to admissible valuations
        self.outside: Dict[str, Federation] = {}  # Complement of each invariant
        self.moves: Dict[str, List[Move]] = {}  # Location to outgoing moves

        # Compile the invariants:

        for loc in tioa.locations:

            if cons is not None:

                inv = cons.get(loc, Federation.empty(tioa.clocks)).embed(self.clocks)

            else:

                inv = tioa.invariant(loc).compile(self.clocks)

            self.inv[loc] = inv
            self.outside[loc] = inv.complement()
            self.moves[loc] = []

        # Compile the edges:

        for edge in tioa.edges:

            guard = edge.guard.compile(self.clocks)
            enabled = guard.intersect(self.inv[edge.target].reset_inverse(edge.resets))
            role = INPUT if edge.action in tioa.inputs else OUTPUT

            self.moves[edge.source].append(Move(edge.source, edge.action, role, guard,
                                                edge.resets, edge.target, enabled))

    @property
    def name(self) -> str:
        """
        Name of the compiled automaton.
        """

        return self.tioa.name

    def locations(self) -> Tuple[str, ...]:
        """
        Locations of the compiled automaton.
        """

        return self.tioa.locations

    def moves_from(self, location: str, role: Optional[str]=None) -> List[Move]:
        """
        Moves leaving a location, optionally filtered by role.
        """

        return [m for m in self.moves[location] if role is None or m.role == role]

    def ceilings(self) -> Dict[str, int]:
        """
        Largest constant per clock, used for extrapolation.
        """

        consts = self.tioa.max_constants()

        return {c: consts.get(c, 0) for c in self.clocks}

    def empty(self) -> Federation:
        """
        Empty federation over our clocks.
        """

        return Federation.empty(self.clocks)

    def universe(self) -> Federation:
        """
        Universal federation over our clocks.
        """

        return Federation.universe(self.clocks)


@dataclass
class PrunedSpec(object):
    """
    PrunedSpec - A specification restricted to its consistent states.

        * base - The automaton that was pruned
        * cons - Location to consistent valuations, always inside the invariant

    Delays and edges are only allowed between consistent states,
    and a delay must stay consistent all along its path.
    """

    base: Tioa
    cons: Dict[str, Federation] = field(default_factory=dict)

    @property
    def name(self) -> str:
        """
        Display name of the pruned specification.
        """

        return f"prune({self.base.name})"

    def is_consistent(self) -> bool:
        """
        Determines if the zero valuation of the initial location survived pruning.
        """

        zero = [0] * len(self.base.clocks)

        return self.cons.get(self.base.initial, Federation.empty(self.base.clocks)).contains(zero)

    def semantics(self, clocks: Optional[Sequence[str]]=None) -> Semantics:
        """
        Compiles the pruned semantics.
        """

        return Semantics(self.base, clocks=clocks, cons=self.cons)

    def to_tioa(self) -> Tioa:
        """
        Turns this pruned specification back into an automaton.

        Consistent sets become the invariants, as federation guards.
        Locations with no consistent valuation are dropped,
        together with their edges.

        :return: Automaton with the pruned semantics
        :rtype: Tioa
        """

        alive = [l for l in self.base.locations if not self.cons.get(l, Federation.empty(self.base.clocks)).is_empty()]
        keep = set(alive)

        return replace(self.base,
                       name=self.name,
                       locations=tuple(alive),
                       edges=tuple(e for e in self.base.edges if e.source in keep and e.target in keep),
                       invariants={l: Region(self.cons[l].reduce()) for l in alive})


Operand = Union[Tioa, PrunedSpec]


def compile_operand(operand: Operand, clocks: Optional[Sequence[str]]=None) -> Semantics:
    """
    Compiles an automaton or a pruned specification.

    :param operand: Automaton or pruned specification
    :type operand: Union[Tioa, PrunedSpec]
    :param clocks: Clock list to compile over
    :type clocks: Optional[Sequence[str]]
    :return: Compiled semantics
    :rtype: Semantics
    """

    if isinstance(operand, PrunedSpec):

        return operand.semantics(clocks)

    return Semantics(operand, clocks)


def initial_state(sem: Union[Semantics, Tioa]) -> SymbolicState:
    """
    The initial symbolic state: initial location with every clock at zero.

    This is the raw point, callers apply 'delay_successor()' as they need.

    :param sem: Compiled semantics, or an automaton to compile
    :type sem: Union[Semantics, Tioa]
    :return: Initial state
    :rtype: SymbolicState
    """

    if isinstance(sem, Tioa):

        sem = Semantics(sem)

    return SymbolicState(sem.tioa.initial, Federation.zero(sem.clocks).intersect(sem.inv[sem.tioa.initial]))


def delay_successor(state: SymbolicState, inv: Federation) -> SymbolicState:
    """
    Delay closure of a state inside an invariant.

    A valuation v + d is reached if every point of v + [0, d] satisfies the invariant.

    :param state: State to delay from
    :type state: SymbolicState
    :param inv: Invariant of the state's location
    :type inv: Federation
    :return: State with every valuation reachable by delaying
    :rtype: SymbolicState
    """

    start = state.valuations.intersect(inv)

    return SymbolicState(state.location, post_t(start, inv.complement()))


def discrete_successors(state: SymbolicState, action: str, sem: Union[Semantics, Tioa]) -> List[SymbolicState]:
    """
    Successors of a state through one action.

    We return one state per edge that can fire from some valuation of the state.

    :param state: Source state
    :type state: SymbolicState
    :param action: Action to take
    :type action: str
    :param sem: Compiled semantics, or an automaton to compile
    :type sem: Union[Semantics, Tioa]
    :return: Successor states, empty if the action is disabled
    :rtype: List[SymbolicState]
    """

    if isinstance(sem, Tioa):

        sem = Semantics(sem)

    out = []

    for move in sem.moves_from(state.location):

        if move.action != action:

            continue

        image = state.valuations.intersect(move.enabled).reset(move.resets).intersect(sem.inv[move.target])

        if not image.is_empty():

            out.append(SymbolicState(move.target, image))

    return out


def reachable(sem: Union[Semantics, Tioa, PrunedSpec], extrapolate: bool=True,
              stats: Optional[Stats]=None) -> List[SymbolicState]:
    """
    Explores the zone graph.

    We keep a FIFO waiting list of delay closed, single zone states.
    A new state is dropped if a passed state at the same location includes it.
    Maximum-constant extrapolation keeps the graph finite.

    :param sem: What to explore
    :type sem: Union[Semantics, Tioa, PrunedSpec]
    :param extrapolate: Whether to apply extrapolation
    :type extrapolate: bool
    :param stats: Counters to update
    :type stats: Optional[Stats]
    :return: Passed states, in discovery order
    :rtype: List[SymbolicState]
    """

    if not isinstance(sem, Semantics):

        sem = compile_operand(sem)

    ceilings = sem.ceilings()
    passed: Dict[str, List[Federation]] = {loc: [] for loc in sem.locations()}
    found: List[SymbolicState] = []
    waiting = deque()

    def push(state: SymbolicState):

        closed = delay_successor(state, sem.inv[state.location]).valuations

        if extrapolate:

            closed = closed.extrapolate(ceilings)

        for zone in closed.reduce().zones:

            part = Federation(sem.clocks, [zone])

            if any(old.zones[0].includes(zone) for old in passed[state.location]):

                continue

            passed[state.location].append(part)
            waiting.append(SymbolicState(state.location, part))

    start = initial_state(sem)

    if not start.valuations.is_empty():

        push(start)

    while waiting:

        state = waiting.popleft()
        found.append(state)

        for action in dict.fromkeys(m.action for m in sem.moves_from(state.location)):

            for succ in discrete_successors(state, action, sem):

                push(succ)

    logger.debug("-- explored %s: %d symbolic states", sem.name, len(found))

    if stats is not None:

        stats.symbolic_states += len(found)

    return found


def reachable_locations(sem: Union[Semantics, Tioa, PrunedSpec]) -> List[str]:
    """
    Locations that appear in some reachable symbolic state, in discovery order.
    """

    seen: List[str] = []

    for state in reachable(sem):

        if state.location not in seen:

            seen.append(state.location)

    return seen
