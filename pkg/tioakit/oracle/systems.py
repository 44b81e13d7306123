"""
Explicit transition systems for the region oracle.

A system works on concrete valuations and never on zones.
Its states are a discrete part and a point, the point of a product
is the concatenation of the points of its operands.
Systems are built from automata and combined with the operators
on transition systems, so the oracle can be compared
against the symbolic operators on automata.

Every system answers three questions about a state:
which moves it has, where a delay step takes it,
and whether the state is admitted at all.
"""

from __future__ import annotations

from fractions import Fraction
from typing import FrozenSet, Hashable, List, Optional, Sequence, Set, Tuple

from tioakit.analysis.base import Point, reset_point
from tioakit.classes.base import Tioa
from tioakit.errors import AlphabetError, NotComposable, QuotientPreconditionError
from tioakit.operators import ERROR, UNIVERSAL, pair
from tioakit.oracle.regions import RegionKey, region_key

Discrete = Hashable
Move = Tuple[str, Discrete, Point]
State = Tuple[Discrete, Point]


class BaseSystem(object):
    """
    BaseSystem - Parent class for every explicit system.

    Subclasses set the attributes below and implement
    'admits()', 'moves()' and 'delay()'.
    Points handed to these methods are region representatives
    or slices of them, results are raw points.
    """

    def __init__(self, name: str, inputs: FrozenSet[str], outputs: FrozenSet[str], ceilings: Sequence[int]) -> None:

        self.name = name  # Display name
        self.inputs: FrozenSet[str] = frozenset(inputs)  # Input actions
        self.outputs: FrozenSet[str] = frozenset(outputs)  # Output actions
        self.ceilings: Tuple[int, ...] = tuple(ceilings)  # Largest constant per clock position

    def __repr__(self) -> str:

        return f"{type(self).__name__}({self.name!r})"

    @property
    def actions(self) -> FrozenSet[str]:
        """
        Every action, inputs and outputs together.
        """

        return self.inputs | self.outputs

    @property
    def dims(self) -> int:
        """
        Number of clocks.
        """

        return len(self.ceilings)

    def zero(self) -> Point:
        """
        Point with every clock at zero.
        """

        return tuple(Fraction(0) for _ in self.ceilings)

    def initial(self) -> Discrete:
        """
        Discrete part of the initial state, its point is zero.
        """

        raise NotImplementedError("Must be overridden in child class!")

    def discrete_states(self) -> List[Discrete]:
        """
        Every discrete part this system can be in.
        """

        raise NotImplementedError("Must be overridden in child class!")

    def label(self, disc: Discrete) -> str:
        """
        Printable name of a discrete part.
        """

        return str(disc)

    def admits(self, disc: Discrete, point: Point) -> bool:
        """
        Determines if a time delay of zero is possible in this state.
        """

        raise NotImplementedError("Must be overridden in child class!")

    def moves(self, disc: Discrete, point: Point) -> List[Move]:
        """
        Discrete transitions of a state, as (action, discrete part, point).
        """

        raise NotImplementedError("Must be overridden in child class!")

    def delay(self, disc: Discrete, point: Point, after: Point) -> Optional[State]:
        """
        Lets time pass from 'point' to 'after', in the next region.

        The default asks for both ends to be admitted,
        regions are uniform so the points in between follow.

        :param disc: Discrete part
        :type disc: Discrete
        :param point: Current point
        :type point: Point
        :param after: A point of the time successor region
        :type after: Point
        :return: The state reached, or None if the delay is impossible
        :rtype: Optional[State]
        """

        if self.admits(disc, point) and self.admits(disc, after):

            return disc, after

        return None


class AutomatonSystem(BaseSystem):
    """
    AutomatonSystem - The transition system of an automaton.

    Every location is a state, with any valuation.
    Edges fire when the guard holds and the reset valuation
    satisfies the target invariant, the source invariant plays no role.
    """

    def __init__(self, tioa: Tioa) -> None:

        consts = tioa.max_constants()

        super().__init__(tioa.name, tioa.inputs, tioa.outputs, [consts[c] for c in tioa.clocks])

        self.tioa = tioa  # Automaton we run

    def _valuation(self, point: Point):

        return dict(zip(self.tioa.clocks, point))

    def initial(self) -> Discrete:

        return self.tioa.initial

    def discrete_states(self) -> List[Discrete]:

        return list(self.tioa.locations)

    def admits(self, disc: Discrete, point: Point) -> bool:

        return self.tioa.invariant(disc).holds(self._valuation(point))

    def moves(self, disc: Discrete, point: Point) -> List[Move]:

        out: List[Move] = []
        val = self._valuation(point)

        for edge in self.tioa.edges_from(disc):

            if not edge.guard.holds(val):

                continue

            after = reset_point(point, self.tioa.clocks, edge.resets)

            if not self.tioa.invariant(edge.target).holds(self._valuation(after)):

                continue

            move = (edge.action, edge.target, after)

            if move not in out:

                out.append(move)

        return out


class ProductSystem(BaseSystem):
    """
    ProductSystem - Two systems running side by side.

    Shared actions move both operands, other actions move the operand
    that knows them, and delays need both operands to follow.
    Subclasses decide the alphabet.
    """

    def __init__(self, left: BaseSystem, right: BaseSystem, name: str,
                 inputs: FrozenSet[str], outputs: FrozenSet[str]) -> None:

        super().__init__(name, inputs, outputs, left.ceilings + right.ceilings)

        self.left = left  # First operand
        self.right = right  # Second operand
        self.shared: FrozenSet[str] = left.actions & right.actions  # Synchronised actions

    def split(self, point: Point) -> Tuple[Point, Point]:
        """
        Cuts a point into the points of the operands.
        """

        return tuple(point[:self.left.dims]), tuple(point[self.left.dims:])

    def initial(self) -> Discrete:

        return self.left.initial(), self.right.initial()

    def discrete_states(self) -> List[Discrete]:

        return [(a, b) for a in self.left.discrete_states() for b in self.right.discrete_states()]

    def label(self, disc: Discrete) -> str:

        return pair(self.left.label(disc[0]), self.right.label(disc[1]))

    def admits(self, disc: Discrete, point: Point) -> bool:

        p1, p2 = self.split(point)

        return self.left.admits(disc[0], p1) and self.right.admits(disc[1], p2)

    def moves(self, disc: Discrete, point: Point) -> List[Move]:

        d1, d2 = disc
        p1, p2 = self.split(point)
        first, second = self.left.moves(d1, p1), self.right.moves(d2, p2)
        out: List[Move] = []

        for action, t1, q1 in first:

            if action in self.shared:

                out.extend((action, (t1, t2), q1 + q2) for a2, t2, q2 in second if a2 == action)

            else:

                out.append((action, (t1, d2), q1 + p2))

        out.extend((action, (d1, t2), p1 + q2) for action, t2, q2 in second if action not in self.shared)

        return out

    def delay(self, disc: Discrete, point: Point, after: Point) -> Optional[State]:

        p1, p2 = self.split(point)
        a1, a2 = self.split(after)
        first = self.left.delay(disc[0], p1, a1)
        second = self.right.delay(disc[1], p2, a2)

        if first is None or second is None:

            return None

        return (first[0], second[0]), first[1] + second[1]


class ConjunctionSystem(ProductSystem):
    """
    ConjunctionSystem - Conjunction of two transition systems.

    Inputs and outputs are the unions of those of the operands.
    """

    def __init__(self, left: BaseSystem, right: BaseSystem) -> None:

        clash = (left.inputs & right.outputs) | (left.outputs & right.inputs)

        if clash:

            raise AlphabetError(f"Actions {sorted(clash)} are inputs on one side and outputs on the other",
                                f"{left.name} && {right.name}")

        super().__init__(left, right, f"({left.name} && {right.name})",
                         left.inputs | right.inputs, left.outputs | right.outputs)


class CompositionSystem(ProductSystem):
    """
    CompositionSystem - Parallel composition of two transition systems.

    An input of one side that the other side outputs becomes an output.
    """

    def __init__(self, left: BaseSystem, right: BaseSystem) -> None:

        clash = left.outputs & right.outputs

        if clash:

            raise NotComposable(f"Actions {sorted(clash)} are outputs of both sides",
                                f"{left.name} || {right.name}")

        outputs = left.outputs | right.outputs
        inputs = (left.inputs - right.outputs) | (right.inputs - left.outputs)

        super().__init__(left, right, f"({left.name} || {right.name})", inputs, outputs)


class QuotientSystem(BaseSystem):
    """
    QuotientSystem - Quotient of two transition systems, T \\\\ S.

    The states are the pairs of T and S plus a universal state
    and an error state, both of which forget the clocks:

        1. shared actions move both sides
        2. actions of S alone move S
        3. actions of T alone move T
        4. delays move both sides
        5. an output of S that S can not take leads to the universal state
        6. a delay S can not take leads to the universal state
        7. a shared output S can take but T can not leads to the error state
        8. the universal state takes every action and every delay
        9. the error state takes inputs only, and no delay

    With 'fresh_input' set, that action is added to the inputs
    and loops everywhere, mirroring the extra input of the automaton quotient.
    """

    def __init__(self, dividend: BaseSystem, divisor: BaseSystem, fresh_input: Optional[str]=None) -> None:

        clash = divisor.outputs & dividend.inputs

        if clash:

            raise QuotientPreconditionError(f"Actions {sorted(clash)} are outputs of the divisor and inputs of the dividend",
                                            f"{dividend.name} \\\\ {divisor.name}")

        inputs = dividend.inputs | divisor.outputs
        outputs = (dividend.outputs - divisor.outputs) | (divisor.inputs - dividend.inputs)

        if fresh_input is not None:

            inputs = inputs | {fresh_input}

        super().__init__(f"({dividend.name} \\\\ {divisor.name})", inputs, outputs,
                         dividend.ceilings + divisor.ceilings)

        self.spec_t = dividend  # T
        self.spec_s = divisor  # S
        self.fresh_input = fresh_input  # Extra input, or None

    def split(self, point: Point) -> Tuple[Point, Point]:
        """
        Cuts a point into the points of T and S.
        """

        return tuple(point[:self.spec_t.dims]), tuple(point[self.spec_t.dims:])

    def initial(self) -> Discrete:

        return self.spec_t.initial(), self.spec_s.initial()

    def discrete_states(self) -> List[Discrete]:

        return [(a, b) for a in self.spec_t.discrete_states() for b in self.spec_s.discrete_states()] + \
            [UNIVERSAL, ERROR]

    def label(self, disc: Discrete) -> str:

        if disc in (UNIVERSAL, ERROR):

            return disc

        return pair(self.spec_t.label(disc[0]), self.spec_s.label(disc[1]))

    def admits(self, disc: Discrete, point: Point) -> bool:

        if disc in (UNIVERSAL, ERROR):

            return True

        pt, ps = self.split(point)

        return self.spec_t.admits(disc[0], pt) and self.spec_s.admits(disc[1], ps)

    def moves(self, disc: Discrete, point: Point) -> List[Move]:

        zero = self.zero()

        if disc == UNIVERSAL:

            return [(a, UNIVERSAL, zero) for a in sorted(self.actions)]

        if disc == ERROR:

            return [(a, ERROR, zero) for a in sorted(self.inputs)]

        dt, ds = disc
        pt, ps = self.split(point)
        act_t, act_s = self.spec_t.actions, self.spec_s.actions
        by_t, by_s = _group(self.spec_t.moves(dt, pt)), _group(self.spec_s.moves(ds, ps))
        out: List[Move] = []

        for action in sorted(act_t | act_s):

            tm, sm = by_t.get(action, []), by_s.get(action, [])

            # Rules 1, 2 and 3:

            if action in act_t and action in act_s:

                out.extend((action, (t1, s1), q1 + q2) for t1, q1 in tm for s1, q2 in sm)

            elif action in act_s:

                out.extend((action, (dt, s1), pt + q2) for s1, q2 in sm)

            else:

                out.extend((action, (t1, ds), q1 + ps) for t1, q1 in tm)

            # Rule 5:

            if action in self.spec_s.outputs and not sm:

                out.append((action, UNIVERSAL, zero))

            # Rule 7:

            if action in self.spec_s.outputs and action in self.spec_t.outputs and sm and not tm:

                out.append((action, ERROR, zero))

        if self.fresh_input is not None:

            out.append((self.fresh_input, disc, point))

        return out

    def delay(self, disc: Discrete, point: Point, after: Point) -> Optional[State]:

        if disc == UNIVERSAL:

            return UNIVERSAL, self.zero()

        if disc == ERROR:

            return None

        pt, ps = self.split(point)
        at, as_ = self.split(after)
        moved_s = self.spec_s.delay(disc[1], ps, as_)

        # Rule 6:

        if moved_s is None:

            return UNIVERSAL, self.zero()

        moved_t = self.spec_t.delay(disc[0], pt, at)

        if moved_t is None:

            return None

        return (moved_t[0], moved_s[0]), moved_t[1] + moved_s[1]


class PrunedSystem(BaseSystem):
    """
    PrunedSystem - A system restricted to a set of consistent states.

    The consistent states are given as (discrete part, region key) pairs,
    see 'tioakit.oracle.checks.prune()'.
    Moves and delay steps must start and end inside that set.
    """

    def __init__(self, base: BaseSystem, cons: Set[Tuple[Discrete, RegionKey]]) -> None:

        super().__init__(f"prune({base.name})", base.inputs, base.outputs, base.ceilings)

        self.base = base  # System that was pruned
        self.cons = frozenset(cons)  # Consistent states

    def _inside(self, disc: Discrete, point: Point) -> bool:

        return (disc, region_key(point, self.ceilings)) in self.cons

    def initial(self) -> Discrete:

        return self.base.initial()

    def discrete_states(self) -> List[Discrete]:

        return self.base.discrete_states()

    def label(self, disc: Discrete) -> str:

        return self.base.label(disc)

    def admits(self, disc: Discrete, point: Point) -> bool:

        return self._inside(disc, point) and self.base.admits(disc, point)

    def moves(self, disc: Discrete, point: Point) -> List[Move]:

        if not self._inside(disc, point):

            return []

        return [(a, t, q) for a, t, q in self.base.moves(disc, point) if self._inside(t, q)]

    def delay(self, disc: Discrete, point: Point, after: Point) -> Optional[State]:

        if not self._inside(disc, point):

            return None

        moved = self.base.delay(disc, point, after)

        if moved is None or not self._inside(*moved):

            return None

        return moved


def _group(moves: List[Move]):

    out = {}

    for action, disc, point in moves:

        out.setdefault(action, []).append((disc, point))

    return out
