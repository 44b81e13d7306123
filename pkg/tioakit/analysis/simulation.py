"""
Refinement and bisimulation as games on the product of two specifications.

Both relations are decided by computing the losing pairs:
a pair of states is lost if the challenger has a move the other side
can not answer, or can delay further than the other side,
or can move to a pair that is already lost.
Specifications are deterministic, so the answer to every move is unique,
and the relation holds if the initial pair is not lost.

Losing pairs are computed backward over federations, with one layer per iteration.
The layers give us counterexamples, and the complement of the
fixpoint, restricted to what the initial pair can reach, is the witness.

Refinement S <= T lets T challenge with inputs and S with outputs and delays.
Actions only one side knows move that side alone.
Bisimulation lets both sides challenge with every move.
"""

from __future__ import annotations

import logging

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, List, Optional, Tuple

from tioakit.analysis.base import (Point, StateSet, action_step, delay_step, first_delay, regrid, reset_point,
                                   shift, zero_point)
from tioakit.classes.base import Stats, Tioa, Verdict
from tioakit.errors import RefinementAlphabetError
from tioakit.operators import as_tioa, pair, separate_clocks
from tioakit.semantics import Move, Operand, Semantics
from tioakit.zones import Federation, post_t, pred_t

logger = logging.getLogger(__name__)

LEFT = 'left'
RIGHT = 'right'
BOTH = 'both'


@dataclass(frozen=True)
class Step(object):
    """
    Step - A move of the product game.

        * source - Product location
        * action - Action name
        * role - Role of the action on the side that moves
        * side - LEFT, RIGHT or BOTH
        * enabled - Valuations where the step is possible
        * resets - Clocks reset by the step
        * target - Product location reached
    """

    source: str
    action: str
    role: str
    side: str
    enabled: Federation
    resets: FrozenSet[str]
    target: str


@dataclass(frozen=True)
class Challenge(object):
    """
    Challenge - Valuations where a move of one side has no answer.

        * action - Action name
        * role - Role of the action on the challenging side
        * side - Challenging side
        * valuations - Where the answer is missing
    """

    action: str
    role: str
    side: str
    valuations: Federation


class SimulationGame(object):
    """
    SimulationGame - The product of two specifications, ready to be solved.

    Clocks of both sides are kept apart, shared names are renamed first.
    With 'mutual' set, both sides challenge everything (bisimulation),
    otherwise we play the alternating refinement game with the left
    side as the refining specification.
    """

    def __init__(self, left: Operand, right: Operand, mutual: bool=False) -> None:

        first, second = separate_clocks(as_tioa(left), as_tioa(right))

        self.mutual = mutual  # Bisimulation if True, refinement otherwise
        self.clocks: Tuple[str, ...] = first.clocks + second.clocks  # Joint clock list
        self.left = Semantics(first, self.clocks)  # Refining side
        self.right = Semantics(second, self.clocks)  # Refined side
        self.pairs: Dict[str, Tuple[str, str]] = {}  # Product location to its components
        self.valid: Dict[str, Federation] = {}  # Both invariants hold
        self.outside: Dict[str, Federation] = {}  # Complement of 'valid'
        self.steps: Dict[str, List[Step]] = {}  # Outgoing steps
        self.challenges: Dict[str, List[Challenge]] = {}  # Unanswered moves
        self.delay_loss: Dict[str, Federation] = {}  # Lost by delaying alone

        for ls in first.locations:

            for lt in second.locations:

                self._build(ls, lt)

        self.initial = pair(first.initial, second.initial)

    @property
    def name(self) -> str:
        """
        Display name of the game.
        """

        return f"{self.left.name} {'==' if self.mutual else '<='} {self.right.name}"

    def _challengers(self, action: str) -> Tuple[str, ...]:

        if self.mutual:

            return LEFT, RIGHT

        if action in self.right.tioa.inputs:

            return (RIGHT,)

        return (LEFT,)

    def _build(self, ls: str, lt: str):

        here = pair(ls, lt)
        valid = self.left.inv[ls].intersect(self.right.inv[lt])

        self.pairs[here] = (ls, lt)
        self.valid[here] = valid
        self.outside[here] = valid.complement()
        self.steps[here] = steps = []
        self.challenges[here] = challenges = []

        left_alpha, right_alpha = self.left.tioa.alphabet, self.right.tioa.alphabet
        by_action: Dict[str, Tuple[List[Move], List[Move]]] = {
            a: ([], []) for a in sorted(left_alpha.actions | right_alpha.actions)}

        for move in self.left.moves_from(ls):

            by_action[move.action][0].append(move)

        for move in self.right.moves_from(lt):

            by_action[move.action][1].append(move)

        for action, (lm, rm) in by_action.items():

            if action in left_alpha.actions and action in right_alpha.actions:

                # Both sides move together:

                for m1 in lm:

                    for m2 in rm:

                        enabled = m1.enabled.intersect(m2.enabled).intersect(valid)

                        if not enabled.is_empty():

                            steps.append(Step(here, action, m1.role, BOTH, enabled, m1.resets | m2.resets,
                                              pair(m1.target, m2.target)))

                # Moves with no answer:

                mine = {LEFT: _union(lm, valid), RIGHT: _union(rm, valid)}

                for side in self._challengers(action):

                    other = RIGHT if side == LEFT else LEFT
                    missing = mine[side].subtract(mine[other])

                    if not missing.is_empty():

                        role = (lm[0] if side == LEFT else rm[0]).role
                        challenges.append(Challenge(action, role, side, missing))

                continue

            # One side moves alone:

            for move, side in [(m, LEFT) for m in lm] + [(m, RIGHT) for m in rm]:

                enabled = move.enabled.intersect(valid)

                if enabled.is_empty():

                    continue

                target = pair(move.target, lt) if side == LEFT else pair(ls, move.target)
                steps.append(Step(here, action, move.role, side, enabled, move.resets, target))

        # Delays one side can take and the other can not:

        inv_l, inv_r = self.left.inv[ls], self.right.inv[lt]
        loss = pred_t(inv_l.subtract(inv_r), self.left.outside[ls])

        if self.mutual:

            loss = loss.union(pred_t(inv_r.subtract(inv_l), self.right.outside[lt]))

        self.delay_loss[here] = loss.intersect(valid).reduce()

    def _attractor(self, here: str, lost: StateSet) -> Federation:

        # Valuations from which a single move reaches a lost pair or has no answer:

        acc = Federation.empty(self.clocks)

        for challenge in self.challenges[here]:

            acc = acc.union(challenge.valuations)

        for step in self.steps[here]:

            if step.target in lost:

                acc = acc.union(step.enabled.intersect(lost.get(step.target).reset_inverse(step.resets)))

        return acc

    def solve(self, stats: Optional[Stats]=None, stop_early: bool=False) -> List[StateSet]:
        """
        Computes the losing pairs, one layer per iteration.

        :param stats: Counters to update
        :type stats: Optional[Stats]
        :param stop_early: Stop once the initial pair is lost
        :type stop_early: bool
        :return: The increasing chain of lost sets, starting with the empty set
        :rtype: List[StateSet]
        """

        layers = [StateSet(self.clocks)]
        start = zero_point(self.clocks)

        while True:

            lost = layers[-1]
            nxt = {}

            for here in self.pairs:

                part = self.delay_loss[here].union(lost.get(here))
                target = self._attractor(here, lost)

                if not target.is_empty():

                    part = part.union(pred_t(target, self.outside[here]).intersect(self.valid[here]))

                nxt[here] = part.reduce()

            nxt = StateSet(self.clocks, nxt)

            if stats is not None:

                stats.fixpoint_iterations += 1

            if nxt.equals(lost):

                break

            layers.append(nxt)
            logger.debug("++ losing layer %d of %s: %d zones", len(layers) - 1, self.name, nxt.zone_count())

            if stop_early and nxt.contains(self.initial, start):

                break

        if stats is not None:

            stats.symbolic_states += layers[-1].zone_count()

        return layers

    def witness(self, lost: StateSet, stats: Optional[Stats]=None) -> List[Dict[str, str]]:
        """
        Winning pairs reachable from the initial pair.

        We explore forward through the steps, staying inside the winning pairs,
        and extrapolate with the largest constants so the search ends.

        :param lost: Losing pairs, the result of 'solve()'
        :type lost: StateSet
        :param stats: Counters to update
        :type stats: Optional[Stats]
        :return: Entries {'left', 'right', 'zone'}, in discovery order
        :rtype: List[Dict[str, str]]
        """

        ceilings = dict(self.left.ceilings())
        ceilings.update(self.right.ceilings())

        good = {here: self.valid[here].subtract(lost.get(here)) for here in self.pairs}
        reach: Dict[str, Federation] = {}
        waiting = deque()

        def push(here: str, fed: Federation):

            closed = post_t(fed.intersect(good[here]), good[here].complement()).extrapolate(ceilings)
            closed = closed.intersect(good[here]).reduce()
            old = reach.get(here, Federation.empty(self.clocks))

            if closed.is_empty() or closed.issubset(old):

                return

            reach[here] = old.union(closed).reduce()
            waiting.append(here)

        push(self.initial, Federation.zero(self.clocks))

        while waiting:

            here = waiting.popleft()

            for step in self.steps[here]:

                push(step.target, reach[here].intersect(step.enabled).reset(step.resets))

        if stats is not None:

            stats.symbolic_states += sum(len(f.zones) for f in reach.values())

        return [{'left': self.pairs[h][0], 'right': self.pairs[h][1], 'zone': f.describe()}
                for h, f in reach.items()]

    def counterexample(self, layers: List[StateSet]) -> List[Dict[str, str]]:
        """
        A trace of moves and delays that takes the initial pair to a loss.

        At each stage we take the earliest move that lowers the layer,
        an unanswered move or delay ends the trace.

        :param layers: Result of 'solve()', the initial pair must be lost
        :type layers: List[StateSet]
        :return: Trace entries
        :rtype: List[Dict[str, str]]
        """

        here, point = self.initial, zero_point(self.clocks)
        level = _level(layers, here, point)
        trace: List[Dict[str, str]] = []
        grid = len(self.clocks) + 1
        now = Fraction(0)
        marks = [(now, point)]

        while 0 < level < len(layers):

            below = layers[level - 1]
            valid, outside = self.valid[here], self.outside[here]
            options: List[Tuple[Fraction, int, object]] = []

            # Delays the other side can not follow:

            ls, lt = self.pairs[here]
            inv_l, inv_r = self.left.inv[ls], self.right.inv[lt]
            lone = [(inv_l.subtract(inv_r), self.left.outside[ls])]

            if self.mutual:

                lone.append((inv_r.subtract(inv_l), self.right.outside[lt]))

            for target, avoid in lone:

                d = first_delay(point, target, avoid, grid)

                if d is not None:

                    options.append((d, 0, None))

            # Unanswered moves:

            for challenge in self.challenges[here]:

                d = first_delay(point, challenge.valuations, outside, grid)

                if d is not None:

                    options.append((d, 1, challenge))

            # Moves to a lower layer:

            for step in self.steps[here]:

                if step.target not in below:

                    continue

                land = step.enabled.intersect(below.get(step.target).reset_inverse(step.resets)).intersect(valid)
                d = first_delay(point, land, outside, grid)

                if d is not None:

                    options.append((d, 2, step))

            if not options:

                logger.warning("Could not extend the counterexample at %s", here)

                break

            d, kind, what = min(options, key=lambda o: (o[0], o[1]))
            trace.append(delay_step(d))
            point, now = shift(point, d), now + d
            marks.append((now, point))

            if kind == 0:

                break

            trace.append(action_step(what.action, what.role))

            if kind == 1:

                break

            here, point = what.target, reset_point(point, self.clocks, what.resets)
            marks.append((now, point))
            level = min(_level(layers, here, point), level - 1)

        return regrid(trace, marks, grid)

    def verdict(self, stats: Optional[Stats]=None) -> Verdict:
        """
        Solves the game and packages the result.

        :param stats: Counters to update
        :type stats: Optional[Stats]
        :return: Verdict with a witness or a counterexample
        :rtype: Verdict
        """

        layers = self.solve(stats, stop_early=True)

        if layers[-1].contains(self.initial, zero_point(self.clocks)):

            logger.debug("-- %s fails after %d layers", self.name, len(layers) - 1)

            return Verdict(False, counterexample=self.counterexample(layers))

        logger.debug("-- %s holds", self.name)

        return Verdict(True, witness=self.witness(layers[-1], stats))


def _union(moves: List[Move], valid: Federation) -> Federation:

    acc = Federation.empty(valid.clocks)

    for move in moves:

        acc = acc.union(move.enabled)

    return acc.intersect(valid)


def _level(layers: List[StateSet], here: str, point: Point) -> int:

    for num, layer in enumerate(layers):

        if layer.contains(here, point):

            return num

    return len(layers)


def check_refinement_alphabets(refining: Tioa, refined: Tioa):
    """
    Checks the alphabet conditions of refinement.

    Inputs of the refining side must be inputs of the refined side,
    outputs of the refined side must be outputs of the refining side,
    and no action may switch roles.

    :param refining: Specification S in S <= T
    :type refining: Tioa
    :param refined: Specification T in S <= T
    :type refined: Tioa
    :raises RefinementAlphabetError: If a condition fails
    """

    where = f"{refining.name} <= {refined.name}"
    problems = [
        (refining.inputs & refined.outputs, "are inputs of the left side but outputs of the right side"),
        (refining.outputs & refined.inputs, "are outputs of the left side but inputs of the right side"),
        (refining.inputs - refined.inputs, "are inputs of the left side only"),
        (refined.outputs - refining.outputs, "are outputs of the right side only"),
    ]

    for actions, text in problems:

        if actions:

            raise RefinementAlphabetError(f"Actions {sorted(actions)} {text}", where)


def refinement(refining: Operand, refined: Operand, stats: Optional[Stats]=None) -> Verdict:
    """
    Decides if 'refining' refines 'refined'.

    :param refining: Specification S in S <= T
    :type refining: Union[Tioa, PrunedSpec]
    :param refined: Specification T in S <= T
    :type refined: Union[Tioa, PrunedSpec]
    :param stats: Counters to update
    :type stats: Optional[Stats]
    :return: Verdict, with the reachable winning pairs or a counterexample trace
    :rtype: Verdict
    :raises RefinementAlphabetError: If the alphabets do not allow refinement
    """

    check_refinement_alphabets(as_tioa(refining), as_tioa(refined))

    return SimulationGame(refining, refined).verdict(stats)


def bisimilar(first: Operand, second: Operand, stats: Optional[Stats]=None) -> Verdict:
    """
    Decides if two specifications are bisimilar.

    Actions known to one side only move that side,
    so the alphabets may differ.

    :param first: First specification
    :type first: Union[Tioa, PrunedSpec]
    :param second: Second specification
    :type second: Union[Tioa, PrunedSpec]
    :param stats: Counters to update
    :type stats: Optional[Stats]
    :return: Verdict, with the reachable related pairs or a counterexample trace
    :rtype: Verdict
    """

    return SimulationGame(first, second, mutual=True).verdict(stats)
