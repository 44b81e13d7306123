"""
Consistency of specifications.

A specification is consistent if some implementation refines it.
We decide this with the usual timed game: the environment drives inputs,
the specification answers with delays and outputs,
and a state is lost if the environment can force it into an error.

The lost states are the least fixpoint of the controllable predecessor operator,
computed here location by location over federations:

    pi(X) = err(X) | Pred_t(X | ipred(X), opred(~X))

Everything outside the fixpoint is consistent, and adversarial pruning
keeps exactly those states.
"""

from __future__ import annotations

import logging

from fractions import Fraction
from typing import List, Optional, Tuple, Union

from tioakit.analysis.base import (Point, StateSet, action_step, delay_step, first_delay, regrid, reset_point,
                                   shift, zero_point)
from tioakit.classes.base import INPUT, OUTPUT, ImplementationReport, Stats, Verdict, Violation
from tioakit.errors import InconsistentSpecification
from tioakit.semantics import Move, Operand, PrunedSpec, Semantics, compile_operand
from tioakit.zones import Federation, pred_t

logger = logging.getLogger(__name__)

Spec = Union[Semantics, Operand]


def as_semantics(spec: Spec) -> Semantics:
    """
    Compiles an operand, semantics objects are passed through.
    """

    return spec if isinstance(spec, Semantics) else compile_operand(spec)


def all_states(spec: Spec) -> StateSet:
    """
    Every state of a specification: each location with its invariant.
    """

    sem = as_semantics(spec)

    return StateSet(sem.clocks, sem.inv)


def no_states(spec: Spec) -> StateSet:
    """
    The empty StateSet over the clocks of a specification.
    """

    return StateSet(as_semantics(spec).clocks)


def bounded(sem: Semantics, location: str) -> Federation:
    """
    Valuations of a location that can not delay forever.
    """

    return sem.inv[location].intersect(sem.outside[location].down())


def _through(sem: Semantics, move: Move, target: Federation) -> Federation:

    # Valuations where the move fires and lands in 'target':

    land = target.intersect(sem.inv[move.target]).reset_inverse(move.resets)

    return sem.inv[move.source].intersect(move.guard).intersect(land)


def _predecessors(sem: Semantics, x: StateSet, role: str) -> StateSet:

    out = {}

    for loc in sem.locations():

        acc = sem.empty()

        for move in sem.moves_from(loc, role):

            if move.target in x:

                acc = acc.union(_through(sem, move, x.get(move.target)))

        out[loc] = acc

    return StateSet(sem.clocks, out)


def input_predecessors(spec: Spec, x: StateSet) -> StateSet:
    """
    States with an input transition into 'x'.

    :param spec: Specification
    :type spec: Union[Semantics, Tioa, PrunedSpec]
    :param x: Target states
    :type x: StateSet
    :return: Input predecessors
    :rtype: StateSet
    """

    return _predecessors(as_semantics(spec), x, INPUT)


def output_predecessors(spec: Spec, x: StateSet) -> StateSet:
    """
    States with an output transition into 'x'.

    :param spec: Specification
    :type spec: Union[Semantics, Tioa, PrunedSpec]
    :param x: Target states
    :type x: StateSet
    :return: Output predecessors
    :rtype: StateSet
    """

    return _predecessors(as_semantics(spec), x, OUTPUT)


def timed_predecessors(spec: Spec, good: StateSet, bad: StateSet) -> StateSet:
    """
    States that reach 'good' by delaying, without meeting 'bad' on the way.

    The delay itself must be allowed, so the invariant holds all along,
    and only the points before the end of the delay must avoid 'bad'.

    :param spec: Specification
    :type spec: Union[Semantics, Tioa, PrunedSpec]
    :param good: Target states
    :type good: StateSet
    :param bad: States to avoid
    :type bad: StateSet
    :return: Timed predecessors
    :rtype: StateSet
    """

    sem = as_semantics(spec)
    out = {}

    for loc in sem.locations():

        target = good.get(loc).intersect(sem.inv[loc])

        if target.is_empty():

            continue

        out[loc] = pred_t(target, bad.get(loc).union(sem.outside[loc])).intersect(sem.inv[loc])

    return StateSet(sem.clocks, out)


def error_states(spec: Spec, x: StateSet) -> StateSet:
    """
    States that must leave through an output, where every output leads into 'x'.

    A state is an error state if it can not delay forever,
    and no output it can reach by delaying escapes 'x'.
    With 'x' empty these are the immediate errors.

    :param spec: Specification
    :type spec: Union[Semantics, Tioa, PrunedSpec]
    :param x: States the outputs are allowed to reach
    :type x: StateSet
    :return: Error states relative to 'x'
    :rtype: StateSet
    """

    sem = as_semantics(spec)
    out = {}

    for loc in sem.locations():

        stuck = bounded(sem, loc)

        if stuck.is_empty():

            continue

        # Outputs that escape 'x':

        escape = sem.empty()

        for move in sem.moves_from(loc, OUTPUT):

            escape = escape.union(_through(sem, move, sem.inv[move.target].subtract(x.get(move.target))))

        out[loc] = stuck.subtract(pred_t(escape, sem.outside[loc])) if not escape.is_empty() else stuck

    return StateSet(sem.clocks, out)


def immediate_errors(spec: Spec) -> StateSet:
    """
    States that can neither delay forever nor reach an enabled output by delaying.

    :param spec: Specification
    :type spec: Union[Semantics, Tioa, PrunedSpec]
    :return: Immediate error states
    :rtype: StateSet
    """

    return error_states(spec, no_states(spec))


def controllable_predecessors(spec: Spec, x: StateSet) -> StateSet:
    """
    One application of the controllable predecessor operator.

    A state is added if it is an error state relative to 'x',
    or if it can delay into 'x', or to an input leading into 'x',
    before any output leading out of 'x' becomes available.

    :param spec: Specification
    :type spec: Union[Semantics, Tioa, PrunedSpec]
    :param x: Current set of lost states
    :type x: StateSet
    :return: The next set of lost states
    :rtype: StateSet
    """

    sem = as_semantics(spec)
    escapes = output_predecessors(sem, all_states(sem).subtract(x))
    forced = timed_predecessors(sem, x.union(input_predecessors(sem, x)), escapes)

    return error_states(sem, x).union(forced)


def _initial(sem: Semantics) -> Tuple[str, Point]:

    return sem.tioa.initial, zero_point(sem.clocks)


def inconsistent_layers(spec: Spec, stats: Optional[Stats]=None, stop_early: bool=False) -> List[StateSet]:
    """
    Iterates the controllable predecessor operator from the empty set.

    The first entry is the empty set, the second the immediate errors,
    and each later entry one more application of the operator.

    :param spec: Specification
    :type spec: Union[Semantics, Tioa, PrunedSpec]
    :param stats: Counters to update
    :type stats: Optional[Stats]
    :param stop_early: Stop as soon as the initial state is lost
    :type stop_early: bool
    :return: The increasing chain of lost state sets
    :rtype: List[StateSet]
    """

    sem = as_semantics(spec)
    loc, point = _initial(sem)
    layers = [no_states(sem)]

    while True:

        nxt = controllable_predecessors(sem, layers[-1]).union(layers[-1]).reduce()

        if stats is not None:

            stats.fixpoint_iterations += 1

        if nxt.equals(layers[-1]):

            break

        layers.append(nxt)
        logger.debug("++ inconsistent layer %d of %s: %d zones", len(layers) - 1, sem.name, nxt.zone_count())

        if stop_early and nxt.contains(loc, point):

            break

    if stats is not None:

        stats.symbolic_states += layers[-1].zone_count()

    logger.debug("-- %s: %d layers", sem.name, len(layers) - 1)

    return layers


def inconsistent_states(spec: Spec, stats: Optional[Stats]=None) -> StateSet:
    """
    Least fixpoint of the controllable predecessor operator.

    :param spec: Specification
    :type spec: Union[Semantics, Tioa, PrunedSpec]
    :param stats: Counters to update
    :type stats: Optional[Stats]
    :return: Inconsistent states
    :rtype: StateSet
    """

    return inconsistent_layers(spec, stats)[-1]


def consistent_states(spec: Spec, stats: Optional[Stats]=None) -> StateSet:
    """
    Every state outside the inconsistent fixpoint.
    """

    return all_states(spec).subtract(inconsistent_states(spec, stats)).reduce()


def _level(layers: List[StateSet], location: str, point: Point) -> int:

    for num, layer in enumerate(layers):

        if layer.contains(location, point):

            return num

    return len(layers)


def _losing_trace(sem: Semantics, layers: List[StateSet]) -> List[dict]:

    # Walk down the layers from the initial state to an immediate error:

    loc, point = _initial(sem)
    level = _level(layers, loc, point)
    trace: List[dict] = []
    grid = len(sem.clocks) + 1
    now = Fraction(0)
    marks = [(now, point)]

    while level > 1:

        below = layers[level - 1]
        options: List[Tuple[Fraction, Optional[Move]]] = []

        if error_states(sem, below).contains(loc, point):

            # Every reachable output leads below:

            for move in sem.moves_from(loc, OUTPUT):

                d = first_delay(point, move.enabled.intersect(sem.inv[loc]), sem.outside[loc], grid)

                if d is not None:

                    options.append((d, move))

        else:

            # Delay into the layer below, or to an input leading there:

            avoid = output_predecessors(sem, all_states(sem).subtract(below)).get(loc).union(sem.outside[loc])
            d = first_delay(point, below.get(loc).intersect(sem.inv[loc]), avoid, grid)

            if d is not None:

                options.append((d, None))

            for move in sem.moves_from(loc, INPUT):

                d = first_delay(point, _through(sem, move, below.get(move.target)), avoid, grid)

                if d is not None:

                    options.append((d, move))

        if not options:

            logger.warning("Could not extend the trace at %s, %s", loc, point)

            break

        d, move = min(options, key=lambda o: o[0])
        point, now = shift(point, d), now + d
        trace.append(delay_step(d))
        marks.append((now, point))

        if move is not None:

            trace.append(action_step(move.action, move.role))
            loc, point = move.target, reset_point(point, sem.clocks, move.resets)
            marks.append((now, point))

        level = min(_level(layers, loc, point), level - 1)

    return regrid(trace, marks, grid)


def consistency(spec: Spec, stats: Optional[Stats]=None) -> Verdict:
    """
    Decides if a specification is consistent.

    It is consistent if the initial state, with every clock at zero,
    is not in the inconsistent fixpoint.
    When it is not, the counterexample is a trace of delays and actions
    that takes the initial state into an immediate error,
    whatever outputs the specification chooses on the way.

    :param spec: Specification
    :type spec: Union[Semantics, Tioa, PrunedSpec]
    :param stats: Counters to update
    :type stats: Optional[Stats]
    :return: Verdict with a counterexample when inconsistent
    :rtype: Verdict
    """

    sem = as_semantics(spec)
    loc, point = _initial(sem)
    layers = inconsistent_layers(sem, stats, stop_early=True)

    if not layers[-1].contains(loc, point):

        return Verdict(True)

    return Verdict(False, counterexample=_losing_trace(sem, layers))


def prune_adversarial(spec: Operand, stats: Optional[Stats]=None) -> PrunedSpec:
    """
    Restricts a specification to its consistent states.

    :param spec: Consistent specification
    :type spec: Union[Tioa, PrunedSpec]
    :param stats: Counters to update
    :type stats: Optional[Stats]
    :return: Pruned specification
    :rtype: PrunedSpec
    :raises InconsistentSpecification: If the initial state is inconsistent
    """

    sem = compile_operand(spec)
    base = spec.base if isinstance(spec, PrunedSpec) else spec
    cons = consistent_states(sem, stats)
    pruned = PrunedSpec(base, {loc: cons.get(loc) for loc in sem.locations()})

    if not pruned.is_consistent():

        raise InconsistentSpecification(f"Nothing consistent remains of {spec.name}", spec.name)

    logger.debug("++ pruned %s, kept %d of %d locations", spec.name, len(cons.locations()), len(sem.locations()))

    return pruned


def is_locally_consistent(spec: Spec) -> bool:
    """
    Determines if every state allows independent progress.

    Each state must be able to delay forever,
    or to delay until an output is enabled.

    :param spec: Specification
    :type spec: Union[Semantics, Tioa, PrunedSpec]
    :return: True if there is no immediate error anywhere
    :rtype: bool
    """

    return immediate_errors(spec).is_empty()


def positive_delay(sem: Semantics, location: str) -> Federation:
    """
    Valuations of a location that allow some positive delay.
    """

    inv = sem.inv[location]

    return inv.intersect(inv.lead_in())


def input_gaps(sem: Semantics) -> List[Violation]:
    """
    Valuations where an input is refused.
    """

    out = []

    for loc in sem.locations():

        for action in sorted(sem.tioa.inputs):

            gap = sem.inv[loc]

            for move in sem.moves_from(loc, INPUT):

                if move.action == action:

                    gap = gap.subtract(move.enabled)

            if not gap.is_empty():

                out.append(Violation(loc, gap, 'input_enabledness', action))

    return out


def is_implementation(spec: Spec) -> ImplementationReport:
    """
    Checks the three requirements of an implementation.

    Inputs must be enabled everywhere,
    outputs must be urgent, so no positive delay is possible where one is enabled,
    and every state must allow independent progress.

    :param spec: Specification
    :type spec: Union[Semantics, Tioa, PrunedSpec]
    :return: Report listing every violation
    :rtype: ImplementationReport
    """

    sem = as_semantics(spec)
    report = ImplementationReport(input_gaps(sem))
    stuck = immediate_errors(sem)

    for loc in sem.locations():

        # Output urgency:

        enabled = sem.empty()

        for move in sem.moves_from(loc, OUTPUT):

            enabled = enabled.union(move.enabled)

        lazy = enabled.intersect(positive_delay(sem, loc))

        if not lazy.is_empty():

            report.violations.append(Violation(loc, lazy, 'output_urgency'))

        # Independent progress:

        if loc in stuck:

            report.violations.append(Violation(loc, stuck.get(loc), 'independent_progress'))

    return report
