"""
Binary constructions on timed I/O automata: conjunction, parallel composition and quotient.

Each operator takes two automata (or pruned specifications, which are
turned back into automata first) and builds the product automaton.
Product locations are named '(l1,l2)'.
Clocks that appear in both operands are renamed 'left.x' and 'right.x'.

Edges whose guard can never be satisfied are left out,
and unless asked otherwise we drop product locations
that the zone graph exploration can not reach.
"""

from __future__ import annotations

import logging

from typing import Iterable, List, Set, Tuple

from tioakit.classes.base import Alphabet, Edge, Tioa
from tioakit.classes.guards import FALSE, TRUE, Atom, Guard, conj, disj, neg
from tioakit.errors import AlphabetError, NotComposable, QuotientPreconditionError
from tioakit.model import validate
from tioakit.semantics import Operand, PrunedSpec, reachable_locations

logger = logging.getLogger(__name__)

UNIVERSAL = 'l_univ'
ERROR = 'l_err'


def pair(left: str, right: str) -> str:
    """
    Name of a product location.
    """

    return f"({left},{right})"


def as_tioa(operand: Operand) -> Tioa:
    """
    Turns an operand into an automaton, materialising pruned specifications.

    :param operand: Automaton or pruned specification
    :type operand: Union[Tioa, PrunedSpec]
    :return: Automaton
    :rtype: Tioa
    """

    return operand.to_tioa() if isinstance(operand, PrunedSpec) else operand


def separate_clocks(left: Tioa, right: Tioa) -> Tuple[Tioa, Tioa]:
    """
    Renames clocks shared by both automata so their clock sets are disjoint.

    A shared clock 'x' becomes 'left.x' in the first automaton
    and 'right.x' in the second.

    :return: The two automata with disjoint clocks
    :rtype: Tuple[Tioa, Tioa]
    """

    shared = set(left.clocks) & set(right.clocks)

    if not shared:

        return left, right

    logger.debug("Renaming shared clocks %s", sorted(shared))

    return (left.rename_clocks({c: f"left.{c}" for c in shared}),
            right.rename_clocks({c: f"right.{c}" for c in shared}))


def fresh(name: str, taken: Iterable[str]) -> str:
    """
    Returns 'name', or 'name_1', 'name_2', ... if it is already taken.
    """

    taken = set(taken)
    out = name
    num = 0

    while out in taken:

        num += 1
        out = f"{name}_{num}"

    return out


def _satisfiable(guard: Guard, clocks: Tuple[str, ...]) -> bool:

    if guard is FALSE:

        return False

    return not guard.compile(clocks).is_empty()


def _finish(result: Tioa, reach_prune: bool, convex: bool) -> Tioa:

    # Drop unsatisfiable edges, check the result, and prune if asked:

    edges = tuple(e for e in result.edges if _satisfiable(e.guard, result.clocks))
    result = Tioa(result.name, result.locations, result.initial, result.alphabet,
                  result.clocks, edges, result.invariants)

    validate(result, convex=convex)

    if reach_prune:

        alive = set(reachable_locations(result))
        result = Tioa(result.name, tuple(l for l in result.locations if l in alive), result.initial,
                      result.alphabet, result.clocks,
                      tuple(e for e in result.edges if e.source in alive and e.target in alive),
                      {l: g for l, g in result.invariants.items() if l in alive})

    logger.debug("++ built %s: %d locations, %d edges", result.name, len(result.locations), len(result.edges))

    return result


def _lift(left: Tioa, right: Tioa, actions: Set[str]) -> List[Edge]:

    # Interleave the edges of the non-shared actions:

    edges = []

    for e in left.edges:

        if e.action in actions and e.action not in right.alphabet.actions:

            for loc in right.locations:

                edges.append(Edge(pair(e.source, loc), e.action, e.guard, e.resets, pair(e.target, loc)))

    for e in right.edges:

        if e.action in actions and e.action not in left.alphabet.actions:

            for loc in left.locations:

                edges.append(Edge(pair(loc, e.source), e.action, e.guard, e.resets, pair(loc, e.target)))

    return edges


def _product(left: Tioa, right: Tioa, name: str, alphabet: Alphabet) -> Tioa:

    # Synchronise shared actions, interleave the rest:

    shared = left.alphabet.actions & right.alphabet.actions
    edges = []

    for e1 in left.edges:

        if e1.action not in shared:

            continue

        for e2 in right.edges:

            if e2.action != e1.action:

                continue

            edges.append(Edge(pair(e1.source, e2.source), e1.action, conj(e1.guard, e2.guard),
                              e1.resets | e2.resets, pair(e1.target, e2.target)))

    edges.extend(_lift(left, right, alphabet.actions))

    locations = tuple(pair(l1, l2) for l1 in left.locations for l2 in right.locations)
    invariants = {pair(l1, l2): conj(left.invariant(l1), right.invariant(l2))
                  for l1 in left.locations for l2 in right.locations}

    return Tioa(name, locations, pair(left.initial, right.initial), alphabet,
                left.clocks + right.clocks, tuple(edges), invariants)


def conjunction(first: Operand, second: Operand, reach_prune: bool=True) -> Tioa:
    """
    Conjunction of two specifications.

    Shared actions synchronise with the conjunction of both guards
    and the union of both resets, other actions interleave.
    The invariant of a product location is the conjunction of both invariants.

    :param first: First operand
    :type first: Union[Tioa, PrunedSpec]
    :param second: Second operand
    :type second: Union[Tioa, PrunedSpec]
    :param reach_prune: Whether to drop unreachable product locations
    :type reach_prune: bool
    :return: Conjunction automaton
    :rtype: Tioa
    :raises AlphabetError: If an action is an input of one operand and an output of the other
    """

    left, right = separate_clocks(as_tioa(first), as_tioa(second))

    clash = (left.inputs & right.outputs) | (left.outputs & right.inputs)

    if clash:

        raise AlphabetError(f"Actions {sorted(clash)} are inputs of one operand and outputs of the other",
                            f"{left.name} && {right.name}")

    alphabet = Alphabet(left.inputs | right.inputs, left.outputs | right.outputs)
    result = _product(left, right, f"({left.name} && {right.name})", alphabet)

    return _finish(result, reach_prune, _convex(first, second))


def composition(first: Operand, second: Operand, reach_prune: bool=True) -> Tioa:
    """
    Parallel composition of two specifications.

    Shared actions synchronise, and an input matched by an output of
    the other operand becomes an output of the composition.

    :param first: First operand
    :type first: Union[Tioa, PrunedSpec]
    :param second: Second operand
    :type second: Union[Tioa, PrunedSpec]
    :param reach_prune: Whether to drop unreachable product locations
    :type reach_prune: bool
    :return: Composition automaton
    :rtype: Tioa
    :raises NotComposable: If both operands share an output
    """

    left, right = separate_clocks(as_tioa(first), as_tioa(second))

    clash = left.outputs & right.outputs

    if clash:

        raise NotComposable(f"Actions {sorted(clash)} are outputs of both operands",
                            f"{left.name} || {right.name}")

    alphabet = Alphabet((left.inputs - right.outputs) | (right.inputs - left.outputs),
                        left.outputs | right.outputs)
    result = _product(left, right, f"({left.name} || {right.name})", alphabet)

    return _finish(result, reach_prune, _convex(first, second))


def quotient(dividend: Operand, divisor: Operand, reach_prune: bool=True) -> Tioa:
    """
    Quotient of 'dividend' by 'divisor', the specification of the missing component.

    For T \\\\ S we build the product of T and S plus a universal location
    and an error location, a fresh clock 'x_new' and a fresh input 'i_new'.
    Every product location has invariant 'true',
    the invariants of T and S are folded into the edge guards instead:

        1. shared actions move both sides
        2. actions of S alone move S
        3. an output of S that S can not take leads to the universal location
        4. leaving the invariant of S leads to the universal location
        5. a shared output S can take but T can not leads to the error location
        6. 'i_new' leads to the error location once T's invariant is left while S's holds
        7. otherwise 'i_new' loops
        8. actions of T alone move T
        9. the universal location loops on everything
        10. the error location takes inputs only while no time has passed

    Rule 4 is not generated for 'i_new', as rules 6 and 7 already cover it
    and would otherwise overlap with it.

    :param dividend: Specification T
    :type dividend: Union[Tioa, PrunedSpec]
    :param divisor: Specification S
    :type divisor: Union[Tioa, PrunedSpec]
    :param reach_prune: Whether to drop unreachable locations
    :type reach_prune: bool
    :return: Quotient automaton
    :rtype: Tioa
    :raises QuotientPreconditionError: If an output of S is an input of T
    """

    spec_t, spec_s = separate_clocks(as_tioa(dividend), as_tioa(divisor))

    clash = spec_s.outputs & spec_t.inputs

    if clash:

        raise QuotientPreconditionError(f"Actions {sorted(clash)} are outputs of the divisor and inputs of the dividend",
                                        f"{spec_t.name} \\\\ {spec_s.name}")

    # Fresh names:

    i_new = fresh('i_new', spec_t.alphabet.actions | spec_s.alphabet.actions)
    x_new = fresh('x_new', spec_t.clocks + spec_s.clocks)

    inputs = spec_t.inputs | spec_s.outputs | {i_new}
    outputs = (spec_t.outputs - spec_s.outputs) | (spec_s.inputs - spec_t.inputs)
    alphabet = Alphabet(inputs, outputs)
    act_t, act_s = spec_t.alphabet.actions, spec_s.alphabet.actions

    def target_ok(tioa: Tioa, edge: Edge) -> Guard:

        return tioa.invariant(edge.target).substitute_zero(edge.resets)

    def g_sum(tioa: Tioa, loc: str, action: str) -> Guard:

        return disj(*(conj(e.guard, target_ok(tioa, e)) for e in tioa.edges_from(loc, action)))

    edges: List[Edge] = []

    for lt in spec_t.locations:

        inv_t = spec_t.invariant(lt)

        for ls in spec_s.locations:

            here = pair(lt, ls)
            inv_s = spec_s.invariant(ls)

            # Rule 1, shared actions:

            for et in spec_t.edges_from(lt):

                if et.action not in act_s:

                    continue

                for es in spec_s.edges_from(ls, et.action):

                    guard = conj(et.guard, target_ok(spec_t, et), es.guard, inv_s, target_ok(spec_s, es))
                    edges.append(Edge(here, et.action, guard, et.resets | es.resets, pair(et.target, es.target)))

            # Rule 2, actions of S alone:

            for es in spec_s.edges_from(ls):

                if es.action in act_t:

                    continue

                guard = conj(es.guard, inv_s, target_ok(spec_s, es))
                edges.append(Edge(here, es.action, guard, es.resets, pair(lt, es.target)))

            # Rule 3, outputs S refuses:

            for action in sorted(spec_s.outputs):

                edges.append(Edge(here, action, neg(g_sum(spec_s, ls, action)), frozenset(), UNIVERSAL))

            # Rule 4, S's invariant is left:

            if inv_s != TRUE:

                for action in sorted(alphabet.actions - {i_new}):

                    edges.append(Edge(here, action, neg(inv_s), frozenset(), UNIVERSAL))

            # Rule 5, shared outputs T refuses:

            for action in sorted(spec_s.outputs & spec_t.outputs):

                refused = neg(g_sum(spec_t, lt, action))

                for es in spec_s.edges_from(ls, action):

                    guard = conj(es.guard, inv_s, target_ok(spec_s, es), refused)
                    edges.append(Edge(here, action, guard, frozenset((x_new,)), ERROR))

            # Rules 6 and 7, the fresh input:

            edges.append(Edge(here, i_new, conj(neg(inv_t), inv_s), frozenset((x_new,)), ERROR))
            edges.append(Edge(here, i_new, disj(inv_t, neg(inv_s)), frozenset(), here))

            # Rule 8, actions of T alone:

            for et in spec_t.edges_from(lt):

                if et.action in act_s:

                    continue

                guard = conj(et.guard, target_ok(spec_t, et), inv_s)
                edges.append(Edge(here, et.action, guard, et.resets, pair(et.target, ls)))

    # Rules 9 and 10:

    for action in sorted(alphabet.actions):

        edges.append(Edge(UNIVERSAL, action, TRUE, frozenset(), UNIVERSAL))

    for action in sorted(inputs):

        edges.append(Edge(ERROR, action, Atom(x_new, '==', 0), frozenset(), ERROR))

    locations = tuple(pair(lt, ls) for lt in spec_t.locations for ls in spec_s.locations) + (UNIVERSAL, ERROR)

    result = Tioa(f"({spec_t.name} \\\\ {spec_s.name})", locations, pair(spec_t.initial, spec_s.initial),
                  alphabet, spec_t.clocks + spec_s.clocks + (x_new,), tuple(edges),
                  {ERROR: Atom(x_new, '<=', 0)})

    return _finish(result, reach_prune, True)


def cooperative_prune(spec: Operand) -> Operand:
    """
    Cooperative pruning.

    It removes the states from which inputs and outputs together can not avoid an error.
    For input-enabled specifications it never removes a state, so we return the operand unchanged.

    :param spec: Specification to prune
    :type spec: Union[Tioa, PrunedSpec]
    :return: The same specification
    :rtype: Union[Tioa, PrunedSpec]
    """

    logger.debug("Cooperative pruning of %s is the identity", spec.name)

    return spec


def _convex(*operands: Operand) -> bool:

    return not any(isinstance(op, PrunedSpec) for op in operands)
