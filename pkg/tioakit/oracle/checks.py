"""
Region graphs and the brute force decision procedures built on them.

Every procedure here explores explicit (discrete part, region) nodes,
so it only scales to small automata: systems with more than
MAX_CLOCKS clocks or a constant above MAX_CONSTANT are refused.

Delays are taken one region at a time, a delay of the transition system
is any finite sequence of such steps.
"""

from __future__ import annotations

import logging

from collections import deque
from typing import Dict, Iterable, List, Optional, Set, Tuple

import networkx

from tioakit.analysis.simulation import check_refinement_alphabets
from tioakit.classes.base import INPUT, OUTPUT
from tioakit.errors import InconsistentSpecification, RegionGraphTooLarge
from tioakit.oracle.regions import RegionKey, all_keys, region_key, representative, time_successor
from tioakit.oracle.systems import BaseSystem, Discrete, PrunedSystem

logger = logging.getLogger(__name__)

MAX_CLOCKS = 4
MAX_CONSTANT = 10

DELAY = 'delay'

Node = Tuple[Discrete, RegionKey]


def check_size(*systems: BaseSystem, max_clocks: int=MAX_CLOCKS, max_constant: int=MAX_CONSTANT):
    """
    Refuses systems that are too large for the oracle.

    :param systems: Systems to check
    :type systems: BaseSystem
    :raises RegionGraphTooLarge: If a system has too many clocks or too large a constant
    """

    for system in systems:

        if system.dims > max_clocks:

            raise RegionGraphTooLarge(f"{system.dims} clocks, the oracle handles at most {max_clocks}", system.name)

        if system.ceilings and max(system.ceilings) > max_constant:

            raise RegionGraphTooLarge(f"Constant {max(system.ceilings)} is above the oracle limit of {max_constant}",
                                      system.name)


def initial_node(system: BaseSystem) -> Node:
    """
    The initial state: initial discrete part, every clock at zero.
    """

    return system.initial(), region_key(system.zero(), system.ceilings)


def region_graph(system: BaseSystem, everything: bool=False) -> networkx.MultiDiGraph:
    """
    Builds the region graph of a system.

    Nodes are (discrete part, region key) pairs carrying the attributes
    'location' (printable name) and 'admitted'.
    Edges carry 'label', an action or DELAY, and 'role' for actions.

    :param system: System to explore
    :type system: BaseSystem
    :param everything: Start from every state instead of the initial one
    :type everything: bool
    :return: The explored graph
    :rtype: networkx.MultiDiGraph
    :raises RegionGraphTooLarge: If the system is beyond the size guards
    """

    check_size(system)

    graph = networkx.MultiDiGraph(name=system.name)
    waiting = deque()

    def visit(node: Node):

        if node in graph:

            return

        disc, key = node
        graph.add_node(node, location=system.label(disc), admitted=system.admits(disc, representative(key)))
        waiting.append(node)

    if everything:

        keys = list(all_keys(system.ceilings))

        for disc in system.discrete_states():

            for key in keys:

                visit((disc, key))

    else:

        visit(initial_node(system))

    while waiting:

        node = waiting.popleft()
        disc, key = node
        point = representative(key)

        for action, target, after in system.moves(disc, point):

            nxt = (target, region_key(after, system.ceilings))
            visit(nxt)
            graph.add_edge(node, nxt, key=action, label=action,
                           role=INPUT if action in system.inputs else OUTPUT)

        moved = system.delay(disc, point, time_successor(point, system.ceilings))

        if moved is not None:

            nxt = (moved[0], region_key(moved[1], system.ceilings))
            visit(nxt)
            graph.add_edge(node, nxt, key=DELAY, label=DELAY)

    logger.debug("++ region graph of %s: %d nodes, %d edges", system.name,
                 graph.number_of_nodes(), graph.number_of_edges())

    return graph


def discrete_transitions(system: BaseSystem) -> Set[Tuple[str, str, str]]:
    """
    Every action transition of a system, with regions abstracted away.

    We look at all states, reachable or not.

    :param system: System to inspect
    :type system: BaseSystem
    :return: (source, action, target) triples of printable names
    :rtype: Set[Tuple[str, str, str]]
    """

    graph = region_graph(system, everything=True)

    return {(graph.nodes[u]['location'], data['label'], graph.nodes[v]['location'])
            for u, v, data in graph.edges(data=True) if data['label'] != DELAY}


def reachable_labels(system: BaseSystem) -> Set[str]:
    """
    Printable names of the discrete parts reachable from the initial state.
    """

    graph = region_graph(system)

    return {data['location'] for _, data in graph.nodes(data=True)}


def _delay_target(graph: networkx.MultiDiGraph, node: Node) -> Optional[Node]:

    for _, target, label in graph.out_edges(node, data='label'):

        if label == DELAY:

            return target

    return None


def _chain(graph: networkx.MultiDiGraph, node: Node) -> Tuple[List[Node], bool]:

    # Follow the delay steps, report whether time gets stuck:

    chain = [node]
    seen = {node}

    while True:

        nxt = _delay_target(graph, chain[-1])

        if nxt is None:

            return chain, True

        if nxt in seen:

            return chain, False

        chain.append(nxt)
        seen.add(nxt)


def _is_open(node: Node) -> bool:

    # Time spent in a region with no bounded clock on an integer is an open interval:

    return 0 not in node[1][1]


def _targets(graph: networkx.MultiDiGraph, node: Node, role: str) -> Iterable[Node]:

    return [v for _, v, r in graph.out_edges(node, data='role') if r == role]


def _timed_predecessors(chains: Dict[Node, Tuple[List[Node], bool]], good: Set[Node], bad: Set[Node]) -> Set[Node]:

    out = set()

    for node, (chain, _) in chains.items():

        for pos, step in enumerate(chain):

            if step in good and not (pos > 0 and _is_open(step) and step in bad):

                out.add(node)
                break

            if step in bad:

                break

    return out


def inconsistent_nodes(graph: networkx.MultiDiGraph) -> Set[Node]:
    """
    Least fixpoint of the controllable predecessor operator on a region graph.

    A node is added when it is an error relative to the nodes found so far
    (time gets stuck and every output on the way leads back into them),
    or when some delay reaches such a node, or an input into them,
    without first passing a node with an output that escapes.

    :param graph: Region graph, see 'region_graph()'
    :type graph: networkx.MultiDiGraph
    :return: Inconsistent nodes
    :rtype: Set[Node]
    """

    chains = {node: _chain(graph, node) for node in graph}
    outputs = {node: _targets(graph, node, OUTPUT) for node in graph}
    inputs = {node: _targets(graph, node, INPUT) for node in graph}
    lost: Set[Node] = set()
    rounds = 0

    while True:

        rounds += 1

        # Errors relative to 'lost':

        err = {node for node, (chain, stuck) in chains.items()
               if stuck and all(t in lost for step in chain for t in outputs[step])}

        # Everything the environment or time can push into 'lost':

        good = lost | {node for node in graph if any(t in lost for t in inputs[node])}
        bad = {node for node in graph if any(t not in lost for t in outputs[node])}
        nxt = lost | err | _timed_predecessors(chains, good, bad)

        if nxt == lost:

            break

        lost = nxt

    logger.debug("-- %d inconsistent nodes after %d rounds", len(lost), rounds)

    return lost


def oracle_consistency(system: BaseSystem) -> bool:
    """
    Decides consistency on the region graph.

    :param system: System to check
    :type system: BaseSystem
    :return: Whether the initial state is consistent
    :rtype: bool
    """

    graph = region_graph(system)

    return initial_node(system) not in inconsistent_nodes(graph)


def prune(system: BaseSystem) -> PrunedSystem:
    """
    Adversarial pruning on the region graph.

    :param system: System to prune
    :type system: BaseSystem
    :return: The system restricted to its consistent reachable states
    :rtype: PrunedSystem
    :raises InconsistentSpecification: If the initial state is inconsistent
    """

    graph = region_graph(system)
    lost = inconsistent_nodes(graph)

    if initial_node(system) in lost:

        raise InconsistentSpecification("The initial state is inconsistent", system.name)

    return PrunedSystem(system, {n for n, ok in graph.nodes(data='admitted') if ok and n not in lost})


def _group(moves) -> Dict[str, list]:

    out: Dict[str, list] = {}

    for action, disc, point in moves:

        out.setdefault(action, []).append((disc, point))

    return out


def _simulation(left: BaseSystem, right: BaseSystem, mutual: bool) -> bool:

    # Search the reachable pairs for one where a move or a delay has no answer:

    check_size(left, right)

    ceilings = left.ceilings + right.ceilings
    cut = left.dims
    start = ((left.initial(), right.initial()), region_key(left.zero() + right.zero(), ceilings))
    seen = {start}
    waiting = deque([start])

    def push(d1, d2, point):

        node = ((d1, d2), region_key(point, ceilings))

        if node not in seen:

            seen.add(node)
            waiting.append(node)

    while waiting:

        (d1, d2), key = waiting.popleft()
        point = representative(key)
        p1, p2 = point[:cut], point[cut:]
        lm, rm = _group(left.moves(d1, p1)), _group(right.moves(d2, p2))

        for action in sorted(left.actions | right.actions):

            mine = {'left': lm.get(action, []), 'right': rm.get(action, [])}

            if action in left.actions and action in right.actions:

                if mutual:

                    sides = ('left', 'right')

                else:

                    sides = ('right',) if action in right.inputs else ('left',)

                for side in sides:

                    other = 'right' if side == 'left' else 'left'

                    if mine[side] and not mine[other]:

                        logger.debug("-- %s of %s has no answer at %s", action, side, (d1, d2))

                        return False

                for t1, q1 in mine['left']:

                    for t2, q2 in mine['right']:

                        push(t1, t2, q1 + q2)

                continue

            for t1, q1 in mine['left']:

                push(t1, d2, q1 + p2)

            for t2, q2 in mine['right']:

                push(d1, t2, p1 + q2)

        # Delay steps:

        after = time_successor(point, ceilings)
        first = left.delay(d1, p1, after[:cut])
        second = right.delay(d2, p2, after[cut:])

        if (first is not None and second is None) or (mutual and second is not None and first is None):

            logger.debug("-- delay has no answer at %s", (d1, d2))

            return False

        if first is not None:

            push(first[0], second[0], first[1] + second[1])

    logger.debug("++ %d pairs explored, no losing move", len(seen))

    return True


def oracle_refinement(refining: BaseSystem, refined: BaseSystem) -> bool:
    """
    Decides refinement on region pairs.

    Pairs are explored from the initial pair,
    and the relation fails as soon as a reachable pair has a move
    or a delay that the other side can not answer.
    The systems are deterministic, so every answer is forced.

    :param refining: System S in S <= T
    :type refining: BaseSystem
    :param refined: System T in S <= T
    :type refined: BaseSystem
    :return: Whether S refines T
    :rtype: bool
    :raises RefinementAlphabetError: If the alphabets do not fit
    """

    check_refinement_alphabets(refining, refined)

    return _simulation(refining, refined, False)


def oracle_bisim(first: BaseSystem, second: BaseSystem) -> bool:
    """
    Decides timed bisimulation on region pairs.
    """

    return _simulation(first, second, True)
