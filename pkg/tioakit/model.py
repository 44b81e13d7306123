"""
Model files: parsing, validation and serialisation of timed I/O automata.

A model file is UTF-8 JSON shaped like this:

.. code-block:: json

    {"automata": [
        {"name": "Machine", "clocks": ["y"], "inputs": ["coin"], "outputs": ["cof", "tea"],
         "locations": [{"id": "idle", "initial": true}, {"id": "busy", "invariant": "y<=6"}],
         "edges": [{"source": "idle", "action": "coin", "resets": ["y"], "target": "busy"}]}
    ]}

Missing invariants and guards mean 'true', missing resets mean no reset.
Every automaton we return has been through 'validate()'.
"""

import json
import logging

from itertools import combinations
from typing import Any, Dict, Iterable, List, Mapping, Tuple, Union

from tioakit.classes.base import Alphabet, Edge, Tioa
from tioakit.classes.guards import Guard, parse_guard
from tioakit.errors import (DuplicateAutomaton, GuardSyntaxError, InitialStateViolation, NonConvexInvariant, NondeterminismError, SchemaViolation, UnknownAction,
                            UnknownClock)
from tioakit.zones import Federation

logger = logging.getLogger(__name__)


def _require(obj: Mapping, key: str, kind: type, where: str, default: Any=None) -> Any:

    # Fetch a key and check its type:

    if key not in obj:

        if default is not None:

            return default

        raise SchemaViolation(f"Missing key '{key}'", where)

    value = obj[key]

    if not isinstance(value, kind) or (kind is list and not all(isinstance(v, str) for v in value)
                                       and key in ('clocks', 'inputs', 'outputs', 'resets')):

        raise SchemaViolation(f"Key '{key}' has the wrong type", where)

    return value


def _guard(text: Any, where: str) -> Guard:

    if text is None:

        return parse_guard('')

    if not isinstance(text, str):

        raise SchemaViolation("Guards and invariants must be strings", where)

    try:

        return parse_guard(text)

    except GuardSyntaxError as exc:

        raise GuardSyntaxError(exc.detail, where)


def _automaton(raw: Any, index: int) -> Tioa:

    where = f"automata[{index}]"

    if not isinstance(raw, dict):

        raise SchemaViolation("Automaton entries must be objects", where)

    name = _require(raw, 'name', str, where)
    where = name
    clocks = _require(raw, 'clocks', list, where, [])
    inputs = _require(raw, 'inputs', list, where, [])
    outputs = _require(raw, 'outputs', list, where, [])
    locs = _require(raw, 'locations', list, where)
    edges = _require(raw, 'edges', list, where, [])

    if not locs:

        raise SchemaViolation("An automaton needs at least one location", where)

    # Parse the locations:

    ids: List[str] = []
    initial: List[str] = []
    invariants: Dict[str, Guard] = {}

    for num, loc in enumerate(locs):

        spot = f"{where}/location[{num}]"

        if not isinstance(loc, dict):

            raise SchemaViolation("Locations must be objects", spot)

        ident = _require(loc, 'id', str, spot)

        if ident in ids:

            raise SchemaViolation(f"Duplicate location '{ident}'", spot)

        ids.append(ident)

        if loc.get('initial', False) is True:

            initial.append(ident)

        invariants[ident] = _guard(loc.get('invariant'), spot)

    if len(initial) != 1:

        raise SchemaViolation(f"Expected exactly one initial location, found {len(initial)}", where)

    # Parse the edges:

    parsed: List[Edge] = []

    for num, edge in enumerate(edges):

        spot = f"{where}/edge[{num}]"

        if not isinstance(edge, dict):

            raise SchemaViolation("Edges must be objects", spot)

        parsed.append(Edge(source=_require(edge, 'source', str, spot),
                           action=_require(edge, 'action', str, spot),
                           guard=_guard(edge.get('guard'), spot),
                           resets=frozenset(_require(edge, 'resets', list, spot, [])),
                           target=_require(edge, 'target', str, spot)))

    try:

        alphabet = Alphabet(frozenset(inputs), frozenset(outputs))

    except SchemaViolation as exc:

        raise SchemaViolation(exc.detail, where)

    if len(set(clocks)) != len(clocks):

        raise SchemaViolation("Duplicate clock names", where)

    return Tioa(name=name, locations=tuple(ids), initial=initial[0], alphabet=alphabet,
                clocks=tuple(clocks), edges=tuple(parsed), invariants=invariants)


def parse_models(document: Union[bytes, str]) -> Dict[str, Tioa]:
    """
    Parses and validates a model file.

    :param document: Contents of the model file
    :type document: Union[bytes, str]
    :return: Automata by name, in file order
    :rtype: Dict[str, Tioa]
    :raises SchemaViolation: If the document does not follow the schema
    :raises ModelError: If an automaton fails validation
    :raises DuplicateAutomaton: If two automata share a name
    """

    # Decode the document:

    try:

        data = json.loads(document)

    except (ValueError, UnicodeDecodeError) as exc:

        raise SchemaViolation(f"Model file is not valid JSON: {exc}")

    if not isinstance(data, dict) or not isinstance(data.get('automata'), list):

        raise SchemaViolation("Top level must be an object with an 'automata' list")

    # Build and check each automaton:

    out: Dict[str, Tioa] = {}

    for index, raw in enumerate(data['automata']):

        tioa = _automaton(raw, index)

        if tioa.name in out:

            raise DuplicateAutomaton(f"Automaton '{tioa.name}' is defined twice", f"automata[{index}]")

        out[tioa.name] = validate(tioa)

    logger.debug("Parsed %d automata: %s", len(out), ', '.join(out))

    return out


def load_models(path: str) -> Dict[str, Tioa]:
    """
    Reads and parses the model file at the given path.

    :param path: Path to the model file
    :type path: str
    :return: Automata by name
    :rtype: Dict[str, Tioa]
    """

    with open(path, 'rb') as file:

        return parse_models(file.read())


def enabled_region(tioa: Tioa, edge: Edge, clocks: Tuple[str, ...]=None) -> Federation:
    """
    Valuations where an edge can fire.

    The guard must hold, and the valuation after the resets
    must satisfy the target invariant.

    :param tioa: Automaton owning the edge
    :type tioa: Tioa
    :param edge: Edge in question
    :type edge: Edge
    :param clocks: Clock list to compile over, the automaton's by default
    :type clocks: Tuple[str, ...]
    :return: Federation of enabling valuations
    :rtype: Federation
    """

    clocks = tioa.clocks if clocks is None else clocks
    target = tioa.invariant(edge.target).compile(clocks).reset_inverse(edge.resets)

    return edge.guard.compile(clocks).intersect(target)


def validate(tioa: Tioa, convex: bool=True) -> Tioa:
    """
    Checks that an automaton is well formed.

    We check that edges use known locations, actions and clocks,
    that invariants are conjunctive, that the zero valuation
    satisfies the initial invariant, and that the automaton is deterministic:
    edges with the same source and action that can fire together
    must agree on resets and target.

    :param tioa: Automaton to check
    :type tioa: Tioa
    :param convex: Whether to insist on conjunctive invariants
    :type convex: bool
    :return: The same automaton
    :rtype: Tioa
    :raises ModelError: The subclass describing the first problem found
    """

    clocks = set(tioa.clocks)
    locs = set(tioa.locations)

    if tioa.initial not in locs:

        raise SchemaViolation(f"Initial location '{tioa.initial}' is not declared", tioa.name)

    # Check the invariants:

    for loc in tioa.locations:

        inv = tioa.invariant(loc)
        where = f"{tioa.name}/{loc}"

        if not inv.clocks() <= clocks:

            raise UnknownClock(f"Invariant uses unknown clocks {sorted(inv.clocks() - clocks)}", where)

        if convex and not inv.is_conjunctive():

            raise NonConvexInvariant(f"Invariant '{inv}' is not a conjunction of constraints", where)

    # Check the edges:

    for num, edge in enumerate(tioa.edges):

        where = f"{tioa.name}/edge[{num}]"

        if edge.source not in locs or edge.target not in locs:

            raise SchemaViolation(f"Edge connects unknown locations '{edge.source}' -> '{edge.target}'", where)

        if edge.action not in tioa.alphabet.actions:

            raise UnknownAction(f"Action '{edge.action}' is not in the alphabet", where)

        unknown = (edge.guard.clocks() | edge.resets) - clocks

        if unknown:

            raise UnknownClock(f"Edge uses unknown clocks {sorted(unknown)}", where)

    # The zero valuation must be admissible:

    if not tioa.invariant(tioa.initial).holds({c: 0 for c in tioa.clocks}):

        raise InitialStateViolation(f"Zero valuation violates the invariant of '{tioa.initial}'", tioa.name)

    # Check for nondeterminism:

    groups: Dict[Tuple[str, str], List[Tuple[int, Edge]]] = {}

    for num, edge in enumerate(tioa.edges):

        groups.setdefault((edge.source, edge.action), []).append((num, edge))

    for (source, action), group in groups.items():

        if len(group) < 2:

            continue

        source_inv = tioa.invariant(source).compile(tioa.clocks)

        for (n1, e1), (n2, e2) in combinations(group, 2):

            if (e1.resets, e1.target) == (e2.resets, e2.target):

                continue

            both = enabled_region(tioa, e1).intersect(enabled_region(tioa, e2)).intersect(source_inv)

            if not both.is_empty():

                raise NondeterminismError(
                    f"Edges {n1} and {n2} on '{action}' from '{source}' overlap at {both.describe()} "
                    f"but differ in resets or target", f"{tioa.name}/edge[{n2}]")

    return tioa


def check_input_enabled(tioa: Tioa) -> List[Tuple[str, str, Federation]]:
    """
    Finds the valuations where some input is refused.

    For every location and input we compute the part of the invariant
    not covered by any edge for that input, where an edge covers a valuation
    if its guard holds and the reset valuation satisfies the target invariant.

    :param tioa: Automaton to check
    :type tioa: Tioa
    :return: (location, input, uncovered) for every non-empty gap
    :rtype: List[Tuple[str, str, Federation]]
    """

    report = []

    for loc in tioa.locations:

        inv = tioa.invariant(loc).compile(tioa.clocks)

        for action in sorted(tioa.inputs):

            uncovered = inv

            for edge in tioa.edges_from(loc, action):

                uncovered = uncovered.subtract(enabled_region(tioa, edge))

            if not uncovered.is_empty():

                report.append((loc, action, uncovered.reduce()))

    return report


def automaton_dict(tioa: Tioa) -> Dict[str, Any]:
    """
    Converts an automaton into its model file object.

    :param tioa: Automaton to convert
    :type tioa: Tioa
    :return: JSON ready dictionary
    :rtype: Dict[str, Any]
    """

    return {
        'name': tioa.name,
        'clocks': list(tioa.clocks),
        'inputs': sorted(tioa.inputs),
        'outputs': sorted(tioa.outputs),
        'locations': [{'id': loc, 'initial': loc == tioa.initial, 'invariant': tioa.invariant(loc).text()}
                      for loc in tioa.locations],
        'edges': [{'source': e.source, 'action': e.action, 'guard': e.guard.text(),
                   'resets': sorted(e.resets), 'target': e.target} for e in tioa.edges],
    }


def serialize(tioas: Iterable[Tioa]) -> str:
    """
    Renders automata as a model file.

    :param tioas: Automata to write
    :type tioas: Iterable[Tioa]
    :return: Model file text
    :rtype: str
    """

    return json.dumps({'automata': [automaton_dict(t) for t in tioas]}, indent=2)
