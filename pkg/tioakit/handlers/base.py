"""
Handler building blocks.

A 'handler' answers one kind of query.
It turns the operand expressions into something an engine can work with,
runs the engine, and shapes the outcome into a report.

Handlers plug into a HandlerCollection, which routes each query kind
to the handler registered under its ID.
The collection only ever calls 'handle()',
subclasses usually override 'pre_process()' and sometimes 'format()'.
"""

from __future__ import annotations

import copy
import logging
import time

from typing import Any, Callable, Dict, Optional, Tuple, Union

from tioakit.analysis.consistency import prune_adversarial
from tioakit.classes.base import Stats, Tioa
from tioakit.classes.options import CheckOptions
from tioakit.classes.query import CONJUNCTION, COMPOSITION, Binary, Expr, Name, Prune, Query, parse_expression
from tioakit.errors import HandlerRaise, UnknownAutomaton
from tioakit.formatters import BaseFormat, NullFormatter
from tioakit.operators import composition, conjunction, quotient
from tioakit.semantics import Operand

logger = logging.getLogger(__name__)

Operands = Union[str, Expr]


class BaseHandler(object):
    """
    BaseHandler - Parent of every query handler.

    A query goes through these stages, in this order:

        * materialize - Turns the operand expressions into engine operands
        * pre_process - Runs the engine on the operands
        * format - Shapes the engine result into a report dictionary
        * post_process - Finalizes the report (query text, counters, timing)

    'handle()' drives the stages, and is the only method
    the HandlerCollection calls.

    ID is the query kind ID we answer, -1 until a subclass sets it.
    A handler without an ID can still be registered by passing one to 'add_handler()'.

    Only 'pre_process' has to be written for a new query kind.
    """

    ID: int = -1
    KIND: str = ''

    def __init__(self, name: str='') -> None:

        self.hand_collection: HandlerCollection  # Collection we are registered to
        self.name = name

        self.stats = Stats()  # Counters of the query being handled
        self.query: Optional[Query] = None
        self.started = 0.0  # perf_counter() at the start of the query

    def start(self):
        """
        Hook run once we are registered to a collection.
        """

        pass

    def stop(self):
        """
        Hook run once we are unregistered.
        """

        pass

    def materialize(self, *exprs: Expr) -> Tuple[Any, ...]:
        """
        Builds the engine operands of the given expressions.

        By default we ask the HandlerCollection to evaluate them symbolically.

        :return: One operand per expression
        :rtype: Tuple[Any, ...]
        """

        return tuple(self.hand_collection.evaluate(expr, self.stats) for expr in exprs)

    def pre_process(self, data: Tuple[Any, ...]) -> Any:
        """
        Runs the engine on the materialized operands.

        :param data: Operands, as returned by 'materialize()'
        :type data: Tuple[Any, ...]
        :return: Engine result
        :rtype: Any
        :raises: NotImplementedError: Subclasses provide the engine call
        """

        raise NotImplementedError(f"{type(self).__name__} does not run an engine")

    def format(self, data: Any) -> Dict[str, Any]:
        """
        Converts the engine result into a report.

        By default, we expect a Verdict.

        :param data: Engine result
        :type data: Any
        :return: Report dictionary
        :rtype: Dict[str, Any]
        """

        report = {'holds': bool(data.holds)}

        if data.witness is not None:

            report['witness'] = data.witness

        if data.counterexample is not None:

            report['counterexample'] = data.counterexample

        return report

    def post_process(self, data: Dict[str, Any]) -> Dict[str, Any]:
        """
        Finalizes the report.

        We attach the canonical query text and the counters,
        timing included.

        :param data: Report to be finalized
        :type data: Dict[str, Any]
        :return: Finalized report
        :rtype: Dict[str, Any]
        """

        data['query'] = self.query.text() if self.query is not None else ''
        data['stats'] = {'symbolic_states': self.stats.symbolic_states,
                         'fixpoint_iterations': self.stats.fixpoint_iterations,
                         'wall_ms': round((time.perf_counter() - self.started) * 1000, 3)}

        return data

    def handle(self, *operands: Operands) -> Dict[str, Any]:
        """
        Answers one query, running every stage in turn.

        Operands can be expression strings or parsed expressions.

        :return: Report of the query
        :rtype: Dict[str, Any]
        """

        # Reset our per query state:

        exprs = tuple(parse_expression(op) if isinstance(op, str) else op for op in operands)
        self.query = Query(self.KIND, exprs)
        self.stats = Stats()
        self.started = time.perf_counter()

        logger.debug("Handling '%s'", self.query.text())

        # Build the operands:

        data = self.materialize(*exprs)

        # Run the engine:

        result = self.pre_process(data)

        # Format and finalize:

        return self.post_process(self.format(result))


class NullHandler(BaseHandler):
    """
    NullHandler - Placeholder for a query kind nobody answers.

    'handle()' ignores its operands and returns None,
    which the client reports as 'no handler'.
    """

    def __init__(self, name: str='NullHandler', id: int=0) -> None:

        super().__init__(name=name)

        self.ID = id

    def handle(self, *args, **kwargs) -> None:

        return None


class RaiseHandler(BaseHandler):
    """
    Refuses to answer, raising HandlerRaise.

    Registering one disables a query kind loudly,
    where a NullHandler would quietly return None.
    """

    def __init__(self, name: str='RaiseHandler', id: int=0) -> None:

        super().__init__(name=name)

        self.ID = id

    def handle(self, *args, **kwargs):
        """
        :raises: HandlerRaise: On every call
        """

        raise HandlerRaise(f"Handler '{self.name}' refuses to run", self.name)


class HandlerCollection(object):
    """
    HandlerCollection - Routes queries to handlers!

    We hold one handler per query kind ID,
    plus what every handler shares:
    the loaded automata and the CheckOptions in use.

    Callbacks can be bound to a query kind.
    Each one is called with the report once the handler is done,
    followed by any extra arguments given when it was bound.

    Unless 'load_default' is False,
    'load_default()' fills in the handlers on creation.
    """

    REFINEMENT = 0  # S <= T
    CONSISTENCY = 1  # Consistency of one expression
    IMPLEMENTATION = 2  # Implementation requirements of one expression
    LOCAL_CONSISTENCY = 3  # Independent progress everywhere
    BISIM = 4  # A == B
    GET = 5  # Materialize an expression
    PRUNE = 6  # Adversarial pruning of an expression

    KIND_IDS = {'refinement': REFINEMENT, 'consistency': CONSISTENCY, 'implementation': IMPLEMENTATION,
                'local-consistency': LOCAL_CONSISTENCY, 'bisim': BISIM, 'get': GET, 'prune': PRUNE}

    def __init__(self, load_default: bool=True, options: Optional[CheckOptions]=None) -> None:

        self.handlers: Dict[int, BaseHandler] = {}
        self.callbacks: Dict[int, list] = {}  # (call, args, kwargs) by kind ID
        self.formatter: BaseFormat = NullFormatter()  # Applied to every report
        self.models: Dict[str, Tioa] = {}  # Loaded automata by name
        self.options = options if options is not None else CheckOptions()

        # Every kind starts out with a NullHandler:

        self.reset()

        if load_default:

            self.load_default()

    def reset(self):
        """
        Puts a NullHandler back on every query kind,
        dropping the callbacks and the formatter.

        Loaded automata and options are kept.
        """

        self.handlers.clear()

        for num in self.KIND_IDS.values():

            self.add_handler(NullHandler(id=num), id=num)

        self.callbacks = {}
        self.formatter = NullFormatter()

    def add_handler(self, hand: BaseHandler, id: Optional[int]=None):
        """
        Registers a handler, replacing the one at its ID.

        The ID is read from the handler unless one is given.

        :param hand: Handler to register
        :type hand: BaseHandler
        :param id: Query kind ID, None for 'hand.ID'
        :type id: int
        :raises: TypeError: If 'hand' is not a BaseHandler
        """

        if not isinstance(hand, BaseHandler):

            raise TypeError(f"Expected a BaseHandler, got {type(hand).__name__}")

        num = hand.ID if id is None else id

        self.remove_handler(num)

        self.handlers[num] = hand
        hand.hand_collection = self

        hand.start()

    def remove_handler(self, id: int):
        """
        Unregisters the handler at a query kind ID.

        A NullHandler takes its place, so every kind always has a handler.

        :param id: Query kind ID
        :type id: int
        """

        if id not in self.handlers:

            return

        self.handlers[id].stop()

        null = NullHandler(id=id)
        null.hand_collection = self

        self.handlers[id] = null

    def load_handlers(self, mapper: Any):
        """
        Registers every handler of a handler map.

        Sequences map their index to an ID,
        dictionaries map their keys to an ID.
        IDs that already hold a real handler are skipped,
        so when maps are nested the earlier ones win.
        Handlers are copied, so one map can feed many collections.

        .. code-block::

            (
                {0: OracleRefinement(), 1: OracleConsistency()},
                (Refinement(), Consistency(), Implementation())
            )

        Here IDs 0 and 1 go to the oracle handlers,
        ID 2 is filled in by the second map.

        :param mapper: Handler map
        :type mapper: Any
        :raises: ValueError: If the mapper is not iterable
        """

        if isinstance(mapper, dict):

            entries = sorted(mapper.items(), key=lambda item: item[0])

        else:

            try:

                entries = list(enumerate(mapper))

            except TypeError:

                raise ValueError(f"A handler map must be a sequence or a dict, got {type(mapper).__name__}")

        for num, value in entries:

            if isinstance(value, BaseHandler):

                if type(self.handlers.get(num)) in (NullHandler, type(None)):

                    self.add_handler(copy.copy(value), num)

                continue

            self.load_handlers(value)

    def load_default(self):
        """
        Registers the default handler map.

        Clients choose their own map.

        :raises: NotImplementedError: In this base class
        """

        raise NotImplementedError(f"{type(self).__name__} has no default handler map")

    def get_handler(self, id: int) -> BaseHandler:
        """
        Handler registered at a query kind ID.
        """

        return self.handlers[id]

    def bind_callback(self, call: Callable, id: int, *args, **kwargs) -> Callable:
        """
        Binds a callback to a query kind.

        The callback receives the report first,
        then the extra arguments given here.
        Callbacks of one kind run in the order they were bound.

        :param call: Callback
        :type call: Callable
        :param id: Query kind ID
        :type id: int
        :return: The callback, so we can be used as a decorator
        :rtype: Callable
        """

        self.callbacks.setdefault(id, []).append((call, args, kwargs))

        return call

    def clear_callback(self, id: int, call: Optional[Callable]=None) -> int:
        """
        Unbinds callbacks of a query kind, all of them when 'call' is None.

        :param id: Query kind ID
        :type id: int
        :param call: Callback to unbind
        :type call: Optional[Callable]
        :return: How many callbacks were unbound
        :rtype: int
        """

        if id not in self.callbacks:

            return 0

        keep = [val for val in self.callbacks[id] if not (call is None or val[0] == call)]
        removed = len(self.callbacks[id]) - len(keep)
        self.callbacks[id] = keep

        return removed

    def default_formatter(self, form: BaseFormat):
        """
        Registers a formatter that every report is passed through.

        :param form: Report formatter
        :type form: BaseFormat
        :raises: TypeError: If 'form' is not a BaseFormat
        """

        if not isinstance(form, BaseFormat):

            raise TypeError(f"Expected a BaseFormat, got {type(form).__name__}")

        self.formatter = form

    def lookup(self, name: str) -> Tioa:
        """
        Returns the loaded automaton with the given name.

        :raises UnknownAutomaton: If no such automaton was loaded
        """

        if name not in self.models:

            raise UnknownAutomaton(f"No automaton named '{name}' is loaded", 'query')

        return self.models[name]

    def evaluate(self, expr: Operands, stats: Optional[Stats]=None) -> Operand:
        """
        Materializes an expression with the symbolic operators.

        :param expr: Expression, or its text
        :type expr: Union[str, Expr]
        :param stats: Counters to update while pruning
        :type stats: Optional[Stats]
        :return: Automaton, or a pruned specification for 'prune(...)'
        :rtype: Union[Tioa, PrunedSpec]
        :raises UnknownAutomaton: If a name is not loaded
        :raises OperatorError: If an operator precondition fails
        """

        if isinstance(expr, str):

            expr = parse_expression(expr)

        if isinstance(expr, Name):

            return self.lookup(expr.name)

        if isinstance(expr, Prune):

            return prune_adversarial(self.evaluate(expr.operand, stats), stats)

        if isinstance(expr, Binary):

            left = self.evaluate(expr.left, stats)
            right = self.evaluate(expr.right, stats)
            build = {CONJUNCTION: conjunction, COMPOSITION: composition}.get(expr.op, quotient)

            return build(left, right, reach_prune=self.options.reach_prune)

        raise TypeError(f"Not an expression: {expr!r}")

    def run(self, id: int, *args, **kwargs) -> Optional[Dict[str, Any]]:
        """
        Answers a query with the handler at a kind ID, then runs its callbacks.

        The report is returned as the handler built it,
        without passing it through our formatter.

        :param id: Query kind ID
        :type id: int
        :return: The report, None if a NullHandler is registered
        :rtype: Optional[Dict[str, Any]]
        """

        report = self.handlers[id].handle(*args, **kwargs)

        if report is None:

            return None

        for call, cargs, ckwargs in self.callbacks.get(id, []):

            call(report, *cargs, **ckwargs)

        return report

    def handle(self, id: int, *args, **kwargs) -> Any:
        """
        Same as 'run()', with the report passed through our formatter.

        :param id: Query kind ID
        :type id: int
        :return: The formatted report, None if a NullHandler is registered
        :rtype: Any
        """

        report = self.run(id, *args, **kwargs)

        return None if report is None else self.formatter.format(report)
