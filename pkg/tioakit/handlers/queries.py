"""
Handlers for every query kind.

The symbolic handlers run the zone based engine in 'tioakit.analysis'.
The oracle handlers answer the same questions on explicit region graphs,
which is only possible for small automata, and are used to cross-check.
"""

from __future__ import annotations

from typing import Any, Dict, Tuple

from tioakit.analysis.consistency import consistency, immediate_errors, is_implementation, prune_adversarial
from tioakit.analysis.simulation import bisimilar, refinement
from tioakit.classes.base import ImplementationReport, Verdict
from tioakit.classes.query import COMPOSITION, CONJUNCTION, Binary, Expr, Name, Prune
from tioakit.errors import InconsistentSpecification
from tioakit.formatters import ModelFormatter
from tioakit.handlers.base import BaseHandler
from tioakit.operators import as_tioa
from tioakit.oracle.checks import oracle_bisim, oracle_consistency, oracle_refinement
from tioakit.oracle.checks import prune as oracle_prune
from tioakit.oracle.systems import AutomatonSystem, BaseSystem, CompositionSystem, ConjunctionSystem
from tioakit.semantics import PrunedSpec


class Refinement(BaseHandler):
    """
    Decides 'E1 <= E2' with the alternating simulation game.
    """

    ID = 0
    KIND = 'refinement'

    def pre_process(self, data: Tuple[Any, ...]) -> Verdict:

        return refinement(data[0], data[1], self.stats)


class Consistency(BaseHandler):
    """
    Decides consistency, with a losing trace as counterexample.
    """

    ID = 1
    KIND = 'consistency'

    def pre_process(self, data: Tuple[Any, ...]) -> Verdict:

        return consistency(data[0], self.stats)


class Implementation(BaseHandler):
    """
    Checks input enabledness, output urgency and independent progress.

    The report lists every violation found.
    """

    ID = 2
    KIND = 'implementation'

    def pre_process(self, data: Tuple[Any, ...]) -> ImplementationReport:

        return is_implementation(data[0])

    def format(self, data: ImplementationReport) -> Dict[str, Any]:

        return {'holds': data.holds, 'violations': [v.asdict() for v in data.violations]}


class LocalConsistency(BaseHandler):
    """
    Checks that every state allows independent progress.
    """

    ID = 3
    KIND = 'local-consistency'

    def pre_process(self, data: Tuple[Any, ...]):

        return immediate_errors(data[0])

    def format(self, data) -> Dict[str, Any]:

        if data.is_empty():

            return {'holds': True}

        return {'holds': False, 'immediate_errors': data.describe()}


class Bisimulation(BaseHandler):
    """
    Decides 'E1 == E2', timed bisimulation.
    """

    ID = 4
    KIND = 'bisim'

    def pre_process(self, data: Tuple[Any, ...]) -> Verdict:

        return bisimilar(data[0], data[1], self.stats)


class Get(BaseHandler):
    """
    Materializes an expression and reports the automaton.
    """

    ID = 5
    KIND = 'get'

    def pre_process(self, data: Tuple[Any, ...]):

        return data[0]

    def format(self, data) -> Dict[str, Any]:

        return {'holds': True, 'automaton': ModelFormatter().format(data)}


class PruneHandler(Get):
    """
    Adversarial pruning of an expression.

    An inconsistent expression can not be pruned,
    we then report a failed query with the consistency counterexample.
    """

    ID = 6
    KIND = 'prune'

    def pre_process(self, data: Tuple[Any, ...]):

        try:

            return prune_adversarial(data[0], self.stats)

        except InconsistentSpecification:

            return consistency(data[0], self.stats)

    def format(self, data) -> Dict[str, Any]:

        if isinstance(data, PrunedSpec):

            return super().format(data)

        return BaseHandler.format(self, data)


class OracleHandler(BaseHandler):
    """
    OracleHandler - Parent class for region graph handlers.

    Expressions are materialized as explicit systems:
    names become automaton systems, conjunction, composition and pruning
    are built on the systems themselves.
    Quotients are built by the symbolic operator and then made explicit,
    as a quotient system has no clock for the error location to live in.
    """

    def as_system(self, expr: Expr) -> BaseSystem:
        """
        Builds the explicit system of an expression.

        :param expr: Expression to build
        :type expr: Expr
        :return: Explicit system
        :rtype: BaseSystem
        """

        if isinstance(expr, Name):

            return AutomatonSystem(self.hand_collection.lookup(expr.name))

        if isinstance(expr, Prune):

            return oracle_prune(self.as_system(expr.operand))

        if isinstance(expr, Binary) and expr.op == CONJUNCTION:

            return ConjunctionSystem(self.as_system(expr.left), self.as_system(expr.right))

        if isinstance(expr, Binary) and expr.op == COMPOSITION:

            return CompositionSystem(self.as_system(expr.left), self.as_system(expr.right))

        return AutomatonSystem(as_tioa(self.hand_collection.evaluate(expr, self.stats)))

    def materialize(self, *exprs: Expr) -> Tuple[BaseSystem, ...]:

        return tuple(self.as_system(expr) for expr in exprs)

    def format(self, data: bool) -> Dict[str, Any]:

        return {'holds': bool(data)}


class OracleRefinement(OracleHandler):

    ID = 0
    KIND = 'refinement'

    def pre_process(self, data: Tuple[BaseSystem, ...]) -> bool:

        return oracle_refinement(data[0], data[1])


class OracleConsistency(OracleHandler):

    ID = 1
    KIND = 'consistency'

    def pre_process(self, data: Tuple[BaseSystem, ...]) -> bool:

        return oracle_consistency(data[0])


class OracleBisimulation(OracleHandler):

    ID = 4
    KIND = 'bisim'

    def pre_process(self, data: Tuple[BaseSystem, ...]) -> bool:

        return oracle_bisim(data[0], data[1])
