"""
tioa-kit wrapper classes.

The class you probably want to work with is the TioaClient.
It loads model files, evaluates operator expressions,
and answers queries through the handlers registered to it.
"""

from __future__ import annotations

import logging

from typing import Any, Dict, List, Optional, Union

from tioakit.classes.base import Tioa
from tioakit.classes.options import CheckOptions
from tioakit.classes.query import Expr, Query, parse_query
from tioakit.errors import HandlerNotImplemented, OracleDisagreement, RegionGraphTooLarge
from tioakit.handlers.base import HandlerCollection
from tioakit.handlers.maps import DEFAULT_MAP, ORACLE_MAP
from tioakit.model import load_models, parse_models

logger = logging.getLogger(__name__)

Operand = Union[str, Expr]


class TioaClient(HandlerCollection):
    """
    TioaClient - Entry point for checking timed I/O automata!

    We provide one method per query kind,
    each one taking expression strings like 'HalfAdm1 && HalfAdm2'
    and returning the report of the registered handler.
    'check()' accepts whole queries, like 'refinement: Machine2 <= Machine',
    and cross-checks the verdict with the region graph oracle
    when the options ask for it.
    """

    def load_default(self):
        """
        We simply load the tioa-kit default handler map.
        """

        self.load_handlers(DEFAULT_MAP)

    @classmethod
    def from_file(cls, path: str, options: Optional[CheckOptions]=None) -> TioaClient:
        """
        Creates a client with the automata of a model file loaded.

        :param path: Path to the model file
        :type path: str
        :param options: Options to check with
        :type options: Optional[CheckOptions]
        :return: New client
        :rtype: TioaClient
        """

        client = cls(options=options)
        client.models.update(load_models(path))

        return client

    def load_models(self, document: Union[bytes, str]) -> List[str]:
        """
        Loads the automata of a model file document.

        Automata with a name that is already loaded replace the old ones.

        :param document: Contents of a model file
        :type document: Union[bytes, str]
        :return: Names of the loaded automata, in file order
        :rtype: List[str]
        """

        models = parse_models(document)
        self.models.update(models)

        return list(models)

    def add_model(self, tioa: Tioa):
        """
        Registers an automaton under its name.
        """

        self.models[tioa.name] = tioa

    def refinement(self, refining: Operand, refined: Operand) -> Dict[str, Any]:
        """
        Checks 'refining <= refined'.

        :param refining: Expression S
        :type refining: Union[str, Expr]
        :param refined: Expression T
        :type refined: Union[str, Expr]
        :return: Report with a witness or a counterexample
        :rtype: Dict[str, Any]
        """

        return self.handle(self.REFINEMENT, refining, refined)

    def consistency(self, expr: Operand) -> Dict[str, Any]:
        """
        Checks the consistency of an expression.
        """

        return self.handle(self.CONSISTENCY, expr)

    def implementation(self, expr: Operand) -> Dict[str, Any]:
        """
        Checks if an expression is an implementation, listing every violation.
        """

        return self.handle(self.IMPLEMENTATION, expr)

    def local_consistency(self, expr: Operand) -> Dict[str, Any]:
        """
        Checks if every state of an expression allows independent progress.
        """

        return self.handle(self.LOCAL_CONSISTENCY, expr)

    def bisim(self, first: Operand, second: Operand) -> Dict[str, Any]:
        """
        Checks timed bisimulation of two expressions.
        """

        return self.handle(self.BISIM, first, second)

    def get(self, expr: Operand) -> Dict[str, Any]:
        """
        Materializes an expression, the report carries the automaton.
        """

        return self.handle(self.GET, expr)

    def prune(self, expr: Operand) -> Dict[str, Any]:
        """
        Adversarially prunes an expression.
        """

        return self.handle(self.PRUNE, expr)

    def oracle_client(self) -> TioaClient:
        """
        Creates a client sharing our automata and options,
        with the region graph handlers loaded.

        :return: Oracle client
        :rtype: TioaClient
        """

        oracle = TioaClient(load_default=False, options=self.options)
        oracle.models = self.models
        oracle.load_handlers(ORACLE_MAP)

        return oracle

    def oracle_check(self, query: Query) -> Dict[str, Any]:
        """
        Answers a query with the region graph oracle.

        :param query: Parsed query
        :type query: Query
        :return: {'holds': bool}, or {'skipped': reason}
        :rtype: Dict[str, Any]
        """

        try:

            report = self.oracle_client().run(self.KIND_IDS[query.kind], *query.operands)

        except RegionGraphTooLarge as exc:

            logger.info("Oracle skipped for '%s': %s", query.text(), exc.detail)

            return {'skipped': exc.detail}

        if report is None:

            return {'skipped': f"The oracle does not answer {query.kind} queries"}

        return {'holds': report['holds']}

    def check(self, query: Union[str, Query]) -> Any:
        """
        Parses and answers a query.

        With the 'oracle' option set,
        the verdict is checked against the region graph oracle
        and the report gains an 'oracle' entry.

        :param query: Query text, like 'consistency: Inconsistent'
        :type query: Union[str, Query]
        :return: The report, passed through our formatter
        :rtype: Any
        :raises QueryParseError: If the query can not be parsed
        :raises HandlerNotImplemented: If no handler answers this kind
        :raises OracleDisagreement: If the oracle returns another verdict
        """

        if isinstance(query, str):

            query = parse_query(query)

        report = self.run(self.KIND_IDS[query.kind], *query.operands)

        if report is None:

            raise HandlerNotImplemented(f"No handler is registered for {query.kind} queries", 'query')

        if self.options.oracle:

            oracle = self.oracle_check(query)
            report['oracle'] = oracle

            if 'holds' in oracle and oracle['holds'] != report['holds']:

                raise OracleDisagreement(f"The symbolic engine says {report['holds']}, "
                                         f"the region graph oracle says {oracle['holds']}", query.text())

        return self.formatter.format(report)
