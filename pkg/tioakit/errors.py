"""
tioa-kit exceptions and errors

Every exception carries a 'detail' message, an optional 'location'
describing where the problem was found (automaton, edge, query),
and a 'kind' string used when errors are reported as JSON.
"""

from typing import Optional


class TioaBaseException(Exception):
    """
    TioaBaseException - Base exception all tioa-kit exceptions will inherit!

    This will NOT be raised by any tioa-kit component!
    This exception can be used to identify the custom tioa-kit exceptions.
    """

    kind = 'error'

    def __init__(self, detail: str='', location: Optional[str]=None) -> None:

        super().__init__(detail)

        self.detail = detail  # Human readable description
        self.location = location  # Provenance, if known

    def asdict(self) -> dict:
        """
        Converts ourselves into the machine readable error object.

        :return: Dictionary with kind, detail and location
        :rtype: dict
        """

        return {'kind': self.kind, 'detail': self.detail, 'location': self.location}


class ModelError(TioaBaseException):
    """
    Base class for problems found in a model file.
    """

    kind = 'model_error'


class SchemaViolation(ModelError):
    """
    Exception raised when a model document does not follow the model file schema.
    """

    kind = 'schema_violation'


class GuardSyntaxError(ModelError):
    """
    Exception raised when a guard or invariant string can not be parsed.

    Rational constants are rejected here too,
    as constraints only compare clocks against integers.
    """

    kind = 'guard_syntax'


class UnknownClock(ModelError):
    """
    Exception raised when a constraint or reset names a clock
    the automaton does not declare.
    """

    kind = 'unknown_clock'


class UnknownAction(ModelError):
    """
    Exception raised when an edge uses an action outside the alphabet.
    """

    kind = 'unknown_action'


class NondeterminismError(ModelError):
    """
    Exception raised when two edges with the same source and action
    can be enabled together but disagree on resets or target.
    """

    kind = 'nondeterminism'


class NonConvexInvariant(ModelError):
    """
    Exception raised when a location invariant is not a conjunction of atoms.
    """

    kind = 'non_convex_invariant'


class InitialStateViolation(ModelError):
    """
    Exception raised when the zero valuation does not satisfy the initial invariant.
    """

    kind = 'initial_state'


class DuplicateAutomaton(ModelError):
    """
    Exception raised when two automata in one document share a name.
    """

    kind = 'duplicate_automaton'


class ClockMismatch(TioaBaseException):
    """
    Exception raised when federations over different clock lists are combined.
    """

    kind = 'clock_mismatch'


class OperatorError(TioaBaseException):
    """
    Base class for failed operator preconditions.
    """

    kind = 'operator_error'


class AlphabetError(OperatorError):
    """
    Exception raised when conjunction operands use an action with opposite roles.
    """

    kind = 'alphabet'


class NotComposable(OperatorError):
    """
    Exception raised when composition operands share an output action.
    """

    kind = 'not_composable'


class QuotientPreconditionError(OperatorError):
    """
    Exception raised when an output of the divisor is an input of the dividend.
    """

    kind = 'quotient_precondition'


class RefinementAlphabetError(OperatorError):
    """
    Exception raised when the alphabets of a refinement query are not
    related the way refinement requires.
    """

    kind = 'refinement_alphabet'


class InconsistentSpecification(TioaBaseException):
    """
    Exception raised when adversarial pruning leaves nothing,
    because the initial state is inconsistent.
    """

    kind = 'inconsistent_specification'


class RegionGraphTooLarge(TioaBaseException):
    """
    Exception raised when an automaton is beyond the oracle size guards.
    """

    kind = 'region_graph_too_large'


class QueryParseError(TioaBaseException):
    """
    Exception raised when a query or expression can not be parsed.
    """

    kind = 'query_syntax'


class UnknownAutomaton(TioaBaseException):
    """
    Exception raised when an expression names an automaton that was never loaded.
    """

    kind = 'unknown_automaton'


class OracleDisagreement(TioaBaseException):
    """
    Exception raised when the symbolic engine and the region oracle
    return different verdicts for the same query.
    """

    kind = 'oracle_disagreement'


class HandlerRaise(TioaBaseException):
    """
    Exception raised when the 'RaiseHandler' is called.

    This exception will not be raised anywhere else!
    """

    kind = 'handler_raise'


class HandlerNotImplemented(TioaBaseException):
    """
    Exception raised when no handler is attached to the given query kind.
    """

    kind = 'handler_not_implemented'
