"""
Queries and the operator expressions they are made of.

A query is written 'kind: body'.
Refinement bodies are 'E1 <= E2', bisimulation bodies are 'E1 == E2',
every other kind takes a single expression.

Expressions combine automaton names with '||' (composition),
'&&' (conjunction), '\\\\' (quotient) and 'prune(...)'.
The quotient binds tightest, then conjunction, then composition,
all of them associate to the left, and parentheses override.
"""

from __future__ import annotations

import re

from dataclasses import dataclass
from typing import List, Tuple

from tioakit.errors import QueryParseError

COMPOSITION = '||'
CONJUNCTION = '&&'
QUOTIENT = '\\\\'

KINDS = ('refinement', 'consistency', 'implementation', 'local-consistency', 'bisim', 'get', 'prune')
RELATIONS = {'refinement': '<=', 'bisim': '=='}

_TOKEN = re.compile(r"\s*(?:([A-Za-z_][A-Za-z0-9_]*)|(\|\||&&|\\\\|<=|==|[()]))")


class Expr(object):
    """
    Expr - Parent class for operator expressions.
    """

    def names(self) -> List[str]:
        """
        Automaton names used by this expression, in order of appearance.
        """

        raise NotImplementedError("Must be overridden in child class!")

    def text(self) -> str:
        """
        Renders the expression with every operation in parentheses.
        """

        raise NotImplementedError("Must be overridden in child class!")

    def __str__(self) -> str:

        return self.text()


@dataclass(frozen=True)
class Name(Expr):
    """
    Name - Reference to a loaded automaton.

        * name - Name of the automaton
    """

    name: str

    def names(self) -> List[str]:

        return [self.name]

    def text(self) -> str:

        return self.name


@dataclass(frozen=True)
class Binary(Expr):
    """
    Binary - A binary operator applied to two expressions.

        * op - COMPOSITION, CONJUNCTION or QUOTIENT
        * left - Left operand
        * right - Right operand
    """

    op: str
    left: Expr
    right: Expr

    def names(self) -> List[str]:

        return self.left.names() + self.right.names()

    def text(self) -> str:

        return f"({self.left.text()} {self.op} {self.right.text()})"


@dataclass(frozen=True)
class Prune(Expr):
    """
    Prune - Adversarial pruning of an expression.

        * operand - Expression to prune
    """

    operand: Expr

    def names(self) -> List[str]:

        return self.operand.names()

    def text(self) -> str:

        return f"prune({self.operand.text()})"


@dataclass(frozen=True)
class Query(object):
    """
    Query - A parsed query.

        * kind - One of KINDS
        * operands - One expression, or two for refinement and bisimulation
        * source - The query text as given
    """

    kind: str
    operands: Tuple[Expr, ...]
    source: str = ''

    def text(self) -> str:
        """
        Canonical text of this query.
        """

        if self.kind in RELATIONS:

            return f"{self.kind}: {self.operands[0].text()} {RELATIONS[self.kind]} {self.operands[1].text()}"

        return f"{self.kind}: {self.operands[0].text()}"


class _Parser(object):
    """
    Recursive descent parser over the expression grammar.
    """

    def __init__(self, text: str) -> None:

        self.text = text
        self.tokens = self._lex(text)
        self.pos = 0

    def _lex(self, text: str) -> List[Tuple[str, str]]:

        tokens = []
        pos = 0

        while pos < len(text):

            if text[pos:].strip() == '':

                break

            match = _TOKEN.match(text, pos)

            if match is None:

                raise QueryParseError(f"Unexpected character {text[pos:].strip()[0]!r} in {text!r}", 'query')

            ident, sym = match.groups()
            tokens.append(('ident', ident) if ident is not None else ('sym', sym))
            pos = match.end()

        return tokens

    def peek(self) -> Tuple[str, str]:

        return self.tokens[self.pos] if self.pos < len(self.tokens) else ('end', '')

    def take(self, kind: str, value: str=None) -> str:

        tok = self.peek()

        if tok[0] != kind or (value is not None and tok[1] != value):

            want = value or kind

            raise QueryParseError(f"Expected {want!r} but found {tok[1] or 'end of input'!r} in {self.text!r}", 'query')

        self.pos += 1

        return tok[1]

    def at_end(self) -> bool:

        return self.peek()[0] == 'end'

    def level(self, ops: Tuple[str, ...]) -> Expr:

        # One precedence level, operators listed from loosest to tightest:

        if not ops:

            return self.atom()

        expr = self.level(ops[1:])

        while self.peek() == ('sym', ops[0]):

            self.pos += 1
            expr = Binary(ops[0], expr, self.level(ops[1:]))

        return expr

    def expr(self) -> Expr:

        return self.level((COMPOSITION, CONJUNCTION, QUOTIENT))

    def atom(self) -> Expr:

        kind, value = self.peek()

        if (kind, value) == ('sym', '('):

            self.pos += 1
            inner = self.expr()
            self.take('sym', ')')

            return inner

        name = self.take('ident')

        if name == 'prune' and self.peek() == ('sym', '('):

            self.pos += 1
            inner = self.expr()
            self.take('sym', ')')

            return Prune(inner)

        return Name(name)


def parse_expression(text: str) -> Expr:
    """
    Parses an operator expression.

    :param text: Expression text, like 'HalfAdm1 && HalfAdm2'
    :type text: str
    :return: Parsed expression
    :rtype: Expr
    :raises QueryParseError: If the text does not follow the grammar
    """

    parser = _Parser(text)
    expr = parser.expr()

    if not parser.at_end():

        raise QueryParseError(f"Trailing input {parser.peek()[1]!r} in {text!r}", 'query')

    return expr


def parse_query(text: str) -> Query:
    """
    Parses a query.

    :param text: Query text, like 'refinement: Machine2 <= Machine'
    :type text: str
    :return: Parsed query
    :rtype: Query
    :raises QueryParseError: If the kind is unknown or the body is malformed
    """

    kind, sep, body = text.partition(':')
    kind = kind.strip()

    if not sep:

        raise QueryParseError(f"Missing 'kind:' prefix in {text!r}", 'query')

    if kind not in KINDS:

        raise QueryParseError(f"Unknown query kind {kind!r}, expected one of {', '.join(KINDS)}", 'query')

    parser = _Parser(body)
    first = parser.expr()

    if kind in RELATIONS:

        parser.take('sym', RELATIONS[kind])
        operands = (first, parser.expr())

    else:

        operands = (first,)

    if not parser.at_end():

        raise QueryParseError(f"Trailing input {parser.peek()[1]!r} in {text!r}", 'query')

    return Query(kind, operands, text.strip())
