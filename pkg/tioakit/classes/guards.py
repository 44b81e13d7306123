"""
Guard language: clock constraints combined with boolean connectives.

Guards and invariants are kept as small immutable syntax trees.
We can parse them from strings, print them back,
compile them into federations over a clock list,
and substitute zero for reset clocks.

The grammar we accept looks like this:

    expr   := term ('||' term)*
    term   := factor ('&&' factor)*
    factor := '!' factor | '(' expr ')' | 'true' | 'false' | clock rel int
    rel    := '<' | '<=' | '>' | '>=' | '==' | '='

Constants are non-negative integers, rationals are refused.
"""

from __future__ import annotations

import re

from dataclasses import dataclass
from fractions import Fraction
from typing import FrozenSet, Iterable, List, Mapping, Sequence, Tuple, Union

from tioakit.errors import GuardSyntaxError
from tioakit.zones import Federation

OPS = ('<', '<=', '>', '>=', '==')

_TOKEN = re.compile(r"\s*(?:(\d+\.\d*|\.\d+)|(\d+)|([A-Za-z_][A-Za-z0-9_.]*)|(<=|>=|==|&&|\|\||[<>=!()]))")

# Binding strength used when printing:

_OR, _AND, _NOT = 1, 2, 3


class Guard(object):
    """
    Guard - Base class all guard nodes inherit.

    Each node knows how to compile itself into a federation,
    evaluate itself on a concrete valuation,
    and substitute zero for reset clocks.
    """

    PREC = _NOT

    def compile(self, clocks: Sequence[str]) -> Federation:
        """
        Compiles this guard into a federation over the given clocks.

        :param clocks: Clock list of the federation
        :type clocks: Sequence[str]
        :return: Exact set of satisfying valuations
        :rtype: Federation
        :raises UnknownClock: If the guard names a clock outside the list
        """

        raise NotImplementedError("Must be implemented in child class!")

    def holds(self, valuation: Mapping[str, Union[int, Fraction]]) -> bool:
        """
        Evaluates this guard on a concrete valuation.

        :param valuation: Clock name to value
        :type valuation: Mapping[str, Union[int, Fraction]]
        :return: True if the valuation satisfies the guard
        :rtype: bool
        """

        raise NotImplementedError("Must be implemented in child class!")

    def substitute_zero(self, resets: Iterable[str]) -> Guard:
        """
        Replaces every occurrence of a reset clock with zero.

        :param resets: Clocks to replace
        :type resets: Iterable[str]
        :return: Guard over the remaining clocks
        :rtype: Guard
        """

        return self

    def rename(self, mapping: Mapping[str, str]) -> Guard:
        """
        Renames clocks through the given mapping.
        """

        return self

    def clocks(self) -> FrozenSet[str]:
        """
        Returns the clocks this guard mentions.
        """

        return frozenset()

    def is_conjunctive(self) -> bool:
        """
        Determines if this guard is a plain conjunction of atoms.

        Conjunctive guards compile to a single zone (or nothing).
        """

        return False

    def text(self, outer: int=0) -> str:
        """
        Renders this guard in the guard grammar.

        :param outer: Binding strength of the surrounding operator
        :type outer: int
        :return: Guard string
        :rtype: str
        """

        raise NotImplementedError("Must be implemented in child class!")

    def __str__(self) -> str:

        return self.text()


@dataclass(frozen=True)
class TrueGuard(Guard):
    """
    Guard satisfied by every valuation.
    """

    def compile(self, clocks: Sequence[str]) -> Federation:

        return Federation.universe(clocks)

    def holds(self, valuation) -> bool:

        return True

    def is_conjunctive(self) -> bool:

        return True

    def text(self, outer: int=0) -> str:

        return 'true'


@dataclass(frozen=True)
class FalseGuard(Guard):
    """
    Guard satisfied by no valuation.
    """

    def compile(self, clocks: Sequence[str]) -> Federation:

        return Federation.empty(clocks)

    def holds(self, valuation) -> bool:

        return False

    def is_conjunctive(self) -> bool:

        return True

    def text(self, outer: int=0) -> str:

        return 'false'


TRUE = TrueGuard()
FALSE = FalseGuard()


@dataclass(frozen=True)
class Atom(Guard):
    """
    Atom - A single clock constraint.

        * clock - Name of the constrained clock
        * op - One of '<', '<=', '>', '>=', '=='
        * value - Non-negative integer constant
    """

    clock: str
    op: str
    value: int

    def compile(self, clocks: Sequence[str]) -> Federation:

        return Federation.atom(clocks, self.clock, self.op, self.value)

    def holds(self, valuation) -> bool:

        return _compare(valuation[self.clock], self.op, self.value)

    def substitute_zero(self, resets: Iterable[str]) -> Guard:

        if self.clock in set(resets):

            return TRUE if _compare(0, self.op, self.value) else FALSE

        return self

    def rename(self, mapping: Mapping[str, str]) -> Guard:

        return Atom(mapping.get(self.clock, self.clock), self.op, self.value)

    def clocks(self) -> FrozenSet[str]:

        return frozenset((self.clock,))

    def is_conjunctive(self) -> bool:

        return True

    def text(self, outer: int=0) -> str:

        return f"{self.clock}{self.op}{self.value}"


@dataclass(frozen=True)
class And(Guard):
    """
    Conjunction of several guards.
    """

    parts: Tuple[Guard, ...]

    PREC = _AND

    def compile(self, clocks: Sequence[str]) -> Federation:

        out = Federation.universe(clocks)

        for part in self.parts:

            out = out.intersect(part.compile(clocks))

            if out.is_empty():

                break

        return out

    def holds(self, valuation) -> bool:

        return all(part.holds(valuation) for part in self.parts)

    def substitute_zero(self, resets: Iterable[str]) -> Guard:

        resets = frozenset(resets)

        return conj(*(part.substitute_zero(resets) for part in self.parts))

    def rename(self, mapping: Mapping[str, str]) -> Guard:

        return And(tuple(part.rename(mapping) for part in self.parts))

    def clocks(self) -> FrozenSet[str]:

        return frozenset().union(*(part.clocks() for part in self.parts))

    def is_conjunctive(self) -> bool:

        return all(part.is_conjunctive() for part in self.parts)

    def text(self, outer: int=0) -> str:

        body = ' && '.join(part.text(_AND) for part in self.parts)

        return f"({body})" if outer > _AND else body


@dataclass(frozen=True)
class Or(Guard):
    """
    Disjunction of several guards.
    """

    parts: Tuple[Guard, ...]

    PREC = _OR

    def compile(self, clocks: Sequence[str]) -> Federation:

        out = Federation.empty(clocks)

        for part in self.parts:

            out = out.union(part.compile(clocks))

        return out.reduce()

    def holds(self, valuation) -> bool:

        return any(part.holds(valuation) for part in self.parts)

    def substitute_zero(self, resets: Iterable[str]) -> Guard:

        resets = frozenset(resets)

        return disj(*(part.substitute_zero(resets) for part in self.parts))

    def rename(self, mapping: Mapping[str, str]) -> Guard:

        return Or(tuple(part.rename(mapping) for part in self.parts))

    def clocks(self) -> FrozenSet[str]:

        return frozenset().union(*(part.clocks() for part in self.parts))

    def text(self, outer: int=0) -> str:

        body = ' || '.join(part.text(_OR) for part in self.parts)

        return f"({body})" if outer > _OR else body


@dataclass(frozen=True)
class Not(Guard):
    """
    Negation of a guard.
    """

    part: Guard

    def compile(self, clocks: Sequence[str]) -> Federation:

        return self.part.compile(clocks).complement()

    def holds(self, valuation) -> bool:

        return not self.part.holds(valuation)

    def substitute_zero(self, resets: Iterable[str]) -> Guard:

        return neg(self.part.substitute_zero(resets))

    def rename(self, mapping: Mapping[str, str]) -> Guard:

        return Not(self.part.rename(mapping))

    def clocks(self) -> FrozenSet[str]:

        return self.part.clocks()

    def text(self, outer: int=0) -> str:

        return '!' + self.part.text(_NOT)


@dataclass(frozen=True, eq=False)
class Region(Guard):
    """
    Region - A guard given directly by a federation.

    We use these when a pruned specification is turned back into an automaton,
    where the admissible valuations are arbitrary unions of zones.
    They print as their zone constraints,
    which may include clock differences the guard grammar does not accept,
    so their text is for display only.
    """

    fed: Federation

    def compile(self, clocks: Sequence[str]) -> Federation:

        return self.fed.embed(clocks)

    def holds(self, valuation) -> bool:

        return self.fed.contains({c: valuation[c] for c in self.fed.clocks})

    def substitute_zero(self, resets: Iterable[str]) -> Guard:

        mine = set(resets) & set(self.fed.clocks)

        return Region(self.fed.reset_inverse(mine)) if mine else self

    def rename(self, mapping: Mapping[str, str]) -> Guard:

        return Region(self.fed.rename(mapping))

    def clocks(self) -> FrozenSet[str]:

        return frozenset(self.fed.clocks)

    def is_conjunctive(self) -> bool:

        return len(self.fed.zones) <= 1

    def text(self, outer: int=0) -> str:

        body = self.fed.describe()

        return f"({body})" if outer > _OR and '||' in body else body


def _compare(left: Union[int, Fraction], op: str, right: int) -> bool:

    if op == '<':

        return left < right

    if op == '<=':

        return left <= right

    if op == '>':

        return left > right

    if op == '>=':

        return left >= right

    return left == right


def conj(*parts: Guard) -> Guard:
    """
    Builds a simplified conjunction.

    Nested conjunctions are flattened, 'true' parts are dropped,
    and a 'false' part makes the whole guard false.

    :return: Conjunction of the given parts
    :rtype: Guard
    """

    flat: List[Guard] = []

    for part in parts:

        items = part.parts if isinstance(part, And) else (part,)

        for item in items:

            if isinstance(item, FalseGuard):

                return FALSE

            if isinstance(item, TrueGuard) or item in flat:

                continue

            flat.append(item)

    if not flat:

        return TRUE

    return flat[0] if len(flat) == 1 else And(tuple(flat))


def disj(*parts: Guard) -> Guard:
    """
    Builds a simplified disjunction.

    The empty disjunction is 'false'.

    :return: Disjunction of the given parts
    :rtype: Guard
    """

    flat: List[Guard] = []

    for part in parts:

        items = part.parts if isinstance(part, Or) else (part,)

        for item in items:

            if isinstance(item, TrueGuard):

                return TRUE

            if isinstance(item, FalseGuard) or item in flat:

                continue

            flat.append(item)

    if not flat:

        return FALSE

    return flat[0] if len(flat) == 1 else Or(tuple(flat))


def neg(part: Guard) -> Guard:
    """
    Builds a simplified negation.
    """

    if isinstance(part, TrueGuard):

        return FALSE

    if isinstance(part, FalseGuard):

        return TRUE

    if isinstance(part, Not):

        return part.part

    return Not(part)


def compile_guard(guard: Guard, clocks: Sequence[str]) -> Federation:
    """
    Compiles a guard into the exact federation of satisfying valuations.

    Negation subtracts from the universe, disjunction unions.

    :param guard: Guard to compile
    :type guard: Guard
    :param clocks: Clock list to compile over
    :type clocks: Sequence[str]
    :return: Federation over 'clocks'
    :rtype: Federation
    :raises UnknownClock: If the guard names a clock outside the list
    """

    return guard.compile(clocks)


class _Parser(object):
    """
    Recursive descent parser over the guard grammar.
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

                raise GuardSyntaxError(f"Unexpected character {text[pos:].strip()[0]!r} in guard {text!r}")

            rational, number, ident, sym = match.groups()

            if rational is not None:

                raise GuardSyntaxError(f"Rational constant {rational!r} in guard {text!r}, only integers are allowed")

            if number is not None:

                tokens.append(('int', number))

            elif ident is not None:

                tokens.append(('ident', ident))

            else:

                tokens.append(('sym', '==' if sym == '=' else sym))

            pos = match.end()

        return tokens

    def peek(self) -> Tuple[str, str]:

        return self.tokens[self.pos] if self.pos < len(self.tokens) else ('end', '')

    def take(self, kind: str, value: str=None) -> str:

        tok = self.peek()

        if tok[0] != kind or (value is not None and tok[1] != value):

            want = value or kind

            raise GuardSyntaxError(f"Expected {want!r} but found {tok[1] or 'end of input'!r} in guard {self.text!r}")

        self.pos += 1

        return tok[1]

    def parse(self) -> Guard:

        guard = self.expr()

        if self.peek()[0] != 'end':

            raise GuardSyntaxError(f"Trailing input {self.peek()[1]!r} in guard {self.text!r}")

        return guard

    def expr(self) -> Guard:

        parts = [self.term()]

        while self.peek() == ('sym', '||'):

            self.pos += 1
            parts.append(self.term())

        return parts[0] if len(parts) == 1 else Or(tuple(parts))

    def term(self) -> Guard:

        parts = [self.factor()]

        while self.peek() == ('sym', '&&'):

            self.pos += 1
            parts.append(self.factor())

        return parts[0] if len(parts) == 1 else And(tuple(parts))

    def factor(self) -> Guard:

        kind, value = self.peek()

        if (kind, value) == ('sym', '!'):

            self.pos += 1

            return Not(self.factor())

        if (kind, value) == ('sym', '('):

            self.pos += 1
            inner = self.expr()
            self.take('sym', ')')

            return inner

        if kind == 'ident' and value in ('true', 'false'):

            self.pos += 1

            return TRUE if value == 'true' else FALSE

        clock = self.take('ident')
        op = self.take('sym')

        if op not in OPS:

            raise GuardSyntaxError(f"Unknown relation {op!r} in guard {self.text!r}")

        return Atom(clock, op, int(self.take('int')))


def parse_guard(text: str) -> Guard:
    """
    Parses a guard string.

    Empty strings parse as 'true'.

    :param text: Guard string
    :type text: str
    :return: Parsed guard
    :rtype: Guard
    :raises GuardSyntaxError: If the string does not follow the grammar
    """

    if text is None or not text.strip():

        return TRUE

    return _Parser(text).parse()
