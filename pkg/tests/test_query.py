"""
Tests for the expression and query language.
"""

import pytest

from tioakit.classes.query import COMPOSITION, CONJUNCTION, QUOTIENT, Binary, Name, Prune, Query, parse_expression, parse_query
from tioakit.errors import QueryParseError


class TestExpressions:
    """
    Precedence, associativity and canonical text.
    """

    def test_name(self):

        assert parse_expression('Machine') == Name('Machine')

    def test_precedence(self):

        expr = parse_expression('A || B && C \\\\ D')

        assert expr == Binary(COMPOSITION, Name('A'), Binary(CONJUNCTION, Name('B'), Binary(QUOTIENT, Name('C'), Name('D'))))
        assert expr.text() == '(A || (B && (C \\\\ D)))'

    def test_left_associative(self):

        assert parse_expression('A && B && C') == Binary(CONJUNCTION, Binary(CONJUNCTION, Name('A'), Name('B')), Name('C'))
        assert parse_expression('T \\\\ S \\\\ R').text() == '((T \\\\ S) \\\\ R)'

    def test_parentheses(self):

        expr = parse_expression('(A || B) && C')

        assert expr == Binary(CONJUNCTION, Binary(COMPOSITION, Name('A'), Name('B')), Name('C'))

    def test_prune(self):

        expr = parse_expression('prune(S || T) && A')

        assert expr.left == Prune(Binary(COMPOSITION, Name('S'), Name('T')))
        assert expr.text() == '(prune((S || T)) && A)'

    def test_prune_as_a_name(self):

        assert parse_expression('prune') == Name('prune')

    def test_names(self):

        assert parse_expression('prune(S || T) && S').names() == ['S', 'T', 'S']

    @pytest.mark.parametrize('text', ['', 'A ||', '(A && B', 'A B', 'A $ B', 'prune(A'])
    def test_rejects(self, text):

        with pytest.raises(QueryParseError):

            parse_expression(text)


class TestQueries:

    def test_refinement(self):

        query = parse_query('refinement: Machine2 <= Machine')

        assert query.kind == 'refinement'
        assert query.operands == (Name('Machine2'), Name('Machine'))
        assert query.text() == 'refinement: Machine2 <= Machine'
        assert query.source == 'refinement: Machine2 <= Machine'

    def test_bisim(self):

        query = parse_query('bisim: prune(S) || prune(T) == prune(S || T)')

        assert query.text() == 'bisim: (prune(S) || prune(T)) == prune((S || T))'

    @pytest.mark.parametrize('kind', ['consistency', 'implementation', 'local-consistency', 'get', 'prune'])
    def test_single_operand(self, kind):

        query = parse_query(f"{kind}: A && B")

        assert query == Query(kind, (Binary(CONJUNCTION, Name('A'), Name('B')),), f"{kind}: A && B")
        assert query.text() == f"{kind}: (A && B)"

    @pytest.mark.parametrize('text', [
        'consistency Machine',
        'reachability: Machine',
        'refinement: Machine',
        'refinement: A <= B <= C',
        'bisim: A <= B',
        'consistency: A B',
        'consistency:',
    ])
    def test_rejects(self, text):

        with pytest.raises(QueryParseError) as info:

            parse_query(text)

        assert info.value.asdict()['kind'] == 'query_syntax'
        assert info.value.location == 'query'
