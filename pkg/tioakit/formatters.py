"""
Formatters for use with query reports and automata.

A formatter turns something the engine produced into something
a user or another program can read.
This can be as simple as returning the data unchanged,
or as involved as rendering an automaton in the DOT language.
"""

import json

from typing import Any, Dict

from tioakit.classes.base import Tioa
from tioakit.classes.guards import TRUE
from tioakit.model import automaton_dict
from tioakit.semantics import Operand, PrunedSpec


class BaseFormat(object):
    """
    BaseFormat - Parent of every formatter.

    Clients pass each report through their formatter,
    and the DOT and model formatters take automata instead.
    """

    def format(self, data: Any) -> Any:
        """
        Converts a report or an automaton.

        :param data: Report or automaton
        :type data: Any
        :return: The converted value
        :rtype: Any
        :raises: NotImplementedError: Subclasses do the converting
        """

        raise NotImplementedError(f"{type(self).__name__} does not format anything")


class NullFormatter(BaseFormat):
    """
    NullFormatter - Hands reports back unchanged.

    This is the default formatter of every client.
    """

    def format(self, data: Any) -> Any:

        return data


class JSONReportFormatter(BaseFormat):
    """
    Renders report dictionaries as JSON text.

    Keys are sorted so equal reports always give equal text.
    """

    def __init__(self, indent: int=2) -> None:

        self.indent = indent

    def format(self, data: Any) -> str:
        """
        Dumps the given report.

        :param data: Report, or a list of reports
        :type data: Any
        :return: JSON text
        :rtype: str
        """

        return json.dumps(data, indent=self.indent, sort_keys=True)


def _gvquote(text: str) -> str:

    return '"{}"'.format(text.replace('\\', '\\\\').replace('"', r'\"').replace('\n', r'\n'))


class DotFormatter(BaseFormat):
    """
    Renders an automaton in the Graphviz DOT language.

    Locations become nodes labelled with their invariant,
    the initial one drawn with a double circle.
    Edges are labelled 'action guard / resets',
    where inputs carry a '?' and outputs a '!'.
    Output only depends on the automaton, so exports are reproducible.
    """

    def format(self, data: Operand) -> str:
        """
        Renders the given automaton.

        :param data: Automaton or pruned specification
        :type data: Union[Tioa, PrunedSpec]
        :return: DOT text
        :rtype: str
        """

        tioa: Tioa = data.to_tioa() if isinstance(data, PrunedSpec) else data
        lines = [f"digraph {_gvquote(tioa.name)} {{", "  rankdir=LR;"]

        for loc in tioa.locations:

            inv = tioa.invariant(loc)
            label = loc if inv is TRUE else f"{loc}\n{inv.text()}"
            shape = 'doublecircle' if loc == tioa.initial else 'circle'

            lines.append(f"  {_gvquote(loc)} [shape={shape} label={_gvquote(label)}];")

        for edge in tioa.edges:

            label = tioa.alphabet.mark(edge.action)

            if edge.guard is not TRUE:

                label += f" {edge.guard.text()}"

            if edge.resets:

                label += f" / {', '.join(f'{c}=0' for c in sorted(edge.resets))}"

            lines.append(f"  {_gvquote(edge.source)} -> {_gvquote(edge.target)} [label={_gvquote(label)}];")

        lines.append("}")

        return '\n'.join(lines) + '\n'


class ModelFormatter(BaseFormat):
    """
    Converts an automaton into its model file object,
    the form 'get' and 'prune' reports carry.
    """

    def format(self, data: Operand) -> Dict[str, Any]:
        """
        :param data: Automaton or pruned specification
        :type data: Union[Tioa, PrunedSpec]
        :return: JSON ready dictionary
        :rtype: Dict[str, Any]
        """

        return automaton_dict(data.to_tioa() if isinstance(data, PrunedSpec) else data)
