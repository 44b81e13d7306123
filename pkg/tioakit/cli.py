"""
Command line front end.

    tioa-kit check -m MODEL (-q QUERY | -f QUERYFILE) [--oracle] [--dot OUT]
                   [--no-reach-prune] [--jobs N] [-v]
    tioa-kit dot -m MODEL -e EXPR
    tioa-kit validate -m MODEL

Reports are printed to standard output as JSON, logs go to standard error.
The exit code is 0 when the query holds, 1 when it does not,
and 2 for usage, model and operator errors.
"""

from __future__ import annotations

import argparse
import logging
import sys

from concurrent.futures import ProcessPoolExecutor
from typing import Any, Dict, List, Optional, Sequence, Tuple

from tioakit.classes.options import CheckOptions
from tioakit.classes.query import Prune, parse_expression, parse_query
from tioakit.errors import TioaBaseException
from tioakit.formatters import DotFormatter, JSONReportFormatter
from tioakit.model import check_input_enabled
from tioakit.wrapper import TioaClient

logger = logging.getLogger(__name__)

HOLDS = 0
FAILS = 1
ERROR = 2


def error_report(exc: BaseException) -> Dict[str, Any]:
    """
    The machine readable error object of an exception.

    :param exc: Exception to report
    :type exc: BaseException
    :return: {'error': {'kind', 'detail', 'location'}}
    :rtype: Dict[str, Any]
    """

    if isinstance(exc, TioaBaseException):

        return {'error': exc.asdict()}

    if isinstance(exc, OSError):

        return {'error': {'kind': 'io_error', 'detail': str(exc), 'location': getattr(exc, 'filename', None)}}

    return {'error': {'kind': 'internal', 'detail': repr(exc), 'location': None}}


def run_query(model: str, query: str, options: Dict[str, Any]) -> Tuple[int, Dict[str, Any]]:
    """
    Answers one query against a model file.

    This is the unit of work handed to worker processes,
    so it only takes and returns plain data.

    :param model: Path to the model file
    :type model: str
    :param query: Query text
    :type query: str
    :param options: CheckOptions values
    :type options: Dict[str, Any]
    :return: Exit code and report
    :rtype: Tuple[int, Dict[str, Any]]
    """

    try:

        client = TioaClient.from_file(model, CheckOptions(**options))
        report = client.check(query)

    except (TioaBaseException, OSError) as exc:

        logger.debug("Query '%s' failed", query, exc_info=True)

        return ERROR, error_report(exc)

    return (HOLDS if report['holds'] else FAILS), report


def read_queries(path: str) -> List[str]:
    """
    Reads a query file: one query per line,
    blank lines and lines starting with '#' are skipped.
    """

    with open(path, 'r', encoding='utf-8') as file:

        return [line.strip() for line in file if line.strip() and not line.strip().startswith('#')]


def write_dot(model: str, query: str, options: CheckOptions, out: str):
    """
    Writes the DOT rendering of the first operand of a query.

    For 'prune' queries the pruned automaton is rendered.
    """

    parsed = parse_query(query)
    expr = Prune(parsed.operands[0]) if parsed.kind == 'prune' else parsed.operands[0]
    client = TioaClient.from_file(model, options)

    with open(out, 'w', encoding='utf-8') as file:

        file.write(DotFormatter().format(client.evaluate(expr)))


def command_check(args: argparse.Namespace) -> int:

    options = CheckOptions(reach_prune=not args.no_reach_prune, oracle=args.oracle, jobs=args.jobs)
    form = JSONReportFormatter()

    if args.query is not None:

        code, report = run_query(args.model, args.query, options.asdict())

        if args.dot and code != ERROR:

            try:

                write_dot(args.model, args.query, options, args.dot)

            except (TioaBaseException, OSError) as exc:

                code, report = ERROR, error_report(exc)

        print(form.format(report))

        return code

    # A query file, possibly fanned out to worker processes:

    try:

        queries = read_queries(args.file)

    except OSError as exc:

        print(form.format(error_report(exc)))

        return ERROR

    jobs = [(args.model, query, options.asdict()) for query in queries]

    if options.jobs > 1:

        with ProcessPoolExecutor(max_workers=options.jobs) as pool:

            results = list(pool.map(run_query, *zip(*jobs))) if jobs else []

    else:

        results = [run_query(*job) for job in jobs]

    print(form.format([report for _, report in results]))

    return max((code for code, _ in results), default=HOLDS)


def command_dot(args: argparse.Namespace) -> int:

    try:

        client = TioaClient.from_file(args.model)
        text = DotFormatter().format(client.evaluate(parse_expression(args.expr)))

    except (TioaBaseException, OSError) as exc:

        print(JSONReportFormatter().format(error_report(exc)))

        return ERROR

    sys.stdout.write(text)

    return HOLDS


def command_validate(args: argparse.Namespace) -> int:

    form = JSONReportFormatter()

    try:

        client = TioaClient.from_file(args.model)

    except (TioaBaseException, OSError) as exc:

        print(form.format(error_report(exc)))

        return ERROR

    automata = []

    for name, tioa in client.models.items():

        gaps = check_input_enabled(tioa)
        automata.append({'name': name, 'locations': len(tioa.locations), 'edges': len(tioa.edges),
                         'input_enabled': not gaps,
                         'input_gaps': [{'location': loc, 'action': action, 'region': fed.describe()}
                                        for loc, action, fed in gaps]})

    print(form.format({'automata': automata}))

    return HOLDS


def build_parser() -> argparse.ArgumentParser:
    """
    Creates the argument parser with its three sub commands.
    """

    parser = argparse.ArgumentParser(prog='tioa-kit', description='Check timed I/O automata specifications')
    parser.add_argument('-v', '--verbose', action='store_true', help='log debug output to standard error')
    commands = parser.add_subparsers(dest='command', required=True)

    check = commands.add_parser('check', help='answer queries')
    check.add_argument('-m', '--model', required=True, help='model file (JSON)')
    source = check.add_mutually_exclusive_group(required=True)
    source.add_argument('-q', '--query', help="query, like 'refinement: Machine2 <= Machine'")
    source.add_argument('-f', '--file', help='file with one query per line')
    check.add_argument('--oracle', action='store_true', help='cross-check with the region graph oracle')
    check.add_argument('--dot', metavar='OUT', help='write the first operand as DOT (single query only)')
    check.add_argument('--no-reach-prune', action='store_true', help='keep unreachable product locations')
    check.add_argument('--jobs', type=int, default=1, help='worker processes for query files')
    check.add_argument('-v', '--verbose', action='store_true', default=argparse.SUPPRESS,
                       help='log debug output to standard error')
    check.set_defaults(func=command_check)

    dot = commands.add_parser('dot', help='print an expression as DOT')
    dot.add_argument('-m', '--model', required=True, help='model file (JSON)')
    dot.add_argument('-e', '--expr', required=True, help="expression, like 'HalfAdm1 && HalfAdm2'")
    dot.set_defaults(func=command_dot)

    validate = commands.add_parser('validate', help='load a model file and report input enabledness')
    validate.add_argument('-m', '--model', required=True, help='model file (JSON)')
    validate.set_defaults(func=command_validate)

    return parser


def main(argv: Optional[Sequence[str]]=None) -> int:
    """
    Entry point of the 'tioa-kit' command.

    :param argv: Arguments, sys.argv[1:] by default
    :type argv: Optional[Sequence[str]]
    :return: Exit code
    :rtype: int
    """

    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command == 'check' and args.dot and args.file:

        parser.error("--dot needs a single query given with -q")

    if args.command == 'check' and args.jobs < 1:

        parser.error("--jobs must be at least 1")

    logging.basicConfig(stream=sys.stderr, level=logging.DEBUG if args.verbose else logging.WARNING,
                        format='%(levelname)s %(name)s: %(message)s')

    return args.func(args)


if __name__ == '__main__':

    sys.exit(main())
