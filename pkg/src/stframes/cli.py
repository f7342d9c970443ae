import argparse
import logging

from . import commands as cmd
from . import terminal
from .blocks import SEARCH_LIMIT_ENV, search_limit_from_env
from .error import StfError
from .matrix_io import MatrixFormat

FORMATS = [f.value for f in MatrixFormat]


def create_common_parser():
    """Create a parent parser with common arguments that can appear before or after commands."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('-g', '--debug', action='store_true')
    common.add_argument('-v', '--verbose', action='store_true', help='append human-readable text to the report')
    common.add_argument(
        '--search-limit',
        type=int,
        help=f'most non-integer eigenvalues for the exact mu search (default ${SEARCH_LIMIT_ENV} or 16)',
    )
    return common


def create_spectrum_parser():
    spectrum = argparse.ArgumentParser(add_help=False)
    spectrum.add_argument('-n', '--dim', type=int, help='dimension n')
    spectrum.add_argument('-N', '--count', type=int, help='number of frame vectors N')
    spectrum.add_argument('-e', '--eigenvalues', help='comma-separated rationals, e.g. 8/3,8/3,8/3,2')
    spectrum.add_argument('-t', '--tight', action='store_true', help='all eigenvalues equal to N/n')
    return spectrum


def add_commands(parser: argparse.ArgumentParser, common: argparse.ArgumentParser) -> None:
    spectrum = create_spectrum_parser()
    commands = parser.add_subparsers(required=True)

    gen = commands.add_parser(
        'generate',
        aliases=['gen'],
        help='construct the frame with Spectral Tetris and report its sparsity',
        parents=[common, spectrum],
    )
    gen.add_argument(
        '--ordering',
        choices=[cmd.BLOCKWISE, cmd.AS_GIVEN],
        default=cmd.BLOCKWISE,
        help='eigenvalue order fed to Spectral Tetris (default blockwise)',
    )
    gen.add_argument('-f', '--format', choices=FORMATS, default=MatrixFormat.EXACT_JSON.value)
    gen.add_argument('-o', '--output', help='write the synthesis matrix to this file')
    gen.set_defaults(func=cmd.generate)

    commands.add_parser(
        'mu',
        help='compute the maximal block number and a blockwise ordering',
        parents=[common, spectrum],
    ).set_defaults(func=cmd.mu)
    commands.add_parser(
        'bound',
        help='compute the optimal sparsity N + 2(n - mu)',
        parents=[common, spectrum],
    ).set_defaults(func=cmd.bound)

    ver = commands.add_parser(
        'verify',
        help='check a synthesis matrix: unit norm, orthogonal rows, spectrum, optimal sparsity',
        parents=[common, spectrum],
    )
    ver.add_argument('matrix', help='matrix document to verify')
    ver.add_argument('-f', '--format', choices=FORMATS, default=MatrixFormat.EXACT_JSON.value)
    ver.add_argument('--exact', action='store_true', help='refuse float documents instead of checking with tolerance')
    ver.set_defaults(func=cmd.check)

    commands.add_parser('version', help='show program version', parents=[common]).set_defaults(func=cmd.version)


def stframes(argv: list[str]) -> int:
    common = create_common_parser()
    parser = argparse.ArgumentParser(prog='stframes', parents=[common])
    add_commands(parser, common)

    args = parser.parse_args(args=argv)
    if 'func' not in args:
        parser.print_usage()
        terminal.stderr('Please provide the full command.')
        return 1
    logging.basicConfig(format='%(levelname)s %(module)s: %(message)s')
    logging.getLogger().setLevel(logging.DEBUG if args.debug else logging.WARNING)
    try:
        if args.search_limit is None:
            args.search_limit = search_limit_from_env()
        args.func(args)
    except StfError as e:
        msg = str(e)
        if msg:
            terminal.stderr(msg)
        return e.exit_code
    except Exception as e:
        if args.debug:
            raise
        terminal.stderr('Error:', e)
        return 1
    return 0
