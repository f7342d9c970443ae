import logging

from . import formatting as fmt
from . import terminal
from .__init__ import __version__
from .analysis import sparsity, sparsity_bound, verify, verify_float
from .args import Args
from .blocks import EigenvalueSpec, maximal_block_number, parse_eigenvalues
from .error import InexactMatrixError, InvalidSpecError, VerificationError
from .matrix_io import export_matrix, parse_document
from .tetris import SynthesisMatrix, row_budget_ok, spectral_tetris

BLOCKWISE = 'blockwise'
AS_GIVEN = 'as-given'


def _has_spectrum_flags(args: Args) -> bool:
    return args.dim is not None or args.count is not None or args.eigenvalues is not None or args.tight


def _spec(args: Args) -> EigenvalueSpec:
    if args.dim is None or args.count is None:
        raise InvalidSpecError('--dim and --count are required')
    if args.tight == (args.eigenvalues is not None):
        raise InvalidSpecError('give exactly one of --eigenvalues or --tight')
    if args.tight:
        return EigenvalueSpec.tight(args.count, args.dim)
    lambdas = parse_eigenvalues(args.eigenvalues)
    if len(lambdas) != args.dim:
        raise InvalidSpecError(f'{len(lambdas)} eigenvalues given for dimension {args.dim}')
    return EigenvalueSpec.create(lambdas, args.count)


def _print_report(lines: list[fmt.ReportLine]) -> None:
    for line in lines:
        terminal.stdout(fmt.render_line_plain(line))


def _print_details(title: str, lines: list[str]) -> None:
    terminal.stdout()
    terminal.stdout(fmt.emphasis(title))
    for line in lines:
        terminal.stdout('  ' + line)


def _print_matrix(matrix: SynthesisMatrix) -> None:
    _print_details(f'synthesis matrix ({matrix.n_rows}x{matrix.n_cols}, basis {matrix.basis_label}):',
                   fmt.format_matrix(matrix))


def generate(args: Args) -> None:
    spec = _spec(args)
    structure = maximal_block_number(spec, args.search_limit)
    ordering = structure.ordering if args.ordering == BLOCKWISE else spec.lambdas
    logging.debug('ordering mode %s: %s', args.ordering, ordering)
    matrix, trace = spectral_tetris(spec, ordering)

    if args.output == '-':
        raise InvalidSpecError('--output - is not supported: standard output carries the report')
    if args.output:
        terminal.write_output(args.output, export_matrix(matrix, args.format, ordering, structure.mu))

    _print_report(fmt.generate_lines(structure.mu, sparsity(matrix), sparsity_bound(spec, structure=structure)))
    if args.verbose:
        _print_details('ordering:', [','.join(map(str, ordering))])
        _print_matrix(matrix)
        budget = 'holds' if row_budget_ok(trace, ordering, spec.count) else fmt.danger('violated')
        _print_details(f'cursor trace (row budget {budget}):', fmt.format_trace(trace))


def mu(args: Args) -> None:
    spec = _spec(args)
    structure = maximal_block_number(spec, args.search_limit)
    _print_report(fmt.mu_lines(structure))
    if args.verbose:
        _print_details('blocks:', fmt.format_blocks(structure))


def bound(args: Args) -> None:
    spec = _spec(args)
    structure = maximal_block_number(spec, args.search_limit)
    _print_report(fmt.bound_lines(spec, structure.mu, sparsity_bound(spec, structure=structure)))


def check(args: Args) -> None:
    doc = parse_document(terminal.read_input(args.matrix), args.format)
    if args.exact and not doc.matrix.exact:
        raise InexactMatrixError('exact verification')
    if _has_spectrum_flags(args):
        spec = _spec(args)
    elif doc.spectrum is not None:
        spec = EigenvalueSpec.create(doc.spectrum, doc.matrix.n_cols)
    else:
        raise InvalidSpecError('the document carries no spectrum: pass --eigenvalues or --tight')

    if doc.matrix.exact:
        report = verify(doc.matrix, spec, args.search_limit)
    else:
        report = verify_float(doc.matrix, spec, args.search_limit)

    lines = fmt.verification_lines(report)
    _print_report(lines)
    if args.verbose:
        _print_details('checks:', [fmt.render_line_ansi(line) for line in lines if line.style != 'normal'])
        _print_matrix(doc.matrix)
    if not report.passed:
        failed = [line.key for line in lines if line.style == 'danger']
        raise VerificationError('verification failed: ' + ', '.join(failed))


def version(_: Args) -> None:
    terminal.stdout(__version__)
