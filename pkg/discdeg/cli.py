"""
Command-line front end for discdeg.

    python -m discdeg compute --N 4 --degrees 3 --char 0
    python -m discdeg symbolic --c 2 --N 1
    python -m discdeg verify --max-k 4 --max-degree 3 [--with-algebraic-oracle]

Reports go to stdout as JSON (integers as decimal strings); logging goes to
stderr. Exit codes: 0 success, 1 verification failure, 2 usage error.
"""
import json
import logging
import os
import sys

import click
from dotenv import load_dotenv
from pydantic import ValidationError

from discdeg.character import degrees_from_xi, stabilized_xi_oracle, xi_closed
from discdeg.errors import DomainError, InvariantViolation
from discdeg.formulas import degree_report, symbolic_degrees
from discdeg.schemas import (
    ComputeRequest,
    ComputeResult,
    CrossCheck,
    EnvironmentSettings,
    SymbolicRequest,
    VerifyRequest,
    profile_error_message,
)
from discdeg.verify import VerificationRunner

logger = logging.getLogger(__name__)

EXIT_FAILURE = 1
EXIT_USAGE = 2


def configure_logging(level: str) -> None:
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.WARNING),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        stream=sys.stderr,
    )


def _usage_error(ctx: click.Context, error: Exception) -> None:
    message = profile_error_message(error)
    logger.error(f"Rejected request: {message}")
    click.echo(f"Error: {message}", err=True)
    ctx.exit(EXIT_USAGE)


def _parse_degrees(ctx: click.Context, param, value: str) -> list[int]:
    try:
        return [int(part) for part in value.split(',') if part.strip()]
    except ValueError:
        raise click.BadParameter(f"expected comma-separated integers, got {value!r}")


@click.group()
@click.option('--log-level', default=None, help="Overrides DISCDEG_LOG_LEVEL (default WARNING).")
@click.pass_context
def cli(ctx, log_level):
    """Homogeneity degrees of discriminants of complete intersections."""
    load_dotenv()
    configure_logging(log_level or os.environ.get('DISCDEG_LOG_LEVEL', 'WARNING'))
    try:
        ctx.obj = EnvironmentSettings.from_environ()
    except ValidationError as e:
        _usage_error(ctx, e)


@cli.command()
@click.option('--N', 'N', type=int, required=True, help="Dimension of the projective space.")
@click.option('--degrees', required=True, callback=_parse_degrees, help="Comma-separated degrees d_1..d_c.")
@click.option('--char', 'char', type=int, default=0, show_default=True, help="0 or a prime.")
@click.option('--format', 'output_format', type=click.Choice(['json', 'table']), default='json', show_default=True)
@click.option('--cross-check/--no-cross-check', default=True, show_default=True,
              help="Compare the closed forms with the face sum and the lattice oracle.")
@click.pass_context
def compute(ctx, N, degrees, char, output_format, cross_check):
    """Degree report for one profile."""
    try:
        request = ComputeRequest(
            N=N, degrees=degrees, char=char, output_format=output_format, cross_check=cross_check,
        )
        profile = request.to_profile()
    except (ValidationError, DomainError) as e:
        _usage_error(ctx, e)

    settings = ctx.obj
    run_cross_check = request.cross_check
    if run_cross_check and profile.k > settings.cross_check_max_k:
        logger.warning(
            f"Skipping cross-check for {profile.describe()}: "
            f"k={profile.k} exceeds DISCDEG_CROSS_CHECK_MAX_K={settings.cross_check_max_k}"
        )
        run_cross_check = False

    try:
        report = degree_report(profile)
        check = CrossCheck()
        if run_cross_check:
            xi = xi_closed(profile)
            oracle = stabilized_xi_oracle(profile, max_level=settings.oracle_max_level)
            check = CrossCheck(
                xi_closed_agrees=degrees_from_xi(xi, profile) == report,
                oracle_agrees=oracle == xi,
            )
    except InvariantViolation as e:
        logger.error(f"Invariant violated for {profile.describe()}: {e}")
        click.echo(f"Error: {e}", err=True)
        ctx.exit(EXIT_FAILURE)

    result = ComputeResult(report=report, cross_check=check)
    if request.output_format == 'json':
        click.echo(json.dumps(result.to_dict()))
    else:
        for key, value in result.to_dict().items():
            if isinstance(value, list):
                value = ','.join(value)
            elif isinstance(value, dict):
                value = ' '.join(f'{k}={v}' for k, v in value.items())
            click.echo(f'{key:<14}{value}')

    if not check.passed:
        logger.error(f"Cross-check failed for {profile.describe()}: {check.model_dump()}")
        ctx.exit(EXIT_FAILURE)


@cli.command()
@click.option('--c', 'c', type=int, required=True, help="Number of equations.")
@click.option('--N', 'N', type=int, required=True, help="Dimension of the projective space.")
@click.option('--format', 'output_format', type=click.Choice(['text', 'json']), default='text', show_default=True)
@click.pass_context
def symbolic(ctx, c, N, output_format):
    """deg_i and deg_var as polynomials in d1..dc."""
    try:
        request = SymbolicRequest(c=c, N=N, output_format=output_format)
        deg_i, deg_var = symbolic_degrees(request.c, request.N)
    except (ValidationError, DomainError) as e:
        _usage_error(ctx, e)

    if request.output_format == 'json':
        click.echo(json.dumps({
            'c': str(request.c),
            'N': str(request.N),
            'deg_i': [poly.to_string() for poly in deg_i],
            'deg_var': deg_var.to_string(),
        }))
        return
    for i, poly in enumerate(deg_i, start=1):
        click.echo(f'deg_{i} = {poly.to_string()}')
    click.echo(f'deg_var = {deg_var.to_string()}')


@cli.command()
@click.option('--max-k', type=int, required=True, help="Largest c+N-1 visited.")
@click.option('--max-degree', type=int, required=True, help="Largest degree visited.")
@click.option('--with-algebraic-oracle', is_flag=True, help="Also run the Sylvester/discriminant checks.")
@click.option('--workers', type=int, default=None, help="Overrides DISCDEG_WORKERS (default 1).")
@click.option('--seed', type=int, default=0, show_default=True, help="Seed of the random identity checks.")
@click.pass_context
def verify(ctx, max_k, max_degree, with_algebraic_oracle, workers, seed):
    """Run the cross-verification battery, one JSON line per check."""
    try:
        request = VerifyRequest(
            max_k=max_k,
            max_degree=max_degree,
            with_algebraic_oracle=with_algebraic_oracle,
            workers=workers if workers is not None else ctx.obj.workers,
            seed=seed,
        )
    except (ValidationError, ValueError) as e:
        _usage_error(ctx, e)

    runner = VerificationRunner(request)
    first_failure = None
    for result in runner.results():
        click.echo(result.model_dump_json())
        if not result.passed and first_failure is None:
            first_failure = result

    if first_failure is not None:
        click.echo(
            f"FAILED {runner.failed_count} of {runner.passed_count + runner.failed_count} checks; "
            f"first counterexample: {first_failure.model_dump_json()}",
            err=True,
        )
        ctx.exit(EXIT_FAILURE)


def main():
    """Main entry point."""
    cli()


if __name__ == '__main__':
    main()
