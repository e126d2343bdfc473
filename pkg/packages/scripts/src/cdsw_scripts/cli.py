"""
cdsw - exact verification of the CDSW invariant algebras and their combinatorics

Subcommands:
- cdsw cartan: root data, dual Coxeter number, Chevalley basis identities
- cdsw aff2: alcoves of the fundamental alcove inside 2C
- cdsw abelian: abelian ideals, zeta, the Xi° bound
- cdsw zeta: the ideal -> affine Weyl element correspondence
- cdsw invariants: invariant dimensions of A, B or the Kostant quotient
- cdsw spower: least k with S^k = 0 in A
- cdsw ddegree: the degree d^w_{u,v} for three words
- cdsw cocycle: relative cocycle identities of phi_P
- cdsw verify: a whole suite

Environment Variables:
- CDSW_CACHE_DIR: cache root (overrides --cache-dir)
- CDSW_MAX_BLOCK_DIM, CDSW_MAX_TOTAL_DEGREE: budgets
- CDSW_SEED: seed of the cocycle samples
- CDSW_LOG_LEVEL: log level of the JSON logs on stderr

Exit codes: 0 all checks pass, 1 a check failed, 2 usage error (or an
over-budget direct computation).

Run with: uv run cdsw <command>
"""

import functools
import sys
from typing import Callable, List, Optional

import click
from cdsw_shared.constants import (
    DEFAULT_COCYCLE_SAMPLES,
    AlgebraKind,
    OutputFormat,
    SimpleType,
    Suite,
)
from cdsw_shared.errors import InternalError, ResourceBudgetExceeded, UsageError
from cdsw_shared.models import Report
from cdsw_shared.observability import log_error, setup_logging

from cdsw_scripts import suites
from cdsw_scripts.formatting import exit_code, render
from cdsw_scripts.utils import (
    get_cache_dir,
    get_log_level,
    get_max_block_dim,
    get_max_total_degree,
    get_seed,
    load_env,
    parse_word,
)


def handle_errors(func: Callable) -> Callable:
    """Map usage errors to exit code 2 and broken invariants to exit code 1."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except UsageError as e:
            click.secho(f"✗ {e}", fg="red", err=True)
            sys.exit(2)
        except ResourceBudgetExceeded as e:
            log_error("over_budget", e, {"block_sizes": e.block_sizes})
            click.secho(f"✗ {e}", fg="red", err=True)
            sys.exit(2)
        except InternalError as e:
            log_error("internal_error", e)
            click.secho(f"✗ internal error: {e}", fg="red", err=True)
            sys.exit(1)

    return wrapper


def type_options(func: Callable) -> Callable:
    """--type, --rank and --format."""
    func = click.option(
        "--format",
        "fmt",
        type=click.Choice([f.value for f in OutputFormat]),
        default=OutputFormat.MD.value,
        help="Report format",
    )(func)
    func = click.option("--rank", type=int, required=True, help="Rank")(func)
    func = click.option(
        "--type",
        "type_letter",
        type=click.Choice([t.value for t in SimpleType], case_sensitive=False),
        required=True,
        help="Cartan type letter",
    )(func)
    return func


def budget_options(func: Callable) -> Callable:
    """--cache-dir, --no-cache, --max-total-degree and --max-block-dim."""
    func = click.option(
        "--max-block-dim",
        type=int,
        default=None,
        help="Largest weight block to eliminate (or set CDSW_MAX_BLOCK_DIM)",
    )(func)
    func = click.option(
        "--max-total-degree",
        type=int,
        default=None,
        help="Largest p+q to compute (or set CDSW_MAX_TOTAL_DEGREE)",
    )(func)
    func = click.option("--no-cache", is_flag=True, default=False, help="Bypass the disk cache")(
        func
    )
    func = click.option(
        "--cache-dir",
        type=click.Path(file_okay=False),
        default=None,
        help="Cache root (CDSW_CACHE_DIR takes precedence)",
    )(func)
    return func


def _budget(
    type_letter: str,
    rank: int,
    cache_dir: Optional[str],
    no_cache: bool,
    max_total_degree: Optional[int],
    max_block_dim: Optional[int],
) -> dict:
    return {
        "max_total_degree": (
            max_total_degree
            if max_total_degree is not None
            else get_max_total_degree(type_letter, rank)
        ),
        "max_block_dim": max_block_dim if max_block_dim is not None else get_max_block_dim(),
        "cache_dir": get_cache_dir(cache_dir),
        "use_cache": not no_cache,
    }


def _emit(reports: List[Report], fmt: str, direct: bool = False) -> None:
    click.echo(render(reports, fmt))
    sys.exit(exit_code(reports, direct=direct))


@click.group()
@click.option(
    "--log-level",
    default=None,
    help="Log level of the JSON logs on stderr (or set CDSW_LOG_LEVEL)",
)
@click.option(
    "--env-file",
    type=click.Path(exists=False),
    default=".env",
    help="Path to .env file with cdsw settings",
)
def cli(log_level: Optional[str], env_file: str):
    """Exact verification toolkit for the CDSW invariant algebras."""
    load_env(env_file)
    setup_logging(log_level or get_log_level())


@cli.command()
@type_options
@handle_errors
def cartan(type_letter: str, rank: int, fmt: str):
    """Root data and Chevalley basis identities."""
    _emit([suites.cartan_check(type_letter, rank)], fmt)


@cli.command()
@type_options
@click.option("--list", "list_elements", is_flag=True, help="Include every element")
@handle_errors
def aff2(type_letter: str, rank: int, fmt: str, list_elements: bool):
    """Enumerate Aff'_2(W) and check #Aff'_2(W) = 2^l."""
    _emit([suites.aff2_check(type_letter, rank, list_elements=list_elements)], fmt)


@cli.command()
@type_options
@click.option("--list", "list_ideals", is_flag=True, help="Include every ideal")
@handle_errors
def abelian(type_letter: str, rank: int, fmt: str, list_ideals: bool):
    """Abelian ideals: count, zeta, weight identity and the Xi° bound."""
    _emit([suites.abelian_check(type_letter, rank, list_ideals=list_ideals)], fmt)


@cli.command()
@type_options
@handle_errors
def zeta(type_letter: str, rank: int, fmt: str):
    """Print zeta(I) for every abelian ideal I."""
    _emit([suites.zeta_check(type_letter, rank)], fmt)


@cli.command()
@type_options
@budget_options
@click.option(
    "--algebra",
    type=click.Choice([k.value for k in AlgebraKind]),
    default=AlgebraKind.B.value,
    help="Quotient algebra",
)
@click.option("--p", "p", type=int, default=None, help="First degree (with --q)")
@click.option("--q", "q", type=int, default=None, help="Second degree (with --p)")
@handle_errors
def invariants(
    type_letter: str,
    rank: int,
    fmt: str,
    cache_dir: Optional[str],
    no_cache: bool,
    max_total_degree: Optional[int],
    max_block_dim: Optional[int],
    algebra: str,
    p: Optional[int],
    q: Optional[int],
):
    """
    Invariant dimensions.

    With --p/--q: one bidegree. Otherwise the series of B, or the bigraded
    table of A checked against the powers of S.
    """
    budget = _budget(type_letter, rank, cache_dir, no_cache, max_total_degree, max_block_dim)
    if (p is None) != (q is None):
        raise UsageError("--p and --q go together")
    if p is not None:
        report = suites.invariant_dim_value(type_letter, rank, algebra=algebra, p=p, q=q, **budget)
    elif algebra == AlgebraKind.B.value:
        report = suites.invariant_series_check(type_letter, rank, **budget)
    elif algebra == AlgebraKind.A.value:
        report = suites.part_i_check(type_letter, rank, **budget)
    else:
        report = suites.kostant_check(type_letter, rank, **budget)
    _emit([report], fmt, direct=True)


@cli.command()
@type_options
@budget_options
@click.option("--max-k", type=int, default=None, help="Largest power tried")
@handle_errors
def spower(
    type_letter: str,
    rank: int,
    fmt: str,
    cache_dir: Optional[str],
    no_cache: bool,
    max_total_degree: Optional[int],
    max_block_dim: Optional[int],
    max_k: Optional[int],
):
    """Least k with S^k = 0 in A."""
    budget = _budget(type_letter, rank, cache_dir, no_cache, max_total_degree, max_block_dim)
    if max_k is not None:
        budget["max_k"] = max_k
    _emit([suites.s_power_check(type_letter, rank, **budget)], fmt, direct=True)


@cli.command()
@type_options
@click.option("--u", "u", default="", help="Word of u, e.g. '0,2,1'")
@click.option("--v", "v", default="", help="Word of v")
@click.option("--w", "w", default="", help="Word of w")
@handle_errors
def ddegree(type_letter: str, rank: int, fmt: str, u: str, v: str, w: str):
    """Evaluate d^w_{u,v} = (u^-1 rho + v^-1 rho - w^-1 rho - rho)(d)."""
    words = {name: parse_word(text) for name, text in (("u", u), ("v", v), ("w", w))}
    _emit([suites.ddegree_value(type_letter, rank, **words)], fmt)


@cli.command()
@type_options
@click.option("--d", "d", type=int, default=1, help="phi_P has 2d arguments, P degree d+1")
@click.option("--samples", type=int, default=DEFAULT_COCYCLE_SAMPLES, help="Random samples")
@click.option("--seed", type=int, default=None, help="Sample seed (or set CDSW_SEED)")
@handle_errors
def cocycle(type_letter: str, rank: int, fmt: str, d: int, samples: int, seed: Optional[int]):
    """Relative cocycle identities of phi_P on seeded samples."""
    seed = seed if seed is not None else get_seed()
    reports = []
    if d == 1:
        reports.append(suites.closed_form_check(type_letter, rank))
    reports.append(
        suites.cocycle_relative_check(type_letter, rank, d=d, samples=samples, seed=seed)
    )
    _emit(reports, fmt)


@cli.command()
@type_options
@budget_options
@click.option(
    "--suite",
    type=click.Choice([s.value for s in Suite]),
    default=Suite.FULL.value,
    help="Which checks to run",
)
@click.option("--samples", type=int, default=DEFAULT_COCYCLE_SAMPLES, help="Cocycle samples")
@click.option("--seed", type=int, default=None, help="Sample seed (or set CDSW_SEED)")
@handle_errors
def verify(
    type_letter: str,
    rank: int,
    fmt: str,
    cache_dir: Optional[str],
    no_cache: bool,
    max_total_degree: Optional[int],
    max_block_dim: Optional[int],
    suite: str,
    samples: int,
    seed: Optional[int],
):
    """Run a verification suite and print every report plus the aggregate."""
    budget = _budget(type_letter, rank, cache_dir, no_cache, max_total_degree, max_block_dim)
    reports = suites.verify_suite(
        suite,
        type_letter,
        rank,
        samples=samples,
        seed=seed if seed is not None else get_seed(),
        **budget,
    )
    _emit(reports, fmt)


if __name__ == "__main__":
    cli()
