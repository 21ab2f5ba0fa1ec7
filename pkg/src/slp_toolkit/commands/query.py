"""stats / access / ls / lp: single queries against an SLP file."""

from pathlib import Path
from typing import Optional

import click

from slp_toolkit.lsq import LsIndex
from slp_toolkit.models import SlpStats
from slp_toolkit.slp import SlpHeavyForest
from slp_toolkit.treecolor import EngineKind

from .common import color_arg, echo_position, flavor_option, load_slp, resolve_flavor, slp_path


@click.command()
@slp_path
def stats(slp_file: Path):
    """Print n, N, sigma, height and the heavy forest's light-edge maximum."""
    slp = load_slp(slp_file)
    forest = SlpHeavyForest(slp)
    summary = SlpStats(
        n=slp.n,
        N=slp.N,
        sigma=slp.sigma,
        height=slp.height,
        light_edge_max=forest.light_edge_max,
        heavy_trees=len(forest),
        unreachable=len(slp.unreachable()),
    )
    for line in summary.str_lines():
        click.echo(line)


@click.command()
@slp_path
@click.argument("position", type=int)
def access(slp_file: Path, position: int):
    """Print the symbol at POSITION (1-indexed)."""
    slp = load_slp(slp_file)
    trace = SlpHeavyForest(slp).access(position)
    click.echo(slp.alphabet.display(trace.symbol))


def _query(slp_file: Path, flavor: EngineKind, symbol: str) -> tuple[LsIndex, Optional[int]]:
    slp = load_slp(slp_file)
    return LsIndex(slp, kind=flavor), color_arg(slp, symbol)


@click.command()
@slp_path
@click.argument("position", type=int)
@click.argument("symbol")
@flavor_option
@click.pass_context
def ls(ctx, slp_file: Path, position: int, symbol: str, flavor: Optional[str]):
    """Print the first occurrence of SYMBOL after POSITION (0 searches the whole string)."""
    index, c = _query(slp_file, resolve_flavor(ctx, flavor), symbol)
    echo_position(index.ls(position, c))


@click.command()
@slp_path
@click.argument("position", type=int)
@click.argument("symbol")
@flavor_option
@click.pass_context
def lp(ctx, slp_file: Path, position: int, symbol: str, flavor: Optional[str]):
    """Print the last occurrence of SYMBOL before POSITION (N+1 searches the whole string)."""
    index, c = _query(slp_file, resolve_flavor(ctx, flavor), symbol)
    echo_position(index.lp(position, c))
