"""Options and helpers shared by the toolbox commands."""

from pathlib import Path
from typing import Optional, cast

import click

from slp_toolkit.lsq import LsIndex
from slp_toolkit.settings import Settings
from slp_toolkit.slp import Slp, SlpFile
from slp_toolkit.treecolor import ENGINE_KINDS, EngineKind

slp_path = click.argument("slp_file", type=click.Path(exists=True, dir_okay=False, path_type=Path))

flavor_option = click.option(
    "--flavor",
    "flavor",
    type=click.Choice(ENGINE_KINDS),
    default=None,
    help="Tree color engine: clustered 'log' / 'const' flavors, or a plain engine (default from SLP_TOOLKIT_FLAVOR)",
)


def settings_of(ctx: click.Context) -> Settings:
    return ctx.obj["settings"]


def resolve_flavor(ctx: click.Context, flavor: Optional[str]) -> EngineKind:
    return cast(EngineKind, flavor if flavor is not None else settings_of(ctx).flavor)


def load_slp(path: Path) -> Slp:
    return SlpFile.read(path)


def load_index(path: Path, kind: EngineKind) -> LsIndex:
    return LsIndex(load_slp(path), kind=kind)


def color_arg(slp: Slp, token: str) -> Optional[int]:
    """Dense color of a command-line symbol; None when the SLP never uses it."""
    return slp.alphabet.index(SlpFile.parse_symbol(token, slp.alphabet.byte_mode))


def echo_position(position: Optional[int]) -> None:
    click.echo("none" if position is None else str(position))
