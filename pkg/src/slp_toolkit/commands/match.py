"""match: minimal occurrences of a subsequence pattern in an SLP."""

from pathlib import Path
from typing import Optional

import click

from slp_toolkit.matcher import Pattern, count_minimal, iter_minimal

from .common import flavor_option, load_index, resolve_flavor, slp_path


@click.command()
@slp_path
@click.argument("pattern")
@click.option("--count-only", "count_only", is_flag=True, default=False, help="Print only occ=<count>")
@flavor_option
@click.pass_context
def match(ctx, slp_file: Path, pattern: str, count_only: bool, flavor: Optional[str]):
    """Print every minimal window containing PATTERN as a subsequence, then occ=<count>."""
    index = load_index(slp_file, resolve_flavor(ctx, flavor))
    p = Pattern.from_text(pattern, index.slp.alphabet)
    if count_only:
        click.echo(f"occ={count_minimal(index, p)}")
        return
    occ = 0
    for found in iter_minimal(index, p):
        click.echo(found.str_line())
        occ += 1
    click.echo(f"occ={occ}")
