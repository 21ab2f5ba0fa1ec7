"""compress / decompress: text files to and from the SLP text format."""

from pathlib import Path
from typing import Optional

import click

from slp_toolkit.ingest import ingest_text
from slp_toolkit.slp import SlpFile

from .common import load_slp, settings_of, slp_path


@click.command()
@click.argument("input_file", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.argument("output_file", type=click.Path(dir_okay=False, path_type=Path))
@click.option("--bytes", "as_bytes", is_flag=True, default=False, help="Treat the input as raw bytes instead of UTF-8 text")
@click.pass_context
def compress(ctx, input_file: Path, output_file: Path, as_bytes: bool):
    """Build an SLP for INPUT_FILE and write it to OUTPUT_FILE."""
    if as_bytes:
        text = input_file.read_bytes()
    else:
        with open(input_file, "r", encoding="utf-8", newline="") as f:
            text = f.read()
    slp = ingest_text(text, rounds=settings_of(ctx).repair_rounds)
    SlpFile.write(slp, output_file)
    click.echo(f"📦 {len(text)} symbols -> {slp.n} rules (sigma={slp.sigma}, height={slp.height})", err=True)


@click.command()
@slp_path
@click.option("--max-len", "max_len", type=int, default=None, help="Refuse to expand strings longer than this (default from SLP_TOOLKIT_MAX_EXPAND)")
@click.pass_context
def decompress(ctx, slp_file: Path, max_len: Optional[int]):
    """Print the string derived by SLP_FILE."""
    slp = load_slp(slp_file)
    guard = max_len if max_len is not None else settings_of(ctx).max_expand
    text = slp.expand(guard)
    if isinstance(text, bytes):
        click.get_binary_stream("stdout").write(text)
    else:
        click.echo(text, nl=False)
