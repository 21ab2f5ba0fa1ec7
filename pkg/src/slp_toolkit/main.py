import logging
import sys
from typing import Optional, Sequence

import click
from dotenv import load_dotenv
from pydantic import ValidationError

from slp_toolkit.errors import ContractViolation, QueryOutOfRangeError, SlpFormatError
from slp_toolkit.settings import get_settings

from .commands import access, bench, compress, decompress, lp, ls, match, selftest, stats

EXIT_USAGE = 1
EXIT_FORMAT = 2
EXIT_RANGE = 3

LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"


def configure_logging(level: str) -> None:
    """Send ``slp_toolkit`` log records to the current stderr at ``level``."""
    logger = logging.getLogger("slp_toolkit")
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    logger.addHandler(handler)
    logger.setLevel(level.upper())
    logger.propagate = False


def exit_code_for(error: Exception) -> int:
    if isinstance(error, QueryOutOfRangeError):
        return EXIT_RANGE
    if isinstance(error, SlpFormatError):
        return EXIT_FORMAT
    return EXIT_USAGE


class ToolboxGroup(click.Group):
    """Click group that turns toolkit errors into the documented exit codes."""

    def invoke(self, ctx: click.Context):
        try:
            return super().invoke(ctx)
        except click.UsageError as e:
            e.exit_code = EXIT_USAGE
            raise
        except (ContractViolation, SlpFormatError, ValidationError) as e:
            click.echo(f"Error: {e}", err=True)
            ctx.exit(exit_code_for(e))


@click.group(cls=ToolboxGroup)
@click.option("--verbose", "-v", is_flag=True, default=False, help="Log index builds and guards at DEBUG level")
@click.pass_context
def cli(ctx, verbose: bool):
    """SLP toolbox: compress text, query and match on the compressed form."""
    settings = get_settings()
    configure_logging("DEBUG" if verbose else settings.log_level)
    # Store settings in context so subcommands can access them
    ctx.ensure_object(dict)
    ctx.obj["settings"] = settings


load_dotenv()  # Pick up SLP_TOOLKIT_* from .env

cli.add_command(compress)
cli.add_command(decompress)
cli.add_command(stats)
cli.add_command(access)
cli.add_command(ls)
cli.add_command(lp)
cli.add_command(match)
cli.add_command(selftest)
cli.add_command(bench)


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Run the toolbox on ``argv`` and return the exit code instead of exiting."""
    try:
        rv = cli.main(args=list(argv) if argv is not None else None, prog_name="slp-toolbox", standalone_mode=False)
    except click.ClickException as e:
        e.show()
        return EXIT_USAGE if isinstance(e, click.UsageError) else e.exit_code
    except click.Abort:
        click.echo("Aborted!", err=True)
        return EXIT_USAGE
    return rv if isinstance(rv, int) else 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
