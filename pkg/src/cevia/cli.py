import logging

import click

from . import __version__
from .cevian_engine import construct
from .curve_engine import curve_info, group_table, j_invert_cmd
from .plot import plot
from .utils import EXIT_USAGE
from .verify import verify

logger = logging.getLogger("cevia")


class _UsageExitGroup(click.Group):
    """Group whose usage and parse errors exit with status 64."""

    def make_context(self, info_name, args, parent=None, **extra):
        try:
            return super().make_context(info_name, args, parent=parent, **extra)
        except click.UsageError as e:
            e.exit_code = EXIT_USAGE
            raise

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except click.UsageError as e:
            e.exit_code = EXIT_USAGE
            raise


@click.group(cls=_UsageExitGroup)
@click.version_option(__version__)
@click.option("--debug", is_flag=True, help="Log at DEBUG level.")
def cli_app(debug: bool):
    """Exact cevian constructions and the cubic curves E_a."""
    handler = logging.StreamHandler()
    formatter = logging.Formatter(
        "[%(levelname)s|%(module)s|L%(lineno)d] %(asctime)s: %(message)s"
    )
    handler.setFormatter(formatter)
    logger.handlers.clear()
    logger.addHandler(handler)
    logger.setLevel(logging.DEBUG if debug else logging.INFO)


cli_app.add_command(construct)
cli_app.add_command(curve_info)
cli_app.add_command(j_invert_cmd)
cli_app.add_command(group_table)
cli_app.add_command(plot)
cli_app.add_command(verify)

if __name__ == "__main__":
    cli_app()
