import sys

from django.conf import settings
from django.core.management.base import BaseCommand
from django.core.management.base import CommandError
from pydantic import ValidationError

from core.helpers.custom_exceptions import DimensionMismatchError
from core.helpers.custom_exceptions import GridMismatchError
from core.helpers.custom_exceptions import InvalidParameterError
from core.helpers.custom_exceptions import OracleUnavailableError

ARGUMENT_ERROR = 1
ORACLE_OR_IO_ERROR = 2


def int_list(value: str) -> list[int]:
    """``"8,16,32"`` -> ``[8, 16, 32]``."""
    return [int(item) for item in value.split(",") if item.strip()]


class RombergCommand(BaseCommand):
    """Base for the engine commands.

    Subclasses implement ``run(**options)``. Engine errors become
    ``CommandError`` with exit code 1 (arguments, parameters) or 2 (oracle,
    file I/O); parser errors also exit with 1.
    """

    def create_parser(self, prog_name, subcommand, **kwargs):
        parser = super().create_parser(prog_name, subcommand, **kwargs)
        parser.called_from_command_line = False
        return parser

    def run_from_argv(self, argv):
        try:
            super().run_from_argv(argv)
        except CommandError as exc:
            # parser errors are raised before BaseCommand's own handler
            self.stderr.write(f"{exc.__class__.__name__}: {exc}")
            sys.exit(exc.returncode)

    def add_seed_argument(self, parser):
        parser.add_argument(
            "--seed",
            type=int,
            default=None,
            help="Master seed; defaults to ROMBERG_SEED.",
        )
        parser.add_argument("--workers", type=int, default=None, help="Threads evaluating chunks.")

    def seed(self, options) -> int:
        return settings.ROMBERG_DEFAULT_SEED if options["seed"] is None else options["seed"]

    def handle(self, *args, **options):
        try:
            self.run(**options)
        except (InvalidParameterError, DimensionMismatchError, GridMismatchError, ValidationError) as exc:
            raise CommandError(str(exc), returncode=ARGUMENT_ERROR) from exc
        except (OracleUnavailableError, OSError) as exc:
            raise CommandError(str(exc), returncode=ORACLE_OR_IO_ERROR) from exc

    def run(self, **options):
        raise NotImplementedError
