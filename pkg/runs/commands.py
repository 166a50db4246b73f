"""
Shared behavior of the computing management commands

Every computing command takes ``--catalog``, ``--format`` and
``--no-cache``, renders its result through ``runs.rendering`` and goes
through the result cache. Domain errors become ``CommandError``s: exit
status 1 for a refused computation, 2 for invalid input.
"""

import logging

from django.core.exceptions import ValidationError
from django.core.management.base import BaseCommand, CommandError

from catalog.descriptors import SpaceDescriptor, SpaceKind
from catalog.documents import Catalog, digest
from runs.execution import normal_form, run
from runs.rendering import FORMATS, Section, render
from uct.exceptions import RefusedComputation

logger = logging.getLogger(__name__)

REFUSED = 1
INVALID = 2


def describe(exc: ValidationError) -> str:
    """One line from a field-keyed or plain ValidationError."""
    if hasattr(exc, 'error_dict'):
        return "; ".join(f"{key}: {message}" for key, messages in exc.message_dict.items() for message in messages)
    return "; ".join(exc.messages)


class ComputationCommand(BaseCommand):
    """Base for commands whose output is cached and recorded.

    Subclasses add their own arguments in ``add_computation_arguments``,
    name the options that determine the output in ``key_options`` and
    return sections from ``compute``.
    """

    key_options: tuple[str, ...] = ()

    def add_arguments(self, parser):
        parser.add_argument('--catalog', help="Catalog directory (default: MORAVA_CATALOG_DIR)")
        parser.add_argument('--format', choices=FORMATS, default='table', help="Output format")
        parser.add_argument('--no-cache', action='store_true', help="Recompute even when a cached result exists")
        self.add_computation_arguments(parser)

    def add_computation_arguments(self, parser):
        pass

    @property
    def command_name(self) -> str:
        return self.__module__.rsplit('.', 1)[-1]

    def prepare(self, options: dict) -> dict:
        """Fill in defaults that depend on settings; the result enters the cache key."""
        return options

    def inputs(self, catalog: Catalog, options: dict) -> dict[str, str]:
        """``{document name: digest}`` of the catalog documents the run reads."""
        return {}

    def compute(self, catalog: Catalog, options: dict) -> list[Section]:
        raise NotImplementedError

    def handle(self, *args, **options):
        catalog = Catalog(options['catalog'])
        try:
            options = self.prepare(options)
            keyed = {key: options.get(key) for key in (*self.key_options, 'format')}
            command_line = normal_form(self.command_name, keyed)
            digests = self.inputs(catalog, options)
            payload, _ = run(
                self.command_name,
                command_line,
                digests,
                lambda: render(self.compute(catalog, options), options['format']),
                use_cache=not options['no_cache'],
            )
        except RefusedComputation as exc:
            logger.warning("%s refused: %s", self.command_name, describe(exc))
            raise CommandError(f"refused: {describe(exc)}", returncode=REFUSED) from exc
        except ValidationError as exc:
            raise CommandError(describe(exc), returncode=INVALID) from exc
        except (ArithmeticError, LookupError, TypeError, ValueError, AttributeError) as exc:
            logger.exception("%s failed on %s", self.command_name, options)
            raise CommandError(f"cannot compute: {exc}", returncode=INVALID) from exc
        self.stdout.write(payload, ending='')


class SpaceCommand(ComputationCommand):
    """A computation on one catalog space, optionally read at another height."""

    def add_computation_arguments(self, parser):
        parser.add_argument('--space', required=True, help="Space name in the catalog")
        parser.add_argument('--height', type=int, help="Chromatic height n (default: the document's)")

    def space(self, catalog: Catalog, options: dict) -> SpaceDescriptor:
        descriptor = catalog.load(options['space'])
        if options.get('height') is not None:
            descriptor = descriptor.at_height(options['height'])
        return descriptor

    def inputs(self, catalog: Catalog, options: dict) -> dict[str, str]:
        name = options['space']
        digests = {name: digest(catalog.text(name))}
        descriptor = catalog.load(name)
        if descriptor.kind == SpaceKind.FINITE_COMPLEX and descriptor.ring_name:
            digests[descriptor.ring_name] = digest(catalog.text(descriptor.ring_name))
        return digests
