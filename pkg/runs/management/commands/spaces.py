from dataclasses import replace

from django.core.exceptions import ValidationError
from django.core.management.base import BaseCommand, CommandError

from catalog.descriptors import SpaceKind
from catalog.documents import Catalog, dump_space, list_spaces
from runs.commands import INVALID, describe
from runs.rendering import FORMATS, Section, render


class Command(BaseCommand):
    help = "Inspect and maintain the space catalog"

    def add_arguments(self, parser):
        parser.add_argument('--catalog', help="Catalog directory (default: MORAVA_CATALOG_DIR)")
        parser.add_argument('--format', choices=FORMATS, default='table', help="Output format")
        actions = parser.add_subparsers(dest='action', required=True)

        listing = actions.add_parser('list', help="List ingested spaces")
        listing.add_argument('--kind', choices=SpaceKind.values)
        listing.add_argument('--height', type=int)
        listing.add_argument('--prime', type=int)
        listing.add_argument('--name', help="Substring of the space name")

        show = actions.add_parser('show', help="Print the normalized document of a space")
        show.add_argument('name')
        show.add_argument('--height', type=int, help="Read the space at another height")

        actions.add_parser('ingest', help="Validate every document and index it")

        save = actions.add_parser('save', help="Write a space into another catalog directory")
        save.add_argument('name')
        save.add_argument('--target', required=True, help="Destination catalog directory")
        save.add_argument('--height', type=int, help="Read the space at another height first")
        save.add_argument('--rename', help="Name of the saved copy")
        save.add_argument('--overwrite', action='store_true')

    def handle(self, *args, **options):
        catalog = Catalog(options['catalog'])
        try:
            if options['action'] == 'show':
                self.stdout.write(dump_space(self.load(catalog, options)), ending='')
                return
            sections = getattr(self, f"handle_{options['action']}")(catalog, options)
        except ValidationError as exc:
            raise CommandError(describe(exc), returncode=INVALID) from exc
        self.stdout.write(render(sections, options['format']), ending='')

    def load(self, catalog, options):
        descriptor = catalog.load(options['name'])
        if options.get('height') is not None:
            descriptor = descriptor.at_height(options['height'])
        return descriptor

    def handle_list(self, catalog, options):
        filters = {}
        if options['kind']:
            filters['kind'] = options['kind']
        if options['height'] is not None:
            filters['height'] = options['height']
        if options['prime'] is not None:
            filters['prime'] = options['prime']
        if options['name']:
            filters['name__icontains'] = options['name']
        entries = list_spaces(filters)
        rows = [(entry.name, entry.kind, entry.prime, entry.height) for entry in entries]
        return [Section('space', '', ('name', 'kind', 'p', 'n'), rows, {'count': len(rows)})]

    def handle_ingest(self, catalog, options):
        entries = catalog.ingest()
        rows = [(entry.name, entry.path, entry.digest[:12]) for entry in entries]
        return [Section('ingested', f"ingested {catalog.directory}", ('name', 'path', 'digest'), rows, {'count': len(rows)})]

    def handle_save(self, catalog, options):
        descriptor = self.load(catalog, options)
        if options['rename']:
            descriptor = replace(descriptor, name=options['rename'])
        target = Catalog(options['target'])
        rows = []
        if descriptor.kind == SpaceKind.FINITE_COMPLEX and descriptor.ring_name not in target.paths:
            ring = catalog.load(descriptor.ring_name)
            rows.append((ring.name, target.save(ring)))
        rows.append((descriptor.name, target.save(descriptor, overwrite=options['overwrite'])))
        return [Section('saved', '', ('name', 'path'), rows)]
