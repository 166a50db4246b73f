from django.conf import settings

from runs.commands import SpaceCommand
from runs.rendering import Section, dims_section, show_dims
from uct.twists import resolve_twist
from uct.verdicts import twisted_homology


class Command(SpaceCommand):
    help = "Twisted K(n)-homology of a catalog space by the universal coefficient theorem"

    key_options = ('space', 'height', 'twist', 'truncation')

    def add_computation_arguments(self, parser):
        super().add_computation_arguments(parser)
        parser.add_argument('--twist', required=True, help="Twist as [k*]class, e.g. p1/2 or 3*iota4")
        parser.add_argument('--truncation', type=int, help="Truncation J for K(Z, n+2)")

    def prepare(self, options):
        if options['truncation'] is None:
            options = {**options, 'truncation': settings.MORAVA['DEFAULT_TRUNCATION']}
        return options

    def compute(self, catalog, options):
        space = self.space(catalog, options)
        twist = resolve_twist(space, options['twist'])
        verdict = twisted_homology(space, twist, options['truncation'])
        record = verdict.as_record()
        if 'dims' in record:
            record['dims'] = show_dims(verdict.dims)
        sections = [Section('verdict', f"{space.name} at {space.height}, twist {twist}", facts=record)]
        if verdict.dims is not None and not verdict.dims.is_zero:
            sections.append(dims_section('dims', 'dimensions', {'dim': verdict.dims}))
        return sections
