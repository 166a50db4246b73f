from ahss.exceptions import AHSSError
from ahss.pages import converged, differential_length, e2, first_differential, next_possible_length, twist_class
from catalog.descriptors import TwistFlavor
from runs.commands import SpaceCommand
from runs.rendering import Section
from uct.twists import resolve_twist


def page_section(page) -> Section:
    headers = ('s', 'dim')
    ranks = page.differential_ranks()
    rows = [(s, page.entry(s)) for s in range(page.top + 1)]
    if ranks:
        headers = ('s', 'dim', 'rank')
        rows = [(s, size, ranks.get(s, 0)) for s, size in rows]
    return Section('page', f"E_{page.r}", headers, rows)


class Command(SpaceCommand):
    help = "The twisted Atiyah-Hirzebruch spectral sequence of a finite complex up to the first differential"

    key_options = ('space', 'height', 'twist', 'pages')

    def add_computation_arguments(self, parser):
        super().add_computation_arguments(parser)
        parser.add_argument('--twist', help="Twist as [k*]class, e.g. 3*sigma3; untwisted when omitted")
        parser.add_argument('--pages', action='store_true', help="Print every page, not only the last")

    def compute(self, catalog, options):
        space = self.space(catalog, options)
        ring = space.cohomology
        if ring is None:
            raise AHSSError({"space": f"'{space.name}' is a {space.kind} entry without a finite cohomology ring"})
        height = space.height
        n = height.n

        if options['twist']:
            spec = resolve_twist(space, options['twist'])
            if spec.flavor != TwistFlavor.INTEGRAL:
                raise AHSSError({"twist": f"the spectral sequence takes integral twists, got {spec.flavor} '{spec}'"})
            entry = space.twist_class(spec.name)
            twist = twist_class(ring, entry.value or {}, spec.multiplier, label=str(spec), degree=entry.degree)
            described = f"twist {twist.label}"
        else:
            twist = twist_class(ring, {}, label="0", degree=n + 2)
            described = "untwisted"

        final = first_differential(e2(ring, height), twist)
        head = Section('ahss', f"{space.name} at {height}, {described}", facts={
            'first_differential': f"d_{differential_length(height)}",
        })
        pages = final.history() if options['pages'] else [final]
        sections = [head] + [page_section(page) for page in pages]
        last = sections[-1]
        last.facts = {'total': final.total, 'converged': converged(final)}
        if not converged(final):
            last.facts['next_differential'] = f"d_{next_possible_length(final)}"
        return sections
