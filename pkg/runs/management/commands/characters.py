from django.conf import settings

from catalog.algebras import em_algebra, parse_em_space
from catalog.documents import digest
from catalog.exceptions import CatalogError
from graded.algebra import Height
from hopf_modules.characters import enumerate_characters
from runs.commands import ComputationCommand
from runs.rendering import Section


class Command(ComputationCommand):
    help = "Characters of K(n)_* K(G, q), or of the algebra of a catalog space"

    key_options = ('algebra', 'height', 'prime', 'truncation')

    def add_computation_arguments(self, parser):
        parser.add_argument('--algebra', required=True, help="K(Z/k, q), K(Z, q) or a catalog space name")
        parser.add_argument('--height', type=int, help="Chromatic height n (required for K(...) forms)")
        parser.add_argument('--prime', type=int, default=2, help="The prime p")
        parser.add_argument('--truncation', type=int, help="Truncation J for K(Z, n+1)")

    def prepare(self, options):
        if options['truncation'] is None:
            options = {**options, 'truncation': settings.MORAVA['DEFAULT_TRUNCATION']}
        return options

    def inputs(self, catalog, options):
        if options['algebra'] not in catalog.paths:
            return {}
        return {options['algebra']: digest(catalog.text(options['algebra']))}

    def algebra(self, catalog, options):
        if options['algebra'] in catalog.paths:
            space = catalog.load(options['algebra'])
            if options['height'] is not None:
                space = space.at_height(options['height'])
            if space.algebra is None:
                raise CatalogError({"algebra": f"'{space.name}' is a {space.kind} entry without a Hopf algebra"})
            return space.algebra
        if options['height'] is None:
            raise CatalogError({"height": f"--height is required for {options['algebra']}"})
        order, q = parse_em_space(options['algebra'])
        return em_algebra(Height(options['prime'], options['height']), order, q, options['truncation'])

    def compute(self, catalog, options):
        algebra = self.algebra(catalog, options)
        characters = enumerate_characters(algebra)
        names = algebra.names
        factors = " ⊗ ".join(f"R({name})" for name in names) or f"F_{algebra.p}"
        rows = [(index, *character.values) for index, character in enumerate(characters)]
        return [Section(
            'characters',
            f"characters of {factors} at {algebra.height}",
            ('index', *names),
            rows,
            {'count': len(characters)},
        )]
