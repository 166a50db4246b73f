from django.conf import settings

from graded.algebra import Height
from runs.commands import ComputationCommand
from runs.rendering import Section, dims_section, show_dims
from uct.verdicts import em_verdict, twisted_em


class Command(ComputationCommand):
    help = "Dimensions of K(n)_*(K(Z, n+2); k) at truncations J and J + 1"

    key_options = ('height', 'prime', 'multiplier', 'truncation')

    def add_computation_arguments(self, parser):
        parser.add_argument('--height', type=int, required=True, help="Chromatic height n")
        parser.add_argument('--multiplier', type=int, default=1, help="The k in k*iota")
        parser.add_argument('--truncation', type=int, help="Number J of factors R(b_i) kept")
        parser.add_argument('--prime', type=int, default=2, help="The prime; twisted K(n) needs 2")

    def prepare(self, options):
        if options['truncation'] is None:
            options = {**options, 'truncation': settings.MORAVA['DEFAULT_TRUNCATION']}
        return options

    def compute(self, catalog, options):
        height = Height(options['prime'], options['height'])
        k, truncation = options['multiplier'], options['truncation']
        n = height.n
        verdict = em_verdict(height, k, truncation)
        table = dims_section(
            'dims',
            f"K({n})_*(K(Z, {n + 2}); {k}) at p={height.p}",
            {f"J{truncation}": verdict.dims, f"J{truncation + 1}": twisted_em(height, k, truncation + 1)},
        )
        table.facts = {'total': verdict.dims.total, 'j_stable': verdict.j_stable}
        summary = Section('verdict', 'verdict', facts={
            'outcome': str(verdict.outcome),
            'statement': verdict.statement,
            'dims': show_dims(verdict.dims),
            'certificate': list(verdict.certificate),
        })
        return [table, summary]
