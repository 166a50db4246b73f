from abgroups.groups import FinAbGroup, k1_sandwich, k1_total_bounds
from runs.commands import ComputationCommand
from runs.rendering import Section


class Command(ComputationCommand):
    help = "Bounds on dim K(1)_*(X; H) from the twisted K-theory groups of X"

    key_options = ('group_even', 'group_odd')

    def add_computation_arguments(self, parser):
        parser.add_argument('--group-even', required=True, help="K_0^H(X), e.g. Z/6 or 'Z^2 + Z/4'")
        parser.add_argument('--group-odd', required=True, help="K_1^H(X)")

    def compute(self, catalog, options):
        groups = {0: FinAbGroup.parse(options['group_even']), 1: FinAbGroup.parse(options['group_odd'])}
        rows = []
        for parity in (0, 1):
            current, previous = groups[parity], groups[1 - parity]
            bounds = k1_sandwich(current, previous)
            rows.append((parity, current, current.tensor_z2, previous.tor_z2, bounds.lower, bounds.upper))
        total = k1_total_bounds(groups)
        return [Section(
            'sandwich',
            "K(1)_n(X; H) between K_n ⊗ Z/2 and K_n ⊗ Z/2 + Tor(K_(n-1), Z/2)",
            ('n', 'K_n', 'tensor', 'tor', 'lower', 'upper'),
            rows,
            {'total_lower': total.lower, 'total_upper': total.upper, 'exact': total.exact},
        )]
