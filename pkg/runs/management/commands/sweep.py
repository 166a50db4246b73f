from catalog.algebras import em_algebra
from graded.algebra import Height
from hopf_modules.characters import enumerate_characters
from runs.commands import ComputationCommand
from runs.rendering import Section
from uct.verdicts import em_verdict

SWEEPS = ('em', 'characters', 'rw')


def em_sweep() -> Section:
    rows = []
    for n in (1, 2, 3):
        height = Height(2, n)
        for k in range(1, 9):
            for truncation in range(1, 5):
                verdict = em_verdict(height, k, truncation)
                rows.append((n, k, truncation, verdict.dims.total, verdict.j_stable))
    return Section(
        'em',
        "K(n)_*(K(Z, n+2); k) for n <= 3, k <= 8, J <= 4",
        ('n', 'k', 'J', 'total', 'j_stable'),
        rows,
        {'all_zero': all(row[3] == 0 for row in rows)},
    )


def character_sweep() -> Section:
    rows = []
    for n in (1, 2):
        for j in range(1, 5):
            count = len(enumerate_characters(em_algebra(Height(2, n), 2 ** j, n)))
            rows.append((n, j, count, 2 ** j))
    return Section(
        'characters',
        "characters of K(n)_* K(Z/2^j, n)",
        ('n', 'j', 'count', 'expected'),
        rows,
        {'all_match': all(row[2] == row[3] for row in rows)},
    )


def rw_sweep() -> Section:
    rows = []
    for p in (2, 3):
        for n in (1, 2, 3):
            height = Height(p, n)
            for j in (1, 2):
                rows.append((p, n, f"K(Z/{p ** j}, {n})", em_algebra(height, p ** j, n).dimension, p ** j))
                rows.append((p, n, f"K(Z/{p ** j}, {n + 1})", em_algebra(height, p ** j, n + 1).dimension, 1))
            for truncation in (1, 2):
                dimension = em_algebra(height, None, n + 1, truncation).dimension
                rows.append((p, n, f"K(Z, {n + 1}) J={truncation}", dimension, p ** truncation))
            rows.append((p, n, f"K(Z, {n + 2})", em_algebra(height, None, n + 2).dimension, 1))
    return Section(
        'rw',
        "total dimension of K(n)_* K(G, q)",
        ('p', 'n', 'space', 'dimension', 'expected'),
        rows,
        {'all_match': all(row[3] == row[4] for row in rows)},
    )


class Command(ComputationCommand):
    help = "Sweeps over Eilenberg-MacLane spaces: twisted vanishing, character counts and algebra dimensions"

    key_options = ('only',)

    def add_computation_arguments(self, parser):
        parser.add_argument('--only', choices=SWEEPS, help="Run a single sweep")

    def compute(self, catalog, options):
        sweeps = {'em': em_sweep, 'characters': character_sweep, 'rw': rw_sweep}
        selected = [options['only']] if options['only'] else list(SWEEPS)
        return [sweeps[name]() for name in selected]
