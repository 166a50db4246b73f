import json
import shutil
import tempfile
from io import StringIO
from pathlib import Path

from django.conf import settings
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, TestCase, override_settings

from runs.execution import cache_key, normal_form
from runs.models import RunRecord
from runs.rendering import Section, render, table_lines

GOLDEN = Path(__file__).resolve().parent / 'golden'


def run_command(*args, **kwargs) -> str:
    out = StringIO()
    call_command(*args, stdout=out, **kwargs)
    return out.getvalue()


class CommandTestCase(TestCase):
    """Runs commands against a fresh file cache."""

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)
        caches = {
            'default': {'BACKEND': 'django.core.cache.backends.locmem.LocMemCache'},
            'runs': {
                'BACKEND': 'django.core.cache.backends.filebased.FileBasedCache',
                'LOCATION': str(Path(self.tmp.name) / 'cache'),
                'TIMEOUT': None,
            },
        }
        override = override_settings(CACHES=caches, MORAVA={**settings.MORAVA, 'RECORD_RUNS': True})
        override.enable()
        self.addCleanup(override.disable)

    def copy_catalog(self) -> Path:
        target = Path(self.tmp.name) / 'spaces'
        shutil.copytree(settings.MORAVA['CATALOG_DIR'], target)
        return target


class GoldenOutputTests(CommandTestCase):
    def assertGolden(self, name, *args):
        expected = (GOLDEN / name).read_text(encoding='utf-8')
        self.assertEqual(run_command(*args), expected)

    def test_twisted_eilenberg_maclane(self):
        self.assertGolden('twisted_em_n2_k1_j2.txt', 'twisted_em', '--height', '2', '--multiplier', '1', '--truncation', '2')

    def test_three_sphere_odd_twist(self):
        self.assertGolden('ahss_s3_n1_sigma3.txt', 'ahss', '--space', 'S3', '--height', '1', '--twist', '1*sigma3')

    def test_three_sphere_records(self):
        self.assertGolden(
            'ahss_s3_n1_sigma3_records.txt',
            'ahss', '--space', 'S3', '--height', '1', '--twist', '1*sigma3', '--format', 'records',
        )

    def test_bspin_clash(self):
        self.assertGolden('uct_bstring_n2_p1_half.txt', 'uct', '--space', 'BString-n2', '--twist', 'p1/2')


class CacheTests(CommandTestCase):
    args = ('twisted_em', '--height', '1', '--multiplier', '3', '--truncation', '2')

    def test_second_run_is_a_byte_identical_hit(self):
        first = run_command(*self.args)
        second = run_command(*self.args)
        self.assertEqual(first, second)
        records = list(RunRecord.objects.order_by('created_at'))
        self.assertEqual([record.cache_hit for record in records], [False, True])
        self.assertEqual(records[0].cache_key, records[1].cache_key)
        self.assertEqual(records[1].payload, first)

    def test_no_cache_recomputes(self):
        first = run_command(*self.args)
        second = run_command(*self.args, '--no-cache')
        self.assertEqual(first, second)
        self.assertFalse(RunRecord.objects.filter(cache_hit=True).exists())

    def test_default_truncation_enters_the_command_line(self):
        run_command('twisted_em', '--height', '1')
        record = RunRecord.objects.get()
        self.assertEqual(
            record.command_line,
            f"twisted_em --format=table --height=1 --multiplier=1 --prime=2 --truncation={settings.MORAVA['DEFAULT_TRUNCATION']}",
        )
        self.assertEqual(record.input_digests, {})

    def test_format_changes_the_key(self):
        run_command(*self.args)
        run_command(*self.args, '--format', 'records')
        self.assertEqual(RunRecord.objects.values('cache_key').distinct().count(), 2)

    def test_document_edit_changes_the_key(self):
        catalog = self.copy_catalog()
        args = ('ahss', '--space', 'RP3', '--catalog', str(catalog))
        run_command(*args)
        path = catalog / 'rp3-ring.json'
        document = json.loads(path.read_text(encoding='utf-8'))
        document['description'] = 'edited'
        path.write_text(json.dumps(document), encoding='utf-8')
        run_command(*args)
        first, second = RunRecord.objects.order_by('created_at')
        self.assertEqual(set(first.input_digests), {'RP3', 'rp3-ring'})
        self.assertNotEqual(first.input_digests['rp3-ring'], second.input_digests['rp3-ring'])
        self.assertNotEqual(first.cache_key, second.cache_key)
        self.assertFalse(second.cache_hit)

    @override_settings(MORAVA={**settings.MORAVA, 'RECORD_RUNS': False})
    def test_recording_off(self):
        run_command(*self.args)
        self.assertFalse(RunRecord.objects.exists())


class ExitStatusTests(CommandTestCase):
    def assertExit(self, status, *args):
        with self.assertRaises(CommandError) as raised:
            run_command(*args)
        self.assertEqual(raised.exception.returncode, status)
        return str(raised.exception)

    def test_unknown_space(self):
        message = self.assertExit(2, 'uct', '--space', 'S99', '--twist', 'sigma3')
        self.assertIn("S99", message)

    def test_malformed_twist(self):
        self.assertExit(2, 'ahss', '--space', 'S3', '--twist', '3**sigma3')

    def test_unknown_class(self):
        self.assertExit(2, 'ahss', '--space', 'S3', '--twist', 'tau3')

    def test_odd_prime(self):
        self.assertExit(2, 'twisted_em', '--height', '1', '--prime', '3')

    def test_even_multiple_has_no_clash(self):
        message = self.assertExit(1, 'uct', '--space', 'BString-n2', '--twist', '2*p1/2')
        self.assertTrue(message.startswith("refused"))

    def test_cover_theorem_hypotheses(self):
        catalog = self.copy_catalog()
        document = {
            "name": "BU2-n2",
            "kind": "structural-cover",
            "prime": 2,
            "height": 2,
            "family": "BU",
            "cover": 2,
            "flavor": "integral",
            "flags": ["free-over-A"],
            "classes": {"H4": {"degree": 4, "coefficients": "Z"}},
        }
        (catalog / 'bu2-n2.json').write_text(json.dumps(document), encoding='utf-8')
        message = self.assertExit(1, 'uct', '--space', 'BU2-n2', '--twist', 'H4', '--catalog', str(catalog))
        self.assertIn("n odd", message)

    def test_malformed_class_polynomial(self):
        catalog = self.copy_catalog()
        for value in ("sigma3 +", "sigma3^(1/2)", "sigma3**sigma3"):
            with self.subTest(value=value):
                document = {
                    "name": "S3-bad",
                    "kind": "sphere",
                    "prime": 2,
                    "height": 1,
                    "degree": 3,
                    "classes": {"bad": {"degree": 3, "coefficients": "Z", "value": value}},
                }
                (catalog / 's3-bad.json').write_text(json.dumps(document), encoding='utf-8')
                self.assertExit(
                    2, 'ahss', '--space', 'S3-bad', '--twist', 'bad', '--catalog', str(catalog), '--no-cache'
                )

    def test_malformed_square_in_ring(self):
        catalog = self.copy_catalog()
        ring = {
            "name": "bad-ring",
            "kind": "steenrod-ring",
            "prime": 2,
            "height": 1,
            "generators": {"t": 1},
            "truncations": {"t": 4},
            "squares": {"t": {"1": "t^^2"}},
        }
        space = {"name": "RP3-bad", "kind": "finite-complex", "prime": 2, "height": 1, "ring": "bad-ring"}
        (catalog / 'bad-ring.json').write_text(json.dumps(ring), encoding='utf-8')
        (catalog / 'rp3-bad.json').write_text(json.dumps(space), encoding='utf-8')
        self.assertExit(2, 'ahss', '--space', 'RP3-bad', '--catalog', str(catalog))

    def test_malformed_twist_values(self):
        for twist in ("sigma3 +", "(sigma3", "sigma3**-1", "sigma3^sigma3"):
            with self.subTest(twist=twist):
                self.assertExit(2, 'ahss', '--space', 'S3', '--height', '1', '--twist', twist, '--no-cache')

    def test_wrong_degree_class(self):
        self.assertExit(2, 'uct', '--space', 'BU2-n1', '--height', '2', '--twist', 'H3')

    def test_refusals_are_not_recorded(self):
        self.assertExit(1, 'uct', '--space', 'BString-n2', '--twist', '2*p1/2')
        self.assertFalse(RunRecord.objects.exists())


class ComputationTests(CommandTestCase):
    def test_twisted_em_records(self):
        output = run_command('twisted_em', '--height', '3', '--multiplier', '8', '--truncation', '4', '--format', 'records')
        self.assertIn("section=verdict outcome=zero", output)
        self.assertEqual(output.count("section=dims degree="), 14)

    def test_universal_twist_space(self):
        output = run_command('uct', '--space', 'K(Z,4)', '--twist', '3*iota4')
        self.assertIn("statement: K(2)_*(K(Z, 4); 3) = 0", output)
        self.assertIn("j_stable: yes", output)

    def test_free_cover(self):
        output = run_command('uct', '--space', 'BO8-n6', '--twist', 'p2/6')
        self.assertIn("outcome: untwisted", output)
        self.assertIn("looped: K(5)_*(O<7>; H_7) ≅ K(5)_*(O<7>)", output)

    def test_synthetic_cover_prints_its_classes(self):
        output = run_command('uct', '--space', 'synthetic-free-n1', '--twist', 'H3')
        self.assertIn("outcome: untwisted", output)
        self.assertIn("dimensions", output)

    def test_mod_two_clash(self):
        output = run_command('uct', '--space', 'BSO-n1', '--twist', 'w2')
        self.assertIn("statement: K(1)_*(BSO; w2) = 0", output)

    def test_three_sphere_even_twist_pages(self):
        output = run_command('ahss', '--space', 'S3', '--height', '1', '--twist', '2*sigma3', '--pages')
        self.assertIn("E_2\n", output)
        self.assertIn("E_3\n", output)
        self.assertIn("total: 2\nconverged: yes", output)

    def test_untwisted_rp7_leaves_a_longer_differential(self):
        output = run_command('ahss', '--space', 'RP7')
        self.assertIn("untwisted", output)
        self.assertIn("converged: no\nnext_differential: d_5", output)

    def test_sphere_collapse(self):
        output = run_command('ahss', '--space', 'S4', '--twist', 'sigma4', '--format', 'records')
        self.assertIn("section=page s=0 dim=1", output)
        self.assertIn("section=page s=4 dim=1", output)
        self.assertIn("converged=true", output)

    def test_characters(self):
        output = run_command('characters', '--algebra', 'K(Z/8, 1)', '--height', '1')
        self.assertIn("characters of R(a0) ⊗ R(a1) ⊗ R(a2)", output)
        self.assertIn("count: 8", output)

    def test_characters_of_a_catalog_space(self):
        output = run_command('characters', '--algebra', 'K(Z,3)', '--format', 'records')
        self.assertIn("count=4", output)

    def test_characters_need_a_height(self):
        with self.assertRaises(CommandError):
            run_command('characters', '--algebra', 'K(Z/4, 2)')

    def test_sandwich(self):
        output = run_command('sandwich', '--group-even', 'Z/6', '--group-odd', '0')
        self.assertIn("total_lower: 1\ntotal_upper: 2\nexact: no", output)

    def test_sandwich_untwisted_three_sphere(self):
        output = run_command('sandwich', '--group-even', 'Z', '--group-odd', 'Z', '--format', 'records')
        self.assertIn("total_lower=2 total_upper=2 exact=true", output)

    def test_sweeps(self):
        self.assertIn("all_zero: yes", run_command('sweep', '--only', 'em'))
        self.assertIn("all_match=true", run_command('sweep', '--only', 'characters', '--format', 'records'))
        self.assertIn("all_match: yes", run_command('sweep', '--only', 'rw'))


class SpacesCommandTests(CommandTestCase):
    def test_ingest_then_list(self):
        output = run_command('spaces', 'ingest')
        self.assertIn("BString-n2", output)
        listing = run_command('spaces', 'list', '--kind', 'sphere')
        self.assertIn("count: 3", listing)
        self.assertIn("S5", listing)
        self.assertIn("count: 1", run_command('spaces', 'list', '--name', 'bstring'))

    def test_show(self):
        document = json.loads(run_command('spaces', 'show', 'S3'))
        self.assertEqual(document['degree'], 3)
        self.assertEqual(document['classes']['sigma3']['value'], 'sigma3')

    def test_show_at_height(self):
        document = json.loads(run_command('spaces', 'show', 'S4', '--height', '3'))
        self.assertEqual(document['height'], 3)

    def test_save_copies_the_ring(self):
        target = Path(self.tmp.name) / 'exported'
        run_command('spaces', 'save', 'RP3', '--target', str(target), '--rename', 'RP3-copy')
        names = {json.loads(path.read_text(encoding='utf-8'))['name'] for path in target.glob('*.json')}
        self.assertEqual(names, {'RP3-copy', 'rp3-ring'})
        output = run_command('ahss', '--space', 'RP3-copy', '--catalog', str(target))
        self.assertIn("RP3-copy", output)

    def test_save_refuses_overwrite(self):
        target = Path(self.tmp.name) / 'exported'
        run_command('spaces', 'save', 'S3', '--target', str(target))
        with self.assertRaises(CommandError) as raised:
            run_command('spaces', 'save', 'S3', '--target', str(target))
        self.assertEqual(raised.exception.returncode, 2)
        run_command('spaces', 'save', 'S3', '--target', str(target), '--overwrite')

    def test_unknown_space(self):
        with self.assertRaises(CommandError):
            run_command('spaces', 'show', 'nowhere')


class HistoryTests(CommandTestCase):
    def test_lists_runs(self):
        run_command('sandwich', '--group-even', 'Z/2', '--group-odd', 'Z/2')
        run_command('sandwich', '--group-even', 'Z/2', '--group-odd', 'Z/2')
        output = run_command('history', '--format', 'records')
        self.assertEqual(output.count("cache_hit=true"), 1)
        self.assertEqual(output.count("cache_hit=false"), 1)
        self.assertIn("count=2", output)
        self.assertIn("count=0", run_command('history', '--command', 'uct', '--format', 'records'))


class RenderingTests(SimpleTestCase):
    def test_table_alignment(self):
        self.assertEqual(
            table_lines(('name', 'n'), [('S3', 1), ('BString-n2', 2)]),
            ["name        n", "----------  -", "S3          1", "BString-n2  2"],
        )

    def test_records_quote_text_with_spaces(self):
        sections = [Section('verdict', 'ignored', facts={'statement': 'K(1)_*(X; H) = 0', 'stable': False, 'steps': ['a b']})]
        self.assertEqual(
            render(sections, 'records'),
            'section=verdict statement="K(1)_*(X; H) = 0" stable=false steps=["a b"]\n',
        )

    def test_table_facts(self):
        sections = [Section('a', 'first', facts={'x': True}), Section('b', facts={'steps': ['one', 'two']})]
        self.assertEqual(render(sections), "first\nx: yes\n\nsteps:\n  - one\n  - two\n")


class CacheKeyTests(SimpleTestCase):
    def test_normal_form(self):
        line = normal_form('ahss', {'twist': '3*sigma3', 'space': 'S3', 'height': None, 'pages': True, 'quiet': False})
        self.assertEqual(line, "ahss --pages --space=S3 --twist=3*sigma3")

    def test_key_depends_on_inputs_and_engine(self):
        key = cache_key("ahss --space=S3", {'S3': 'a'})
        self.assertNotEqual(key, cache_key("ahss --space=S3", {'S3': 'b'}))
        with override_settings(MORAVA={**settings.MORAVA, 'ENGINE_VERSION': '2'}):
            self.assertNotEqual(key, cache_key("ahss --space=S3", {'S3': 'a'}))
