import json
import tempfile
from pathlib import Path

from django.test import SimpleTestCase, TestCase

from catalog.algebras import em_algebra, mod2_twist_character, rw_degree, rw_factor, twist_character
from catalog.descriptors import SpaceDescriptor, SpaceKind, TwistClassEntry, whitehead_base
from catalog.documents import Catalog, document_for, dump_space, list_spaces, load_space, parse_document
from catalog.exceptions import CatalogError, DocumentParseError
from catalog.models import SpaceEntry
from graded.algebra import GradedDims, Height
from graded.rewriting import TruncationRule
from hopf_modules.modules import ModuleOverAlgebra, regular_module
from steenrod.standard import wu_bo

K1 = Height(2, 1)
K2 = Height(2, 2)

SYNTHETIC = {
    "name": "synthetic",
    "kind": "structural-cover",
    "height": 1,
    "family": "synthetic",
    "flavor": "integral",
    "module": {
        "basis": [["c0", 0], ["b0*c0", 0]],
        "actions": {"b0": [[0, 0], [1, 1]]},
    },
}


class EilenbergMacLaneAlgebraTests(SimpleTestCase):
    def test_cyclic_examples(self):
        self.assertEqual(em_algebra(K1, 2, 1).names, ("a0",))
        self.assertEqual(em_algebra(K2, 12, 2).names, ("a0", "a1"))
        self.assertEqual(em_algebra(K2, 12, 2).dimension, 4)

    def test_odd_order_is_acyclic_at_two(self):
        self.assertEqual(em_algebra(K1, 3, 1).names, ())
        self.assertEqual(em_algebra(K1, 1, 1).names, ())

    def test_above_the_height_is_acyclic(self):
        self.assertEqual(em_algebra(K1, 4, 2).names, ())
        self.assertEqual(em_algebra(K2, None, 4).names, ())

    def test_integral(self):
        algebra = em_algebra(K2, None, 3, truncation=2)
        self.assertEqual(algebra.names, ("b0", "b1"))
        self.assertEqual(algebra.dimension, 4)

    def test_outside_computed_range(self):
        with self.assertRaises(CatalogError):
            em_algebra(K2, None, 2, truncation=1)
        with self.assertRaises(CatalogError):
            em_algebra(K2, 2, 1)
        with self.assertRaises(CatalogError):
            em_algebra(K1, None, 2)
        with self.assertRaises(CatalogError):
            em_algebra(K1, 0, 1)
        with self.assertRaises(CatalogError):
            em_algebra(K1, 2, 0)

    def test_totals(self):
        for p in (2, 3):
            for n in (1, 2, 3):
                height = Height(p, n)
                for j in (1, 2, 3):
                    self.assertEqual(em_algebra(height, p ** j, n).dimension, p ** j)
                    self.assertEqual(em_algebra(height, None, n + 1, truncation=j).dimension, p ** j)

    def test_degrees_are_even(self):
        for p in (2, 3, 5):
            for n in (1, 2, 3):
                for k in range(4):
                    self.assertEqual(rw_degree(Height(p, n), k) % 2, 0)

    def test_factor_rule(self):
        self.assertEqual(rw_factor(Height(3, 2), "a", 0).rules, (TruncationRule(3, 2),))
        self.assertEqual(rw_factor(Height(3, 1), "a", 0).rules, (TruncationRule(3, 1),))
        self.assertEqual(rw_factor(K2, "b", 1).rules, (TruncationRule(2, 1),))


class TwistCharacterTests(SimpleTestCase):
    def test_integral(self):
        self.assertEqual(twist_character(K2, 2).as_dict(), {"b0": 1, "b1": 0})

    def test_mod_two(self):
        self.assertEqual(mod2_twist_character(K1).as_dict(), {"a0": 1})
        self.assertEqual(mod2_twist_character(K2, 2).as_dict(), {"a0": 1, "a1": 0})

    def test_odd_prime_refused(self):
        with self.assertRaises(CatalogError):
            twist_character(Height(3, 1), 1)
        with self.assertRaises(CatalogError):
            mod2_twist_character(K1, 0)


class WhiteheadBaseTests(SimpleTestCase):
    def test_identifications(self):
        cases = {
            0: ("bo", 0),
            2: ("BSO", 0),
            3: ("BSpin", 0),
            5: ("bo", 8),
            8: ("bo", 8),
            9: ("BO", 8),
            10: ("BSO", 8),
            12: ("BSpin", 8),
            15: ("bo", 16),
        }
        for m, (spectrum, index) in cases.items():
            base = whitehead_base(m)
            self.assertEqual((base.spectrum, base.index), (spectrum, index), m)

    def test_normalized_cover(self):
        self.assertEqual(whitehead_base(6).cover, 8)
        self.assertEqual(whitehead_base(11).cover, 12)
        self.assertEqual(str(whitehead_base(12)), "BO<12> = BSpin_8")

    def test_unitary(self):
        self.assertEqual(str(whitehead_base(3, "BU")), "BU<4> = bu_4")
        self.assertEqual(whitehead_base(2, "BU").index, 2)

    def test_base_condition(self):
        self.assertTrue(whitehead_base(8).klw_base)
        self.assertTrue(whitehead_base(9).klw_base)
        self.assertTrue(whitehead_base(2, "BU").klw_base)
        self.assertFalse(whitehead_base(0).klw_base)
        self.assertFalse(whitehead_base(2).klw_base)
        self.assertFalse(whitehead_base(4).klw_base)

    def test_refused(self):
        with self.assertRaises(CatalogError):
            whitehead_base(-1)
        with self.assertRaises(CatalogError):
            whitehead_base(0, "BU")
        with self.assertRaises(CatalogError):
            whitehead_base(4, "BSp")


def cover(**kwargs):
    fields = {"name": "cover", "kind": SpaceKind.STRUCTURAL_COVER, "height": K2, "family": "BO", "flavor": "integral"}
    fields.update(kwargs)
    return SpaceDescriptor(**fields)


class DescriptorTests(SimpleTestCase):
    def test_sphere(self):
        sphere = SpaceDescriptor("S3", SpaceKind.SPHERE, K1, degree=3)
        self.assertEqual(sphere.homology.as_dict(), {0: 1, 1: 1})
        self.assertEqual(sphere.cohomology.top_degree, 3)
        self.assertIsNone(sphere.algebra)

    def test_sphere_needs_degree(self):
        with self.assertRaises(CatalogError):
            SpaceDescriptor("S", SpaceKind.SPHERE, K1)

    def test_fields_of_other_kinds_refused(self):
        with self.assertRaises(CatalogError):
            SpaceDescriptor("S3", SpaceKind.SPHERE, K1, degree=3, order=2)
        with self.assertRaises(CatalogError):
            SpaceDescriptor("S3", SpaceKind.SPHERE, K1, degree=3, flags=("free-over-A",))

    def test_unknown_kind(self):
        with self.assertRaises(CatalogError):
            SpaceDescriptor("X", "manifold", K1)

    def test_em_homology_is_regular(self):
        kz3 = SpaceDescriptor("K(Z,3)", SpaceKind.EM_INTEGRAL, K2, truncation=2, degree=3)
        self.assertEqual(kz3.homology, regular_module(em_algebra(K2, None, 3, truncation=2)))

    def test_em_outside_range(self):
        with self.assertRaises(CatalogError):
            SpaceDescriptor("K(Z,2)", SpaceKind.EM_INTEGRAL, K2, degree=2)
        with self.assertRaises(CatalogError):
            SpaceDescriptor("K(Z/2,2)", SpaceKind.EM_MOD_P, K2, degree=2)

    def test_flag_licensing(self):
        self.assertTrue(cover(cover=4, flags=("b0-killed",)).has_flag("b0-killed"))
        self.assertTrue(cover(cover=8, flags=("free-over-A",)).has_flag("free-over-A"))
        self.assertEqual(
            cover(height=K1, cover=2, flavor="mod-2", flags=("a0-killed",)).algebra,
            em_algebra(K1, 2, 1),
        )
        refused = [
            {"cover": 8, "flags": ("b0-killed",)},
            {"cover": 4, "flags": ("free-over-A",)},
            {"cover": 2, "flags": ("a0-killed",)},
            {"cover": 4, "flavor": "mod-2", "flags": ("b0-killed",)},
            {"cover": 8, "flags": ("spin",)},
            {"cover": 8},
            {"flags": ("free-over-A",)},
            {"cover": 8, "flavor": "real", "flags": ("free-over-A",)},
            {"cover": 8, "height": Height(3, 2), "flags": ("free-over-A",)},
        ]
        for kwargs in refused:
            with self.subTest(kwargs=kwargs), self.assertRaises(CatalogError):
                cover(**kwargs)

    def test_synthetic_needs_module(self):
        with self.assertRaises(CatalogError):
            cover(family="synthetic", flags=("free-over-A",))

    def test_dims_table_is_trivial_action(self):
        table = cover(height=K1, family="synthetic", dims=GradedDims(K1, {0: 1, 1: 2}))
        self.assertEqual(table.homology.as_dict(), {0: 1, 1: 2})
        self.assertEqual(table.numeric_module.dimension, 3)
        self.assertFalse(table.numeric_module.action("b0").any())
        refused = [
            {"dims": GradedDims(K1, {0: 1}), "module": table.numeric_module},
            {"dims": GradedDims(K1, {0: 1}), "flags": ("b0-killed",)},
            {"dims": GradedDims(K2, {0: 1})},
        ]
        for kwargs in refused:
            with self.subTest(kwargs=kwargs), self.assertRaises(CatalogError):
                cover(height=K1, family="synthetic", **kwargs)

    def test_module_over_wrong_algebra(self):
        module = ModuleOverAlgebra(em_algebra(K1, 2, 1), (("c", 0),))
        with self.assertRaises(CatalogError):
            cover(height=K1, family="synthetic", module=module)

    def test_duplicate_classes(self):
        classes = (TwistClassEntry("h", 3), TwistClassEntry("h", 3))
        with self.assertRaises(CatalogError):
            SpaceDescriptor("S3", SpaceKind.SPHERE, K1, degree=3, classes=classes)

    def test_class_coefficients(self):
        with self.assertRaises(CatalogError):
            TwistClassEntry("h", 3, coefficients="Z/3")

    def test_twist_class_lookup(self):
        sphere = SpaceDescriptor("S3", SpaceKind.SPHERE, K1, degree=3, classes=(TwistClassEntry("s", 3, value="sigma3"),))
        self.assertEqual(sphere.twist_class("s").value, "sigma3")
        with self.assertRaises(CatalogError):
            sphere.twist_class("t")

    def test_at_height(self):
        sphere = SpaceDescriptor("S3", SpaceKind.SPHERE, K1, degree=3)
        self.assertEqual(sphere.at_height(3).height, Height(2, 3))
        self.assertIs(sphere.at_height(1), sphere)
        synthetic = load_space(json.dumps(SYNTHETIC))
        with self.assertRaises(CatalogError):
            synthetic.at_height(2)


class DocumentTests(SimpleTestCase):
    def test_load_sphere(self):
        text = json.dumps({"name": "S3", "kind": "sphere", "height": 1, "degree": 3})
        descriptor = load_space(text)
        self.assertEqual(descriptor.kind, SpaceKind.SPHERE)
        self.assertEqual(descriptor.height, K1)
        self.assertEqual(descriptor.homology.as_dict(), {0: 1, 1: 1})

    def test_load_cover_with_class(self):
        text = json.dumps(
            {
                "name": "BString",
                "kind": "structural-cover",
                "height": 2,
                "family": "BO",
                "cover": 4,
                "flavor": "integral",
                "flags": ["b0-killed"],
                "classes": {"p1/2": {"degree": 4}},
            }
        )
        descriptor = load_space(text)
        self.assertEqual(descriptor.twist_class("p1/2"), TwistClassEntry("p1/2", 4))
        self.assertEqual(str(descriptor.base), "BO<4> = BSpin_0")

    def test_load_module(self):
        descriptor = load_space(json.dumps(SYNTHETIC))
        self.assertEqual(descriptor.homology.dimension, 2)
        self.assertEqual(descriptor.module.action("b0").tolist(), [[0, 0], [1, 1]])

    def test_load_dims(self):
        document = {key: value for key, value in SYNTHETIC.items() if key != "module"}
        descriptor = load_space(json.dumps(dict(document, dims={"0": 1, "1": 2})))
        self.assertIsNone(descriptor.module)
        self.assertEqual(descriptor.dims.as_dict(), {0: 1, 1: 2})
        self.assertEqual(document_for(descriptor)["dims"], {0: 1, 1: 2})
        self.assertEqual(load_space(dump_space(descriptor)), descriptor)

    def test_dims_refused_with_module_or_off_covers(self):
        with self.assertRaises(CatalogError):
            load_space(json.dumps(dict(SYNTHETIC, dims={"0": 1})))
        sphere = {"name": "S3", "kind": "sphere", "height": 1, "degree": 3, "dims": {"0": 1}}
        with self.assertRaises(CatalogError):
            load_space(json.dumps(sphere))
        document = {key: value for key, value in SYNTHETIC.items() if key != "module"}
        with self.assertRaises(CatalogError):
            load_space(json.dumps(dict(document, dims={"x": 1})))

    def test_syntax_error_position(self):
        text = '{\n  "name": "S3",\n  "kind" "sphere"\n}'
        with self.assertRaises(DocumentParseError) as caught:
            parse_document(text)
        self.assertEqual((caught.exception.line, caught.exception.column), (3, 10))

    def test_not_an_object(self):
        with self.assertRaises(DocumentParseError):
            parse_document("[1, 2]")

    def test_unknown_field_named(self):
        text = json.dumps({"name": "S3", "kind": "sphere", "height": 1, "degree": 3, "colour": "red"})
        with self.assertRaises(CatalogError) as caught:
            load_space(text)
        self.assertIn("colour", caught.exception.message_dict)

    def test_unknown_nested_field_named(self):
        document = dict(SYNTHETIC, module=dict(SYNTHETIC["module"], rank=2))
        with self.assertRaises(CatalogError) as caught:
            load_space(json.dumps(document))
        self.assertIn("module.rank", caught.exception.message_dict)

    def test_bad_action_size(self):
        document = dict(SYNTHETIC, module={"basis": [["c0", 0]], "actions": {"b0": [[0, 0], [1, 1]]}})
        with self.assertRaises(CatalogError):
            load_space(json.dumps(document))

    def test_ring_fields_on_a_sphere(self):
        text = json.dumps({"name": "S3", "kind": "sphere", "height": 1, "degree": 3, "generators": {"x": 3}})
        with self.assertRaises(CatalogError):
            load_space(text)

    def test_finite_complex_needs_a_catalog(self):
        text = json.dumps({"name": "RP3", "kind": "finite-complex", "height": 1, "ring": "rp3-ring"})
        with self.assertRaises(CatalogError):
            load_space(text)

    def test_squares_of_unknown_generator(self):
        text = json.dumps(
            {"name": "r", "kind": "steenrod-ring", "height": 1, "generators": {"x": 2}, "squares": {"y": {"1": "0"}}}
        )
        with self.assertRaises(CatalogError):
            load_space(text)

    def test_document_round_trip(self):
        for descriptor in (
            load_space(json.dumps(SYNTHETIC)),
            SpaceDescriptor("ring", SpaceKind.STEENROD_RING, K1, ring=wu_bo(4)),
            SpaceDescriptor("K(Z/4,2)", SpaceKind.EM_MOD_P, K2, degree=2, order=4, description="two factors"),
        ):
            self.assertEqual(load_space(dump_space(descriptor)), descriptor)

    def test_default_top_squares_omitted(self):
        document = document_for(SpaceDescriptor("ring", SpaceKind.STEENROD_RING, K1, ring=wu_bo(2)))
        self.assertNotIn("2", json.loads(json.dumps(document))["squares"].get("w2", {}))


class CatalogDirectoryTests(SimpleTestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.catalog = Catalog(self.tmp.name)

    def tearDown(self):
        self.tmp.cleanup()

    def test_save_and_load(self):
        ring = SpaceDescriptor("rp3-ring", SpaceKind.STEENROD_RING, K1, ring=load_space(
            json.dumps({"name": "r", "kind": "steenrod-ring", "height": 1, "generators": {"t": 1}, "truncations": {"t": 4}})
        ).ring)
        path = self.catalog.save(ring)
        self.assertEqual(path.name, "rp3-ring.json")
        (Path(self.tmp.name) / "rp3.json").write_text(
            json.dumps({"name": "RP3", "kind": "finite-complex", "height": 1, "ring": "rp3-ring"})
        )
        self.catalog = Catalog(self.tmp.name)
        self.assertEqual(self.catalog.names(), ["RP3", "rp3-ring"])
        self.assertEqual(self.catalog.load("RP3").cohomology.hilbert(), {0: 1, 1: 1, 2: 1, 3: 1})
        self.assertEqual(self.catalog.load("rp3-ring"), ring)

    def test_save_refuses_overwrite(self):
        sphere = SpaceDescriptor("S3", SpaceKind.SPHERE, K1, degree=3)
        self.catalog.save(sphere)
        with self.assertRaises(CatalogError):
            self.catalog.save(sphere)
        self.catalog.save(sphere, overwrite=True)

    def test_unknown_space(self):
        with self.assertRaises(CatalogError):
            self.catalog.load("S7")

    def test_ring_reference_must_be_a_ring(self):
        self.catalog.save(SpaceDescriptor("S3", SpaceKind.SPHERE, K1, degree=3))
        (Path(self.tmp.name) / "x.json").write_text(
            json.dumps({"name": "X", "kind": "finite-complex", "height": 1, "ring": "S3"})
        )
        with self.assertRaises(CatalogError):
            Catalog(self.tmp.name).load("X")


class ShippedCatalogTests(SimpleTestCase):
    def test_every_document_loads(self):
        catalog = Catalog()
        self.assertEqual(len(catalog.load_all()), len(catalog.names()))
        for name in ("S3", "S4", "S5", "RP3", "RP7", "K(Z,3)", "K(Z,4)", "BString-n2", "BSO-n1", "synthetic-free-n1"):
            self.assertIn(name, catalog.names())

    def test_examples(self):
        catalog = Catalog()
        self.assertEqual(catalog.load("RP7").cohomology.top_degree, 7)
        self.assertEqual(catalog.load("K(Z,3)").homology.dimension, 4)
        self.assertEqual(catalog.load("K(Z,4)").algebra.names, ())
        self.assertTrue(catalog.load("BString-n2").has_flag("b0-killed"))
        self.assertEqual(str(catalog.load("BO9-n9").base), "BO<9> = BO_8")


class IngestTests(TestCase):
    def test_ingest_and_filter(self):
        catalog = Catalog()
        entries = catalog.ingest()
        self.assertEqual(len(entries), len(catalog.names()))
        spheres = {entry.name for entry in list_spaces({"kind": "sphere"})}
        self.assertEqual(spheres, {"S3", "S4", "S5"})
        high = {entry.name for entry in list_spaces({"height__gte": 6})}
        self.assertEqual(high, {"BO8-n6", "BO9-n9"})
        self.assertEqual(list_spaces({"name__icontains": "rp3"}).count(), 2)

    def test_reingest_removes_stale_entries(self):
        Catalog().ingest()
        with tempfile.TemporaryDirectory() as directory:
            small = Catalog(directory)
            small.save(SpaceDescriptor("S3", SpaceKind.SPHERE, K1, degree=3))
            small.ingest()
        self.assertEqual(list(SpaceEntry.objects.values_list("name", flat=True)), ["S3"])

    def test_unchanged_digest(self):
        first = {entry.name: entry.digest for entry in Catalog().ingest()}
        second = {entry.name: entry.digest for entry in Catalog().ingest()}
        self.assertEqual(first, second)

    def test_bad_filter(self):
        with self.assertRaises(CatalogError):
            list_spaces({"height__gte": "high"})
