"""
Catalog documents: parsing, validation, saving and ingestion

Each space is one UTF-8 JSON document in the catalog directory, e.g.

    {
      "name": "S3",
      "kind": "sphere",
      "prime": 2,
      "height": 1,
      "degree": 3,
      "classes": {"sigma3": {"degree": 3, "coefficients": "Z", "value": "sigma3"}}
    }

Fields by kind:

    em-integral        degree (q), truncation (J)
    em-mod-p           degree (q), order (k in Z/k)
    sphere             degree (dimension)
    finite-complex     ring (name of a steenrod-ring document)
    steenrod-ring      generators {name: degree}, truncations {name: exponent},
                       squares {name: {i: polynomial}}
    structural-cover   family (BO, BU or synthetic), cover (m in BO<m>),
                       flavor (integral or mod-2), truncation, flags, module
                       {basis: [[name, degree], ...], actions: {generator: rows}}
                       or dims {degree: rank} for a trivial action

Every kind may carry ``description`` and a ``classes`` table of named twist
classes. Unknown fields are rejected.

Classes:
    Catalog: A directory of documents and its database index

Functions:
    parse_document: Text to a validated field dict
    load_space: Text to a SpaceDescriptor
    document_for / dump_space: SpaceDescriptor back to a document
"""

import hashlib
import json
import logging
from pathlib import Path
from typing import Callable

from django.conf import settings
from django.core.exceptions import ValidationError
from django.db import transaction
from django.utils.text import slugify

from catalog.descriptors import SpaceDescriptor, SpaceKind, TwistClassEntry, fibre_algebra
from catalog.exceptions import CatalogError, DocumentParseError
from catalog.filters import SpaceEntryFilter
from catalog.models import SpaceEntry
from catalog.serializers import SpaceDocumentSerializer
from graded.algebra import GradedDims, Height
from graded.rewriting import TruncationRule
from hopf_modules.modules import ModuleOverAlgebra
from steenrod.rings import SteenrodRing

logger = logging.getLogger(__name__)

RingResolver = Callable[[str], SteenrodRing]


def parse_document(text: str) -> dict:
    """Parse and validate a document.

    Raises
    ------
    DocumentParseError
        If the text is not a JSON object; carries the line and column.
    CatalogError
        If a field is unknown or malformed, keyed by field name.
    """
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentParseError(f"{exc.msg} at line {exc.lineno}, column {exc.colno}", exc.lineno, exc.colno) from exc
    if not isinstance(raw, dict):
        raise DocumentParseError("a document must be a JSON object", 1, 1)
    serializer = SpaceDocumentSerializer(data=raw)
    if not serializer.is_valid():
        raise CatalogError(_flatten(serializer.errors))
    return dict(serializer.validated_data)


def _flatten(errors) -> dict:
    """DRF's nested error detail as ``{field: [messages]}``."""
    result = {}
    for name, detail in errors.items():
        if isinstance(detail, dict):
            for inner, messages in _flatten(detail).items():
                result[f"{name}.{inner}"] = messages
        else:
            result[name] = [str(message) for message in detail]
    return result


def ring_from_fields(data: dict) -> SteenrodRing:
    generators = tuple(data['generators'].items())
    truncations = data.get('truncations', {})
    rules = tuple(TruncationRule(truncations[name]) if name in truncations else None for name, _ in generators)
    return SteenrodRing(generators, rules, data.get('squares', {}))


def _module_from_fields(data: dict, descriptor_fields: dict) -> ModuleOverAlgebra:
    algebra = fibre_algebra(descriptor_fields["height"], descriptor_fields.get("flavor", ""), descriptor_fields["truncation"])
    return ModuleOverAlgebra(algebra, tuple(data['basis']), data.get('actions', {}))


def build_descriptor(data: dict, resolve_ring: RingResolver | None = None) -> SpaceDescriptor:
    """Turn validated document fields into a descriptor.

    ``resolve_ring`` looks up the ring a finite complex refers to.
    """
    try:
        fields = {
            'name': data['name'],
            'kind': data['kind'],
            'height': Height(data.get('prime', 2), data['height']),
            'truncation': data.get('truncation', 1),
            'description': data.get('description', ''),
            'classes': tuple(TwistClassEntry(name, **entry) for name, entry in data.get('classes', {}).items()),
        }
        for name in ('degree', 'order', 'family', 'cover', 'flavor'):
            if name in data:
                fields[name] = data[name]
        if 'flags' in data:
            fields['flags'] = tuple(data['flags'])

        kind = data['kind']
        if kind == SpaceKind.STEENROD_RING:
            fields['ring'] = ring_from_fields(data)
        elif 'generators' in data or 'truncations' in data or 'squares' in data:
            raise CatalogError({'generators': f"ring fields belong in a steenrod-ring document, not a {kind} entry"})
        if 'ring' in data:
            if kind != SpaceKind.FINITE_COMPLEX:
                raise CatalogError({'ring': f"not allowed on a {kind} entry"})
            if resolve_ring is None:
                raise CatalogError({'ring': f"cannot resolve ring '{data['ring']}' outside a catalog"})
            fields['ring_name'] = data['ring']
            fields['ring'] = resolve_ring(data['ring'])
        if 'module' in data:
            if kind != SpaceKind.STRUCTURAL_COVER:
                raise CatalogError({'module': f"not allowed on a {kind} entry"})
            fields['module'] = _module_from_fields(data['module'], fields)
        if 'dims' in data:
            if kind != SpaceKind.STRUCTURAL_COVER:
                raise CatalogError({'dims': f"not allowed on a {kind} entry"})
            fields['dims'] = GradedDims(fields['height'], data['dims'])
        return SpaceDescriptor(**fields)
    except CatalogError:
        raise
    except ValidationError as exc:
        raise CatalogError({'document': exc.messages}) from exc


def load_space(text: str, resolve_ring: RingResolver | None = None) -> SpaceDescriptor:
    """Parse, validate and build a descriptor from document text."""
    return build_descriptor(parse_document(text), resolve_ring)


def _ring_fields(ring: SteenrodRing) -> dict:
    fields = {'generators': dict(ring.generators)}
    truncations = {name: rule.exponent for (name, _), rule in zip(ring.generators, ring.rules) if rule is not None}
    if truncations:
        fields['truncations'] = truncations
    squares = {}
    for name, i, terms in ring.squares:
        element = dict(terms)
        if i == ring.generator_degree(name) and element == ring.power(ring.generator(name), 2):
            continue
        squares.setdefault(name, {})[i] = ring.format(element)
    if squares:
        fields['squares'] = squares
    return fields


def document_for(descriptor: SpaceDescriptor) -> dict:
    """The document fields that rebuild ``descriptor``."""
    document = {
        'name': descriptor.name,
        'kind': descriptor.kind,
        'prime': descriptor.height.p,
        'height': descriptor.height.n,
    }
    if descriptor.truncation != 1:
        document['truncation'] = descriptor.truncation
    if descriptor.description:
        document['description'] = descriptor.description
    for name in ('degree', 'order', 'cover'):
        if getattr(descriptor, name) is not None:
            document[name] = getattr(descriptor, name)
    for name in ('family', 'flavor'):
        if getattr(descriptor, name):
            document[name] = getattr(descriptor, name)
    if descriptor.flags:
        document['flags'] = list(descriptor.flags)
    if descriptor.kind == SpaceKind.STEENROD_RING:
        document.update(_ring_fields(descriptor.ring))
    if descriptor.ring_name:
        document['ring'] = descriptor.ring_name
    if descriptor.module is not None:
        module = descriptor.module
        document['module'] = {
            'basis': [[name, degree] for name, degree in module.basis],
            'actions': {
                name: matrix.tolist()
                for name, matrix in zip(module.algebra.names, module.actions)
                if matrix.any()
            },
        }
    if descriptor.dims is not None:
        document['dims'] = descriptor.dims.as_dict()
    if descriptor.classes:
        document['classes'] = {
            entry.name: {'degree': entry.degree, 'coefficients': entry.coefficients, 'value': entry.value}
            for entry in descriptor.classes
        }
    return document


def dump_space(descriptor: SpaceDescriptor) -> str:
    return json.dumps(document_for(descriptor), indent=2, ensure_ascii=False) + "\n"


def digest(text: str) -> str:
    return hashlib.sha256(text.encode('utf-8')).hexdigest()


class Catalog:
    """A directory of catalog documents.

    Parameters
    ----------
    directory : str or Path, optional
        Defaults to ``settings.MORAVA['CATALOG_DIR']``.
    """

    def __init__(self, directory=None):
        self.directory = Path(directory or settings.MORAVA['CATALOG_DIR'])
        self._paths: dict[str, Path] | None = None
        self._loaded: dict[str, SpaceDescriptor] = {}

    @property
    def paths(self) -> dict[str, Path]:
        """``{space name: document path}`` for every document in the directory."""
        if self._paths is None:
            paths = {}
            for path in sorted(self.directory.glob('*.json')):
                try:
                    name = json.loads(path.read_text(encoding='utf-8')).get('name')
                except (json.JSONDecodeError, AttributeError):
                    logger.warning("skipping unreadable catalog document %s", path)
                    continue
                if name in paths:
                    raise CatalogError({'name': f"'{name}' is defined in both {paths[name].name} and {path.name}"})
                if name:
                    paths[name] = path
            self._paths = paths
        return self._paths

    def names(self) -> list[str]:
        return sorted(self.paths)

    def text(self, name: str) -> str:
        try:
            return self.paths[name].read_text(encoding='utf-8')
        except KeyError:
            raise CatalogError({'space': f"unknown space '{name}' in {self.directory}"}) from None

    def load(self, name: str) -> SpaceDescriptor:
        """Load and validate the document of ``name``, resolving ring references."""
        if name not in self._loaded:
            try:
                self._loaded[name] = load_space(self.text(name), self._resolve_ring)
            except DocumentParseError as exc:
                logger.warning("%s: %s", self.paths[name].name, exc.messages[0])
                raise
        return self._loaded[name]

    def _resolve_ring(self, name: str) -> SteenrodRing:
        descriptor = self.load(name)
        if descriptor.kind != SpaceKind.STEENROD_RING:
            raise CatalogError({'ring': f"'{name}' is a {descriptor.kind} entry, not a ring"})
        return descriptor.ring

    def load_all(self) -> list[SpaceDescriptor]:
        return [self.load(name) for name in self.names()]

    def path_for(self, name: str) -> Path:
        return self.paths.get(name) or self.directory / f"{slugify(name) or 'space'}.json"

    def save(self, descriptor: SpaceDescriptor, overwrite: bool = False) -> Path:
        """Write ``descriptor`` as a document and return its path.

        Raises
        ------
        CatalogError
            If a document for the name exists and ``overwrite`` is false.
        """
        path = self.path_for(descriptor.name)
        if descriptor.name in self.paths and not overwrite:
            raise CatalogError({'name': f"'{descriptor.name}' already exists at {path}"})
        self.directory.mkdir(parents=True, exist_ok=True)
        path.write_text(dump_space(descriptor), encoding='utf-8')
        self._paths = None
        self._loaded.pop(descriptor.name, None)
        logger.info("saved %s to %s", descriptor.name, path)
        return path

    @transaction.atomic
    def ingest(self) -> list[SpaceEntry]:
        """Validate every document and index it in ``SpaceEntry``.

        Entries whose documents disappeared are removed.
        """
        entries = []
        for name in self.names():
            descriptor = self.load(name)
            text = self.text(name)
            entry, _ = SpaceEntry.objects.update_or_create(
                name=name,
                defaults={
                    'kind': descriptor.kind,
                    'prime': descriptor.height.p,
                    'height': descriptor.height.n,
                    'path': self.paths[name].name,
                    'document': text,
                    'digest': digest(text),
                },
            )
            entries.append(entry)
        stale = SpaceEntry.objects.exclude(name__in=self.names())
        if stale.exists():
            logger.info("removing %d stale catalog entries", stale.count())
            stale.delete()
        return entries


def list_spaces(filters: dict | None = None):
    """Ingested entries matching ``filters`` (SpaceEntryFilter query parameters)."""
    filterset = SpaceEntryFilter(filters or {}, queryset=SpaceEntry.objects.all())
    if not filterset.is_valid():
        raise CatalogError(dict(filterset.errors))
    return filterset.qs
