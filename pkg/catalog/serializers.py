"""Serializers for catalog documents.

A document is one JSON object per space. The serializers check syntax and
field types; ``SpaceDescriptor`` checks the invariants that tie fields
together. Unknown fields are rejected by name at every level.
"""

from collections.abc import Mapping

from rest_framework import serializers

from catalog.descriptors import FAMILIES, Flag, SpaceKind, TwistFlavor
from catalog.models import SpaceEntry


class StrictSerializer(serializers.Serializer):
    """Serializer that refuses keys it does not declare."""

    def to_internal_value(self, data):
        if isinstance(data, Mapping):
            unknown = sorted(set(data) - set(self.fields))
            if unknown:
                raise serializers.ValidationError({name: ["Unknown field."] for name in unknown})
        return super().to_internal_value(data)


class IntegerKeyDictField(serializers.DictField):
    """A JSON object whose keys are integers written as strings."""

    def to_internal_value(self, data):
        values = super().to_internal_value(data)
        result = {}
        for key, value in values.items():
            try:
                result[int(key)] = value
            except ValueError:
                raise serializers.ValidationError(f"'{key}' is not an integer key.") from None
        return result

    def to_representation(self, value):
        return {str(key): item for key, item in super().to_representation(value).items()}


class TwistClassSerializer(StrictSerializer):
    degree = serializers.IntegerField(min_value=1, help_text="Cohomological degree of the class")
    coefficients = serializers.ChoiceField(choices=['Z', 'Z/2'], default='Z')
    value = serializers.CharField(
        required=False,
        allow_blank=True,
        default='',
        help_text="Polynomial in the space's cohomology ring, when it has one"
    )


class BasisEntryField(serializers.ListField):
    """``[name, degree]``."""

    def __init__(self, **kwargs):
        super().__init__(min_length=2, max_length=2, **kwargs)

    def to_internal_value(self, data):
        name, degree = super().to_internal_value(data)
        if not isinstance(name, str) or isinstance(degree, bool) or not isinstance(degree, int):
            raise serializers.ValidationError("Basis entries are [name, degree].")
        return name, degree


class ModuleSerializer(StrictSerializer):
    basis = serializers.ListField(child=BasisEntryField(), allow_empty=False)
    actions = serializers.DictField(
        child=serializers.ListField(child=serializers.ListField(child=serializers.IntegerField(min_value=0, max_value=1))),
        required=False,
        default=dict,
        help_text="Action matrix of each algebra generator, row by row; missing generators act by zero"
    )

    def validate(self, attrs):
        size = len(attrs['basis'])
        for name, rows in attrs['actions'].items():
            if len(rows) != size or any(len(row) != size for row in rows):
                raise serializers.ValidationError({'actions': f"matrix of '{name}' must be {size}x{size}"})
        return attrs


class SpaceDocumentSerializer(StrictSerializer):
    """Every field a document may carry; which ones apply depends on ``kind``."""

    name = serializers.CharField(max_length=100)
    kind = serializers.ChoiceField(choices=SpaceKind.choices)
    prime = serializers.IntegerField(min_value=2, default=2)
    height = serializers.IntegerField(min_value=1)
    truncation = serializers.IntegerField(min_value=1, required=False)
    description = serializers.CharField(required=False, allow_blank=True)
    classes = serializers.DictField(child=TwistClassSerializer(), required=False)

    degree = serializers.IntegerField(min_value=1, required=False)
    order = serializers.IntegerField(min_value=1, required=False)

    ring = serializers.CharField(required=False, help_text="Name of the steenrod-ring document")
    generators = serializers.DictField(child=serializers.IntegerField(min_value=1), required=False)
    truncations = serializers.DictField(child=serializers.IntegerField(min_value=2), required=False)
    squares = serializers.DictField(child=IntegerKeyDictField(child=serializers.CharField()), required=False)

    family = serializers.ChoiceField(choices=FAMILIES, required=False)
    cover = serializers.IntegerField(min_value=0, required=False)
    flavor = serializers.ChoiceField(choices=TwistFlavor.choices, required=False)
    flags = serializers.ListField(child=serializers.ChoiceField(choices=Flag.choices), required=False)
    module = ModuleSerializer(required=False)
    dims = IntegerKeyDictField(
        child=serializers.IntegerField(min_value=0),
        required=False,
        help_text="Ranks by degree of a homology the fibre algebra acts on trivially"
    )

    def validate(self, attrs):
        kind = attrs['kind']
        if kind == SpaceKind.STEENROD_RING and not attrs.get('generators'):
            raise serializers.ValidationError({'generators': "A ring document needs generators."})
        unknown = set(attrs.get('truncations', {})) | set(attrs.get('squares', {}))
        unknown -= set(attrs.get('generators', {}))
        if unknown:
            raise serializers.ValidationError({'truncations': f"Unknown generator(s) {sorted(unknown)}."})
        return attrs


class SpaceEntrySerializer(serializers.ModelSerializer):
    """Read-only rendering of an ingested entry for listings."""

    class Meta:
        model = SpaceEntry
        fields = ['id', 'name', 'kind', 'prime', 'height', 'path', 'digest', 'updated_at']
        read_only_fields = fields
