from rest_framework import serializers

from .models import RunRecord


class RunRecordSerializer(serializers.ModelSerializer):
    """Summary of a run; the payload is left out."""

    inputs = serializers.SerializerMethodField()

    class Meta:
        model = RunRecord
        fields = ['id', 'command_line', 'cache_key', 'inputs', 'wall_time', 'cache_hit', 'created_at']

    def get_inputs(self, obj):
        return ",".join(sorted(obj.input_digests))
