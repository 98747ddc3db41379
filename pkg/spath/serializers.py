from rest_framework import serializers

from core.serializers import AlternativeSetField, ProfileField


class PathValidationSerializer(serializers.Serializer):
    valid = serializers.BooleanField()
    violation = serializers.CharField(allow_null=True)
    step = serializers.IntegerField(allow_null=True)


class SPathSerializer(serializers.Serializer):
    s_set = AlternativeSetField()
    steps = serializers.ListField(child=ProfileField())


class PathFailureSerializer(serializers.Serializer):
    u = ProfileField()
    v = ProfileField()
    reason = serializers.CharField()


class SweepReportSerializer(serializers.Serializer):
    """Serializer for one S of a fiber sweep."""

    s_set = AlternativeSetField()
    fibers = serializers.IntegerField()
    pairs_checked = serializers.IntegerField()
    builder_failures = serializers.IntegerField()
    unreachable = serializers.IntegerField()
    disagreements = serializers.IntegerField()
    longest_path = serializers.IntegerField()
    first_failure = PathFailureSerializer(allow_null=True)


class SinglePathReportSerializer(SPathSerializer):
    """Serializer for a single constructed path and its oracle comparison."""

    length = serializers.IntegerField()
    oracle_length = serializers.IntegerField(allow_null=True)
    validation = PathValidationSerializer()


class EquivalenceSerializer(serializers.Serializer):
    holds = serializers.BooleanField()
    s_set = AlternativeSetField()
    fibers = serializers.IntegerField()
    pair = serializers.ListField(child=ProfileField(), allow_null=True)
