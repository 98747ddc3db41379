from rest_framework import serializers

from core.serializers import AlternativeSetField
from lift.serializers import MergeReportSerializer, RestrictedLiftSerializer
from rules.serializers import UbmViolationSerializer
from spath.serializers import EquivalenceSerializer, SweepReportSerializer
from verify.serializers import DecisivenessSweepSerializer


class SweepSetSerializer(serializers.Serializer):
    """Serializer for spath sweeps over one or more S."""

    mode = serializers.CharField()
    sample = serializers.IntegerField(allow_null=True)
    seed = serializers.IntegerField()
    reports = SweepReportSerializer(many=True)


class MergeSweepSerializer(serializers.Serializer):
    merge = serializers.CharField()
    rules = MergeReportSerializer(many=True)


class QueryStatusSerializer(serializers.Serializer):
    alternative = serializers.CharField()
    status = serializers.CharField()


class DecisiveReportSerializer(serializers.Serializer):
    """Serializer for decisive-sweep reports: decisiveness plus voting paradox range checks."""

    decisiveness = DecisivenessSweepSerializer()
    vp_range = QueryStatusSerializer(many=True)
    vp_singleton = QueryStatusSerializer(many=True)


class STopDemoSerializer(serializers.Serializer):
    rule = serializers.CharField()
    profiles = serializers.IntegerField()
    s_set = AlternativeSetField()
    ubm = serializers.BooleanField()
    ubm_violation = UbmViolationSerializer(allow_null=True)
    restricted_profiles = serializers.IntegerField()
    restricted_strategy_proof = serializers.BooleanField()
    restricted_range = AlternativeSetField()
    equivalence_holds = serializers.BooleanField()
    equivalence = EquivalenceSerializer(allow_null=True)
    lift = RestrictedLiftSerializer(allow_null=True)


class EnvelopeSerializer(serializers.Serializer):
    """Every report: toolkit version, command, config, verdict and result."""

    version = serializers.CharField()
    command = serializers.CharField()
    config = serializers.DictField()
    passed = serializers.BooleanField()
    result = serializers.DictField()
