from rest_framework import serializers

from core.serializers import AlternativeField, ProfileField
from rules.serializers import RuleSummarySerializer


class SolverStatsSerializer(serializers.Serializer):
    """Search counters; elapsed time is logged only."""

    decisions = serializers.IntegerField()
    propagations = serializers.IntegerField()
    conflicts = serializers.IntegerField()


class SolveResultSerializer(serializers.Serializer):
    status = serializers.CharField()
    capped_reason = serializers.CharField(allow_null=True)
    solutions = serializers.SerializerMethodField()
    stats = SolverStatsSerializer()

    def get_solutions(self, obj):
        return len(obj.solutions)


class BasisReportSerializer(serializers.Serializer):
    """Serializer for verify-basis reports."""

    profiles = serializers.IntegerField()
    variables = serializers.IntegerField()
    clauses = serializers.IntegerField()
    status = serializers.CharField()
    capped_reason = serializers.CharField(allow_null=True)
    solutions = serializers.IntegerField()
    dictators = serializers.ListField(child=serializers.IntegerField(allow_null=True))
    all_dictatorial = serializers.BooleanField()
    vp_corollary = serializers.BooleanField(allow_null=True)
    witness = RuleSummarySerializer(allow_null=True)
    stats = SolverStatsSerializer()


class DecisivenessQuerySerializer(serializers.Serializer):
    u = ProfileField()
    individual = serializers.IntegerField()
    alpha = AlternativeField()
    v = ProfileField()
    beta = AlternativeField()


class DecisivenessSweepSerializer(serializers.Serializer):
    queries = serializers.IntegerField()
    unsat = serializers.IntegerField()
    capped = serializers.IntegerField()
    first_sat = DecisivenessQuerySerializer(allow_null=True)


class ExportReportSerializer(serializers.Serializer):
    """Serializer for export-cnf reports."""

    cnf = serializers.CharField()
    varmap = serializers.CharField()
    variables = serializers.IntegerField()
    clauses = serializers.IntegerField()
    full_range = serializers.BooleanField()
    external_status = serializers.CharField()
    external_rule_verified = serializers.BooleanField(allow_null=True)
