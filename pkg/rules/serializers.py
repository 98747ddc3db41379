from rest_framework import serializers

from core.serializers import AlternativeField, AlternativeSetField, ProfileField


class ManipulationWitnessSerializer(serializers.Serializer):
    """Serializer for a profitable deviation."""

    at = ProfileField()
    by = serializers.IntegerField()
    via = ProfileField()
    sincere_outcome = AlternativeField()
    manipulated_outcome = AlternativeField()


class UbmViolationSerializer(serializers.Serializer):
    at = ProfileField()
    by = serializers.IntegerField()
    via = ProfileField()
    harmed = serializers.IntegerField()
    sincere_outcome = AlternativeField()
    manipulated_outcome = AlternativeField()


class RuleReportSerializer(serializers.Serializer):
    """Serializer for check-rule and find-dictator reports."""

    rule = serializers.CharField()
    domain = serializers.CharField()
    profiles = serializers.IntegerField()
    strategy_proof = serializers.BooleanField()
    range = AlternativeSetField()
    full_range = serializers.BooleanField()
    dictator = serializers.IntegerField(allow_null=True)
    witness = ManipulationWitnessSerializer(allow_null=True)


class RuleTableField(serializers.Field):
    """A rule rendered as '<profile> <label>' entries in domain order."""

    def to_representation(self, value):
        spec = self.context['spec']
        return [f"{p.to_text(spec.labels)} {spec.label_of(a)}" for p, a in zip(value.domain, value.choice)]


class RuleSummarySerializer(serializers.Serializer):
    name = serializers.CharField()
    range = AlternativeSetField()
    table = RuleTableField(source='*')
