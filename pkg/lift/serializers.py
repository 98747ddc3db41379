from rest_framework import serializers

from core.serializers import AlternativeField, AlternativeSetField, ProfileField


class ProjectionSerializer(serializers.Serializer):
    which = serializers.CharField()
    strategy_proof = serializers.BooleanField()
    full_range = serializers.BooleanField()
    dictator = serializers.IntegerField(allow_null=True)
    expected_dictator = serializers.IntegerField(allow_null=True)
    matches = serializers.BooleanField()


class CloneTransportSerializer(serializers.Serializer):
    """Serializer for the clone projections of one (n+1)-individual rule."""

    rule = serializers.CharField()
    dictator = serializers.IntegerField(allow_null=True)
    projections = ProjectionSerializer(many=True)
    passed = serializers.BooleanField()


class CloneConflictSerializer(serializers.Serializer):
    rule = serializers.CharField()
    last_dictator = serializers.IntegerField(allow_null=True)
    first_dictator = serializers.IntegerField(allow_null=True)
    hypothesis_holds = serializers.BooleanField()
    u = ProfileField()
    outcome = AlternativeField()
    last_prediction = AlternativeField(allow_null=True)
    first_prediction = AlternativeField(allow_null=True)
    contradiction = serializers.BooleanField(allow_null=True)
    passes = serializers.BooleanField()


class LiftReportSerializer(serializers.Serializer):
    """Serializer for verify-lift reports."""

    source = serializers.CharField()
    rules = serializers.IntegerField()
    solver_status = serializers.CharField(allow_null=True)
    transports = CloneTransportSerializer(many=True)
    conflicts = CloneConflictSerializer(many=True)


class MergeWitnessSerializer(serializers.Serializer):
    """Two representatives of p with different merged outcomes; needs `big_spec` and `small_spec`."""

    p = serializers.SerializerMethodField()
    r = serializers.SerializerMethodField()
    s = serializers.SerializerMethodField()
    outcomes = serializers.SerializerMethodField()

    def get_p(self, obj):
        return obj['p'].to_text(self.context['small_spec'].labels)

    def get_r(self, obj):
        return obj['r'].to_text(self.context['big_spec'].labels)

    def get_s(self, obj):
        return obj['s'].to_text(self.context['big_spec'].labels)

    def get_outcomes(self, obj):
        labels = self.context['small_spec'].labels
        return [labels[a] for a in obj['outcomes']]


class MergeReportSerializer(serializers.Serializer):
    merge = serializers.CharField()
    well_defined = serializers.BooleanField()
    representatives = serializers.IntegerField()
    witness = MergeWitnessSerializer(allow_null=True)
    sp_preserved = serializers.BooleanField()
    full_range = serializers.BooleanField()
    dictator_before = serializers.IntegerField(allow_null=True)
    dictator_after = serializers.IntegerField(allow_null=True)
    passed = serializers.BooleanField()


class RestrictedLiftSerializer(serializers.Serializer):
    rule = serializers.CharField()
    range = AlternativeSetField()
    orders = serializers.IntegerField()
    profiles = serializers.IntegerField()
    strategy_proof = serializers.BooleanField()
    order_invariant = serializers.BooleanField()
    dictator = serializers.IntegerField(allow_null=True)
    passed = serializers.BooleanField()
