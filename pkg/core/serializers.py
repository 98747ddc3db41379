from rest_framework import serializers

from .codec import format_alternatives, format_profile, parse_alternatives, parse_profile
from .exceptions import NPVerifyError


class ProfileField(serializers.Field):
    """A Profile rendered as its profile string; needs `spec` in the context."""

    def to_representation(self, value):
        return format_profile(value, self.context['spec'])

    def to_internal_value(self, data):
        try:
            return parse_profile(data, self.context['spec'])
        except NPVerifyError as exc:
            raise serializers.ValidationError(str(exc))


class AlternativeField(serializers.Field):
    def to_representation(self, value):
        return self.context['spec'].label_of(value)

    def to_internal_value(self, data):
        try:
            return self.context['spec'].index_of(data)
        except NPVerifyError as exc:
            raise serializers.ValidationError(str(exc))


class AlternativeSetField(serializers.Field):
    def to_representation(self, value):
        return format_alternatives(value, self.context['spec'])

    def to_internal_value(self, data):
        try:
            return parse_alternatives(data, self.context['spec'])
        except NPVerifyError as exc:
            raise serializers.ValidationError(str(exc))


class DomainStatsSerializer(serializers.Serializer):
    """Serializer for domain-stats reports."""

    orderings = serializers.IntegerField()
    total = serializers.IntegerField()
    np = serializers.IntegerField()
    np_oracle = serializers.IntegerField()
    vp = serializers.IntegerField(allow_null=True)
    oracle_agrees = serializers.BooleanField()
