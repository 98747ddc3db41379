from dataclasses import dataclass
from typing import Optional

from django.conf import settings
from rest_framework import serializers

from core.codec import parse_alternatives, parse_profile
from core.exceptions import NPVerifyError
from core.models import DomainSpec, Profile

TEXT = 'text'
JSON = 'json'


@dataclass(frozen=True)
class RunConfig:
    spec: DomainSpec
    solution_cap: int
    time_limit: float
    seed: int
    output: str = TEXT
    stretch: bool = False
    override_caps: bool = False
    rule: Optional[str] = None
    rule_file: Optional[str] = None
    merge: Optional[str] = None
    cnf_out: Optional[str] = None
    from_profile: Optional[Profile] = None
    to_profile: Optional[Profile] = None
    s_set: Optional[frozenset] = None
    path_out: Optional[str] = None

    @property
    def profile_cap(self):
        return settings.NPV_MAX_PROFILES

    def as_report(self):
        """The config as embedded in reports; unset arguments are left out."""
        spec = self.spec
        report = {
            'n': spec.n,
            'm': spec.m,
            'labels': spec.labels,
            'profile_cap': self.profile_cap,
            'solution_cap': self.solution_cap,
            'time_limit': self.time_limit,
            'seed': self.seed,
            'stretch': self.stretch,
            'override_caps': self.override_caps,
        }
        optional = {
            'rule': self.rule,
            'rule_file': self.rule_file,
            'merge': self.merge,
            'cnf_out': self.cnf_out,
            'from': self.from_profile.to_text(spec.labels) if self.from_profile else None,
            'to': self.to_profile.to_text(spec.labels) if self.to_profile else None,
            's': spec.labels_for(self.s_set) if self.s_set is not None else None,
            'path_out': self.path_out,
        }
        report.update({k: v for k, v in optional.items() if v is not None})
        return report


class RunConfigSerializer(serializers.Serializer):
    """Validates command options into a RunConfig."""

    n = serializers.IntegerField(min_value=1, default=3)
    m = serializers.IntegerField(min_value=2, default=3)
    labels = serializers.CharField(required=False, allow_blank=True, allow_null=True, default='')
    output = serializers.ChoiceField(choices=[TEXT, JSON], default=TEXT)
    cap = serializers.IntegerField(min_value=1, required=False, allow_null=True, default=None)
    time_limit = serializers.FloatField(min_value=0.001, required=False, allow_null=True, default=None)
    seed = serializers.IntegerField(min_value=0, required=False, allow_null=True, default=None)
    stretch = serializers.BooleanField(default=False)
    override_caps = serializers.BooleanField(default=False)
    rule = serializers.CharField(required=False, allow_null=True, default=None)
    rule_file = serializers.CharField(required=False, allow_null=True, default=None)
    merge = serializers.CharField(required=False, allow_null=True, default=None)
    cnf_out = serializers.CharField(required=False, allow_null=True, default=None)
    from_profile = serializers.CharField(required=False, allow_null=True, default=None)
    to_profile = serializers.CharField(required=False, allow_null=True, default=None)
    s = serializers.CharField(required=False, allow_null=True, allow_blank=True, default=None, trim_whitespace=False)
    path_out = serializers.CharField(required=False, allow_null=True, default=None)

    def validate(self, attrs):
        try:
            spec = DomainSpec(attrs['n'], attrs['m'], attrs.get('labels') or '')
        except NPVerifyError as exc:
            raise serializers.ValidationError({'labels': str(exc)})

        profiles = {}
        for key in ('from_profile', 'to_profile'):
            text = attrs.get(key)
            if text is None:
                profiles[key] = None
                continue
            try:
                profiles[key] = parse_profile(text, spec)
            except NPVerifyError as exc:
                raise serializers.ValidationError({key: str(exc)})
        if (profiles['from_profile'] is None) != (profiles['to_profile'] is None):
            raise serializers.ValidationError("--from and --to must be given together")

        s_set = None
        if attrs.get('s') is not None:
            try:
                s_set = parse_alternatives(attrs['s'], spec)
            except NPVerifyError as exc:
                raise serializers.ValidationError({'s': str(exc)})

        if attrs.get('rule') and attrs.get('rule_file'):
            raise serializers.ValidationError("--rule and --rule-file are mutually exclusive")

        cap = attrs.get('cap')
        time_limit = attrs.get('time_limit')
        seed = attrs.get('seed')
        return RunConfig(
            spec=spec,
            solution_cap=cap if cap is not None else settings.NPV_SOLUTION_CAP,
            time_limit=time_limit if time_limit is not None else settings.NPV_TIME_LIMIT,
            seed=seed if seed is not None else settings.NPV_SEED,
            output=attrs['output'],
            stretch=attrs['stretch'],
            override_caps=attrs['override_caps'],
            rule=attrs.get('rule'),
            rule_file=attrs.get('rule_file'),
            merge=attrs.get('merge'),
            cnf_out=attrs.get('cnf_out'),
            from_profile=profiles['from_profile'],
            to_profile=profiles['to_profile'],
            s_set=s_set,
            path_out=attrs.get('path_out'),
        )
