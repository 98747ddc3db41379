"""Rule tables and the witnesses produced when a rule property fails."""

from dataclasses import dataclass, field
from functools import cached_property

from core.exceptions import PreconditionError
from core.models import Domain, Profile


@dataclass(frozen=True)
class Rule:
    """
    A social choice rule stored extensionally: choice[k] is the alternative
    selected at domain.profiles[k]. The name is descriptive only.
    """

    domain: Domain
    choice: tuple
    name: str = field(default='', compare=False)

    def __post_init__(self):
        choice = tuple(self.choice)
        if len(choice) != len(self.domain):
            raise PreconditionError(
                f"rule table has {len(choice)} entries for {len(self.domain)} profiles"
            )
        m = self.domain.spec.m
        for k, a in enumerate(choice):
            if not isinstance(a, int) or not 0 <= a < m:
                raise PreconditionError(f"entry {k} is not an alternative index: {a!r}")
        object.__setattr__(self, 'choice', choice)

    def __str__(self):
        return self.name or f"rule on {self.domain!r}"

    @property
    def spec(self):
        return self.domain.spec

    @cached_property
    def range(self):
        return frozenset(self.choice)

    def evaluate(self, profile: Profile):
        return self.choice[self.domain.position(profile)]

    def restrict_to(self, domain, name=None):
        return Rule(domain, tuple(self.evaluate(p) for p in domain), name or self.name)


@dataclass(frozen=True)
class ManipulationWitness:
    at: Profile
    by: int
    via: Profile
    sincere_outcome: int
    manipulated_outcome: int

    def describe(self, spec):
        return (
            f"individual {self.by} at {self.at.to_text(spec.labels)} reports "
            f"{self.via.ordering(self.by).to_text(spec.labels)} and moves the outcome from "
            f"{spec.label_of(self.sincere_outcome)} to {spec.label_of(self.manipulated_outcome)}"
        )


@dataclass(frozen=True)
class UbmViolation:
    """A profitable deviation by `by` that `harmed` does not gain from."""

    at: Profile
    by: int
    via: Profile
    harmed: int
    sincere_outcome: int
    manipulated_outcome: int


@dataclass(frozen=True)
class AdjacentSwapViolation:
    at: Profile
    by: int
    via: Profile
    swapped: tuple
    before: int
    after: int
