import re
from dataclasses import dataclass
from functools import cached_property

from core.exceptions import PreconditionError
from core.models import DomainSpec

MERGE_PATTERN = re.compile(r'^\s*(\S)\s*,\s*(\S)\s*=\s*(\S)\s*$')


@dataclass(frozen=True)
class MergeSpec:
    """
    Fuse alternatives w and z of `big_spec` into a fresh alternative x*.

    The small alternatives are X minus {w, z} in index order, then x* last.
    """

    w: int
    z: int
    x_star_label: str
    big_spec: DomainSpec
    small_spec: DomainSpec

    @classmethod
    def build(cls, big_spec, w, z, x_star_label):
        if w == z:
            raise PreconditionError("the merged alternatives must differ")
        for a in (w, z):
            if not 0 <= a < big_spec.m:
                raise PreconditionError(f"alternative {a} outside 0..{big_spec.m - 1}")
        if big_spec.m < 3:
            raise PreconditionError(f"merging needs at least three alternatives, got m={big_spec.m}")
        if len(x_star_label) != 1 or x_star_label in big_spec.labels:
            raise PreconditionError(f"x* label {x_star_label!r} must be a new single character")
        rest = [a for a in range(big_spec.m) if a not in (w, z)]
        small_labels = big_spec.labels_for(rest) + x_star_label
        return cls(w, z, x_star_label, big_spec, DomainSpec(big_spec.n, big_spec.m - 1, small_labels))

    @classmethod
    def parse(cls, text, big_spec):
        """Parse the 'w,z=x*' form used on the command line."""
        match = MERGE_PATTERN.match(text)
        if match is None:
            raise PreconditionError(f"expected 'w,z=x*', got {text!r}")
        w, z, x_star = match.groups()
        return cls.build(big_spec, big_spec.index_of(w), big_spec.index_of(z), x_star)

    def __str__(self):
        labels = self.big_spec.labels
        return f"{labels[self.w]},{labels[self.z]}={self.x_star_label}"

    @cached_property
    def rest(self):
        return tuple(a for a in range(self.big_spec.m) if a not in (self.w, self.z))

    @property
    def x_star(self):
        return self.small_spec.m - 1

    def to_big(self, k):
        """Big alternative for a small index other than x*."""
        if k == self.x_star:
            raise PreconditionError("x* has no single counterpart")
        return self.rest[k]

    def to_small(self, a):
        """Small alternative for a big index; w and z collapse to x*."""
        if a in (self.w, self.z):
            return self.x_star
        return self.rest.index(a)
