"""
Preference primitives for the non-Paretian domain.

Alternatives are identified by index everywhere inside the toolkit; labels only
appear at the text boundary (see core.codec). Individuals are numbered 1..n in
every public signature.
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import combinations, permutations
from math import factorial
from types import MappingProxyType
from typing import Iterator, Mapping, Optional

from django.conf import settings

from .exceptions import (
    DomainCapExceeded, InvalidOrderingError, InvalidRestrictionError,
    PreconditionError, ProfileNotInDomain, SpecMismatchError,
)

logger = logging.getLogger(__name__)

DEFAULT_LABELS = 'abcdefghij'


@dataclass(frozen=True)
class Alternative:
    """An element of X."""

    index: int
    label: str

    def __str__(self):
        return self.label


@dataclass(frozen=True)
class DomainSpec:
    """Parameters n (individuals), m (alternatives) and display labels."""

    n: int
    m: int
    labels: str = ''

    def __post_init__(self):
        if self.n < 1:
            raise PreconditionError(f"n must be at least 1, got {self.n}")
        if self.m < 2:
            raise PreconditionError(f"m must be at least 2, got {self.m}")
        labels = self.labels or DEFAULT_LABELS[:self.m]
        if len(labels) != self.m:
            raise PreconditionError(f"{self.m} labels required, got {labels!r}")
        if len(set(labels)) != self.m:
            raise PreconditionError(f"labels must be unique, got {labels!r}")
        if any(ch.isspace() or ch in '=->,#' for ch in labels):
            raise PreconditionError(f"labels must be plain characters, got {labels!r}")
        object.__setattr__(self, 'labels', labels)

    def __str__(self):
        return f"({self.n},{self.m})"

    @property
    def alternatives(self):
        return tuple(Alternative(k, ch) for k, ch in enumerate(self.labels))

    @property
    def profile_count(self):
        return factorial(self.m) ** self.n

    def label_of(self, index):
        return self.labels[index]

    def index_of(self, label):
        k = self.labels.find(label)
        if k < 0 or len(label) != 1:
            raise InvalidOrderingError(f"unknown alternative {label!r} for labels {self.labels!r}")
        return k

    def labels_for(self, indices):
        return ''.join(self.labels[a] for a in sorted(indices))

    def with_n(self, n):
        return DomainSpec(n, self.m, self.labels)

    def require_at_least_three(self):
        if self.n < 3 or self.m < 3:
            raise PreconditionError(f"operation needs n >= 3 and m >= 3, got {self}")


@dataclass(frozen=True)
class Ordering:
    """A strict linear order, most preferred first."""

    rank_seq: tuple
    pos: Mapping[int, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        seq = tuple(self.rank_seq)
        if len(set(seq)) != len(seq):
            raise InvalidOrderingError(f"repeated alternative in {seq}")
        object.__setattr__(self, 'rank_seq', seq)
        object.__setattr__(self, 'pos', {a: k for k, a in enumerate(seq)})

    def __len__(self):
        return len(self.rank_seq)

    @property
    def top(self):
        return self.rank_seq[0]

    @property
    def bottom(self):
        return self.rank_seq[-1]

    @property
    def alternatives(self):
        return frozenset(self.rank_seq)

    def prefers(self, x, y):
        return self.pos[x] < self.pos[y]

    def top_within(self, subset):
        for a in self.rank_seq:
            if a in subset:
                return a
        raise InvalidRestrictionError(f"no member of {sorted(subset)} in {self.rank_seq}")

    def restrict(self, subset):
        subset = frozenset(subset)
        if not subset:
            raise InvalidRestrictionError("cannot restrict an ordering to the empty set")
        if not subset <= self.pos.keys():
            raise InvalidRestrictionError(f"{sorted(subset)} is not a subset of {sorted(self.rank_seq)}")
        return Ordering(tuple(a for a in self.rank_seq if a in subset))

    def inverse(self):
        return Ordering(self.rank_seq[::-1])

    def to_text(self, labels):
        return ''.join(labels[a] for a in self.rank_seq)


def all_orderings(m, override_caps=False):
    """All m! orderings of range(m), lexicographic in rank_seq."""
    if m < 1:
        raise PreconditionError(f"m must be at least 1, got {m}")
    cap = settings.NPV_MAX_ALTERNATIVES
    if m > cap and not override_caps:
        raise DomainCapExceeded('NPV_MAX_ALTERNATIVES', cap, m)
    return _orderings(m)


@lru_cache(maxsize=None)
def _orderings(m):
    return tuple(Ordering(seq) for seq in permutations(range(m)))


def restrict_ordering(ordering, subset):
    return ordering.restrict(subset)


def inverse_ordering(ordering):
    return ordering.inverse()


@dataclass(frozen=True)
class Profile:
    """One ordering per individual; `ordering(i)` is 1-based."""

    orderings: tuple

    def __post_init__(self):
        orderings = tuple(self.orderings)
        if not orderings:
            raise PreconditionError("a profile needs at least one individual")
        alternatives = orderings[0].pos.keys()
        for other in orderings[1:]:
            if other.pos.keys() != alternatives:
                raise SpecMismatchError("orderings of a profile must rank the same alternatives")
        object.__setattr__(self, 'orderings', orderings)

    @classmethod
    def of(cls, *sequences):
        return cls(tuple(Ordering(tuple(seq)) for seq in sequences))

    @property
    def n(self):
        return len(self.orderings)

    @cached_property
    def alternatives(self):
        return frozenset(self.orderings[0].rank_seq)

    @cached_property
    def key(self):
        return tuple(o.rank_seq for o in self.orderings)

    def ordering(self, i):
        if not 1 <= i <= self.n:
            raise PreconditionError(f"individual {i} outside 1..{self.n}")
        return self.orderings[i - 1]

    def replace(self, i, ordering):
        if not 1 <= i <= self.n:
            raise PreconditionError(f"individual {i} outside 1..{self.n}")
        orderings = list(self.orderings)
        orderings[i - 1] = ordering
        return Profile(tuple(orderings))

    def restrict(self, subset):
        return Profile(tuple(o.restrict(subset) for o in self.orderings))

    def restriction_key(self, subset):
        # No validation; the empty set gives n empty tuples.
        return tuple(tuple(a for a in o.rank_seq if a in subset) for o in self.orderings)

    def pareto_dominates(self, x, y):
        if x == y:
            raise PreconditionError("Pareto domination needs two distinct alternatives")
        return all(o.pos[x] < o.pos[y] for o in self.orderings)

    def is_np_member(self):
        first, rest = self.orderings[0], self.orderings[1:]
        for x, y in combinations(sorted(self.alternatives), 2):
            direction = first.pos[x] < first.pos[y]
            if all((o.pos[x] < o.pos[y]) == direction for o in rest):
                return False
        return True

    def h_variant_of(self, other):
        if self.n != other.n or self.alternatives != other.alternatives:
            raise SpecMismatchError("h-variants must share individuals and alternatives")
        differing = [i for i, (a, b) in enumerate(zip(self.orderings, other.orderings), start=1) if a != b]
        return differing[0] if len(differing) == 1 else None

    def to_text(self, labels):
        return ' '.join(o.to_text(labels) for o in self.orderings)


def pareto_dominates(profile, x, y):
    return profile.pareto_dominates(x, y)


def is_np_member(profile):
    return profile.is_np_member()


def h_variant_of(p, q):
    return p.h_variant_of(q)


@dataclass(frozen=True, eq=False)
class Domain:
    """
    An enumerated set of profiles in canonical order.

    Equality is identity: enumerations are cached per spec, so rules built over
    the same enumeration compare equal.
    """

    spec: DomainSpec
    profiles: tuple
    name: str = 'custom'
    index: Mapping = field(init=False, repr=False)

    def __post_init__(self):
        profiles = tuple(self.profiles)
        expected = frozenset(range(self.spec.m))
        index = {}
        for k, p in enumerate(profiles):
            if p.n != self.spec.n or p.alternatives != expected:
                raise SpecMismatchError(f"profile {k} does not match spec {self.spec}")
            if p in index:
                raise PreconditionError(f"duplicate profile {p.to_text(self.spec.labels)}")
            index[p] = k
        object.__setattr__(self, 'profiles', profiles)
        object.__setattr__(self, 'index', MappingProxyType(index))

    @classmethod
    def from_profiles(cls, spec, profiles, name='custom'):
        return cls(spec, tuple(sorted(profiles, key=lambda p: p.key)), name)

    def __repr__(self):
        return f"Domain({self.name}, {len(self.profiles)} profiles)"

    def __len__(self):
        return len(self.profiles)

    def __iter__(self) -> Iterator[Profile]:
        return iter(self.profiles)

    def __contains__(self, profile):
        return profile in self.index

    def __getitem__(self, k):
        return self.profiles[k]

    @property
    def is_full(self):
        return len(self.profiles) == self.spec.profile_count

    def position(self, profile):
        try:
            return self.index[profile]
        except KeyError:
            reason = ProfileNotInDomain.OUTSIDE_DOMAIN if profile.is_np_member() else ProfileNotInDomain.OUTSIDE_NP
            raise ProfileNotInDomain(profile.to_text(self.spec.labels), reason) from None

    def find(self, profile) -> Optional[int]:
        return self.index.get(profile)

    @cached_property
    def variant_table(self):
        """For each profile index, the sorted (h, q) pairs of h-variants inside the domain."""
        by_key = {p.key: k for k, p in enumerate(self.profiles)}
        sequences = [o.rank_seq for o in all_orderings(self.spec.m, override_caps=True)]
        table = []
        edges = 0
        for p in self.profiles:
            key = list(p.key)
            found = []
            for h in range(self.spec.n):
                own = key[h]
                for seq in sequences:
                    if seq == own:
                        continue
                    key[h] = seq
                    q = by_key.get(tuple(key))
                    if q is not None:
                        found.append((h + 1, q))
                key[h] = own
            found.sort()
            edges += len(found)
            table.append(tuple(found))
        logger.info(f"Indexed {edges} ordered h-variant pairs in {self!r}")
        return tuple(table)

    def variants(self, k):
        return self.variant_table[k]

    def variant_pairs(self):
        """Yield (p, h, q) over all ordered h-variant pairs in canonical order."""
        for p, row in enumerate(self.variant_table):
            for h, q in row:
                yield p, h, q
