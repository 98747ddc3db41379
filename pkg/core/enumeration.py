"""
Enumeration of NP(n,m), the voting paradox profiles and L(X)^N.

Every domain is produced in canonical order: lexicographic on the concatenated
rank sequences, which is what itertools.product yields over lexicographically
ordered orderings.
"""

import logging
from collections import Counter
from functools import lru_cache
from itertools import combinations, product

from django.conf import settings

from .exceptions import DomainCapExceeded, PreconditionError
from .models import Domain, Profile, all_orderings

logger = logging.getLogger(__name__)


def check_profile_cap(spec, override_caps=False):
    cap = settings.NPV_MAX_PROFILES
    if spec.profile_count > cap and not override_caps:
        raise DomainCapExceeded('NPV_MAX_PROFILES', cap, spec.profile_count)


def iter_profiles(spec, override_caps=False):
    check_profile_cap(spec, override_caps)
    orderings = all_orderings(spec.m, override_caps=override_caps)
    for combo in product(orderings, repeat=spec.n):
        yield Profile(combo)


def enumerate_full(spec, override_caps=False):
    """All of L(X)^N."""
    check_profile_cap(spec, override_caps)
    return _full_domain(spec)


@lru_cache(maxsize=16)
def _full_domain(spec):
    profiles = tuple(iter_profiles(spec, override_caps=True))
    logger.info(f"Enumerated {len(profiles)} profiles of L(X)^N for {spec}")
    return Domain(spec, profiles, f"L(X)^N{spec}")


def enumerate_np(spec, override_caps=False):
    """The non-Paretian domain NP(n,m)."""
    check_profile_cap(spec, override_caps)
    return _np_domain(spec)


@lru_cache(maxsize=16)
def _np_domain(spec):
    profiles = tuple(p for p in iter_profiles(spec, override_caps=True) if p.is_np_member())
    logger.info(f"Enumerated NP{spec}: {len(profiles)} of {spec.profile_count} profiles")
    return Domain(spec, profiles, f"NP{spec}")


def majority_prefers(profile, x, y):
    return 2 * sum(1 for o in profile.orderings if o.pos[x] < o.pos[y]) > profile.n


def is_voting_paradox(profile):
    alternatives = sorted(profile.alternatives)
    return all(
        any(majority_prefers(profile, y, x) for y in alternatives if y != x)
        for x in alternatives
    )


def enumerate_vp(spec, override_caps=False):
    """NP members where every alternative loses some pairwise majority vote."""
    if spec.n % 2 == 0:
        raise PreconditionError(f"voting paradox profiles need an odd number of individuals, got n={spec.n}")
    if spec.m < 3:
        raise PreconditionError(f"voting paradox profiles need m >= 3, got m={spec.m}")
    check_profile_cap(spec, override_caps)
    return _vp_domain(spec)


@lru_cache(maxsize=16)
def _vp_domain(spec):
    np_domain = _np_domain(spec)
    profiles = tuple(p for p in np_domain if is_voting_paradox(p))
    logger.info(f"Found {len(profiles)} voting paradox profiles in {np_domain!r}")
    return Domain(spec, profiles, f"VP{spec}")


def count_np_inclusion_exclusion(n, m):
    """
    Count |NP(n,m)| without enumerating profiles.

    Sums over every partial orientation of the unordered pairs the signed number
    of profiles unanimous on that orientation, i.e. (#linear extensions)^n.
    Extension counts are tallied per ordering over the orientations it agrees with.
    """
    pairs = list(combinations(range(m), 2))
    extensions = Counter()
    for o in all_orderings(m):
        row = tuple(1 if o.prefers(x, y) else 2 for x, y in pairs)
        for mask in product((False, True), repeat=len(pairs)):
            extensions[tuple(r if keep else 0 for r, keep in zip(row, mask))] += 1
    total = 0
    for orientation, count in extensions.items():
        sign = -1 if sum(1 for c in orientation if c) % 2 else 1
        total += sign * count ** n
    return total


def dump_domain(domain, stream):
    for profile in domain:
        stream.write(profile.to_text(domain.spec.labels) + '\n')
