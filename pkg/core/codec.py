"""Text form of orderings and profiles: 'abc bca cab', most preferred first."""

from .exceptions import ProfileParseError
from .models import Ordering, Profile


def parse_ordering(token, spec, position=None):
    if len(token) != spec.m:
        raise ProfileParseError(f"{token!r} must list all {spec.m} alternatives", position)
    seen = []
    for ch in token:
        k = spec.labels.find(ch)
        if k < 0:
            raise ProfileParseError(f"unknown alternative {ch!r} in {token!r}", position)
        if k in seen:
            raise ProfileParseError(f"duplicate alternative {ch!r} in {token!r}", position)
        seen.append(k)
    return Ordering(tuple(seen))


def parse_profile(text, spec):
    tokens = text.split()
    if len(tokens) != spec.n:
        raise ProfileParseError(
            f"expected {spec.n} orderings, got {len(tokens)}",
            min(len(tokens), spec.n) + 1,
        )
    return Profile(tuple(parse_ordering(tok, spec, k) for k, tok in enumerate(tokens, start=1)))


def format_profile(profile, spec):
    return profile.to_text(spec.labels)


def parse_alternatives(text, spec):
    """Parse a label set such as 'abc' into alternative indices."""
    indices = set()
    for ch in text.strip():
        k = spec.labels.find(ch)
        if k < 0:
            raise ProfileParseError(f"unknown alternative {ch!r}")
        indices.add(k)
    return frozenset(indices)


def format_alternatives(indices, spec):
    return spec.labels_for(indices)
