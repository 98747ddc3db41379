"""
Constructive S-paths.

Both endpoints are walked to a common pivot that depends only on their shared
restriction to S. For a single outside alternative x the pivot has x on top for
individual 1 and at the bottom for everybody else. For several outside
alternatives x, y, ..., z (ascending index) the pivot is reached in stages:
individual 1 ends with x y ... z on top, the others with z ... y x at the bottom.
"""

import logging

from core.exceptions import PathConstructionError, PreconditionError
from core.models import Ordering, Profile

from .models import SPath, validate_spath

logger = logging.getLogger(__name__)


def _check_endpoints(u, v, s_set):
    if u.n != v.n or u.alternatives != v.alternatives:
        raise PreconditionError("endpoints must share individuals and alternatives")
    if u.n < 3:
        raise PreconditionError(f"S-paths need at least three individuals, got n={u.n}")
    if not s_set <= u.alternatives:
        raise PreconditionError(f"S={sorted(s_set)} is not a set of alternatives")
    if not u.is_np_member() or not v.is_np_member():
        raise PreconditionError("both endpoints must be in NP")
    if u.restriction_key(s_set) != v.restriction_key(s_set):
        raise PreconditionError("endpoints disagree on S")


def pivot_path(u, x):
    """
    Walk u to the profile with x on top for individual 1 and at the bottom for
    all others, leaving every other alternative's relative ranks alone.
    """
    path = [u]

    def move(i, sequence):
        profile = path[-1].replace(i, Ordering(tuple(sequence)))
        if not profile.is_np_member():
            raise PathConstructionError(
                f"moving {x} for individual {i} left NP at step {len(path) + 1}"
            )
        path.append(profile)

    while path[-1].orderings[0].top != x:
        current = path[-1]
        first = list(current.orderings[0].rank_seq)
        k = first.index(x)
        c = first[k - 1]
        if not any(o.prefers(c, x) for o in current.orderings[1:]):
            # Nobody else ranks c over x: drop x just below c for individual 2.
            second = [a for a in current.orderings[1].rank_seq if a != x]
            second.insert(second.index(c) + 1, x)
            move(2, second)
        first[k - 1], first[k] = x, c
        move(1, first)

    for i in range(2, u.n + 1):
        sequence = path[-1].orderings[i - 1].rank_seq
        if sequence[-1] != x:
            move(i, [a for a in sequence if a != x] + [x])
    return path


def _embed(profile, prefix):
    head = tuple(prefix)
    tail = head[::-1]
    first, *rest = profile.orderings
    return Profile((Ordering(head + first.rank_seq),) + tuple(Ordering(o.rank_seq + tail) for o in rest))


def staged_pivot_path(u, outside):
    """Walk u to the staged pivot for the outside alternatives, in the given order."""
    path = [u]
    prefix = []
    for x in outside:
        remaining = u.alternatives - set(prefix)
        for w in pivot_path(path[-1].restrict(remaining), x)[1:]:
            path.append(_embed(w, prefix))
        prefix.append(x)
    return path


def assemble_spath(s_set, forward_u, forward_v):
    """Join two walks that end at the same pivot into a path from u to v."""
    if forward_u[0] == forward_v[0]:
        return SPath(s_set, (forward_u[0],))
    if forward_u[-1] != forward_v[-1]:
        raise PathConstructionError("walks from u and v reached different pivots")
    return SPath(s_set, tuple(forward_u) + tuple(forward_v[::-1][1:]))


def _build(u, v, s_set, outside):
    forward_u = staged_pivot_path(u, outside)
    forward_v = forward_u if v == u else staged_pivot_path(v, outside)
    path = assemble_spath(s_set, forward_u, forward_v)
    result = validate_spath(path, u, v)
    if not result:
        raise PathConstructionError(f"constructed path invalid at step {result.step}: {result.violation}")
    logger.debug(f"Built S-path of {len(path)} steps through {len(outside)} pivot stage(s)")
    return path


def build_spath_codim1(u, v, x):
    """S-path from u to v where S is everything except x."""
    if x not in u.alternatives:
        raise PreconditionError(f"{x} is not an alternative")
    s_set = u.alternatives - {x}
    _check_endpoints(u, v, s_set)
    return _build(u, v, s_set, [x])


def build_spath(u, v, s_set):
    s_set = frozenset(s_set)
    _check_endpoints(u, v, s_set)
    return _build(u, v, s_set, sorted(u.alternatives - s_set))
