"""
Contiguous-pair merging: from a rule on NP(n,m+1) to a rule on NP(n,m) over
X* = X minus {w, z} plus x*.

A small profile p is represented by big profiles r in which w and z sit next
to each other exactly where x* sat in p. The merged rule reads g at a
representative and collapses w and z to x*.
"""

import logging
from itertools import product

from core.enumeration import enumerate_np
from core.exceptions import ConstructionError, PreconditionError, SpecMismatchError
from core.models import Ordering, Profile
from rules.models import Rule
from rules.predicates import find_dictator, find_manipulation

from .clones import require_strategy_proof

logger = logging.getLogger(__name__)


def _check_small(p, ms):
    if p.n != ms.small_spec.n or p.alternatives != frozenset(range(ms.small_spec.m)):
        raise SpecMismatchError(f"profile does not match {ms.small_spec}")
    if not p.is_np_member():
        raise PreconditionError(f"{p.to_text(ms.small_spec.labels)} is not in NP")


def _expand(ordering, ms, w_first):
    pair = (ms.w, ms.z) if w_first else (ms.z, ms.w)
    seq = []
    for k in ordering.rank_seq:
        seq.extend(pair if k == ms.x_star else (ms.to_big(k),))
    return Ordering(tuple(seq))


def _representative(p, ms, orientation):
    return Profile(tuple(_expand(o, ms, w_first) for o, w_first in zip(p.orderings, orientation)))


def merge_representative(p, ms):
    """Individual 1 gets w just above z; everyone else gets z just above w."""
    _check_small(p, ms)
    r = _representative(p, ms, (True,) + (False,) * (p.n - 1))
    if not r.is_np_member():
        raise ConstructionError(f"representative of {p.to_text(ms.small_spec.labels)} left NP")
    return r


def all_representatives(p, ms):
    """Every w/z orientation choice that keeps the representative in NP."""
    _check_small(p, ms)
    found = []
    for orientation in product((True, False), repeat=p.n):
        r = _representative(p, ms, orientation)
        if r.is_np_member():
            found.append(r)
    return found


def satisfies_merge_conditions(r, p, ms):
    """
    w and z are adjacent in every r(i), r and p agree off {w, z} and x*, and the
    alternatives above the pair at r(i) are those above x* at p(i).
    """
    for big, small in zip(r.orderings, p.orderings):
        pw, pz = big.pos[ms.w], big.pos[ms.z]
        if abs(pw - pz) != 1:
            return False
        outside = [a for a in big.rank_seq if a not in (ms.w, ms.z)]
        if outside != [ms.to_big(k) for k in small.rank_seq if k != ms.x_star]:
            return False
        above_pair = {ms.to_small(a) for a in big.rank_seq[:min(pw, pz)]}
        if above_pair != set(small.rank_seq[:small.pos[ms.x_star]]):
            return False
    return True


def _check_big(g, ms):
    if g.spec.n != ms.big_spec.n or g.spec.m != ms.big_spec.m:
        raise SpecMismatchError(f"{g} is not over {ms.big_spec}")


def project_merge(g, ms):
    _check_big(g, ms)
    require_strategy_proof(g, "merging needs a strategy-proof rule")
    small = enumerate_np(ms.small_spec)
    choice = tuple(ms.to_small(g.evaluate(merge_representative(p, ms))) for p in small)
    return Rule(small, choice, f"merge[{ms}] of {g}")


def check_merge_well_defined(g, ms):
    """
    Evaluate g at every representative of every small profile and check that
    the collapsed outcome never depends on the representative chosen.
    """
    _check_big(g, ms)
    require_strategy_proof(g, "the well-definedness check needs a strategy-proof rule")
    small = enumerate_np(ms.small_spec)
    checked = 0
    for p in small:
        first = None
        for r in all_representatives(p, ms):
            checked += 1
            outcome = ms.to_small(g.evaluate(r))
            if first is None:
                first = (r, outcome)
            elif outcome != first[1]:
                logger.warning(f"Merged outcome of {g} depends on the representative of "
                               f"{p.to_text(ms.small_spec.labels)}")
                return {
                    'well_defined': False,
                    'witness': {'p': p, 'r': first[0], 's': r, 'outcomes': (first[1], outcome)},
                    'representatives': checked,
                }
    logger.info(f"Checked {checked} representatives of {len(small)} profiles for {g}")
    return {'well_defined': True, 'witness': None, 'representatives': checked}


def merge_report(g, ms):
    """Well-definedness, strategy-proofness and dictator transport of a merge."""
    check = check_merge_well_defined(g, ms)
    merged = project_merge(g, ms)
    sp_preserved = find_manipulation(merged) is None
    dictator_before = find_dictator(g)
    dictator_after = find_dictator(merged)
    return {
        'merge': str(ms),
        'well_defined': check['well_defined'],
        'representatives': check['representatives'],
        'witness': check['witness'],
        'sp_preserved': sp_preserved,
        'full_range': len(merged.range) == ms.small_spec.m,
        'dictator_before': dictator_before,
        'dictator_after': dictator_after,
        'passed': check['well_defined'] and sp_preserved and dictator_before == dictator_after,
    }
