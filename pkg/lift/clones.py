"""
Clone lifting between NP(n,3) and NP(n+1,3).

A rule on n+1 individuals projects to n individuals by duplicating the last
(or the first) ordering of every small profile and evaluating the big rule
there.
"""

import logging

from core.enumeration import enumerate_np
from core.exceptions import PreconditionError, RuleNotStrategyProof
from core.models import Ordering, Profile
from rules.models import Rule
from rules.predicates import find_dictator, find_manipulation

logger = logging.getLogger(__name__)

LAST = 'last'
FIRST = 'first'


def _require_np(p):
    if not p.is_np_member():
        raise PreconditionError("only NP profiles can be cloned")


def clone_last(p):
    _require_np(p)
    return Profile(p.orderings + (p.orderings[-1],))


def clone_first(p):
    _require_np(p)
    return Profile((p.orderings[0],) + p.orderings)


CLONES = {LAST: clone_last, FIRST: clone_first}


def require_strategy_proof(g, purpose):
    witness = find_manipulation(g)
    if witness is not None:
        raise RuleNotStrategyProof(witness, f"{g} is manipulable ({witness.describe(g.spec)}); {purpose}")


def project_clone(g, which=LAST):
    """The rule on NP(n,m) given by g at cloned profiles."""
    if which not in CLONES:
        raise PreconditionError(f"which must be {LAST!r} or {FIRST!r}, got {which!r}")
    if g.spec.n < 2:
        raise PreconditionError("projection needs at least two individuals")
    require_strategy_proof(g, "clone projection needs a strategy-proof rule")
    clone = CLONES[which]
    small = enumerate_np(g.spec.with_n(g.spec.n - 1))
    choice = tuple(g.evaluate(clone(p)) for p in small)
    return Rule(small, choice, f"{which}-projection of {g}")


def expected_projection_dictator(dictator, n, which):
    """Where the dictator of an (n+1)-individual rule lands after projection."""
    if dictator is None:
        return None
    return min(dictator, n) if which == LAST else max(dictator - 1, 1)


def check_clone_transport(g):
    """Project both ways and compare each dictator with the transported one."""
    n = g.spec.n - 1
    dictator = find_dictator(g)
    projections = []
    for which in (LAST, FIRST):
        h = project_clone(g, which)
        actual = find_dictator(h)
        expected = expected_projection_dictator(dictator, n, which)
        projections.append({
            'which': which,
            'strategy_proof': find_manipulation(h) is None,
            'full_range': len(h.range) == h.spec.m,
            'dictator': actual,
            'expected_dictator': expected,
            'matches': actual == expected,
        })
    passed = all(p['strategy_proof'] and p['matches'] for p in projections)
    if not passed:
        logger.error(f"Clone transport failed for {g}: {projections}")
    return {'rule': str(g), 'dictator': dictator, 'projections': projections, 'passed': passed}


def check_clone_conflict(g):
    """
    Rule out the split where the last-clone projection is dictated by n and the
    first-clone projection by 1.

    At u with individuals 1..n-1 ranking x > y > z and individuals n, n+1
    ranking z > y > x, the first split predicts z and the second predicts x,
    so g(u) must disagree with one of them.
    """
    spec = g.spec
    if spec.m != 3:
        raise PreconditionError(f"the clone conflict check needs m = 3, got m={spec.m}")
    if spec.n < 3:
        raise PreconditionError(f"the clone conflict check needs at least three individuals, got n={spec.n}")
    require_strategy_proof(g, "the clone conflict check needs a strategy-proof rule")
    if len(g.range) != spec.m:
        raise PreconditionError(f"{g} does not have full range")

    n = spec.n - 1
    last_rule, first_rule = project_clone(g, LAST), project_clone(g, FIRST)
    last_dictator, first_dictator = find_dictator(last_rule), find_dictator(first_rule)
    hypothesis_holds = last_dictator == n and first_dictator == 1

    forward, backward = Ordering((0, 1, 2)), Ordering((2, 1, 0))
    u = Profile((forward,) * (n - 1) + (backward,) * 2)
    outcome = g.evaluate(u)
    last_prediction = first_prediction = contradiction = None
    if hypothesis_holds:
        # u is clone_last of u minus its last ordering and clone_first of u minus its first
        last_prediction = u.orderings[n - 1].top_within(last_rule.range)
        first_prediction = u.orderings[1].top_within(first_rule.range)
        contradiction = outcome != last_prediction or outcome != first_prediction
    passes = not hypothesis_holds or bool(contradiction)
    logger.info(
        f"Clone conflict check on {g}: projections dictated by {last_dictator} and {first_dictator}, "
        f"passes={passes}"
    )
    return {
        'rule': str(g),
        'last_dictator': last_dictator,
        'first_dictator': first_dictator,
        'hypothesis_holds': hypothesis_holds,
        'u': u,
        'outcome': outcome,
        'last_prediction': last_prediction,
        'first_prediction': first_prediction,
        'contradiction': contradiction,
        'passes': passes,
    }
