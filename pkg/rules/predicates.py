"""
Rule-level predicates: manipulation, range, dictatorship, UBM and the
adjacent-swap consequence of strategy-proofness.

Every find_* function scans ordered h-variant pairs in canonical order
(profile index, individual, variant index) and returns the first witness.
"""

import logging
from typing import Optional

from core.exceptions import UndefinedOnDomain

from .models import AdjacentSwapViolation, ManipulationWitness, Rule, UbmViolation

logger = logging.getLogger(__name__)


def evaluate(g: Rule, profile):
    return g.evaluate(profile)


def find_manipulation(g: Rule) -> Optional[ManipulationWitness]:
    domain, choice = g.domain, g.choice
    for p, h, q in domain.variant_pairs():
        sincere, manipulated = choice[p], choice[q]
        if sincere != manipulated and domain[p].orderings[h - 1].prefers(manipulated, sincere):
            return ManipulationWitness(domain[p], h, domain[q], sincere, manipulated)
    return None


def is_strategy_proof(g: Rule):
    return find_manipulation(g) is None


def range_of(g: Rule):
    return g.range


def find_dictator(g: Rule) -> Optional[int]:
    """Smallest i whose top within Range(g) is selected at every profile."""
    rng = g.range
    for i in range(1, g.spec.n + 1):
        if all(g.choice[k] == p.orderings[i - 1].top_within(rng) for k, p in enumerate(g.domain)):
            return i
    return None


def find_ubm_violation(g: Rule) -> Optional[UbmViolation]:
    if not g.domain.is_full:
        raise UndefinedOnDomain(
            f"universally beneficial manipulation is defined on L(X)^N only, not on {g.domain!r}"
        )
    domain, choice = g.domain, g.choice
    for p, h, q in domain.variant_pairs():
        before, after = choice[p], choice[q]
        if before == after:
            continue
        u = domain[p]
        if not u.orderings[h - 1].prefers(after, before):
            continue
        for j, ordering in enumerate(u.orderings, start=1):
            if not ordering.prefers(after, before):
                return UbmViolation(u, h, domain[q], j, before, after)
    return None


def is_ubm(g: Rule):
    return find_ubm_violation(g) is None


def adjacent_swap(first, second):
    """(a, b) if `second` is `first` with adjacent a > b switched, else None."""
    a_seq, b_seq = first.rank_seq, second.rank_seq
    for k in range(len(a_seq) - 1):
        if a_seq[k] != b_seq[k]:
            if (a_seq[k] == b_seq[k + 1] and a_seq[k + 1] == b_seq[k]
                    and a_seq[k + 2:] == b_seq[k + 2:]):
                return a_seq[k], a_seq[k + 1]
            return None
    return None


def find_adjacent_swap_violation(g: Rule) -> Optional[AdjacentSwapViolation]:
    """
    Switching adjacent a > b in one ordering may only move the outcome from a
    to b; any other change is reported.
    """
    domain, choice = g.domain, g.choice
    for p, h, q in domain.variant_pairs():
        swapped = adjacent_swap(domain[p].orderings[h - 1], domain[q].orderings[h - 1])
        if swapped is None:
            continue
        before, after = choice[p], choice[q]
        if before == after or (before, after) == swapped:
            continue
        return AdjacentSwapViolation(domain[p], h, domain[q], swapped, before, after)
    return None


def rule_report(g: Rule):
    witness = find_manipulation(g)
    dictator = find_dictator(g)
    logger.info(
        f"Checked {g}: strategy_proof={witness is None}, "
        f"range={g.spec.labels_for(g.range)}, dictator={dictator}"
    )
    return {
        'rule': str(g),
        'domain': g.domain.name,
        'profiles': len(g.domain),
        'strategy_proof': witness is None,
        'range': g.range,
        'full_range': len(g.range) == g.spec.m,
        'dictator': dictator,
        'witness': witness,
    }
