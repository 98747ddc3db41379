import logging
from itertools import permutations

from core.exceptions import PreconditionError
from rules.constructions import restricted_range_lift
from rules.predicates import find_dictator, find_manipulation

from .clones import require_strategy_proof

logger = logging.getLogger(__name__)


def check_restricted_lift(g_star):
    """
    Lift g_star over every ordering of the alternatives outside its range and
    check that all lifts agree, are strategy-proof and are dictatorial.
    """
    require_strategy_proof(g_star, "lifting needs a strategy-proof rule")
    outside = sorted(set(range(g_star.spec.m)) - g_star.range)
    if not outside:
        raise PreconditionError(f"{g_star} already has full range")
    lifts = [restricted_range_lift(g_star, order) for order in permutations(outside)]
    base = lifts[0]
    dictators = [find_dictator(h) for h in lifts]
    report = {
        'rule': str(g_star),
        'range': g_star.range,
        'orders': len(lifts),
        'profiles': len(base.domain),
        'strategy_proof': all(find_manipulation(h) is None for h in lifts),
        'order_invariant': all(h.choice == base.choice for h in lifts[1:]),
        'dictator': dictators[0] if len(set(dictators)) == 1 else None,
    }
    report['passed'] = report['strategy_proof'] and report['order_invariant'] and report['dictator'] is not None
    logger.info(f"Lifted {g_star} over {len(lifts)} orders: dictator={report['dictator']}")
    return report
