import logging

from core.exceptions import PreconditionError

from .clones import require_strategy_proof

logger = logging.getLogger(__name__)


def pinnacle_and_top_checks(g, x, individual=1):
    """
    Two consequences of `individual` dictating a full-range strategy-proof g:

    - pinnacle: some profile with x top for `individual` and bottom for all
      others has g = x;
    - top: g = x at every profile where `individual` ranks x top.
    """
    spec = g.spec
    if not 1 <= individual <= spec.n:
        raise PreconditionError(f"individual {individual} outside 1..{spec.n}")
    if not 0 <= x < spec.m:
        raise PreconditionError(f"alternative {x} outside 0..{spec.m - 1}")
    require_strategy_proof(g, "the dictatorship checks need a strategy-proof rule")
    if len(g.range) != spec.m:
        raise PreconditionError(f"{g} does not have full range")

    pinnacles = 0
    pinnacle_profile = None
    top_witness = None
    for k, p in enumerate(g.domain):
        if p.orderings[individual - 1].top != x:
            continue
        chosen = g.choice[k]
        others_bottom = all(o.bottom == x for i, o in enumerate(p.orderings, start=1) if i != individual)
        if others_bottom:
            pinnacles += 1
            if pinnacle_profile is None and chosen == x:
                pinnacle_profile = p
        if top_witness is None and chosen != x:
            top_witness = p

    report = {
        'individual': individual,
        'x': x,
        'pinnacles': pinnacles,
        'pinnacle_holds': pinnacle_profile is not None,
        'pinnacle_profile': pinnacle_profile,
        'top_holds': top_witness is None,
        'top_witness': top_witness,
    }
    report['passed'] = report['pinnacle_holds'] and report['top_holds']
    if not report['passed']:
        logger.info(f"Individual {individual} fails the dictatorship checks of {g} for {spec.label_of(x)}")
    return report
