import logging
from dataclasses import dataclass
from typing import Optional

from core.exceptions import RuleNotStrategyProof
from rules.predicates import find_manipulation

from .oracle import fibers

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EquivalenceResult:
    holds: bool
    s_set: frozenset
    fibers: int
    pair: Optional[tuple] = None


def check_equivalence(g):
    """
    A strategy-proof rule with range S must be constant on every set of profiles
    sharing their restriction to S. Reports the first pair that is not.
    """
    witness = find_manipulation(g)
    if witness is not None:
        raise RuleNotStrategyProof(witness, f"{g} is manipulable; the equivalence check needs a strategy-proof rule")
    s_set = g.range
    groups = fibers(g.domain, s_set)
    for members in groups.values():
        first = members[0]
        for k in members[1:]:
            if g.choice[k] != g.choice[first]:
                logger.warning(f"{g} differs inside a fiber of {g.spec.labels_for(s_set)}")
                return EquivalenceResult(False, s_set, len(groups), (g.domain[first], g.domain[k]))
    return EquivalenceResult(True, s_set, len(groups))
