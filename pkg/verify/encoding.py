import logging

from pysat.card import CardEnc, EncType

from core.exceptions import PreconditionError

from .models import ConstraintModel, variable_pool

logger = logging.getLogger(__name__)


def exactly_one(literals, pool):
    """One at-least-one clause plus pairwise at-most-one clauses."""
    at_most = CardEnc.atmost(lits=list(literals), bound=1, vpool=pool, encoding=EncType.pairwise)
    return [list(literals)] + at_most.clauses


def build_sp_model(domain, full_range=False):
    """
    Encode "strategy-proof rule on domain" as CNF.

    For each ordered h-variant pair (p, q) and each a, b with b above a in
    p(h), the rule may not pick a at p and b at q. With `full_range`, every
    alternative must be chosen somewhere.
    """
    if not len(domain):
        raise PreconditionError("cannot build a model over an empty domain")
    pool = variable_pool(domain)
    m = domain.spec.m

    def x(p, a):
        return pool.id((p, a))

    clauses = []
    for p in range(len(domain)):
        clauses.extend(exactly_one([x(p, a) for a in range(m)], pool))

    sp = []
    for p, h, q in domain.variant_pairs():
        seq = domain[p].orderings[h - 1].rank_seq
        for k, b in enumerate(seq):
            for a in seq[k + 1:]:
                sp.append([-x(p, a), -x(q, b)])
    clauses.extend(sp)

    if full_range:
        for a in range(m):
            clauses.append([x(p, a) for p in range(len(domain))])

    model = ConstraintModel.from_clauses(domain, pool, clauses, full_range, len(sp))
    logger.info(
        f"Built {model!r}: {len(domain)} exactly-one groups, {len(sp)} strategy-proofness clauses"
        f"{', full range' if full_range else ''}"
    )
    return model
