"""
Concrete rules: dictators and simple reference rules, the majority rule on the
superset domain D, the S-top rule with Pareto override on L(X)^N, and the lift
of a restricted-range rule to the domain over its range.
"""

import logging
import re
from functools import lru_cache
from itertools import product

from core.enumeration import enumerate_full, enumerate_np, majority_prefers
from core.exceptions import ConstructionError, PreconditionError
from core.models import Domain, DomainSpec, Profile, all_orderings

from .models import Rule

logger = logging.getLogger(__name__)


def _check_individual(i, domain):
    if not 1 <= i <= domain.spec.n:
        raise PreconditionError(f"individual {i} outside 1..{domain.spec.n}")


def dictator_rule(i, domain):
    _check_individual(i, domain)
    return Rule(domain, tuple(p.orderings[i - 1].top for p in domain), f"dictator-{i}")


def anti_dictator_rule(i, domain):
    """Selects individual i's bottom-ranked alternative."""
    _check_individual(i, domain)
    return Rule(domain, tuple(p.orderings[i - 1].bottom for p in domain), f"anti-dictator-{i}")


def constant_rule(a, domain):
    label = domain.spec.label_of(a)
    return Rule(domain, (a,) * len(domain), f"constant-{label}")


def plurality_rule(domain):
    """Most first places; ties go to the lowest alternative index."""
    m = domain.spec.m
    choice = []
    for p in domain:
        counts = [0] * m
        for o in p.orderings:
            counts[o.top] += 1
        choice.append(max(range(m), key=lambda a: (counts[a], -a)))
    return Rule(domain, tuple(choice), 'plurality')


@lru_cache(maxsize=4)
def majority_superset_rule(n):
    """
    The superset domain D = NP(n,3) plus every profile with z on top for all,
    and the rule that picks the x-versus-y majority winner on NP and z elsewhere.

    Strategy-proof, full-range and non-dictatorial on D.
    """
    if n % 2 == 0:
        raise PreconditionError(f"majority between x and y needs odd n, got n={n}")
    spec = DomainSpec(n, 3, 'xyz')
    x, y, z = 0, 1, 2
    z_top = [o for o in all_orderings(3) if o.top == z]
    extra = [Profile(combo) for combo in product(z_top, repeat=n)]
    domain = Domain.from_profiles(spec, list(enumerate_np(spec)) + extra, name=f"D{spec}")
    choice = tuple(
        (x if majority_prefers(p, x, y) else y) if p.is_np_member() else z
        for p in domain
    )
    logger.info(f"Built majority rule on {domain!r} ({len(extra)} unanimous-z profiles)")
    return domain, Rule(domain, choice, 'majority-superset')


def s_top_dominator_rule(s_set, spec):
    """
    On L(X)^N: individual 1's top within S, replaced by the alternative that
    Pareto-dominates it when exactly one does.
    """
    s_set = frozenset(s_set)
    if len(s_set) != 3:
        raise PreconditionError(f"S must hold three alternatives, got {sorted(s_set)}")
    if spec.m <= 3:
        raise PreconditionError(f"the rule needs m > 3, got m={spec.m}")
    domain = enumerate_full(spec)
    alternatives = range(spec.m)
    choice = []
    for u in domain:
        psi = u.orderings[0].top_within(s_set)
        dominators = [x for x in alternatives if x != psi and u.pareto_dominates(x, psi)]
        choice.append(dominators[0] if len(dominators) == 1 else psi)
    return Rule(domain, tuple(choice), f"s-top-dominator-{spec.labels_for(s_set)}")


def restricted_range_lift(g_star, order):
    """
    Lift g_star (on NP(n,m), range S) to a rule on NP(n,|S|) over S.

    Each small profile u is embedded as u*: the alternatives outside S sit in
    `order` atop individual 1's ordering and in reverse at the bottom of every
    other ordering; the lifted rule selects g_star(u*).
    """
    big = g_star.spec
    s_set = g_star.range
    outside = tuple(order)
    if len(s_set) < 3:
        raise PreconditionError(f"range must hold at least three alternatives, got {len(s_set)}")
    if len(set(outside)) != len(outside) or set(outside) != set(range(big.m)) - s_set:
        raise PreconditionError(f"order must list X minus the range exactly once, got {outside}")
    members = sorted(s_set)
    to_small = {a: k for k, a in enumerate(members)}
    small_spec = DomainSpec(big.n, len(members), big.labels_for(members))
    small_domain = enumerate_np(small_spec)
    tail = outside[::-1]
    choice = []
    for u in small_domain:
        sequences = [tuple(members[a] for a in o.rank_seq) for o in u.orderings]
        lifted = Profile.of(outside + sequences[0], *(seq + tail for seq in sequences[1:]))
        if not lifted.is_np_member():
            raise ConstructionError(f"embedding of {u.to_text(small_spec.labels)} left NP")
        k = g_star.domain.find(lifted)
        if k is None:
            raise ConstructionError(
                f"{lifted.to_text(big.labels)} is not in the domain of {g_star}"
            )
        choice.append(to_small[g_star.choice[k]])
    order_text = ''.join(big.labels[a] for a in outside)
    return Rule(small_domain, tuple(choice), f"lift[{order_text}] of {g_star}")


NAMED_RULE = re.compile(r'^(dictator|anti-dictator)-(\d+)$|^constant-(.)$|^plurality$')


def named_rule(name, domain):
    """Build one of the reference rules by name, e.g. 'dictator-2' or 'constant-a'."""
    match = NAMED_RULE.match(name)
    if match is None:
        raise PreconditionError(
            f"unknown rule {name!r}; expected dictator-<i>, anti-dictator-<i>, constant-<label> or plurality"
        )
    kind, individual, label = match.groups()
    if kind == 'dictator':
        return dictator_rule(int(individual), domain)
    if kind == 'anti-dictator':
        return anti_dictator_rule(int(individual), domain)
    if label is not None:
        return constant_rule(domain.spec.index_of(label), domain)
    return plurality_rule(domain)
