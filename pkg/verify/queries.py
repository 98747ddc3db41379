"""
Solver-backed checks: the basis enumeration, decisiveness queries, and the
range and singleton claims about voting paradox profiles.
"""

import logging

from core.enumeration import enumerate_np, enumerate_vp, is_voting_paradox
from core.exceptions import PreconditionError
from rules.predicates import find_dictator

from .encoding import build_sp_model
from .models import CAPPED, SAT, UNSAT
from .solver import check_satisfiable, enumerate_solutions

logger = logging.getLogger(__name__)


def verify_basis(spec, cap=None, time_limit=None, override_caps=False):
    """
    Enumerate every full-range strategy-proof rule on NP(spec) and check that
    each is a dictatorship, one per individual. For odd n also checks that each
    solution restricted to the voting paradox profiles keeps full range and the
    same dictator.
    """
    spec.require_at_least_three()
    domain = enumerate_np(spec, override_caps)
    model = build_sp_model(domain, full_range=True)
    result = enumerate_solutions(model, cap, time_limit)

    vp = enumerate_vp(spec, override_caps) if spec.n % 2 and spec.m >= 3 else None
    dictators = []
    witness = None
    vp_corollary = None if vp is None else True
    for g in result.solutions:
        dictator = find_dictator(g)
        dictators.append(dictator)
        if dictator is None and witness is None:
            witness = g
        if vp is not None:
            on_vp = g.restrict_to(vp)
            if len(on_vp.range) != spec.m or find_dictator(on_vp) != dictator:
                logger.warning(f"{g} restricted to {vp!r} breaks the dictatorship corollary")
                vp_corollary = False

    all_dictatorial = bool(dictators) and None not in dictators
    distinct = sorted(set(d for d in dictators if d is not None))
    passed = (
        result.status == SAT
        and all_dictatorial
        and len(dictators) == spec.n
        and distinct == list(range(1, spec.n + 1))
        and vp_corollary is not False
    )
    if not passed:
        logger.error(f"Basis check on NP{spec} failed: status={result.status}, dictators={dictators}")
    return {
        'profiles': len(domain),
        'variables': model.nv,
        'clauses': len(model.clauses),
        'status': result.status,
        'capped_reason': result.capped_reason,
        'solutions': len(result.solutions),
        'dictators': dictators,
        'all_dictatorial': all_dictatorial,
        'vp_corollary': vp_corollary,
        'witness': witness,
        'stats': result.stats,
        'passed': passed,
    }


def decisive_individuals(u, alpha, beta):
    return [j for j, o in enumerate(u.orderings, start=1) if o.top == alpha and o.bottom == beta]


def decisiveness_query(model, seed, target, time_limit=None):
    """
    Given g(u) = alpha at a voting paradox profile u where some j ranks alpha
    top and beta bottom, ask whether g can select beta at v where j still ranks
    alpha above beta. UNSAT confirms j is decisive for alpha against beta at v.
    """
    (u, alpha), (v, beta) = seed, target
    if model.domain.spec.n % 2 == 0 or u not in model.domain:
        raise PreconditionError("the seed profile must belong to the model's domain and n must be odd")
    if not is_voting_paradox(u):
        raise PreconditionError(f"{u.to_text(model.domain.spec.labels)} is not a voting paradox profile")
    candidates = [j for j in decisive_individuals(u, alpha, beta) if v.ordering(j).prefers(alpha, beta)]
    if not candidates:
        raise PreconditionError("no individual ranks alpha top and beta bottom at u and alpha above beta at v")
    query = model.with_clauses([[model.var_for(u, alpha)], [model.var_for(v, beta)]])
    return check_satisfiable(query, time_limit)


def decisiveness_sweep(spec, time_limit=None, override_caps=False):
    """Run every decisiveness query whose hypothesis holds; all should be UNSAT."""
    spec.require_at_least_three()
    domain = enumerate_np(spec, override_caps)
    vp = enumerate_vp(spec, override_caps)
    model = build_sp_model(domain, full_range=True)
    queries = unsat = capped = 0
    first_sat = None
    for u in vp:
        for j, ordering in enumerate(u.orderings, start=1):
            alpha, beta = ordering.top, ordering.bottom
            for v in domain:
                if not v.orderings[j - 1].prefers(alpha, beta):
                    continue
                result = decisiveness_query(model, (u, alpha), (v, beta), time_limit)
                queries += 1
                if result.status == UNSAT:
                    unsat += 1
                elif result.status == CAPPED:
                    capped += 1
                elif first_sat is None:
                    first_sat = {'u': u, 'individual': j, 'alpha': alpha, 'v': v, 'beta': beta}
        logger.info(f"Decisiveness queries from {u.to_text(spec.labels)}: {unsat}/{queries} UNSAT so far")
    return {
        'queries': queries,
        'unsat': unsat,
        'capped': capped,
        'first_sat': first_sat,
        'passed': queries > 0 and unsat == queries,
    }


def vp_range_check(spec, excluded, full_range=True, time_limit=None, override_caps=False):
    """Can a strategy-proof rule avoid `excluded` on every voting paradox profile?"""
    domain = enumerate_np(spec, override_caps)
    vp = enumerate_vp(spec, override_caps)
    model = build_sp_model(domain, full_range=full_range)
    query = model.with_clauses([[-model.var_for(p, excluded)] for p in vp])
    result = check_satisfiable(query, time_limit)
    logger.info(
        f"Avoiding {spec.labels[excluded]} on {vp!r} (full_range={full_range}): {result.status}"
    )
    return result


def vp_singleton_check(spec, a, time_limit=None, override_caps=False):
    """
    Can a strategy-proof rule select `a` at every voting paradox profile but
    something else somewhere in NP? UNSAT confirms singleton range carries over.
    """
    domain = enumerate_np(spec, override_caps)
    vp = enumerate_vp(spec, override_caps)
    model = build_sp_model(domain, full_range=False)
    extra = [[model.var_for(p, a)] for p in vp]
    extra.append([-model.var(p, a) for p in range(len(domain))])
    return check_satisfiable(model.with_clauses(extra), time_limit)
