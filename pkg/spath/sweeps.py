"""
Fiber sweeps: run the constructive builder and the BFS oracle over every pair
of a fiber (or over seeded samples) and count disagreements.
"""

import logging
import random
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from core.enumeration import enumerate_np
from core.exceptions import PathConstructionError, PreconditionError

from .builders import assemble_spath, staged_pivot_path
from .models import validate_spath
from .oracle import fiber_components, fibers

logger = logging.getLogger(__name__)


@dataclass
class SweepReport:
    spec: object
    s_set: frozenset
    fibers: int
    pairs_checked: int = 0
    builder_failures: int = 0
    unreachable: int = 0
    disagreements: int = 0
    longest_path: int = 0
    first_failure: Optional[dict] = None

    @property
    def passed(self):
        return self.builder_failures == 0 and self.disagreements == 0


def sweep_fibers(spec, s_set, sample=None, seed=0, override_caps=False):
    """
    Check builder/oracle agreement on S-paths of NP(spec).

    With `sample=None` every ordered pair of every fiber is checked; otherwise
    `sample` pairs are drawn by picking a uniform profile and a uniform partner
    from its fiber.
    """
    if spec.n < 3:
        raise PreconditionError(f"S-paths need at least three individuals, got n={spec.n}")
    s_set = frozenset(s_set)
    domain = enumerate_np(spec, override_caps)
    outside = sorted(set(range(spec.m)) - s_set)
    groups = fibers(domain, s_set)
    fiber_of = {k: key for key, members in groups.items() for k in members}
    report = SweepReport(spec, s_set, len(groups))

    walks = {}
    components = {}

    def walk(k):
        if k not in walks:
            walks[k] = staged_pivot_path(domain[k], outside)
        return walks[k]

    def component(k):
        key = fiber_of[k]
        if key not in components:
            components[key] = fiber_components(domain, groups[key])
        return components[key][k]

    if sample is None:
        pairs = [(a, b) for members in groups.values() for a in members for b in members]
    else:
        rng = random.Random(seed)
        pairs = []
        for _ in range(sample):
            a = rng.randrange(len(domain))
            pairs.append((a, rng.choice(groups[fiber_of[a]])))

    for a, b in pairs:
        u, v = domain[a], domain[b]
        reason = None
        try:
            path = assemble_spath(s_set, walk(a), walk(b))
            result = validate_spath(path, u, v)
            if result:
                report.longest_path = max(report.longest_path, len(path))
            else:
                reason = f"step {result.step}: {result.violation}"
        except PathConstructionError as exc:
            reason = str(exc)
        built = reason is None
        reachable = component(a) == component(b)
        report.pairs_checked += 1
        if not built:
            report.builder_failures += 1
        if not reachable:
            report.unreachable += 1
        if built != reachable:
            report.disagreements += 1
        if (not built or built != reachable) and report.first_failure is None:
            report.first_failure = {'u': u, 'v': v, 'reason': reason or 'oracle found no path'}

    logger.info(
        f"Swept S={spec.labels_for(s_set) or '{}'} on NP{spec}: {report.pairs_checked} pairs, "
        f"{report.builder_failures} builder failures, {report.disagreements} disagreements"
    )
    return report


def all_subsets(m):
    for size in range(m + 1):
        yield from (frozenset(c) for c in combinations(range(m), size))


def sweep_all_subsets(spec, sample=None, seed=0, override_caps=False):
    return [sweep_fibers(spec, s_set, sample, seed, override_caps) for s_set in all_subsets(spec.m)]
