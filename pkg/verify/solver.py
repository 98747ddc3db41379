"""
All-solutions DPLL over a ConstraintModel.

Counter-based unit propagation (per-clause true/false counts and occurrence
lists), lowest-index branching with True tried first, chronological
backtracking, and a blocking clause after every solution. The trail and the
branching order are deterministic, so solution order is reproducible.

Every solution is re-validated by the rules module before it is returned.
"""

import logging
import time
from collections import deque

from django.conf import settings

from core.exceptions import PreconditionError, SolverSoundnessError
from rules.models import Rule
from rules.predicates import find_manipulation

from .models import CAPPED, SAT, UNSAT, SolveResult, SolverStats

logger = logging.getLogger(__name__)

TIME_CHECK_INTERVAL = 256


class DPLLSolver:

    def __init__(self, nv, clauses):
        self.nv = nv
        self.clauses = []
        self.true_count = []
        self.false_count = []
        # occurrences[lit] lists clause indices; negative literals index from the end
        self.occurrences = [[] for _ in range(2 * nv + 1)]
        self.value = [None] * (nv + 1)
        self.trail = []
        self.pending = deque()
        self.conflict = False
        self.stats = SolverStats()
        for clause in clauses:
            self.add_clause(clause)

    def add_clause(self, clause):
        """Add a clause, counting against the current assignment."""
        c = len(self.clauses)
        self.clauses.append(tuple(clause))
        true_count = false_count = 0
        for lit in clause:
            self.occurrences[lit].append(c)
            value = self.value[abs(lit)]
            if value is None:
                continue
            if value == (lit > 0):
                true_count += 1
            else:
                false_count += 1
        self.true_count.append(true_count)
        self.false_count.append(false_count)
        if true_count == 0:
            if false_count == len(clause):
                self.conflict = True
            elif false_count == len(clause) - 1:
                self.pending.append(c)

    def assign(self, lit):
        var = abs(lit)
        self.value[var] = lit > 0
        self.trail.append(lit)
        for c in self.occurrences[lit]:
            self.true_count[c] += 1
        for c in self.occurrences[-lit]:
            self.false_count[c] += 1
            if self.true_count[c] == 0:
                size = len(self.clauses[c])
                if self.false_count[c] == size:
                    self.conflict = True
                elif self.false_count[c] == size - 1:
                    self.pending.append(c)

    def unassign_to(self, start):
        while len(self.trail) > start:
            lit = self.trail.pop()
            self.value[abs(lit)] = None
            for c in self.occurrences[lit]:
                self.true_count[c] -= 1
            for c in self.occurrences[-lit]:
                self.false_count[c] -= 1
        self.pending.clear()
        self.conflict = False

    def propagate(self):
        while self.pending and not self.conflict:
            c = self.pending.popleft()
            if self.true_count[c]:
                continue
            free = [lit for lit in self.clauses[c] if self.value[abs(lit)] is None]
            if not free:
                self.conflict = True
                break
            if len(free) == 1:
                self.stats.propagations += 1
                self.assign(free[0])
        if self.conflict:
            self.pending.clear()
        return not self.conflict

    def next_unassigned(self, hint):
        for var in range(hint, self.nv + 1):
            if self.value[var] is None:
                return var
        return None

    def solutions(self, time_limit=None):
        """
        Yield each satisfying assignment as a sorted tuple of true variables.

        Raises TimeoutError when `time_limit` seconds pass.
        """
        started = time.monotonic()
        levels = []  # (trail start, decision literal, flipped)
        ok = self.propagate()
        while True:
            if not ok:
                self.stats.conflicts += 1
                while levels and levels[-1][2]:
                    levels.pop()
                if not levels:
                    return
                start, lit, _ = levels.pop()
                self.unassign_to(start)
                levels.append((start, -lit, True))
                self.assign(-lit)
                ok = self.propagate()
                continue

            var = self.next_unassigned(1)
            if var is None:
                positive = tuple(lit for lit in sorted(self.trail, key=abs) if lit > 0)
                yield positive
                self.add_clause([-lit for lit in positive])
                ok = not self.conflict and self.propagate()
                continue

            self.stats.decisions += 1
            if time_limit is not None and self.stats.decisions % TIME_CHECK_INTERVAL == 0:
                if time.monotonic() - started > time_limit:
                    raise TimeoutError(f"time limit of {time_limit}s reached")
            levels.append((len(self.trail), var, False))
            self.assign(var)
            ok = self.propagate()


def validate_solution(model, true_vars):
    """Re-check a solver answer independently of the solver; returns the Rule."""
    rule = model.rule_from_true_vars(true_vars)
    if rule is None:
        raise SolverSoundnessError("solution does not choose exactly one alternative per profile")
    chosen = set(true_vars)
    for clause in model.clauses:
        if not any((lit in chosen) if lit > 0 else (-lit not in chosen) for lit in clause):
            raise SolverSoundnessError(f"solution violates clause {clause}")
    witness = find_manipulation(rule)
    if witness is not None:
        raise SolverSoundnessError(f"solution is manipulable: {witness.describe(model.domain.spec)}")
    if model.full_range and len(rule.range) != model.m:
        raise SolverSoundnessError(f"solution misses alternatives: range {sorted(rule.range)}")
    return rule


def _solve(model, cap, time_limit, first_only):
    if cap is None:
        cap = settings.NPV_SOLUTION_CAP
    if time_limit is None:
        time_limit = settings.NPV_TIME_LIMIT
    if cap < 1:
        raise PreconditionError(f"solution cap must be at least 1, got {cap}")

    solver = DPLLSolver(model.nv, model.clauses)
    started = time.monotonic()
    solutions = []
    status = None
    reason = None
    try:
        for true_vars in solver.solutions(time_limit):
            rule = validate_solution(model, true_vars)
            solutions.append(Rule(rule.domain, rule.choice, f"solution-{len(solutions) + 1}"))
            if first_only:
                status = SAT
                break
            if len(solutions) >= cap:
                status, reason = CAPPED, f"solution cap {cap} reached"
                break
    except TimeoutError as exc:
        status, reason = CAPPED, str(exc)
    if status is None:
        status = SAT if solutions else UNSAT

    stats = solver.stats
    stats.elapsed = time.monotonic() - started
    logger.info(
        f"Solved {model!r}: {status}, {len(solutions)} solutions, {stats.decisions} decisions, "
        f"{stats.propagations} propagations, {stats.conflicts} conflicts in {stats.elapsed:.2f}s"
    )
    if reason:
        logger.warning(f"Search on {model!r} stopped early: {reason}")
    return SolveResult(status, solutions, stats, reason)


def enumerate_solutions(model, cap=None, time_limit=None):
    """All solutions up to `cap`, in deterministic order."""
    return _solve(model, cap, time_limit, first_only=False)


def check_satisfiable(model, time_limit=None):
    """SAT with one witness, or UNSAT; CAPPED only on time out."""
    return _solve(model, 1, time_limit, first_only=True)
