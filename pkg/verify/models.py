"""
Boolean constraint models over rule tables.

Variable x[p, a] is true when the rule selects alternative a at domain profile
p; it is numbered p*m + a + 1 through a pysat IDPool, so the numbering matches
the DIMACS export and the sidecar map.
"""

from dataclasses import dataclass, field
from typing import List, Optional

from pysat.formula import IDPool

from core.exceptions import PreconditionError
from core.models import Domain
from rules.models import Rule

SAT = 'SAT'
UNSAT = 'UNSAT'
CAPPED = 'CAPPED'


def canonical_clause(literals):
    return tuple(sorted(set(literals), key=lambda lit: (abs(lit), lit)))


def variable_pool(domain: Domain):
    pool = IDPool()
    for p in range(len(domain)):
        for a in range(domain.spec.m):
            pool.id((p, a))
    return pool


@dataclass(frozen=True, eq=False)
class ConstraintModel:
    domain: Domain
    pool: IDPool = field(repr=False)
    clauses: tuple = field(repr=False)
    full_range: bool = False
    sp_clauses: int = 0

    @classmethod
    def from_clauses(cls, domain, pool, clauses, full_range=False, sp_clauses=0):
        seen = {}
        for clause in clauses:
            seen.setdefault(canonical_clause(clause), None)
        return cls(domain, pool, tuple(seen), full_range, sp_clauses)

    def __repr__(self):
        return f"ConstraintModel({self.domain!r}, {self.nv} vars, {len(self.clauses)} clauses)"

    @property
    def m(self):
        return self.domain.spec.m

    @property
    def nv(self):
        return len(self.domain) * self.m

    def var(self, p, a):
        if not 0 <= p < len(self.domain) or not 0 <= a < self.m:
            raise PreconditionError(f"no variable for profile {p}, alternative {a}")
        return self.pool.id((p, a))

    def var_for(self, profile, a):
        return self.var(self.domain.position(profile), a)

    def decode(self, var):
        return self.pool.obj(var)

    def with_clauses(self, extra):
        """A copy with query clauses appended; the variable pool is shared."""
        return ConstraintModel.from_clauses(
            self.domain, self.pool, list(self.clauses) + [list(c) for c in extra],
            self.full_range, self.sp_clauses,
        )

    def rule_from_true_vars(self, true_vars, name=''):
        """Decode a solution; returns None unless every profile has exactly one choice."""
        chosen = [[] for _ in range(len(self.domain))]
        for v in true_vars:
            p, a = self.decode(v)
            chosen[p].append(a)
        if any(len(c) != 1 for c in chosen):
            return None
        return Rule(self.domain, tuple(c[0] for c in chosen), name)


@dataclass
class SolverStats:
    decisions: int = 0
    propagations: int = 0
    conflicts: int = 0
    elapsed: float = 0.0


@dataclass
class SolveResult:
    status: str
    solutions: List[Rule] = field(default_factory=list)
    stats: SolverStats = field(default_factory=SolverStats)
    capped_reason: Optional[str] = None

    @property
    def satisfiable(self):
        return bool(self.solutions)
