"""DIMACS export of constraint models and an external cross-check solver."""

import logging

from pysat.formula import CNF
from pysat.solvers import Solver

from core.exceptions import NPVerifyError

from .solver import validate_solution

logger = logging.getLogger(__name__)

EXTERNAL_SOLVER = 'm22'


def export_dimacs(model, sink, varmap_sink=None):
    """
    Write the model as DIMACS CNF to `sink` and, when given, the variable map
    to `varmap_sink` as '<profile> <label> <var>' lines.

    Returns the (profile index, alternative) -> variable map.
    """
    cnf = CNF(from_clauses=[list(c) for c in model.clauses])
    cnf.nv = model.nv
    spec = model.domain.spec
    varmap = {}
    try:
        cnf.to_fp(sink)
        for p, profile in enumerate(model.domain):
            text = profile.to_text(spec.labels)
            for a in range(spec.m):
                var = model.var(p, a)
                varmap[(p, a)] = var
                if varmap_sink is not None:
                    varmap_sink.write(f"{text} {spec.label_of(a)} {var}\n")
    except OSError as exc:
        logger.error(f"Failed writing DIMACS for {model!r}: {exc}")
        raise NPVerifyError(f"cannot write DIMACS output: {exc}") from exc
    logger.info(f"Exported {model!r} as DIMACS")
    return varmap


def solve_externally(model):
    """Solve with Minisat 2.2 via pysat; returns a re-validated Rule or None."""
    with Solver(name=EXTERNAL_SOLVER, bootstrap_with=[list(c) for c in model.clauses]) as solver:
        if not solver.solve():
            logger.info(f"External solver found {model!r} unsatisfiable")
            return None
        true_vars = tuple(lit for lit in solver.get_model() if lit > 0 and lit <= model.nv)
    return validate_solution(model, true_vars)
