"""
Batch commands behind `manage.py npcheck`.

Each handler returns (passed, result) where result is already shaped by a
serializer; `run` wraps it in the report envelope and renders it.
"""

import logging
from dataclasses import dataclass
from math import factorial

from django.conf import settings
from rest_framework.renderers import JSONRenderer

import npverify
from core.enumeration import count_np_inclusion_exclusion, enumerate_np, enumerate_vp
from core.exceptions import PathConstructionError, PreconditionError
from core.models import DomainSpec
from core.serializers import DomainStatsSerializer
from lift.clones import check_clone_conflict, check_clone_transport
from lift.merge import merge_report
from lift.models import MergeSpec
from lift.restricted import check_restricted_lift
from lift.serializers import LiftReportSerializer
from rules.constructions import (
    dictator_rule, majority_superset_rule, named_rule, plurality_rule, s_top_dominator_rule,
)
from rules.predicates import find_manipulation, find_ubm_violation, rule_report
from rules.serializers import RuleReportSerializer
from rules.storage import load_rule
from spath.builders import build_spath
from spath.equivalence import check_equivalence
from spath.models import PathValidation, validate_spath
from spath.oracle import bfs_spath_oracle
from spath.serializers import SinglePathReportSerializer
from spath.storage import dump_spath
from spath.sweeps import all_subsets, sweep_fibers
from verify.dimacs import export_dimacs, solve_externally
from verify.encoding import build_sp_model
from verify.models import CAPPED, SAT, UNSAT
from verify.queries import decisiveness_sweep, verify_basis, vp_range_check, vp_singleton_check
from verify.serializers import BasisReportSerializer, ExportReportSerializer
from verify.solver import enumerate_solutions

from .config import JSON
from .serializers import (
    DecisiveReportSerializer, EnvelopeSerializer, MergeSweepSerializer, STopDemoSerializer,
    SweepSetSerializer,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2

# NP domains up to this size are swept exhaustively; larger ones are sampled.
EXHAUSTIVE_SWEEP_LIMIT = 1000

DEMO_RULES = ('majority-superset', 's-top-dominator', 'plurality')


class UsageError(PreconditionError):
    """Option combinations a command cannot run with."""


@dataclass(frozen=True)
class RunOutcome:
    exit_status: int
    report: dict
    rendered: str


def _context(spec, **extra):
    return {'spec': spec, **extra}


def _require_stretch(config, reason):
    if not config.stretch:
        raise UsageError(f"{reason} is a minutes-scale run; pass --stretch")


def _load_input_rule(config):
    domain = enumerate_np(config.spec, config.override_caps)
    if config.rule_file:
        try:
            with open(config.rule_file, encoding='utf-8') as source:
                return load_rule(source, domain, name=config.rule_file)
        except OSError as exc:
            raise UsageError(f"cannot read rule file: {exc}") from exc
    if config.rule:
        return named_rule(config.rule, domain)
    raise UsageError("give --rule or --rule-file")


def domain_stats(config):
    spec = config.spec
    np_count = len(enumerate_np(spec, config.override_caps))
    oracle = count_np_inclusion_exclusion(spec.n, spec.m)
    vp = len(enumerate_vp(spec, config.override_caps)) if spec.n % 2 and spec.m >= 3 else None
    stats = {
        'orderings': factorial(spec.m),
        'total': spec.profile_count,
        'np': np_count,
        'np_oracle': oracle,
        'vp': vp,
        'oracle_agrees': oracle == np_count,
    }
    return stats['oracle_agrees'], DomainStatsSerializer(stats).data


def check_rule(config):
    report = rule_report(_load_input_rule(config))
    return report['strategy_proof'], RuleReportSerializer(report, context=_context(config.spec)).data


def find_dictator_command(config):
    report = rule_report(_load_input_rule(config))
    return report['dictator'] is not None, RuleReportSerializer(report, context=_context(config.spec)).data


def spath_command(config):
    spec = config.spec
    if config.from_profile is not None:
        return _single_path(config)
    domain = enumerate_np(spec, config.override_caps)
    sample = None if len(domain) <= EXHAUSTIVE_SWEEP_LIMIT else settings.NPV_SAMPLE_PAIRS
    subsets = [config.s_set] if config.s_set is not None else list(all_subsets(spec.m))
    reports = [sweep_fibers(spec, s_set, sample, config.seed, config.override_caps) for s_set in subsets]
    result = {
        'mode': 'exhaustive' if sample is None else 'sampled',
        'sample': sample,
        'seed': config.seed,
        'reports': reports,
    }
    passed = all(r.passed for r in reports)
    return passed, SweepSetSerializer(result, context=_context(spec)).data


def _single_path(config):
    spec = config.spec
    u, v = config.from_profile, config.to_profile
    s_set = config.s_set if config.s_set is not None else frozenset()
    try:
        path = build_spath(u, v, s_set)
    except PathConstructionError as exc:
        logger.error(f"No S-path built from {u.to_text(spec.labels)} to {v.to_text(spec.labels)}: {exc}")
        path, validation = None, PathValidation(False, str(exc))
    else:
        validation = validate_spath(path, u, v)
    oracle = bfs_spath_oracle(u, v, s_set, enumerate_np(spec, config.override_caps))
    if path is not None and config.path_out:
        with open(config.path_out, 'w', encoding='utf-8') as sink:
            dump_spath(path, spec, sink)
    result = {
        's_set': s_set,
        'length': len(path) if path is not None else 0,
        'oracle_length': len(oracle) if oracle is not None else None,
        'validation': validation,
        'steps': path.steps if path is not None else (),
    }
    passed = bool(validation) and oracle is not None
    return passed, SinglePathReportSerializer(result, context=_context(spec)).data


def verify_basis_command(config):
    spec = config.spec
    if spec.n > 3 or spec.m > 3:
        _require_stretch(config, f"verify-basis on NP{spec}")
    report = verify_basis(spec, config.solution_cap, config.time_limit, config.override_caps)
    return report['passed'], BasisReportSerializer(report, context=_context(spec)).data


def verify_lift(config):
    """Clone projections of every full-range strategy-proof rule (or of the dictators)."""
    spec = config.spec
    if spec.m != 3 or spec.n < 3:
        raise UsageError(f"verify-lift works on NP(n,3) with n >= 3, got {spec}")
    domain = enumerate_np(spec, config.override_caps)
    solver_status = None
    if spec.n <= 3 or config.stretch:
        result = enumerate_solutions(build_sp_model(domain, full_range=True), config.solution_cap, config.time_limit)
        rules, source, solver_status = result.solutions, 'solver', result.status
    else:
        rules, source = [dictator_rule(i, domain) for i in range(1, spec.n + 1)], 'dictators'
    transports = [check_clone_transport(g) for g in rules]
    conflicts = [check_clone_conflict(g) for g in rules]
    report = {
        'source': source,
        'rules': len(rules),
        'solver_status': solver_status,
        'transports': transports,
        'conflicts': conflicts,
    }
    passed = (
        bool(rules)
        and solver_status != CAPPED
        and all(t['passed'] for t in transports)
        and all(not c['hypothesis_holds'] and c['passes'] for c in conflicts)
    )
    return passed, LiftReportSerializer(report, context=_context(spec)).data


def verify_merge(config):
    spec = config.spec
    if not config.merge:
        raise UsageError("verify-merge needs --merge w,z=x*")
    if spec.m > 4:
        _require_stretch(config, f"verify-merge on NP{spec}")
    ms = MergeSpec.parse(config.merge, spec)
    domain = enumerate_np(spec, config.override_caps)
    reports = [merge_report(dictator_rule(i, domain), ms) for i in range(1, spec.n + 1)]
    context = _context(spec, big_spec=spec, small_spec=ms.small_spec)
    data = MergeSweepSerializer({'merge': str(ms), 'rules': reports}, context=context).data
    return all(r['passed'] for r in reports), data


def decisive_sweep(config):
    spec = config.spec
    if spec.m != 3 or spec.n % 2 == 0:
        raise UsageError(f"decisive-sweep needs odd n and m = 3, got {spec}")
    if spec.n > 3:
        _require_stretch(config, f"decisive-sweep on NP{spec}")
    sweep = decisiveness_sweep(spec, config.time_limit, config.override_caps)
    vp_range = [
        {'alternative': spec.label_of(a), 'status': vp_range_check(spec, a, True, config.time_limit).status}
        for a in range(spec.m)
    ]
    vp_singleton = [
        {'alternative': spec.label_of(a), 'status': vp_singleton_check(spec, a, config.time_limit).status}
        for a in range(spec.m)
    ]
    passed = (
        sweep['passed']
        and all(q['status'] == UNSAT for q in vp_range)
        and all(q['status'] == UNSAT for q in vp_singleton)
    )
    result = {'decisiveness': sweep, 'vp_range': vp_range, 'vp_singleton': vp_singleton}
    return passed, DecisiveReportSerializer(result, context=_context(spec)).data


def export_cnf(config):
    if not config.cnf_out:
        raise UsageError("export-cnf needs --cnf-out")
    spec = config.spec
    model = build_sp_model(enumerate_np(spec, config.override_caps), full_range=True)
    varmap_path = f"{config.cnf_out}.map"
    with open(config.cnf_out, 'w', encoding='utf-8') as sink, \
            open(varmap_path, 'w', encoding='utf-8') as varmap_sink:
        export_dimacs(model, sink, varmap_sink)
    g = solve_externally(model)
    report = {
        'cnf': config.cnf_out,
        'varmap': varmap_path,
        'variables': model.nv,
        'clauses': len(model.clauses),
        'full_range': model.full_range,
        'external_status': SAT if g is not None else UNSAT,
        'external_rule_verified': None if g is None else find_manipulation(g) is None,
    }
    return report['external_rule_verified'] is not False, ExportReportSerializer(report).data


def demo(config):
    name = config.rule or DEMO_RULES[0]
    if name == 'majority-superset':
        _, g = majority_superset_rule(config.spec.n if config.spec.n % 2 else 3)
        report = rule_report(g)
        passed = report['strategy_proof'] and report['full_range'] and report['dictator'] is None
        return passed, RuleReportSerializer(report, context=_context(g.spec)).data
    if name == 's-top-dominator':
        return _s_top_demo(config)
    if name == 'plurality':
        g = plurality_rule(enumerate_np(config.spec, config.override_caps))
        report = rule_report(g)
        # Full range and non-dictatorial, so strategy-proofness must fail.
        passed = not report['strategy_proof'] and report['full_range'] and report['dictator'] is None
        return passed, RuleReportSerializer(report, context=_context(g.spec)).data
    raise UsageError(f"unknown demo rule {name!r}; expected one of {', '.join(DEMO_RULES)}")


def _s_top_demo(config):
    spec = config.spec
    if spec.m <= 3:
        spec = DomainSpec(spec.n, 4, '')
    if spec.m > 4:
        _require_stretch(config, f"the s-top-dominator demo on {spec}")
    s_set = config.s_set if config.s_set is not None else frozenset(range(3))
    g = s_top_dominator_rule(s_set, spec)
    violation = find_ubm_violation(g)
    restricted = g.restrict_to(enumerate_np(spec, config.override_caps), f"{g.name} on NP")
    restricted_sp = find_manipulation(restricted) is None
    equivalence = check_equivalence(restricted) if restricted_sp else None
    equivalence_holds = equivalence is not None and equivalence.holds
    lift = check_restricted_lift(restricted) if restricted_sp else None
    report = {
        'rule': g.name,
        'profiles': len(g.domain),
        's_set': s_set,
        'ubm': violation is None,
        'ubm_violation': violation,
        'restricted_profiles': len(restricted.domain),
        'restricted_strategy_proof': restricted_sp,
        'restricted_range': restricted.range,
        'equivalence_holds': equivalence_holds,
        'equivalence': equivalence,
        'lift': lift,
    }
    # UBM is reported as an observation; the asserted chain starts at the NP restriction.
    passed = (
        restricted_sp
        and restricted.range == s_set
        and equivalence_holds
        and lift['passed']
    )
    return passed, STopDemoSerializer(report, context=_context(spec)).data


COMMANDS = {
    'domain-stats': domain_stats,
    'check-rule': check_rule,
    'find-dictator': find_dictator_command,
    'spath': spath_command,
    'verify-basis': verify_basis_command,
    'verify-lift': verify_lift,
    'verify-merge': verify_merge,
    'decisive-sweep': decisive_sweep,
    'export-cnf': export_cnf,
    'demo': demo,
}


def render_text(report):
    lines = [f"{report['command']}: {'PASS' if report['passed'] else 'FAIL'}"]
    for key, value in report['result'].items():
        if isinstance(value, (list, tuple)):
            lines.append(f"  {key}: {len(value)} entries")
        elif isinstance(value, dict):
            lines.append(f"  {key}:")
            lines.extend(f"    {k}: {v}" for k, v in value.items() if not isinstance(v, (list, dict)))
        else:
            lines.append(f"  {key}: {value}")
    return '\n'.join(lines)


def run(command, config):
    """Run one command; NPVerifyError subclasses from bad input propagate to the caller."""
    if command not in COMMANDS:
        raise UsageError(f"unknown command {command!r}")
    logger.info(f"Running {command} on {config.spec}")
    passed, result = COMMANDS[command](config)
    report = EnvelopeSerializer({
        'version': npverify.__version__,
        'command': command,
        'config': config.as_report(),
        'passed': passed,
        'result': result,
    }).data
    if config.output == JSON:
        rendered = JSONRenderer().render(report).decode('utf-8')
    else:
        rendered = render_text(report)
    if not passed:
        logger.warning(f"{command} found a property violation")
    return RunOutcome(EXIT_OK if passed else EXIT_VIOLATION, report, rendered)
