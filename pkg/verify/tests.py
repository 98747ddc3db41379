import io
from itertools import product
from unittest import skipUnless

from django.conf import settings
from django.test import SimpleTestCase, tag

from core.codec import parse_profile
from core.enumeration import enumerate_np, enumerate_vp
from core.exceptions import PreconditionError, SolverSoundnessError
from core.models import Domain, DomainSpec, Profile
from rules.constructions import anti_dictator_rule, constant_rule, dictator_rule
from rules.models import Rule
from rules.predicates import find_dictator, find_manipulation

from .dimacs import export_dimacs, solve_externally
from .encoding import build_sp_model
from .models import CAPPED, SAT, UNSAT
from .queries import (
    decisiveness_query, decisiveness_sweep, verify_basis, vp_range_check, vp_singleton_check,
)
from .serializers import BasisReportSerializer
from .solver import check_satisfiable, enumerate_solutions, validate_solution

SPEC33 = DomainSpec(3, 3)


def p33(text):
    return parse_profile(text, SPEC33)


def small_domain():
    """Seven NP(3,3) profiles: #1 fixed to abc, #2 among acb, bac and bca."""
    second = {'acb', 'bac', 'bca'}
    profiles = [
        p for p in enumerate_np(SPEC33)
        if p.ordering(1).to_text('abc') == 'abc' and p.ordering(2).to_text('abc') in second
    ]
    return Domain.from_profiles(SPEC33, profiles, 'seven')


def brute_force(domain, full_range):
    m = domain.spec.m
    found = set()
    for table in product(range(m), repeat=len(domain)):
        if full_range and len(set(table)) != m:
            continue
        if find_manipulation(Rule(domain, table)) is None:
            found.add(table)
    return found


class ModelTests(SimpleTestCase):

    def test_variables_and_groups(self):
        model = build_sp_model(enumerate_np(SPEC33), full_range=True)
        self.assertEqual(model.nv, 306)
        self.assertEqual(model.var(0, 0), 1)
        self.assertEqual(model.var(101, 2), 306)
        self.assertEqual(model.decode(5), (1, 1))
        alo = [c for c in model.clauses if len(c) == 3 and all(lit > 0 for lit in c)]
        self.assertEqual(len(alo), 102)

    def test_two_individuals_have_no_sp_clauses(self):
        model = build_sp_model(enumerate_np(DomainSpec(2, 3)))
        self.assertEqual(model.sp_clauses, 0)

    def test_empty_domain_is_rejected(self):
        with self.assertRaises(PreconditionError):
            build_sp_model(Domain(SPEC33, ()))

    def test_with_clauses_deduplicates(self):
        model = build_sp_model(Domain(SPEC33, (p33('abc bca cab'),)))
        extended = model.with_clauses([[2, 1, 1], [1, 2]])
        self.assertEqual(len(extended.clauses), len(model.clauses) + 1)
        self.assertIs(extended.pool, model.pool)


class SolverTests(SimpleTestCase):

    def setUp(self):
        self.single = build_sp_model(Domain(SPEC33, (p33('abc bca cab'),)))

    def test_single_profile(self):
        result = enumerate_solutions(self.single)
        self.assertEqual(result.status, SAT)
        self.assertEqual([g.choice for g in result.solutions], [(0,), (1,), (2,)])

    def test_single_profile_cannot_have_full_range(self):
        model = build_sp_model(self.single.domain, full_range=True)
        self.assertEqual(enumerate_solutions(model).status, UNSAT)

    def test_contradiction(self):
        model = self.single.with_clauses([[1], [-1]])
        result = enumerate_solutions(model)
        self.assertEqual(result.status, UNSAT)
        self.assertFalse(result.satisfiable)

    def test_cap(self):
        result = enumerate_solutions(self.single, cap=2)
        self.assertEqual(result.status, CAPPED)
        self.assertEqual(len(result.solutions), 2)
        self.assertIn('cap', result.capped_reason)
        with self.assertRaises(PreconditionError):
            enumerate_solutions(self.single, cap=0)

    def test_check_satisfiable_stops_at_first(self):
        result = check_satisfiable(self.single)
        self.assertEqual(result.status, SAT)
        self.assertEqual(len(result.solutions), 1)

    def test_matches_brute_force_on_a_small_domain(self):
        domain = small_domain()
        self.assertEqual(len(domain), 7)
        for full_range in (False, True):
            with self.subTest(full_range=full_range):
                model = build_sp_model(domain, full_range)
                result = enumerate_solutions(model, cap=10_000)
                self.assertNotEqual(result.status, CAPPED)
                found = [g.choice for g in result.solutions]
                self.assertEqual(len(found), len(set(found)))
                self.assertEqual(set(found), brute_force(domain, full_range))

    def test_solution_order_is_deterministic(self):
        model = build_sp_model(small_domain())
        first = [g.choice for g in enumerate_solutions(model, cap=10_000).solutions]
        second = [g.choice for g in enumerate_solutions(model, cap=10_000).solutions]
        self.assertEqual(first, second)

    def test_without_full_range_constants_appear(self):
        np33 = enumerate_np(SPEC33)
        result = enumerate_solutions(build_sp_model(np33), cap=8)
        self.assertEqual(len(result.solutions), 8)
        self.assertEqual(result.solutions[0].choice, constant_rule(0, np33).choice)

    def test_revalidation_rejects_a_manipulable_table(self):
        np33 = enumerate_np(SPEC33)
        model = build_sp_model(np33)
        g = anti_dictator_rule(1, np33)
        true_vars = tuple(model.var(p, a) for p, a in enumerate(g.choice))
        with self.assertRaises(SolverSoundnessError):
            validate_solution(model, true_vars)
        with self.assertRaises(SolverSoundnessError):
            validate_solution(model, true_vars[1:])


class BasisTests(SimpleTestCase):

    def test_needs_three_individuals_and_alternatives(self):
        for spec in (DomainSpec(2, 3), DomainSpec(3, 2)):
            with self.subTest(spec=str(spec)):
                with self.assertRaises(PreconditionError):
                    verify_basis(spec)

    def test_three_dictators(self):
        report = verify_basis(SPEC33)
        self.assertTrue(report['passed'])
        self.assertEqual(report['solutions'], 3)
        self.assertEqual(sorted(report['dictators']), [1, 2, 3])
        self.assertTrue(report['all_dictatorial'])
        self.assertTrue(report['vp_corollary'])
        self.assertIsNone(report['witness'])
        self.assertEqual(report['variables'], 306)

    def test_solutions_are_the_dictator_tables(self):
        np33 = enumerate_np(SPEC33)
        result = enumerate_solutions(build_sp_model(np33, full_range=True))
        self.assertEqual(
            {g.choice for g in result.solutions},
            {dictator_rule(i, np33).choice for i in (1, 2, 3)},
        )

    def test_solution_set_is_symmetric(self):
        np33 = enumerate_np(SPEC33)
        tables = {g.choice for g in enumerate_solutions(build_sp_model(np33, full_range=True)).solutions}
        swap = (1, 0, 2)
        relabel = {0: 1, 1: 0, 2: 2}
        for choice in tables:
            permuted = tuple(
                choice[np33.position(Profile(tuple(p.orderings[k] for k in swap)))] for p in np33
            )
            self.assertIn(permuted, tables)
            renamed = tuple(
                relabel[choice[np33.position(Profile.of(*(
                    tuple(relabel[a] for a in o.rank_seq) for o in p.orderings
                )))]]
                for p in np33
            )
            self.assertIn(renamed, tables)

    def test_report_serializes(self):
        data = BasisReportSerializer(verify_basis(SPEC33), context={'spec': SPEC33}).data
        self.assertEqual(data['solutions'], 3)
        self.assertEqual(data['status'], SAT)
        self.assertIsNone(data['witness'])

    @tag('slow')
    @skipUnless(settings.NPV_STRETCH, 'set NPV_STRETCH=True for minutes-scale runs')
    def test_four_individuals(self):
        report = verify_basis(DomainSpec(4, 3))
        self.assertTrue(report['passed'])
        self.assertEqual(sorted(report['dictators']), [1, 2, 3, 4])
        self.assertIsNone(report['vp_corollary'])


class DecisivenessTests(SimpleTestCase):

    def setUp(self):
        self.np33 = enumerate_np(SPEC33)
        self.model = build_sp_model(self.np33, full_range=True)
        self.u = p33('abc bca cab')

    def test_decisive_against_c(self):
        for v in self.np33:
            if v.ordering(1).prefers(0, 2) and v.ordering(1).top != 2:
                result = decisiveness_query(self.model, (self.u, 0), (v, 2))
                self.assertEqual(result.status, UNSAT)
                break

    def test_outside_the_hypothesis(self):
        v = p33('cab acb bca')
        with self.assertRaises(PreconditionError):
            decisiveness_query(self.model, (self.u, 0), (v, 2))

    def test_preconditions(self):
        with self.assertRaises(PreconditionError):
            decisiveness_query(self.model, (p33('abc bca cba'), 0), (self.u, 2))
        with self.assertRaises(PreconditionError):
            decisiveness_query(self.model, (self.u, 0), (self.u, 1))
        with self.assertRaises(PreconditionError):
            decisiveness_sweep(DomainSpec(3, 2))

    def test_query_without_decisiveness_can_be_sat(self):
        v = p33('cab acb bca')
        query = self.model.with_clauses([[self.model.var_for(self.u, 0)], [self.model.var_for(v, 2)]])
        result = check_satisfiable(query)
        self.assertEqual(result.status, SAT)
        self.assertEqual(find_dictator(result.solutions[0]), 1)

    @tag('slow')
    def test_full_sweep(self):
        report = decisiveness_sweep(SPEC33)
        self.assertTrue(report['passed'])
        self.assertEqual(report['queries'], 12 * 3 * 51)
        self.assertIsNone(report['first_sat'])


class VotingParadoxTests(SimpleTestCase):

    def test_range_cannot_avoid_an_alternative(self):
        for excluded in (2, 0):
            with self.subTest(excluded=excluded):
                self.assertEqual(vp_range_check(SPEC33, excluded).status, UNSAT)

    def test_without_full_range_it_can(self):
        result = vp_range_check(SPEC33, 2, full_range=False)
        self.assertEqual(result.status, SAT)
        self.assertNotIn(2, result.solutions[0].restrict_to(enumerate_vp(SPEC33)).range)

    def test_singleton_range_carries_over(self):
        for a in (0, 2):
            with self.subTest(a=a):
                self.assertEqual(vp_singleton_check(SPEC33, a).status, UNSAT)


class DimacsTests(SimpleTestCase):

    def test_single_profile_header(self):
        model = build_sp_model(Domain(SPEC33, (p33('abc bca cab'),)))
        sink, varmap = io.StringIO(), io.StringIO()
        mapping = export_dimacs(model, sink, varmap)
        lines = sink.getvalue().splitlines()
        self.assertEqual(lines[0], 'p cnf 3 4')
        self.assertEqual(lines[1], '1 2 3 0')
        self.assertEqual(varmap.getvalue().splitlines(), [
            'abc bca cab a 1', 'abc bca cab b 2', 'abc bca cab c 3',
        ])
        self.assertEqual(mapping[(0, 2)], 3)

    def test_basis_model_header(self):
        model = build_sp_model(enumerate_np(SPEC33), full_range=True)
        sink = io.StringIO()
        export_dimacs(model, sink)
        self.assertEqual(sink.getvalue().splitlines()[0], f"p cnf 306 {len(model.clauses)}")

    def test_external_cross_check(self):
        model = build_sp_model(enumerate_np(SPEC33), full_range=True)
        g = solve_externally(model)
        self.assertIsNotNone(find_dictator(g))
        self.assertIsNone(solve_externally(model.with_clauses([[1], [-1]])))
