import io

from django.conf import settings
from django.test import SimpleTestCase, tag

from core.codec import parse_profile
from core.enumeration import enumerate_np
from core.exceptions import PreconditionError, RuleNotStrategyProof
from core.models import DomainSpec
from rules.constructions import anti_dictator_rule, dictator_rule
from rules.models import Rule

from .builders import build_spath, build_spath_codim1, pivot_path
from .equivalence import check_equivalence
from .models import SPath, validate_spath
from .oracle import bfs_spath_oracle, fibers
from .serializers import EquivalenceSerializer, SweepReportSerializer
from .storage import dump_spath, load_spath
from .sweeps import all_subsets, sweep_all_subsets, sweep_fibers

SPEC33 = DomainSpec(3, 3)
SPEC34 = DomainSpec(3, 4)


def p33(text):
    return parse_profile(text, SPEC33)


class ValidationTests(SimpleTestCase):

    def setUp(self):
        self.u = p33('cab acb bca')
        self.path = SPath({0, 1}, (self.u, p33('cab abc bca'), p33('cab abc bac')))

    def test_single_profile_path(self):
        self.assertTrue(validate_spath(SPath({0}, (self.u,)), self.u, self.u))

    def test_valid_path(self):
        self.assertTrue(validate_spath(self.path, self.u, self.path.end))

    def test_reversal_and_concatenation(self):
        back = self.path.reversed()
        self.assertTrue(validate_spath(back, self.path.end, self.u))
        loop = self.path.concatenate(back)
        self.assertTrue(validate_spath(loop, self.u, self.u))

    def test_wrong_endpoint(self):
        result = validate_spath(self.path, self.u, self.u)
        self.assertFalse(result)
        self.assertEqual(result.step, 3)

    def test_profile_outside_np(self):
        bad = SPath({0, 1}, (self.u, p33('cab acb acb')))
        result = validate_spath(bad, self.u, bad.end)
        self.assertEqual((result.valid, result.step), (False, 2))

    def test_two_individuals_change(self):
        bad = SPath({0, 1}, (self.u, p33('cab abc bac')))
        result = validate_spath(bad, self.u, bad.end)
        self.assertFalse(result)
        self.assertIn('individuals', result.violation)

    def test_restriction_changes(self):
        bad = SPath({0, 1}, (self.u, p33('cba acb bca')))
        result = validate_spath(bad, self.u, bad.end)
        self.assertEqual(result.violation, 'restriction to S changes')

    def test_dump_and_load(self):
        stream = io.StringIO()
        dump_spath(self.path, SPEC33, stream)
        self.assertTrue(stream.getvalue().startswith('S=ab\n'))
        stream.seek(0)
        self.assertEqual(load_spath(stream, SPEC33), self.path)


class BuilderTests(SimpleTestCase):

    def test_equal_endpoints_give_a_single_step(self):
        u = p33('abc bca cab')
        self.assertEqual(len(build_spath_codim1(u, u, 2)), 1)
        self.assertEqual(len(build_spath(u, u, {0, 1, 2})), 1)

    def test_pivot_lowers_x_for_each_later_individual_in_turn(self):
        u = p33('cab acb bca')
        pivot = p33('cab abc bac')
        path = build_spath_codim1(u, pivot, 2)
        self.assertEqual(path.steps, (u, p33('cab abc bca'), pivot))

    def test_pivot_shape(self):
        u = parse_profile('abcd dcba bdac', SPEC34)
        end = pivot_path(u, 3)[-1]
        self.assertEqual(end.ordering(1).top, 3)
        self.assertTrue(all(end.ordering(i).bottom == 3 for i in (2, 3)))
        self.assertEqual(end.restriction_key({0, 1, 2}), u.restriction_key({0, 1, 2}))

    def test_staged_pivot_path(self):
        u = parse_profile('abcd dcba bdac', SPEC34)
        v = parse_profile('abdc cdba dbac', SPEC34)
        path = build_spath(u, v, {0, 1})
        self.assertTrue(validate_spath(path, u, v))
        self.assertTrue(all(step.restriction_key({0, 1}) == u.restriction_key({0, 1}) for step in path.steps))

    def test_full_agreement_requires_equal_endpoints(self):
        with self.assertRaises(PreconditionError):
            build_spath(p33('abc bca cab'), p33('acb bca cab'), {0, 1, 2})

    def test_preconditions(self):
        with self.assertRaises(PreconditionError):
            build_spath_codim1(p33('abc bca cab'), p33('bac bca cab'), 2)
        with self.assertRaises(PreconditionError):
            build_spath(p33('abc abc abc'), p33('abc bca cab'), {0})
        spec23 = DomainSpec(2, 3)
        u = parse_profile('abc cba', spec23)
        with self.assertRaises(PreconditionError):
            build_spath(u, parse_profile('bac cab', spec23), {2})

    def test_codim1_over_all_pairs(self):
        domain = enumerate_np(SPEC33)
        for x in range(3):
            s_set = frozenset(range(3)) - {x}
            for members in fibers(domain, s_set).values():
                for a in members:
                    for b in members:
                        u, v = domain[a], domain[b]
                        with self.subTest(u=u.key, v=v.key, x=x):
                            self.assertTrue(validate_spath(build_spath_codim1(u, v, x), u, v))

    def test_codim1_sampled_at_four_alternatives(self):
        reports = [sweep_fibers(SPEC34, frozenset(range(4)) - {x}, sample=25, seed=x) for x in range(4)]
        self.assertTrue(all(r.passed and r.pairs_checked == 25 for r in reports))


class OracleTests(SimpleTestCase):

    def test_trivial_path(self):
        u = p33('abc bca cab')
        self.assertEqual(len(bfs_spath_oracle(u, u, {0})), 1)

    def test_oracle_path_is_valid_and_no_longer_than_builder(self):
        u, v = p33('abc bca cab'), p33('cba bca acb')
        built = build_spath(u, v, {1})
        found = bfs_spath_oracle(u, v, {1})
        self.assertTrue(validate_spath(found, u, v))
        self.assertLessEqual(len(found), len(built))

    def test_singleton_fiber_is_all_of_np(self):
        domain = enumerate_np(SPEC33)
        for a in range(3):
            groups = fibers(domain, frozenset({a}))
            self.assertEqual([len(g) for g in groups.values()], [102])

    @tag('slow')
    def test_exhaustive_sweep_at_three_by_three(self):
        reports = sweep_all_subsets(SPEC33)
        self.assertEqual(len(reports), 8)
        for report in reports:
            with self.subTest(s_set=sorted(report.s_set)):
                self.assertTrue(report.passed)
                self.assertEqual(report.unreachable, 0)
        singleton = next(r for r in reports if r.s_set == frozenset({0}))
        self.assertEqual(singleton.pairs_checked, 102 * 102)

    @tag('slow')
    def test_sampled_sweeps(self):
        for spec in (SPEC34, DomainSpec(4, 3)):
            for s_set in all_subsets(spec.m):
                report = sweep_fibers(spec, s_set, sample=10, seed=0)
                with self.subTest(spec=str(spec), s_set=sorted(s_set)):
                    self.assertTrue(report.passed)
                    self.assertEqual(report.disagreements, 0)

    @tag('slow')
    def test_sampled_sweep_at_configured_pair_count(self):
        for s_set in ({0, 1, 2}, {1, 3}):
            report = sweep_fibers(SPEC34, s_set, sample=settings.NPV_SAMPLE_PAIRS, seed=settings.NPV_SEED)
            with self.subTest(s_set=sorted(s_set)):
                self.assertEqual(report.pairs_checked, settings.NPV_SAMPLE_PAIRS)
                self.assertTrue(report.passed)
                self.assertEqual(report.unreachable, 0)

    def test_sweeps_are_reproducible(self):
        first = sweep_fibers(SPEC34, {0, 1}, sample=20, seed=7)
        second = sweep_fibers(SPEC34, {0, 1}, sample=20, seed=7)
        self.assertEqual(first, second)

    def test_report_serializes(self):
        report = sweep_fibers(SPEC33, {0, 2})
        data = SweepReportSerializer(report, context={'spec': SPEC33}).data
        self.assertEqual(data['s_set'], 'ac')
        self.assertIsNone(data['first_failure'])


class EquivalenceTests(SimpleTestCase):

    def test_dictator_with_full_range(self):
        result = check_equivalence(dictator_rule(1, enumerate_np(SPEC33)))
        self.assertTrue(result.holds)
        self.assertEqual(result.fibers, 102)

    def test_restricted_range_rule(self):
        np34 = enumerate_np(SPEC34)
        g = Rule(np34, tuple(p.ordering(2).top_within({0, 1, 2}) for p in np34))
        result = check_equivalence(g)
        self.assertTrue(result.holds)
        self.assertEqual(result.s_set, frozenset({0, 1, 2}))

    def test_manipulable_rule_is_refused(self):
        with self.assertRaises(RuleNotStrategyProof):
            check_equivalence(anti_dictator_rule(1, enumerate_np(SPEC33)))

    def test_reports_a_violating_pair(self):
        # Two individuals: no variants, so every rule is strategy-proof.
        np23 = enumerate_np(DomainSpec(2, 3))
        g = Rule(np23, (0,) + (1,) * (len(np23) - 1))
        result = check_equivalence(g)
        self.assertFalse(result.holds)
        u, v = result.pair
        self.assertEqual(u.restriction_key({0, 1}), v.restriction_key({0, 1}))

    def test_equivalence_serializes(self):
        np23 = enumerate_np(DomainSpec(2, 3))
        g = Rule(np23, (0,) + (1,) * (len(np23) - 1))
        data = EquivalenceSerializer(check_equivalence(g), context={'spec': np23.spec}).data
        self.assertFalse(data['holds'])
        self.assertEqual(data['s_set'], 'ab')
        self.assertEqual(len(data['pair']), 2)
        held = EquivalenceSerializer(check_equivalence(dictator_rule(1, enumerate_np(SPEC33))), context={'spec': SPEC33}).data
        self.assertIsNone(held['pair'])
