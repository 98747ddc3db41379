from unittest import mock, skipUnless

from django.conf import settings
from django.test import SimpleTestCase, tag
from hypothesis import given, settings as hypothesis_settings, strategies as st

from core.codec import parse_profile
from core.enumeration import enumerate_full, enumerate_np
from core.exceptions import NPVerifyError, PreconditionError, RuleNotStrategyProof
from core.models import DomainSpec, Profile
from rules.constructions import anti_dictator_rule, constant_rule, dictator_rule
from rules.models import Rule
from rules.predicates import find_dictator, find_manipulation
from verify.encoding import build_sp_model
from verify.solver import enumerate_solutions

from .clones import (
    FIRST, LAST, check_clone_conflict, check_clone_transport, clone_first, clone_last, project_clone,
)
from .dictatorship import pinnacle_and_top_checks
from .merge import (
    all_representatives, check_merge_well_defined, merge_report, merge_representative,
    project_merge, satisfies_merge_conditions,
)
from .models import MergeSpec
from .restricted import check_restricted_lift
from .serializers import CloneConflictSerializer, MergeReportSerializer

SPEC33 = DomainSpec(3, 3)
SPEC43 = DomainSpec(4, 3)
SPEC34 = DomainSpec(3, 4)


class CloneTests(SimpleTestCase):

    def test_clone_last_and_first(self):
        p = parse_profile('abc bca cab', SPEC33)
        self.assertEqual(clone_last(p).to_text('abc'), 'abc bca cab cab')
        self.assertEqual(clone_first(p).to_text('abc'), 'abc abc bca cab')

    def test_cloning_preserves_np_membership_both_ways(self):
        for p in enumerate_full(SPEC33):
            cloned = Profile(p.orderings + (p.orderings[-1],))
            self.assertEqual(cloned.is_np_member(), p.is_np_member())

    def test_clone_needs_np(self):
        with self.assertRaises(PreconditionError):
            clone_last(parse_profile('abc abc bca', SPEC33))

    def test_projections_of_dictators(self):
        np43, np33 = enumerate_np(SPEC43), enumerate_np(SPEC33)
        cases = [(1, LAST, 1), (4, LAST, 3), (1, FIRST, 1), (3, FIRST, 2)]
        for big, which, small in cases:
            with self.subTest(dictator=big, which=which):
                projected = project_clone(dictator_rule(big, np43), which)
                self.assertIs(projected.domain, np33)
                self.assertEqual(projected.choice, dictator_rule(small, np33).choice)

    def test_projection_refuses_manipulable_rules(self):
        with self.assertRaises(RuleNotStrategyProof):
            project_clone(anti_dictator_rule(2, enumerate_np(SPEC43)), LAST)
        with self.assertRaises(PreconditionError):
            project_clone(dictator_rule(1, enumerate_np(SPEC43)), 'middle')

    def test_transport_for_every_dictator(self):
        np43 = enumerate_np(SPEC43)
        for i in range(1, 5):
            with self.subTest(dictator=i):
                report = check_clone_transport(dictator_rule(i, np43))
                self.assertTrue(report['passed'])
                self.assertTrue(all(p['full_range'] for p in report['projections']))

    def test_conflict_hypothesis_fails_for_dictators(self):
        np43 = enumerate_np(SPEC43)
        for i in range(1, 5):
            with self.subTest(dictator=i):
                report = check_clone_conflict(dictator_rule(i, np43))
                self.assertFalse(report['hypothesis_holds'])
                self.assertTrue(report['passes'])
                self.assertIsNone(report['contradiction'])
                self.assertEqual(report['u'].to_text('abc'), 'abc abc cba cba')
                self.assertTrue(report['u'].is_np_member())

    def test_conflict_predictions_when_hypothesis_holds(self):
        np43 = enumerate_np(SPEC43)
        for i, outcome in ((1, 0), (4, 2)):
            with self.subTest(dictator=i):
                with mock.patch('lift.clones.find_dictator', side_effect=[3, 1]):
                    report = check_clone_conflict(dictator_rule(i, np43))
                self.assertTrue(report['hypothesis_holds'])
                self.assertEqual(report['outcome'], outcome)
                self.assertEqual((report['last_prediction'], report['first_prediction']), (2, 0))
                self.assertTrue(report['contradiction'])
                self.assertTrue(report['passes'])

    def test_conflict_contradiction_follows_the_outcome(self):
        g = dictator_rule(1, enumerate_np(SPEC43))
        constant = constant_rule(0, enumerate_np(SPEC33))
        with mock.patch('lift.clones.project_clone', return_value=constant), \
                mock.patch('lift.clones.find_dictator', side_effect=[3, 1]):
            report = check_clone_conflict(g)
        self.assertEqual((report['last_prediction'], report['first_prediction']), (0, 0))
        self.assertFalse(report['contradiction'])
        self.assertFalse(report['passes'])

    def test_conflict_report_serializes(self):
        report = check_clone_conflict(dictator_rule(4, enumerate_np(SPEC43)))
        data = CloneConflictSerializer(report, context={'spec': SPEC43}).data
        self.assertEqual(data['u'], 'abc abc cba cba')
        self.assertEqual(data['outcome'], 'c')
        self.assertEqual((data['last_dictator'], data['first_dictator']), (3, 3))

    @tag('slow')
    @skipUnless(settings.NPV_STRETCH, 'set NPV_STRETCH=True for minutes-scale runs')
    def test_solver_sweep_at_four_individuals(self):
        model = build_sp_model(enumerate_np(SPEC43), full_range=True)
        solutions = enumerate_solutions(model).solutions
        self.assertEqual(len(solutions), 4)
        for g in solutions:
            self.assertTrue(check_clone_transport(g)['passed'])
            conflict = check_clone_conflict(g)
            self.assertFalse(conflict['hypothesis_holds'])
            self.assertTrue(conflict['passes'])


class MergeTests(SimpleTestCase):

    def setUp(self):
        self.ms = MergeSpec.parse('c,d=x', SPEC34)
        self.small = enumerate_np(self.ms.small_spec)

    def test_merge_spec(self):
        self.assertEqual(self.ms.small_spec.labels, 'abx')
        self.assertEqual(self.ms.x_star, 2)
        self.assertEqual(self.ms.to_small(3), 2)
        self.assertEqual(self.ms.to_small(1), 1)
        self.assertEqual(str(self.ms), 'c,d=x')

    def test_bad_merge_specs(self):
        for text in ('c,c=x', 'c,d=a', 'cd', 'c,e=x'):
            with self.subTest(text=text):
                with self.assertRaises(NPVerifyError):
                    MergeSpec.parse(text, SPEC34)

    def test_representative_fills_the_x_star_slot(self):
        p = parse_profile('xab abx bax', self.ms.small_spec)
        r = merge_representative(p, self.ms)
        self.assertEqual(r.to_text(SPEC34.labels), 'cdab abdc badc')
        self.assertTrue(satisfies_merge_conditions(r, p, self.ms))

    def test_representatives_of_every_small_profile(self):
        rest = frozenset({0, 1})
        for p in self.small:
            reps = all_representatives(p, self.ms)
            self.assertEqual(len(reps), 2 ** 3 - 2)
            self.assertIn(merge_representative(p, self.ms), reps)
            for r in reps:
                self.assertTrue(r.is_np_member())
                self.assertTrue(satisfies_merge_conditions(r, p, self.ms))
                self.assertEqual(r.restriction_key(rest), p.restriction_key(rest))

    def test_non_np_input(self):
        with self.assertRaises(PreconditionError):
            merge_representative(parse_profile('abx abx bax', self.ms.small_spec), self.ms)

    def test_merged_dictators(self):
        np34 = enumerate_np(SPEC34)
        for i in (1, 2, 3):
            with self.subTest(dictator=i):
                merged = project_merge(dictator_rule(i, np34), self.ms)
                self.assertIsNone(find_manipulation(merged))
                self.assertEqual(merged.choice, dictator_rule(i, self.small).choice)

    def test_w_and_z_collapse_to_x_star(self):
        g = dictator_rule(1, enumerate_np(SPEC34))
        merged = project_merge(g, self.ms)
        for p, outcome in zip(self.small, merged.choice):
            if g.evaluate(merge_representative(p, self.ms)) in (2, 3):
                self.assertEqual(outcome, self.ms.x_star)

    @tag('slow')
    def test_well_defined_for_every_dictator(self):
        np34 = enumerate_np(SPEC34)
        for i in (1, 2, 3):
            with self.subTest(dictator=i):
                report = merge_report(dictator_rule(i, np34), self.ms)
                self.assertTrue(report['passed'])
                self.assertEqual(report['representatives'], len(self.small) * 6)
                self.assertEqual(report['dictator_after'], i)
        data = MergeReportSerializer(report, context={
            'spec': SPEC34, 'big_spec': SPEC34, 'small_spec': self.ms.small_spec,
        }).data
        self.assertEqual(data['merge'], 'c,d=x')
        self.assertIsNone(data['witness'])

    def test_well_defined_refuses_manipulable_rules(self):
        with self.assertRaises(RuleNotStrategyProof):
            check_merge_well_defined(anti_dictator_rule(1, enumerate_np(SPEC34)), self.ms)

    @hypothesis_settings(max_examples=25, deadline=None)
    @given(st.sampled_from([(0, 1), (1, 3), (0, 3), (2, 1)]), st.integers(min_value=0, max_value=101))
    def test_representatives_for_other_pairs(self, pair, k):
        ms = MergeSpec.build(SPEC34, pair[0], pair[1], 'y')
        p = enumerate_np(ms.small_spec)[k]
        r = merge_representative(p, ms)
        self.assertTrue(r.is_np_member())
        self.assertTrue(satisfies_merge_conditions(r, p, ms))


class DictatorshipCheckTests(SimpleTestCase):

    def test_dictator_passes(self):
        np34 = enumerate_np(SPEC34)
        report = pinnacle_and_top_checks(dictator_rule(1, np34), 0)
        self.assertTrue(report['passed'])
        self.assertGreater(report['pinnacles'], 0)

    def test_wrong_candidate_fails(self):
        np34 = enumerate_np(SPEC34)
        report = pinnacle_and_top_checks(dictator_rule(2, np34), 0, individual=1)
        self.assertFalse(report['top_holds'])
        self.assertEqual(report['top_witness'].ordering(1).top, 0)
        self.assertFalse(report['passed'])

    def test_every_basis_solution_for_its_own_dictator(self):
        model = build_sp_model(enumerate_np(SPEC33), full_range=True)
        for g in enumerate_solutions(model).solutions:
            i = find_dictator(g)
            for x in range(3):
                self.assertTrue(pinnacle_and_top_checks(g, x, individual=i)['passed'])

    def test_needs_full_range(self):
        np33 = enumerate_np(SPEC33)
        g = Rule(np33, tuple(p.ordering(1).top_within({0, 1}) for p in np33))
        with self.assertRaises(PreconditionError):
            pinnacle_and_top_checks(g, 0)


class RestrictedLiftTests(SimpleTestCase):

    def test_lift_of_a_restricted_dictator(self):
        np34 = enumerate_np(SPEC34)
        g_star = Rule(np34, tuple(p.ordering(3).top_within({0, 1, 2}) for p in np34))
        report = check_restricted_lift(g_star)
        self.assertTrue(report['passed'])
        self.assertEqual(report['dictator'], 3)
        self.assertEqual(report['orders'], 1)
        self.assertEqual(report['profiles'], 102)

    def test_full_range_rule_is_refused(self):
        with self.assertRaises(PreconditionError):
            check_restricted_lift(dictator_rule(1, enumerate_np(SPEC34)))
