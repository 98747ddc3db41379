from unittest import skipUnless

from django.conf import settings
from django.test import SimpleTestCase, tag

from core.codec import parse_profile
from core.enumeration import enumerate_full, enumerate_np
from core.exceptions import (
    ConstructionError, PreconditionError, ProfileNotInDomain, UndefinedOnDomain,
)
from core.models import Domain, DomainSpec

from .constructions import (
    anti_dictator_rule, constant_rule, dictator_rule, majority_superset_rule, named_rule,
    plurality_rule, restricted_range_lift, s_top_dominator_rule,
)
from .models import Rule
from .predicates import (
    evaluate, find_adjacent_swap_violation, find_dictator, find_manipulation,
    find_ubm_violation, is_ubm, range_of, rule_report,
)
from .serializers import RuleReportSerializer

SPEC33 = DomainSpec(3, 3)
SPEC34 = DomainSpec(3, 4)
S_ABC = frozenset({0, 1, 2})


def first_manipulation_by_double_loop(g):
    """Independent oracle: compare every pair of domain profiles directly."""
    domain = g.domain
    for k, p in enumerate(domain):
        candidates = []
        for j, q in enumerate(domain):
            h = p.h_variant_of(q)
            if h is None:
                continue
            sincere, manipulated = g.choice[k], g.choice[j]
            if sincere != manipulated and p.ordering(h).prefers(manipulated, sincere):
                candidates.append((h, j))
        if candidates:
            h, j = min(candidates)
            return k, h, j
    return None


class EvaluateTests(SimpleTestCase):

    def setUp(self):
        self.np33 = enumerate_np(SPEC33)
        self.u = parse_profile('abc bca cab', SPEC33)

    def test_dictators_pick_their_top(self):
        self.assertEqual(evaluate(dictator_rule(1, self.np33), self.u), 0)
        self.assertEqual(evaluate(dictator_rule(3, self.np33), self.u), 2)

    def test_profile_outside_np(self):
        with self.assertRaises(ProfileNotInDomain) as ctx:
            evaluate(dictator_rule(1, self.np33), parse_profile('abc abc abc', SPEC33))
        self.assertEqual(ctx.exception.reason, ProfileNotInDomain.OUTSIDE_NP)

    def test_table_must_match_domain(self):
        with self.assertRaises(PreconditionError):
            Rule(self.np33, (0, 1))
        with self.assertRaises(PreconditionError):
            Rule(self.np33, (5,) * len(self.np33))

    def test_rules_on_the_same_enumeration_compare_equal(self):
        self.assertEqual(dictator_rule(2, self.np33), dictator_rule(2, enumerate_np(SPEC33)))
        self.assertNotEqual(dictator_rule(2, self.np33), dictator_rule(1, self.np33))

    def test_named_rules(self):
        self.assertEqual(named_rule('dictator-2', self.np33), dictator_rule(2, self.np33))
        self.assertEqual(named_rule('constant-b', self.np33).range, frozenset({1}))
        with self.assertRaises(PreconditionError):
            named_rule('borda', self.np33)


class ManipulationTests(SimpleTestCase):

    def setUp(self):
        self.np33 = enumerate_np(SPEC33)

    def test_dictator_is_strategy_proof(self):
        self.assertIsNone(find_manipulation(dictator_rule(1, self.np33)))

    def test_anti_dictator_is_manipulated_by_its_victim(self):
        witness = find_manipulation(anti_dictator_rule(1, self.np33))
        self.assertIsNotNone(witness)
        self.assertEqual(witness.by, 1)
        self.assertTrue(witness.at.ordering(1).prefers(witness.manipulated_outcome, witness.sincere_outcome))
        self.assertEqual(witness.at.h_variant_of(witness.via), 1)

    def test_majority_rule_on_superset_is_strategy_proof(self):
        _, rule = majority_superset_rule(3)
        self.assertIsNone(find_manipulation(rule))

    def test_agrees_with_double_loop_oracle(self):
        domain_d, majority = majority_superset_rule(3)
        rules = [
            dictator_rule(2, self.np33),
            anti_dictator_rule(1, self.np33),
            anti_dictator_rule(3, self.np33),
            plurality_rule(self.np33),
            constant_rule(1, self.np33),
            majority,
            plurality_rule(domain_d),
        ]
        for g in rules:
            with self.subTest(rule=str(g)):
                expected = first_manipulation_by_double_loop(g)
                witness = find_manipulation(g)
                if expected is None:
                    self.assertIsNone(witness)
                else:
                    k, h, j = expected
                    self.assertEqual(
                        (witness.at, witness.by, witness.via),
                        (g.domain[k], h, g.domain[j]),
                    )


class RangeAndDictatorTests(SimpleTestCase):

    def setUp(self):
        self.np33 = enumerate_np(SPEC33)

    def test_ranges(self):
        self.assertEqual(range_of(dictator_rule(1, self.np33)), frozenset({0, 1, 2}))
        self.assertEqual(range_of(constant_rule(2, self.np33)), frozenset({2}))

    def test_find_dictator(self):
        self.assertEqual(find_dictator(dictator_rule(2, self.np33)), 2)
        self.assertIsNone(find_dictator(anti_dictator_rule(1, self.np33)))

    def test_constant_rule_is_dictatorial_relative_to_its_range(self):
        self.assertEqual(find_dictator(constant_rule(0, self.np33)), 1)

    def test_majority_superset_rule(self):
        domain, rule = majority_superset_rule(3)
        xyz = domain.spec
        self.assertEqual(len(domain), 110)
        self.assertEqual(evaluate(rule, parse_profile('xyz yzx zxy', xyz)), 0)
        self.assertEqual(evaluate(rule, parse_profile('zxy zyx zxy', xyz)), 2)
        self.assertEqual(range_of(rule), frozenset({0, 1, 2}))
        self.assertIsNone(find_dictator(rule))

    def test_majority_superset_needs_odd_n(self):
        with self.assertRaises(PreconditionError):
            majority_superset_rule(4)

    def test_dictator_never_manipulates_when_own_top_is_chosen(self):
        for g in (dictator_rule(i, self.np33) for i in (1, 2, 3)):
            i = find_dictator(g)
            for p, h, q in g.domain.variant_pairs():
                if h == i:
                    self.assertFalse(g.domain[p].ordering(i).prefers(g.choice[q], g.choice[p]))

    def test_report_serializes(self):
        report = rule_report(anti_dictator_rule(1, self.np33))
        data = RuleReportSerializer(report, context={'spec': SPEC33}).data
        self.assertFalse(data['strategy_proof'])
        self.assertEqual(data['range'], 'abc')
        self.assertEqual(data['witness']['by'], 1)


class AdjacentSwapTests(SimpleTestCase):

    def test_strategy_proof_rules_satisfy_the_swap_consequence(self):
        np33 = enumerate_np(SPEC33)
        _, majority = majority_superset_rule(3)
        for g in [dictator_rule(i, np33) for i in (1, 2, 3)] + [constant_rule(0, np33), majority]:
            with self.subTest(rule=str(g)):
                self.assertIsNone(find_adjacent_swap_violation(g))

    def test_anti_dictator_violates_it(self):
        violation = find_adjacent_swap_violation(anti_dictator_rule(1, enumerate_np(SPEC33)))
        self.assertIsNotNone(violation)
        self.assertNotEqual((violation.before, violation.after), violation.swapped)


class UbmTests(SimpleTestCase):

    def test_dictator_is_ubm(self):
        self.assertTrue(is_ubm(dictator_rule(1, enumerate_full(SPEC33))))

    def test_plurality_is_not_ubm(self):
        violation = find_ubm_violation(plurality_rule(enumerate_full(SPEC33)))
        self.assertIsNotNone(violation)
        self.assertFalse(violation.at.ordering(violation.harmed).prefers(
            violation.manipulated_outcome, violation.sincere_outcome))

    def test_ubm_needs_the_full_domain(self):
        with self.assertRaises(UndefinedOnDomain):
            is_ubm(dictator_rule(1, enumerate_np(SPEC33)))

    def test_ubm_rules_restrict_to_strategy_proof_rules(self):
        full = enumerate_full(SPEC33)
        np33 = enumerate_np(SPEC33)
        for g in (dictator_rule(2, full), constant_rule(1, full)):
            self.assertTrue(is_ubm(g))
            self.assertIsNone(find_manipulation(g.restrict_to(np33)))


@tag('slow')
class STopDominatorTests(SimpleTestCase):

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.rule = s_top_dominator_rule(S_ABC, SPEC34)

    def test_examples(self):
        self.assertEqual(evaluate(self.rule, parse_profile('abcd cdab dcba', SPEC34)), 0)
        self.assertEqual(evaluate(self.rule, parse_profile('dabc dabc dbac', SPEC34)), 3)

    def test_several_dominators_fall_back_to_the_s_top(self):
        spec25 = DomainSpec(2, 5)
        rule = s_top_dominator_rule(S_ABC, spec25)
        # d and e both dominate a
        self.assertEqual(evaluate(rule, parse_profile('deabc edabc', spec25)), 0)
        self.assertEqual(evaluate(rule, parse_profile('deabc eabdc', spec25)), 4)

    def test_full_range(self):
        self.assertEqual(range_of(self.rule), frozenset(range(4)))

    def test_dominator_override_admits_a_harmful_deviation(self):
        u = parse_profile('dabc dbac adbc', SPEC34)
        deviation = parse_profile('dbac dbac adbc', SPEC34)
        before, after = evaluate(self.rule, u), evaluate(self.rule, deviation)
        self.assertEqual((before, after), (0, 3))
        self.assertTrue(u.ordering(1).prefers(after, before))
        self.assertTrue(u.ordering(3).prefers(before, after))
        self.assertFalse(is_ubm(self.rule))

    def test_restriction_to_np_is_the_s_top_of_individual_one(self):
        np34 = enumerate_np(SPEC34)
        restricted = self.rule.restrict_to(np34)
        for p, a in zip(np34, restricted.choice):
            self.assertEqual(a, p.ordering(1).top_within(S_ABC))
        self.assertEqual(range_of(restricted), S_ABC)
        self.assertIsNone(find_manipulation(restricted))
        self.assertEqual(find_dictator(restricted), 1)

    def test_lift_of_the_restriction_is_dictatorial(self):
        restricted = self.rule.restrict_to(enumerate_np(SPEC34))
        lifted = restricted_range_lift(restricted, (3,))
        self.assertEqual(lifted.spec.labels, 'abc')
        self.assertEqual(len(lifted.domain), 102)
        self.assertEqual(find_dictator(lifted), 1)
        self.assertIsNone(find_manipulation(lifted))
        self.assertEqual(lifted, dictator_rule(1, lifted.domain))


class RestrictedRangeLiftTests(SimpleTestCase):

    def setUp(self):
        np34 = enumerate_np(SPEC34)
        # individual 3's favourite among a, b, c
        self.g_star = Rule(np34, tuple(p.ordering(3).top_within(S_ABC) for p in np34), 'top-3-within-abc')

    def test_embedding_puts_outside_alternatives_first_for_one_and_last_for_others(self):
        u = parse_profile('abc bca cab', SPEC33)
        u_star = parse_profile('dabc bcad cabd', SPEC34)
        lifted = restricted_range_lift(self.g_star, (3,))
        self.assertEqual(evaluate(lifted, u), evaluate(self.g_star, u_star))

    def test_lift_transfers_the_dictator(self):
        lifted = restricted_range_lift(self.g_star, (3,))
        self.assertEqual(find_dictator(lifted), 3)
        self.assertIsNone(find_manipulation(lifted))

    def test_order_must_cover_the_complement(self):
        with self.assertRaises(PreconditionError):
            restricted_range_lift(self.g_star, ())
        with self.assertRaises(PreconditionError):
            restricted_range_lift(self.g_star, (0,))

    def test_range_too_small(self):
        np34 = enumerate_np(SPEC34)
        with self.assertRaises(PreconditionError):
            restricted_range_lift(constant_rule(0, np34), (1, 2, 3))

    def test_lifted_profiles_must_lie_in_the_domain(self):
        np34 = enumerate_np(SPEC34)
        top_three = [p for p in np34 if p.ordering(1).top != 3]
        partial = Domain(SPEC34, tuple(top_three), 'partial')
        g = Rule(partial, tuple(p.ordering(2).top_within(S_ABC) for p in partial))
        with self.assertRaises(ConstructionError):
            restricted_range_lift(g, (3,))

    @skipUnless(settings.NPV_STRETCH, 'NP(3,5) enumeration is a stretch run')
    def test_lift_is_invariant_to_the_outside_order(self):
        spec35 = DomainSpec(3, 5)
        np35 = enumerate_np(spec35)
        g_star = Rule(np35, tuple(p.ordering(2).top_within(S_ABC) for p in np35))
        first = restricted_range_lift(g_star, (3, 4))
        second = restricted_range_lift(g_star, (4, 3))
        self.assertEqual(first.choice, second.choice)
        self.assertEqual(find_dictator(first), 2)
