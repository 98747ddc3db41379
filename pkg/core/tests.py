import io

from django.test import SimpleTestCase, override_settings, tag
from hypothesis import given, settings as hypothesis_settings, strategies as st

from .codec import format_profile, parse_alternatives, parse_profile
from .enumeration import (
    count_np_inclusion_exclusion, dump_domain, enumerate_full, enumerate_np, enumerate_vp,
)
from .exceptions import (
    DomainCapExceeded, InvalidRestrictionError, PreconditionError, ProfileNotInDomain,
    ProfileParseError, SpecMismatchError,
)
from .models import (
    Domain, DomainSpec, Ordering, Profile, all_orderings, h_variant_of, inverse_ordering,
    is_np_member, pareto_dominates, restrict_ordering,
)

SPEC33 = DomainSpec(3, 3)

orderings3 = st.permutations([0, 1, 2]).map(lambda seq: Ordering(tuple(seq)))
profiles33 = st.lists(orderings3, min_size=3, max_size=3).map(lambda os: Profile(tuple(os)))


def p33(text):
    return parse_profile(text, SPEC33)


class OrderingTests(SimpleTestCase):

    def test_ordering_counts(self):
        self.assertEqual(len(all_orderings(1)), 1)
        self.assertEqual(len(all_orderings(3)), 6)
        self.assertEqual(len(all_orderings(4)), 24)

    def test_orderings_are_lexicographic(self):
        orderings = all_orderings(3)
        self.assertEqual(orderings[0].rank_seq, (0, 1, 2))
        self.assertEqual([o.rank_seq for o in orderings], sorted(o.rank_seq for o in orderings))

    def test_position_lookup_inverts_rank_sequence(self):
        for o in all_orderings(4):
            for k, a in enumerate(o.rank_seq):
                self.assertEqual(o.pos[a], k)

    @override_settings(NPV_MAX_ALTERNATIVES=3)
    def test_alternative_cap_is_enforced(self):
        with self.assertRaises(DomainCapExceeded) as ctx:
            all_orderings(4)
        self.assertIn('NPV_MAX_ALTERNATIVES', str(ctx.exception))
        self.assertEqual(len(all_orderings(4, override_caps=True)), 24)

    def test_restriction(self):
        abc = Ordering((0, 1, 2))
        self.assertEqual(restrict_ordering(abc, {0, 2}).rank_seq, (0, 2))
        self.assertEqual(restrict_ordering(abc, {0, 1, 2}), abc)
        self.assertEqual(restrict_ordering(Ordering((2, 0, 1)), {0, 1}).rank_seq, (0, 1))

    def test_empty_restriction_is_rejected(self):
        with self.assertRaises(InvalidRestrictionError):
            restrict_ordering(Ordering((0, 1, 2)), set())

    def test_inverse(self):
        self.assertEqual(inverse_ordering(Ordering((0, 1, 2))).rank_seq, (2, 1, 0))
        # badc -> cdab
        self.assertEqual(inverse_ordering(Ordering((1, 0, 3, 2))).rank_seq, (2, 3, 0, 1))
        for o in all_orderings(3):
            self.assertEqual(inverse_ordering(inverse_ordering(o)), o)

    @given(st.permutations([0, 1, 2, 3]), st.sets(st.sampled_from([0, 1, 2, 3]), min_size=1))
    def test_restriction_commutes_with_inverse(self, seq, subset):
        o = Ordering(tuple(seq))
        self.assertEqual(o.inverse().restrict(subset), o.restrict(subset).inverse())


class ProfileTests(SimpleTestCase):

    def test_pareto_domination(self):
        self.assertTrue(pareto_dominates(p33('abc abc abc'), 0, 1))
        self.assertFalse(pareto_dominates(p33('abc bca cab'), 0, 1))
        p = p33('abc bac abc')
        self.assertFalse(any(pareto_dominates(p, 2, y) for y in (0, 1)))

    def test_pareto_needs_distinct_alternatives(self):
        with self.assertRaises(PreconditionError):
            pareto_dominates(p33('abc bca cab'), 0, 0)

    def test_np_membership(self):
        self.assertTrue(is_np_member(p33('abc bca cab')))
        self.assertFalse(is_np_member(p33('abc abc abc')))
        xyz = DomainSpec(3, 3, 'xyz')
        self.assertFalse(is_np_member(parse_profile('zxy zyx zxy', xyz)))

    @given(profiles33)
    def test_unanimity_formulation_matches_definition(self, p):
        direct = not any(
            pareto_dominates(p, x, y) for x in range(3) for y in range(3) if x != y
        )
        self.assertEqual(is_np_member(p), direct)

    @given(profiles33, st.permutations([0, 1, 2]))
    def test_np_closed_under_permuting_individuals(self, p, sigma):
        permuted = Profile(tuple(p.orderings[k] for k in sigma))
        self.assertEqual(is_np_member(p), is_np_member(permuted))

    @given(profiles33, st.permutations([0, 1, 2]))
    def test_np_closed_under_relabeling(self, p, sigma):
        relabeled = Profile(tuple(Ordering(tuple(sigma[a] for a in o.rank_seq)) for o in p.orderings))
        self.assertEqual(is_np_member(p), is_np_member(relabeled))

    def test_h_variants(self):
        u = p33('abc bca cab')
        self.assertIsNone(h_variant_of(u, u))
        self.assertEqual(h_variant_of(u, p33('acb bca cab')), 1)
        self.assertIsNone(h_variant_of(u, p33('acb bac cab')))

    def test_h_variant_needs_matching_specs(self):
        with self.assertRaises(SpecMismatchError):
            h_variant_of(p33('abc bca cab'), parse_profile('abc bca', DomainSpec(2, 3)))


class EnumerationTests(SimpleTestCase):

    def test_np_counts(self):
        self.assertEqual(len(enumerate_np(SPEC33)), 102)
        self.assertEqual(len(enumerate_np(DomainSpec(4, 3))), 906)
        self.assertEqual(len(enumerate_np(DomainSpec(2, 2))), 2)

    def test_np_counts_match_inclusion_exclusion(self):
        for n, m in [(1, 2), (2, 2), (3, 2), (6, 2), (2, 3), (3, 3), (4, 3), (5, 3), (2, 4), (3, 4), (2, 5)]:
            with self.subTest(n=n, m=m):
                self.assertEqual(len(enumerate_np(DomainSpec(n, m))), count_np_inclusion_exclusion(n, m))

    @tag('slow')
    def test_inclusion_exclusion_at_the_million_profile_bound(self):
        for n, m in [(4, 4), (2, 6)]:
            with self.subTest(n=n, m=m):
                self.assertEqual(len(enumerate_np(DomainSpec(n, m))), count_np_inclusion_exclusion(n, m))

    def test_inclusion_exclusion_constants(self):
        self.assertEqual(count_np_inclusion_exclusion(3, 3), 216 - (3 * 54 - 3 * 18 + 6))
        self.assertEqual(count_np_inclusion_exclusion(4, 3), 1296 - (3 * 162 - 3 * 34 + 6))
        self.assertEqual(count_np_inclusion_exclusion(2, 5), 120)
        self.assertEqual(count_np_inclusion_exclusion(1, 5), 0)

    def test_domain_is_canonical_and_indexed(self):
        domain = enumerate_np(SPEC33)
        keys = [p.key for p in domain]
        self.assertEqual(keys, sorted(keys))
        for k, p in enumerate(domain):
            self.assertEqual(domain.position(p), k)

    def test_np_count_invariant_under_permuting_individuals(self):
        domain = enumerate_np(SPEC33)
        swapped = {Profile((p.orderings[2], p.orderings[0], p.orderings[1])) for p in domain}
        self.assertEqual(swapped, set(domain.profiles))

    @override_settings(NPV_MAX_PROFILES=100)
    def test_profile_cap_names_the_setting(self):
        with self.assertRaises(DomainCapExceeded) as ctx:
            enumerate_np(SPEC33)
        self.assertIn('NPV_MAX_PROFILES', str(ctx.exception))
        self.assertEqual(len(enumerate_np(SPEC33, override_caps=True)), 102)

    def test_voting_paradox_profiles(self):
        vp = enumerate_vp(SPEC33)
        self.assertEqual(len(vp), 12)
        self.assertIn(p33('abc bca cab'), vp)
        np_domain = enumerate_np(SPEC33)
        self.assertTrue(all(p in np_domain for p in vp))

    def test_voting_paradox_needs_odd_n(self):
        with self.assertRaises(PreconditionError):
            enumerate_vp(DomainSpec(4, 3))

    def test_full_domain(self):
        full = enumerate_full(SPEC33)
        self.assertEqual(len(full), 216)
        self.assertTrue(full.is_full)

    def test_position_distinguishes_reasons(self):
        np_domain = enumerate_np(SPEC33)
        with self.assertRaises(ProfileNotInDomain) as ctx:
            np_domain.position(p33('abc abc abc'))
        self.assertEqual(ctx.exception.reason, ProfileNotInDomain.OUTSIDE_NP)
        vp = enumerate_vp(SPEC33)
        with self.assertRaises(ProfileNotInDomain) as ctx:
            vp.position(p33('abc abc cba'))
        self.assertEqual(ctx.exception.reason, ProfileNotInDomain.OUTSIDE_DOMAIN)

    def test_custom_domain_rejects_duplicates(self):
        u = p33('abc bca cab')
        with self.assertRaises(PreconditionError):
            Domain(SPEC33, (u, u))

    def test_variant_table_matches_pairwise_scan(self):
        vp = enumerate_vp(SPEC33)
        expected = sorted(
            (k, p.h_variant_of(q), j)
            for k, p in enumerate(vp) for j, q in enumerate(vp)
            if p.h_variant_of(q) is not None
        )
        self.assertEqual(sorted(vp.variant_pairs()), expected)

    def test_two_individuals_have_no_variants(self):
        domain = enumerate_np(DomainSpec(2, 3))
        self.assertEqual(list(domain.variant_pairs()), [])

    def test_dump_domain(self):
        stream = io.StringIO()
        dump_domain(enumerate_vp(SPEC33), stream)
        lines = stream.getvalue().splitlines()
        self.assertEqual(len(lines), 12)
        self.assertIn('abc bca cab', lines)


class CodecTests(SimpleTestCase):

    def test_parse(self):
        p = p33('abc bca cab')
        self.assertEqual(p.key, ((0, 1, 2), (1, 2, 0), (2, 0, 1)))

    def test_canonical_form(self):
        self.assertEqual(format_profile(p33('  abc   bca cab '), SPEC33), 'abc bca cab')

    def test_wrong_token_count(self):
        with self.assertRaises(ProfileParseError):
            p33('abc abc')

    def test_duplicate_label_reports_position(self):
        with self.assertRaises(ProfileParseError) as ctx:
            p33('aac bca cab')
        self.assertEqual(ctx.exception.position, 1)

    def test_unknown_label(self):
        with self.assertRaises(ProfileParseError) as ctx:
            p33('abc bcq cab')
        self.assertEqual(ctx.exception.position, 2)

    @hypothesis_settings(max_examples=50)
    @given(profiles33)
    def test_format_then_parse(self, p):
        self.assertEqual(p33(format_profile(p, SPEC33)), p)

    def test_alternative_sets(self):
        self.assertEqual(parse_alternatives('ca', SPEC33), frozenset({0, 2}))
