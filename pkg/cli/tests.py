import io
import json
import os
import tempfile

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, tag

from core.enumeration import enumerate_np
from core.exceptions import RuleFileError
from core.models import DomainSpec
from rules.constructions import dictator_rule
from rules.storage import load_rule, save_rule

from .config import RunConfigSerializer
from .runner import EXIT_OK, EXIT_VIOLATION, run

SPEC33 = DomainSpec(3, 3)


def npcheck(*args):
    out = io.StringIO()
    call_command('npcheck', *args, '--output=json', stdout=out)
    return json.loads(out.getvalue())


class CommandTests(SimpleTestCase):

    def assertExitStatus(self, status, *args):
        with self.assertRaises(CommandError) as ctx:
            call_command('npcheck', *args, stdout=io.StringIO())
        self.assertEqual(ctx.exception.returncode, status)

    def test_domain_stats(self):
        report = npcheck('domain-stats', '--n=3', '--m=3')
        self.assertTrue(report['passed'])
        self.assertEqual(report['command'], 'domain-stats')
        result = report['result']
        self.assertEqual((result['total'], result['np'], result['vp']), (216, 102, 12))
        self.assertEqual(result['np_oracle'], 102)
        self.assertEqual(result['orderings'], 6)

    def test_domain_stats_oracle_beyond_four_alternatives(self):
        result = npcheck('domain-stats', '--n=2', '--m=5')['result']
        self.assertEqual((result['np'], result['np_oracle']), (120, 120))
        self.assertTrue(result['oracle_agrees'])
        self.assertIsNone(result['vp'])

    def test_reports_are_byte_identical(self):
        first, second = io.StringIO(), io.StringIO()
        call_command('npcheck', 'verify-basis', '--output=json', stdout=first)
        call_command('npcheck', 'verify-basis', '--output=json', stdout=second)
        self.assertEqual(first.getvalue(), second.getvalue())

    def test_verify_basis(self):
        report = npcheck('verify-basis', '--n=3', '--m=3')
        self.assertTrue(report['passed'])
        self.assertEqual(report['result']['solutions'], 3)
        self.assertTrue(report['result']['all_dictatorial'])
        self.assertNotIn('elapsed', report['result']['stats'])
        self.assertEqual(report['config']['solution_cap'], 64)

    def test_majority_superset_demo(self):
        result = npcheck('demo', '--rule=majority-superset')['result']
        self.assertTrue(result['strategy_proof'])
        self.assertIsNone(result['dictator'])
        self.assertEqual(result['range'], 'xyz')
        self.assertEqual(result['profiles'], 110)

    def test_plurality_demo(self):
        result = npcheck('demo', '--rule=plurality')['result']
        self.assertFalse(result['strategy_proof'])
        self.assertIsNotNone(result['witness'])

    def test_violation_exits_one(self):
        self.assertExitStatus(EXIT_VIOLATION, 'check-rule', '--rule=anti-dictator-1')
        self.assertExitStatus(EXIT_VIOLATION, 'find-dictator', '--rule=plurality')

    def test_usage_errors_exit_two(self):
        self.assertExitStatus(2, 'check-rule')
        self.assertExitStatus(2, 'domain-stats', '--labels=ab')
        self.assertExitStatus(2, 'verify-basis', '--n=4')
        self.assertExitStatus(2, 'export-cnf')
        self.assertExitStatus(2, 'verify-merge', '--m=4')
        self.assertExitStatus(2, 'spath', '--from=abc bca cab')
        self.assertExitStatus(2, 'demo', '--rule=borda')

    def test_text_output(self):
        out = io.StringIO()
        call_command('npcheck', 'domain-stats', stdout=out)
        self.assertTrue(out.getvalue().startswith('domain-stats: PASS'))
        self.assertIn('np: 102', out.getvalue())

    def test_single_path(self):
        with tempfile.TemporaryDirectory() as tmp:
            path_out = os.path.join(tmp, 'path.txt')
            result = npcheck(
                'spath', '--from=cab acb bca', '--to=cab abc bac', '--s=ab', f'--path-out={path_out}',
            )['result']
            with open(path_out, encoding='utf-8') as stream:
                self.assertEqual(stream.readline().strip(), 'S=ab')
        self.assertTrue(result['validation']['valid'])
        self.assertEqual(result['s_set'], 'ab')
        self.assertEqual(result['steps'][0], 'cab acb bca')
        self.assertLessEqual(result['oracle_length'], result['length'])

    def test_sweep_for_one_s(self):
        report = npcheck('spath', '--s=a')
        self.assertTrue(report['passed'])
        self.assertEqual(report['result']['mode'], 'exhaustive')
        self.assertEqual(report['result']['reports'][0]['fibers'], 1)

    def test_export_cnf(self):
        with tempfile.TemporaryDirectory() as tmp:
            target = os.path.join(tmp, 'np33.cnf')
            result = npcheck('export-cnf', f'--cnf-out={target}')['result']
            with open(target, encoding='utf-8') as stream:
                self.assertTrue(stream.readline().startswith('p cnf 306 '))
            with open(f'{target}.map', encoding='utf-8') as stream:
                self.assertEqual(len(stream.readlines()), 306)
        self.assertEqual(result['external_status'], 'SAT')
        self.assertTrue(result['external_rule_verified'])

    @tag('slow')
    def test_verify_lift_and_merge(self):
        lift = npcheck('verify-lift', '--n=4')
        self.assertTrue(lift['passed'])
        self.assertEqual(lift['result']['source'], 'dictators')
        self.assertFalse(any(c['hypothesis_holds'] for c in lift['result']['conflicts']))
        merge = npcheck('verify-merge', '--m=4', '--merge=c,d=x')
        self.assertTrue(merge['passed'])
        self.assertEqual([r['dictator_after'] for r in merge['result']['rules']], [1, 2, 3])

    @tag('slow')
    def test_decisive_sweep(self):
        result = npcheck('decisive-sweep')['result']
        self.assertEqual(result['decisiveness']['unsat'], result['decisiveness']['queries'])
        self.assertEqual({q['status'] for q in result['vp_range']}, {'UNSAT'})

    @tag('slow')
    def test_s_top_dominator_demo(self):
        report = npcheck('demo', '--rule=s-top-dominator', '--m=4')
        result = report['result']
        self.assertTrue(report['passed'])
        self.assertFalse(result['ubm'])
        self.assertEqual(result['restricted_range'], 'abc')
        self.assertEqual(result['lift']['dictator'], 1)
        self.assertTrue(result['lift']['order_invariant'])
        self.assertTrue(result['equivalence']['holds'])
        self.assertEqual(result['equivalence']['s_set'], 'abc')
        self.assertIsNone(result['equivalence']['pair'])


class RunnerTests(SimpleTestCase):

    def config(self, **data):
        serializer = RunConfigSerializer(data=data)
        self.assertTrue(serializer.is_valid(), serializer.errors)
        return serializer.validated_data

    def test_run_outcome(self):
        outcome = run('check-rule', self.config(rule='dictator-2', output='json'))
        self.assertEqual(outcome.exit_status, EXIT_OK)
        self.assertEqual(outcome.report['result']['dictator'], 2)
        self.assertEqual(json.loads(outcome.rendered)['config']['rule'], 'dictator-2')

    def test_config_validation(self):
        self.assertFalse(RunConfigSerializer(data={'from_profile': 'abc bca cab'}).is_valid())
        self.assertFalse(RunConfigSerializer(data={'cap': 0}).is_valid())
        self.assertFalse(RunConfigSerializer(data={'rule': 'plurality', 'rule_file': 'x'}).is_valid())
        self.assertFalse(RunConfigSerializer(data={'s': 'az'}).is_valid())
        config = self.config(n=3, m=4, labels='wxyz', seed=5)
        self.assertEqual(config.spec, DomainSpec(3, 4, 'wxyz'))
        self.assertEqual(config.seed, 5)


class RuleFileTests(SimpleTestCase):

    def setUp(self):
        self.np33 = enumerate_np(SPEC33)
        sink = io.StringIO()
        save_rule(dictator_rule(1, self.np33), sink)
        self.lines = sink.getvalue().splitlines()

    def load(self, lines):
        return load_rule(io.StringIO('\n'.join(lines) + '\n'), self.np33)

    def test_round_trip(self):
        self.assertEqual(self.lines[0], '3 3 abc')
        self.assertEqual(len(self.lines), 103)
        self.assertEqual(self.load(self.lines), dictator_rule(1, self.np33))

    def test_comments_and_blank_lines(self):
        lines = ['# dictator 1', ''] + self.lines[:1] + [''] + self.lines[1:]
        self.assertEqual(self.load(lines), dictator_rule(1, self.np33))

    def test_missing_profile_is_named(self):
        with self.assertRaises(RuleFileError) as ctx:
            self.load(self.lines[:-1])
        self.assertIn(self.np33[101].to_text('abc'), str(ctx.exception))

    def test_wrong_domain(self):
        with self.assertRaises(RuleFileError) as ctx:
            self.load(['3 4 abcd'] + self.lines[1:])
        self.assertEqual(ctx.exception.line, 1)

    def test_unknown_label(self):
        lines = list(self.lines)
        lines[5] = lines[5][:-1] + 'q'
        with self.assertRaises(RuleFileError) as ctx:
            self.load(lines)
        self.assertEqual(ctx.exception.line, 6)

    def test_duplicate_entry(self):
        with self.assertRaises(RuleFileError) as ctx:
            self.load(self.lines + [self.lines[1]])
        self.assertIn('duplicate', str(ctx.exception))

    def test_profile_outside_np(self):
        with self.assertRaises(RuleFileError) as ctx:
            self.load(self.lines[:1] + ['abc abc abc -> a'] + self.lines[1:])
        self.assertIn('outside NP', str(ctx.exception))
        self.assertEqual(ctx.exception.line, 2)

    def test_command_reads_rule_files(self):
        with tempfile.TemporaryDirectory() as tmp:
            target = os.path.join(tmp, 'dictator.rule')
            with open(target, 'w', encoding='utf-8') as sink:
                save_rule(dictator_rule(3, self.np33), sink)
            report = npcheck('find-dictator', f'--rule-file={target}')
        self.assertTrue(report['passed'])
        self.assertEqual(report['result']['dictator'], 3)
