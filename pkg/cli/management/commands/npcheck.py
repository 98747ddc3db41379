import logging

from django.core.management.base import BaseCommand, CommandError

from cli.config import JSON, TEXT, RunConfigSerializer
from cli.runner import COMMANDS, EXIT_USAGE, EXIT_VIOLATION, run
from core.exceptions import NPVerifyError, SolverSoundnessError

logger = logging.getLogger(__name__)

OPTION_KEYS = (
    'n', 'm', 'labels', 'output', 'cap', 'time_limit', 'seed', 'stretch', 'override_caps',
    'rule', 'rule_file', 'merge', 'cnf_out', 'from_profile', 'to_profile', 's', 'path_out',
)


class Command(BaseCommand):
    help = 'Verify strategy-proofness facts on the non-Paretian domain NP(n,m)'

    def add_arguments(self, parser):
        parser.add_argument('subcommand', choices=sorted(COMMANDS), help='Check to run')
        parser.add_argument('--n', type=int, default=3, help='Number of individuals')
        parser.add_argument('--m', type=int, default=3, help='Number of alternatives')
        parser.add_argument('--labels', help='Alternative labels, one character each')
        parser.add_argument('--output', choices=[TEXT, JSON], default=TEXT)
        parser.add_argument('--cap', type=int, help='Solver solution cap')
        parser.add_argument('--time-limit', type=float, help='Solver time limit in seconds')
        parser.add_argument('--seed', type=int, help='Sampling seed')
        parser.add_argument('--stretch', action='store_true', help='Allow minutes-scale runs')
        parser.add_argument('--override-caps', action='store_true', help='Ignore enumeration caps')
        parser.add_argument('--rule', help='Named rule, e.g. dictator-1, or a demo rule')
        parser.add_argument('--rule-file', help='Rule table file')
        parser.add_argument('--merge', help="Merge specification 'w,z=x*'")
        parser.add_argument('--cnf-out', help='DIMACS output path; the variable map goes to <path>.map')
        parser.add_argument('--from', dest='from_profile', help="Path start, e.g. 'abc bca cab'")
        parser.add_argument('--to', dest='to_profile', help='Path end')
        parser.add_argument('--s', help='Labels of the fixed set S')
        parser.add_argument('--path-out', help='Write the constructed path here')

    def handle(self, *args, **options):
        data = {key: options[key] for key in OPTION_KEYS if options.get(key) is not None}
        serializer = RunConfigSerializer(data=data)
        if not serializer.is_valid():
            raise CommandError(f"Invalid options: {serializer.errors}", returncode=EXIT_USAGE)
        config = serializer.validated_data

        try:
            outcome = run(options['subcommand'], config)
        except SolverSoundnessError as exc:
            logger.error(f"Solver soundness check failed: {exc}")
            raise CommandError(str(exc), returncode=EXIT_VIOLATION)
        except NPVerifyError as exc:
            raise CommandError(str(exc), returncode=EXIT_USAGE)
        except OSError as exc:
            raise CommandError(f"I/O error: {exc}", returncode=EXIT_USAGE)

        self.stdout.write(outcome.rendered)
        if outcome.exit_status == EXIT_VIOLATION:
            raise CommandError(f"{options['subcommand']} found a property violation", returncode=EXIT_VIOLATION)
