from django.core.management.base import CommandError

from dafnystudio.corpus.bench import CorpusError
from dafnystudio.corpus.curate import curate
from dafnystudio.llm_gateway.providers import shared_provider
from dafnystudio.management.base import DafnyCommand
from dafnystudio.verification.dafny_verifier import DafnyVerifier


class Command(DafnyCommand):
    help = 'Builds fine-tuning examples from bench run artifacts and verified ground truths.'

    def add_arguments(self, parser):
        parser.add_argument('run_dir')
        parser.add_argument('ground_truth_dir')
        parser.add_argument('--out', required=True, help='JSON lines output file')
        self.add_config_argument(parser)
        parser.add_argument('--provider', choices=['remote', 'replay', 'scripted'])
        parser.add_argument('--transcript')

    def handle(self, *args, **options):
        cfg = self.load_config(options)
        try:
            count = curate(options['run_dir'], options['ground_truth_dir'], shared_provider(cfg.provider),
                           options['out'], DafnyVerifier(cfg.verifier), cfg.strippable, cfg.lemma_allowlist)
        except (CorpusError, OSError) as e:
            raise CommandError(str(e))
        self.stdout.write('{0} examples written to {1}'.format(count, options['out']))
