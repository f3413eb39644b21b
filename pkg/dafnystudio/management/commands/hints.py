import os

from django.conf import settings
from django.core.management.base import CommandError

from dafnystudio.hints.errors import TacticGenerationError
from dafnystudio.hints.generation import generate_tactic
from dafnystudio.hints.store import load_tactics, promote_tactic, quarantine_tactic
from dafnystudio.hints.tactics import TacticLoadError
from dafnystudio.llm_gateway.errors import ProviderError
from dafnystudio.llm_gateway.providers import shared_provider
from dafnystudio.management.base import DafnyCommand


class Command(DafnyCommand):
    help = 'Lists the tactic store or generates a tactic from a failed attempt and its verified ground truth.'

    def add_arguments(self, parser):
        subparsers = parser.add_subparsers(dest='action', required=True)

        listing = subparsers.add_parser('list')
        listing.add_argument('--store', default=settings.TACTICS_DIR)

        gen = subparsers.add_parser('gen')
        gen.add_argument('failed')
        gen.add_argument('ground_truth')
        gen.add_argument('--config')
        gen.add_argument('--provider', choices=['remote', 'replay', 'scripted'])
        gen.add_argument('--transcript')
        gen.add_argument('--store', default=settings.TACTICS_DIR)
        gen.add_argument('--quarantine', default=settings.GENERATED_TACTICS_DIR)
        gen.add_argument('--promote', action='store_true', help='copy the new tactic into the store')

    def handle(self, *args, **options):
        if options['action'] == 'list':
            self.list_tactics(options['store'])
        else:
            self.generate(options)

    def list_tactics(self, store_dir):
        try:
            store = load_tactics(store_dir)
        except TacticLoadError as e:
            raise CommandError(str(e))
        for position, tactic in enumerate(store, start=1):
            self.stdout.write('{0:2d}. {1} ({2}, {3})'.format(position, tactic.title, tactic.id,
                                                             tactic.provenance.kind.value))

    def generate(self, options):
        cfg = self.load_config(options)
        try:
            tactic = generate_tactic(self.read_source(options['failed']), self.read_source(options['ground_truth']),
                                     shared_provider(cfg.provider),
                                     failed_ref=os.path.basename(options['failed']),
                                     ground_truth_ref=os.path.basename(options['ground_truth']))
        except (TacticGenerationError, ProviderError) as e:
            raise CommandError(str(e))

        status, path = quarantine_tactic(tactic, options['quarantine'])
        if not status.ok:
            raise CommandError('Cannot quarantine tactic: {0}'.format(status.message))
        self.stdout.write(tactic.to_text(), ending='')
        self.stderr.write('Quarantined at {0}'.format(path))
        if options['promote']:
            status = promote_tactic(tactic.id, options['store'], options['quarantine'])
            if not status.ok:
                raise CommandError('Cannot promote tactic {0}: {1}'.format(tactic.id, status.message))
            self.stderr.write('Promoted into {0}'.format(options['store']))
