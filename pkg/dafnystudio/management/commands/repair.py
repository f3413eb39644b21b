from django.core.management.base import CommandError

from dafnystudio.corpus.bench import CorpusError
from dafnystudio.corpus.repair import repair_dataset
from dafnystudio.management.base import DafnyCommand


class Command(DafnyCommand):
    help = 'Regenerates base programs from annotated ground truths and reports which old bases were broken.'

    def add_arguments(self, parser):
        parser.add_argument('ground_truth_dir')
        parser.add_argument('--out', required=True, help='directory of base programs')
        self.add_config_argument(parser)

    def handle(self, *args, **options):
        cfg = self.load_config(options)
        try:
            report = repair_dataset(options['ground_truth_dir'], options['out'], cfg.verifier,
                                    strippable=cfg.strippable, lemma_allowlist=cfg.lemma_allowlist)
        except CorpusError as e:
            raise CommandError(str(e))
        for program_id in report.broken_ids():
            self.stdout.write('was broken: {0}'.format(program_id))
        self.write_json(report.totals)
