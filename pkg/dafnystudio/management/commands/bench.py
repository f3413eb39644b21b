import os

from django.conf import settings
from django.core.management.base import CommandError

from dafnystudio.corpus.bench import CorpusError, bench_run
from dafnystudio.management.base import DafnyCommand


class Command(DafnyCommand):
    help = 'Runs the annotation pipeline over every program of a corpus and writes a run report.'

    def add_arguments(self, parser):
        parser.add_argument('corpus_dir')
        self.add_config_argument(parser)
        self.add_pipeline_arguments(parser)
        parser.add_argument('--out', required=True, help='report directory')
        parser.add_argument('--workers', type=int, default=settings.BENCH_WORKERS)
        parser.add_argument('--no-diff-check', action='store_true',
                            help='testing only: skip the diff check and mark every result unsound')

    def handle(self, *args, **options):
        cfg = self.load_config(options)
        if options['no_diff_check']:
            cfg = cfg.with_overrides(diff_check_enabled=False)
            self.stderr.write('Diff check disabled: every result is UNSOUND')
        try:
            report = bench_run(options['corpus_dir'], cfg, options['workers'], os.path.abspath(options['out']))
        except CorpusError as e:
            raise CommandError(str(e))
        self.stdout.write('{0}/{1} verified ({2:.2%}); cumulative by attempt: {3}'.format(
            report.verified_count, report.total, report.verified_fraction, list(report.cumulative_by_attempt)))
