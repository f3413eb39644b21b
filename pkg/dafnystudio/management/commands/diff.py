from django.conf import settings
from django.core.management.base import CommandError

from dafnystudio.dafny_surface.diff_check import diff_check
from dafnystudio.management.base import DafnyCommand


class Command(DafnyCommand):
    help = 'Checks that a candidate is its base program plus annotations. Exits with 1 otherwise.'

    def add_arguments(self, parser):
        parser.add_argument('candidate')
        parser.add_argument('base')

    def handle(self, *args, **options):
        verdict = diff_check(self.read_source(options['candidate']), self.read_source(options['base']),
                             settings.STRIPPABLE_KINDS, settings.LEMMA_ALLOWLIST)
        self.stdout.write(str(verdict))
        if not verdict.is_equal:
            raise CommandError(verdict.verdict.value, returncode=1)
