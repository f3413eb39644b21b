from django.core.management.base import CommandError

from dafnystudio.dafny_surface.scanner import parse_program
from dafnystudio.dafny_surface.stripping import strip
from dafnystudio.management.base import DafnyCommand


class Command(DafnyCommand):
    help = 'Prints a program with its proof annotations removed.'

    def add_arguments(self, parser):
        parser.add_argument('file')
        parser.add_argument('--kinds', help='comma separated annotation kinds, e.g. LoopInvariant,AssertStmt')

    def handle(self, *args, **options):
        program = parse_program(self.read_source(options['file']))
        if not program.ok:
            raise CommandError('{0} does not scan: {1}'.format(options['file'], program.scan_status))
        kinds = [kind.strip() for kind in options['kinds'].split(',') if kind.strip()] if options['kinds'] else None
        try:
            self.stdout.write(strip(program, kinds), ending='')
        except ValueError as e:
            raise CommandError(str(e))
