import json

from django.core.management.base import CommandError

from dafnystudio.dafny_surface.scanner import parse_program
from dafnystudio.management.base import DafnyCommand
from dafnystudio.pruning.pruner import prune_non_inductive
from dafnystudio.verification.dafny_verifier import DafnyVerifier


class Command(DafnyCommand):
    help = 'Removes non-inductive loop invariants; prints the result and writes the trace to stderr.'

    def add_arguments(self, parser):
        parser.add_argument('file')
        self.add_config_argument(parser)

    def handle(self, *args, **options):
        cfg = self.load_config(options)
        program = parse_program(self.read_source(options['file']), cfg.lemma_allowlist)
        if not program.ok:
            raise CommandError('{0} does not scan: {1}'.format(options['file'], program.scan_status))
        result = prune_non_inductive(program, DafnyVerifier(cfg.verifier), lemma_allowlist=cfg.lemma_allowlist)
        self.stdout.write(result.program.source, ending='')
        self.stderr.write(json.dumps(result.trace.to_dict(), indent=2, sort_keys=True))
