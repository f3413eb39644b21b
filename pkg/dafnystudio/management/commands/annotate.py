import os

from django.core.management.base import CommandError

from dafnystudio.file_system_utils.file_system_client import FileSystemClient
from dafnystudio.llm_gateway.providers import RecordingProvider
from dafnystudio.management.base import DafnyCommand
from dafnystudio.orchestration.pipeline import PipelineDeps, run_pipeline


class Command(DafnyCommand):
    help = 'Annotates one Dafny base program until it verifies or the attempt budget is spent.'

    def add_arguments(self, parser):
        parser.add_argument('file')
        self.add_config_argument(parser)
        self.add_pipeline_arguments(parser)
        parser.add_argument('--record-transcript', help='append every prompt and response to this transcript')
        parser.add_argument('--out', help='write the annotated program here instead of stdout')

    def handle(self, *args, **options):
        base = self.read_source(options['file'])
        cfg = self.load_config(options)
        deps = PipelineDeps.from_config(cfg)
        if options['record_transcript']:
            path = os.path.abspath(options['record_transcript'])
            meta = {'modelId': cfg.provider.model_id, 'kind': cfg.provider.kind.value}
            deps.complete = RecordingProvider(deps.complete, path, meta)
            if deps.schedule is not None:
                deps.schedule = deps.schedule.wrapped(lambda provider: RecordingProvider(provider, path, meta))

        result = run_pipeline(base, cfg, deps)
        self.stderr.write('{0}: {1} attempt(s)'.format(result.label, len(result.attempts)))
        if not result.verified:
            raise CommandError('No verified annotation found: {0} {1}'.format(result.label,
                                                                               result.failure_detail).strip())
        if options['out']:
            status = FileSystemClient().write_text_file(options['out'], result.final_program)
            if not status.ok:
                raise CommandError('Cannot write {0}: {1}'.format(options['out'], status.message))
        else:
            self.stdout.write(result.final_program, ending='' if result.final_program.endswith('\n') else '\n')
