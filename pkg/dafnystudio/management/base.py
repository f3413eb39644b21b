import json
import logging
import os
from dataclasses import replace

from django.core.exceptions import ImproperlyConfigured
from django.core.management.base import BaseCommand, CommandError

from dafnystudio.file_system_utils.file_system_client import FileSystemClient
from dafnystudio.hints.store import HintMode
from dafnystudio.llm_gateway.providers import ProviderKind
from dafnystudio.orchestration.config import PipelineConfig

logger = logging.getLogger(__name__)


class DafnyCommand(BaseCommand):
    """Shared options: run configuration file and the pipeline overrides."""

    def add_config_argument(self, parser):
        parser.add_argument('--config', help='JSON run configuration overlaid on the settings')

    def add_pipeline_arguments(self, parser):
        parser.add_argument('--provider', choices=[kind.value for kind in ProviderKind])
        parser.add_argument('--transcript', help='transcript file for the replay provider')
        parser.add_argument('--strict-replay', action='store_true',
                            help='fail on a prompt digest missing from the transcript')
        parser.add_argument('--max-attempts', type=int)
        parser.add_argument('--no-prune', action='store_true')
        parser.add_argument('--hints', choices=[mode.value for mode in HintMode])

    def load_config(self, options) -> PipelineConfig:
        try:
            cfg = PipelineConfig.from_json(options['config']) if options.get('config') \
                else PipelineConfig.from_settings()
            provider = cfg.provider
            if options.get('provider'):
                provider = replace(provider, kind=ProviderKind(options['provider']))
            if options.get('transcript'):
                provider = replace(provider, transcript_path=os.path.abspath(options['transcript']))
            if options.get('strict_replay'):
                provider = replace(provider, strict=True)
            return cfg.with_overrides(max_attempts=options.get('max_attempts'),
                                      prune_enabled=False if options.get('no_prune') else None,
                                      hint_mode=options.get('hints'),
                                      provider=provider.validate())
        except ImproperlyConfigured as e:
            raise CommandError('Configuration error: {0}'.format(e))

    def read_source(self, path: str) -> str:
        status, text = FileSystemClient.read_text_file(path)
        if not status.ok:
            raise CommandError('Cannot read {0}: {1}'.format(path, status.message))
        return text

    def write_json(self, data, stream=None):
        (stream or self.stdout).write(json.dumps(data, indent=2, sort_keys=True))
