import json
import logging
from dataclasses import dataclass, field, fields, replace
from typing import Tuple

from django.conf import settings
from django.core.exceptions import ImproperlyConfigured

from dafnystudio.dafny_surface.program import strippable_set
from dafnystudio.hints.store import HintMode
from dafnystudio.llm_gateway.providers import ProviderConfig, ScheduleEntry, schedule_entries
from dafnystudio.verification.dafny_verifier import VerifierConfig

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PipelineConfig:
    max_attempts: int = 10
    verifier: VerifierConfig = VerifierConfig()
    strippable_kinds: Tuple[str, ...] = field(default=())
    hint_mode: HintMode = HintMode.ALL
    provider: ProviderConfig = ProviderConfig()
    provider_schedule: Tuple[ScheduleEntry, ...] = field(default=())
    prune_enabled: bool = True
    # test-only switch; every result of a run without it is marked unsound
    diff_check_enabled: bool = True
    prompt_token_ceiling: int = 0
    lemma_allowlist: Tuple[str, ...] = field(default=())
    tactics_dir: str = ''
    templates_dir: str = ''

    def __post_init__(self):
        if self.max_attempts < 0:
            raise ImproperlyConfigured('max_attempts must be >= 0, got {0}'.format(self.max_attempts))
        if not isinstance(self.hint_mode, HintMode):
            try:
                object.__setattr__(self, 'hint_mode', HintMode(self.hint_mode))
            except ValueError:
                raise ImproperlyConfigured('Unknown hint mode {0!r}'.format(self.hint_mode))
        try:
            strippable_set(self.strippable_kinds or None)
        except ValueError as e:
            raise ImproperlyConfigured(str(e))

    @property
    def strippable(self) -> frozenset:
        return strippable_set(self.strippable_kinds or None)

    @classmethod
    def from_settings(cls, **overrides) -> 'PipelineConfig':
        cfg = cls(max_attempts=settings.MAX_ATTEMPTS,
                  verifier=VerifierConfig.from_settings(),
                  strippable_kinds=tuple(settings.STRIPPABLE_KINDS),
                  hint_mode=HintMode(settings.HINT_MODE),
                  provider=ProviderConfig.from_settings(),
                  provider_schedule=schedule_entries(settings.LLM_PROVIDER_SCHEDULE),
                  prune_enabled=settings.PRUNE_ENABLED,
                  diff_check_enabled=settings.DIFF_CHECK_ENABLED,
                  prompt_token_ceiling=settings.PROMPT_TOKEN_CEILING,
                  lemma_allowlist=tuple(settings.LEMMA_ALLOWLIST),
                  tactics_dir=settings.TACTICS_DIR,
                  templates_dir=settings.PROMPT_TEMPLATES_DIR)
        return cfg.with_overrides(**overrides)

    @classmethod
    def from_json(cls, path: str, base: 'PipelineConfig' = None) -> 'PipelineConfig':
        """Overlays a JSON run configuration on `base` (default: the settings)."""
        try:
            with open(path, encoding='utf-8') as stream:
                data = json.load(stream)
        except (OSError, ValueError) as e:
            raise ImproperlyConfigured('Cannot read run configuration {0}: {1}'.format(path, e))
        if not isinstance(data, dict):
            raise ImproperlyConfigured('Run configuration {0} must be a JSON object'.format(path))
        return (base or cls.from_settings()).overlay(data)

    def overlay(self, data: dict) -> 'PipelineConfig':
        known = {f.name for f in fields(self)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ImproperlyConfigured('Unknown configuration key(s): {0}'.format(', '.join(unknown)))

        values = dict(data)
        if 'verifier' in values:
            verifier_keys = {f.name for f in fields(VerifierConfig)}
            bad = sorted(set(values['verifier']) - verifier_keys)
            if bad:
                raise ImproperlyConfigured('Unknown verifier key(s): {0}'.format(', '.join(bad)))
            verifier = dict(values['verifier'])
            if 'extra_args' in verifier:
                verifier['extra_args'] = tuple(verifier['extra_args'])
            values['verifier'] = replace(self.verifier, **verifier)
        if 'provider' in values:
            merged = dict(settings.LLM_PROVIDER)
            merged.update(values['provider'])
            values['provider'] = ProviderConfig.from_dict(merged)
        if 'provider_schedule' in values:
            values['provider_schedule'] = schedule_entries(values['provider_schedule'])
        for key in ('strippable_kinds', 'lemma_allowlist'):
            if key in values:
                values[key] = tuple(values[key])
        return self.with_overrides(**values)

    def with_overrides(self, **overrides) -> 'PipelineConfig':
        overrides = {key: value for key, value in overrides.items() if value is not None}
        return replace(self, **overrides) if overrides else self

    def snapshot(self) -> dict:
        return {
            'max_attempts': self.max_attempts,
            'verifier': self.verifier.snapshot(),
            'strippable_kinds': sorted(kind.value for kind in self.strippable),
            'hint_mode': self.hint_mode.value,
            'provider': self.provider.snapshot(),
            'provider_schedule': [{'first_attempt': entry.first_attempt, 'provider': entry.provider.snapshot()}
                                  for entry in self.provider_schedule],
            'prune_enabled': self.prune_enabled,
            'diff_check_enabled': self.diff_check_enabled,
            'prompt_token_ceiling': self.prompt_token_ceiling,
            'lemma_allowlist': list(self.lemma_allowlist),
        }
