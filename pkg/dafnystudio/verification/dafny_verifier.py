import logging
import threading
from contextlib import contextmanager
from dataclasses import asdict, dataclass, field, replace
from typing import Optional, Tuple

from django.conf import settings
from singleton_decorator import singleton

from dafnystudio.const import DAFNY_EXTENSION
from dafnystudio.file_system_utils.file_system_client import FileSystemClient
from dafnystudio.operations_statuses.statuses import ExecutionStatus
from dafnystudio.verification.diagnostics import VerifierOutcome, VerifierStatus, tool_error
from dafnystudio.verification.output_parser import parse_outcome
from dafnystudio.verification.patterns import PatternTable, cached_pattern_table

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class VerifierConfig:
    binary: str = 'dafny'
    time_limit: int = 60
    kill_grace: int = 5
    extra_args: Tuple[str, ...] = field(default=())
    keep_temp_files: bool = False
    column_base: int = 0
    pattern_table_path: str = ''
    # wall-clock limit for the whole process; defaults to time_limit
    process_timeout: Optional[int] = None

    @classmethod
    def from_settings(cls, **overrides) -> 'VerifierConfig':
        cfg = cls(binary=settings.DAFNY_PATH,
                  time_limit=settings.VERIFICATION_TIME_LIMIT,
                  kill_grace=settings.VERIFIER_KILL_GRACE,
                  extra_args=tuple(settings.VERIFIER_EXTRA_ARGS),
                  keep_temp_files=settings.KEEP_VERIFIER_TEMP_FILES,
                  column_base=settings.VERIFIER_COLUMN_BASE,
                  pattern_table_path=settings.PATTERN_TABLE_PATH)
        return replace(cfg, **overrides) if overrides else cfg

    @property
    def pattern_table(self) -> PatternTable:
        return cached_pattern_table(self.pattern_table_path or settings.PATTERN_TABLE_PATH)

    def snapshot(self) -> dict:
        data = asdict(self)
        data['extra_args'] = list(self.extra_args)
        data['pattern_table'] = self.pattern_table.version_label
        return data


@singleton
class VerifierSlots(object):
    """Caps the number of verifier processes alive at once across all threads."""

    def __init__(self):
        self.capacity = max(1, int(settings.VERIFIER_MAX_WORKERS))
        self._semaphore = threading.BoundedSemaphore(self.capacity)

    @contextmanager
    def slot(self):
        self._semaphore.acquire()
        try:
            yield
        finally:
            self._semaphore.release()


class DafnyVerifier(object):
    def __init__(self, cfg: Optional[VerifierConfig] = None):
        self.cfg = cfg or VerifierConfig.from_settings()
        self._fs_client = FileSystemClient()
        self.__logger = logging.getLogger(__name__)

    def __call__(self, program_text: str) -> VerifierOutcome:
        return self.verify(program_text)

    @property
    def wall_limit(self) -> int:
        return self.cfg.process_timeout or self.cfg.time_limit

    def command(self, path: str):
        return [self.cfg.binary, 'verify', path, '--verification-time-limit', str(self.cfg.time_limit)] \
            + list(self.cfg.extra_args)

    def verify(self, program_text: str) -> VerifierOutcome:
        status, path = self._fs_client.write_temp_file(program_text, suffix=DAFNY_EXTENSION)
        if not status.ok:
            return tool_error('cannot write temporary program file: {0}'.format(status.message))

        try:
            with VerifierSlots().slot():
                status, result = self._fs_client.run_with_timeout(self.command(path),
                                                                  timeout=self.wall_limit,
                                                                  grace=self.cfg.kill_grace)
        finally:
            if self.cfg.keep_temp_files:
                self.__logger.info('Keeping verifier input %s', path)
            else:
                self._fs_client.remove_file(path)

        if result is None:
            return tool_error(status.message)
        if status.status is ExecutionStatus.TIMED_OUT:
            self.__logger.warning('Verifier timed out after %.1f s', result.wall_seconds)
            return VerifierOutcome(VerifierStatus.TIMEOUT, (), result.output,
                                   max(result.wall_seconds, float(self.wall_limit)), status.message)

        outcome = parse_outcome(result.output, self.cfg.pattern_table, result.return_code,
                                result.wall_seconds, self.cfg.column_base)
        self.__logger.info('Verifier finished: %s, %s diagnostics, %.2f s',
                           outcome.status.value, len(outcome.diagnostics), outcome.wall_seconds)
        return outcome


def verify(program_text: str, cfg: Optional[VerifierConfig] = None) -> VerifierOutcome:
    return DafnyVerifier(cfg).verify(program_text)


def resolve_only(program_text: str, cfg: Optional[VerifierConfig] = None) -> VerifierOutcome:
    """Runs the verifier with the short resolve time limit; only parse/resolve errors matter to callers."""
    cfg = replace(cfg or VerifierConfig.from_settings(), time_limit=settings.RESOLVE_TIME_LIMIT,
                  process_timeout=settings.VERIFICATION_TIME_LIMIT)
    return DafnyVerifier(cfg).verify(program_text)


def resolves(outcome: VerifierOutcome) -> bool:
    return outcome.status in (VerifierStatus.VERIFIED, VerifierStatus.VERIFICATION_FAILED)
