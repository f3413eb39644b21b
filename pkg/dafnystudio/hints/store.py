import logging
import os
from enum import Enum
from functools import lru_cache
from typing import List, Optional, Sequence

from django.conf import settings

from dafnystudio.const import TACTIC_EXTENSION
from dafnystudio.file_system_utils.file_system_client import FileSystemClient
from dafnystudio.hints.tactics import Tactic, TacticLoadError, TacticStore, parse_tactic
from dafnystudio.operations_statuses.operation_result import InternalOperationResult
from dafnystudio.operations_statuses.statuses import ExecutionStatus
from dafnystudio.verification.diagnostics import Diagnostic

logger = logging.getLogger(__name__)


class HintMode(Enum):
    ALL = 'all'
    TRIGGERED = 'triggered'
    OFF = 'off'


def load_tactics(store_path: str) -> TacticStore:
    """Every `*.tactic` file of a directory, in file name order."""
    if not os.path.isdir(store_path):
        raise TacticLoadError('Tactic store {0} does not exist'.format(store_path))

    fs_client = FileSystemClient()
    tactics = []
    for name in fs_client.listdir_files(store_path, TACTIC_EXTENSION):
        path = os.path.join(store_path, name)
        status, text = fs_client.read_text_file(path)
        if not status.ok:
            raise TacticLoadError('Cannot read tactic file {0}: {1}'.format(path, status.message))
        tactics.append(parse_tactic(text, path))
    try:
        store = TacticStore(tuple(tactics))
    except TacticLoadError as e:
        raise TacticLoadError('{0}: {1}'.format(store_path, e))
    logger.debug('Loaded %s tactics from %s', len(store), store_path)
    return store


@lru_cache(maxsize=None)
def builtin_tactics() -> TacticStore:
    return load_tactics(settings.TACTICS_DIR)


def tactic_file_name(position: int, tactic: Tactic) -> str:
    return '{0:02d}-{1}{2}'.format(position, tactic.id, TACTIC_EXTENSION)


def save_tactics(store: TacticStore, store_dir: str) -> InternalOperationResult:
    fs_client = FileSystemClient()
    status = fs_client.create_recursively(store_dir)
    if not status.ok:
        return status
    for stale in fs_client.listdir_files(store_dir, TACTIC_EXTENSION):
        fs_client.remove_file(os.path.join(store_dir, stale))
    for position, tactic in enumerate(store, start=1):
        status = fs_client.write_text_file(os.path.join(store_dir, tactic_file_name(position, tactic)),
                                           tactic.to_text())
        if not status.ok:
            return status
    return InternalOperationResult(ExecutionStatus.SUCCESS)


def quarantine_tactic(tactic: Tactic, quarantine_dir: Optional[str] = None) -> (InternalOperationResult, str):
    """Writes a generated tactic where retrieval never looks until it is promoted."""
    path = os.path.join(quarantine_dir or settings.GENERATED_TACTICS_DIR, tactic.id + TACTIC_EXTENSION)
    status = FileSystemClient().write_text_file(path, tactic.to_text())
    if status.ok:
        logger.info('Generated tactic %r quarantined at %s', tactic.title, path)
    return status, path


def promote_tactic(tactic_id: str, store_dir: Optional[str] = None,
                   quarantine_dir: Optional[str] = None) -> InternalOperationResult:
    store_dir = store_dir or settings.TACTICS_DIR
    source = os.path.join(quarantine_dir or settings.GENERATED_TACTICS_DIR, tactic_id + TACTIC_EXTENSION)
    if not os.path.isfile(source):
        return InternalOperationResult(ExecutionStatus.FATAL_ERROR, 'No quarantined tactic {0}'.format(tactic_id))

    fs_client = FileSystemClient()
    status, text = fs_client.read_text_file(source)
    if not status.ok:
        return status
    try:
        store = load_tactics(store_dir) if os.path.isdir(store_dir) else TacticStore()
        tactic = parse_tactic(text, source)
        store.with_tactics([tactic])
    except TacticLoadError as e:
        return InternalOperationResult(ExecutionStatus.FIXABLE_ERROR, str(e))

    target = os.path.join(store_dir, tactic_file_name(len(store) + 1, tactic))
    status = fs_client.copy_file(source, target)
    if status.ok:
        builtin_tactics.cache_clear()
        logger.info('Promoted tactic %s into %s', tactic_id, store_dir)
    return status


def retrieve(store: TacticStore, attempt_program: str, diagnostics: Sequence[Diagnostic],
             mode=HintMode.ALL) -> List[Tactic]:
    mode = HintMode(mode) if not isinstance(mode, HintMode) else mode
    if mode is HintMode.OFF:
        return []
    if mode is HintMode.ALL:
        return list(store)
    return [tactic for tactic in store if tactic.matches(attempt_program, diagnostics)]


def format_for_prompt(tactics: Sequence[Tactic]) -> str:
    return '\n\n'.join('### Hint {0}: {1}\n{2}'.format(number, tactic.title, tactic.body)
                       for number, tactic in enumerate(tactics, start=1))
