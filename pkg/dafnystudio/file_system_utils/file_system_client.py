import logging
import os
import shutil
import subprocess
import tempfile
import time
from dataclasses import dataclass
from typing import List, Optional, Tuple

import psutil

from dafnystudio.operations_statuses.operation_result import InternalOperationResult
from dafnystudio.operations_statuses.statuses import ExecutionStatus

logger = logging.getLogger(__name__)


@dataclass
class ProcessOutput:
    return_code: Optional[int]
    output: str
    wall_seconds: float


class FileSystemClient(object):
    def execute_command(self, command: List[str], stdout=None, stderr=None) -> (InternalOperationResult, subprocess.Popen):
        try:
            proc = subprocess.Popen(command, stdout=stdout, stderr=stderr, stdin=subprocess.DEVNULL)
            return InternalOperationResult(ExecutionStatus.SUCCESS), proc
        except FileNotFoundError as e:
            message = 'Executable not found: {0}'.format(e.filename or command[0])
            logger.error(message)
            return InternalOperationResult(ExecutionStatus.FATAL_ERROR, message), None
        except Exception as e:
            message = 'Cannot exec command: {0}'.format(str(e))
            logger.exception('Cannot exec command: ')
            return InternalOperationResult(ExecutionStatus.FATAL_ERROR, message), None

    def run_with_timeout(self, command: List[str], timeout: float, grace: float) \
            -> (InternalOperationResult, Optional[ProcessOutput]):
        """Runs a command to completion, killing its whole process tree after `timeout` seconds.

        Combined stdout/stderr is returned as text. Wall time never exceeds
        timeout + grace: after the kill the child gets `grace` seconds to be reaped.
        """
        started = time.monotonic()
        status, proc = self.execute_command(command, stdout=subprocess.PIPE, stderr=subprocess.STDOUT)
        if proc is None:
            return status, None

        try:
            raw, _ = proc.communicate(timeout=timeout)
            return InternalOperationResult(ExecutionStatus.SUCCESS), \
                ProcessOutput(proc.returncode, _decode(raw), time.monotonic() - started)
        except subprocess.TimeoutExpired:
            logger.warning('Process %s exceeded %s s, killing it', proc.pid, timeout)
            self.kill_process(proc.pid)
            try:
                raw, _ = proc.communicate(timeout=grace)
            except subprocess.TimeoutExpired:
                logger.error('Process %s was not reaped within %s s', proc.pid, grace)
                raw = b''
            return InternalOperationResult(ExecutionStatus.TIMED_OUT, 'time limit of {0} s exceeded'.format(timeout)), \
                ProcessOutput(proc.returncode, _decode(raw), time.monotonic() - started)

    @staticmethod
    def kill_process(pid, including_parent=True) -> InternalOperationResult:
        if not psutil.pid_exists(pid):
            return InternalOperationResult(ExecutionStatus.SUCCESS)

        try:
            parent = psutil.Process(pid)
        except psutil.NoSuchProcess:
            return InternalOperationResult(ExecutionStatus.SUCCESS)
        except Exception as e:
            logger.error(str(e))
            return InternalOperationResult(ExecutionStatus.FATAL_ERROR, str(e))

        for child in parent.children(recursive=True):
            try:
                child.kill()
            except psutil.NoSuchProcess:
                pass
            except Exception as e:
                logger.error('Can\'t kill process with pid %s (subprocess of %s) : %s', child.pid, pid, str(e))
        if including_parent:
            try:
                parent.kill()
            except psutil.NoSuchProcess:
                pass
            except Exception as e:
                logger.error('Can\'t kill process with pid %s: %s', parent.pid, str(e))
                return InternalOperationResult(ExecutionStatus.FATAL_ERROR, str(e))

        return InternalOperationResult(ExecutionStatus.SUCCESS)

    @staticmethod
    def write_temp_file(content: str, suffix: str, prefix='dafnystudio-') -> (InternalOperationResult, Optional[str]):
        try:
            handle, path = tempfile.mkstemp(suffix=suffix, prefix=prefix)
            with os.fdopen(handle, 'w', encoding='utf-8') as stream:
                stream.write(content)
            return InternalOperationResult(ExecutionStatus.SUCCESS), path
        except Exception as e:
            logger.error('Can\'t write temporary file: %s', e)
            return InternalOperationResult(ExecutionStatus.FATAL_ERROR, str(e)), None

    def write_text_file(self, path: str, content: str) -> InternalOperationResult:
        directory = os.path.dirname(path)
        if directory:
            status = self.create_recursively(directory)
            if not status.ok:
                return status
        try:
            with open(path, 'w', encoding='utf-8', newline='') as stream:
                stream.write(content)
            return InternalOperationResult(ExecutionStatus.SUCCESS)
        except Exception as e:
            logger.error('Can\'t write %s: %s', path, e)
            return InternalOperationResult(ExecutionStatus.FATAL_ERROR, str(e))

    @staticmethod
    def read_text_file(path: str) -> (InternalOperationResult, Optional[str]):
        try:
            with open(path, encoding='utf-8', newline='') as stream:
                return InternalOperationResult(ExecutionStatus.SUCCESS), stream.read()
        except Exception as e:
            logger.warning('Can\'t read %s: %s', path, e)
            return InternalOperationResult(ExecutionStatus.FATAL_ERROR, str(e)), None

    @staticmethod
    def remove_file(file: str) -> InternalOperationResult:
        if not os.path.isfile(file):
            logger.warning('Can\'t delete non-existing file %s ', file)
            return InternalOperationResult(ExecutionStatus.SUCCESS)

        try:
            os.remove(file)
        except Exception as e:
            logger.warning('Can\'t delete %s : %s', file, e)
            return InternalOperationResult(ExecutionStatus.FATAL_ERROR, str(e))

        return InternalOperationResult(ExecutionStatus.SUCCESS)

    def copy_file(self, source: str, target: str) -> InternalOperationResult:
        status = self.create_recursively(os.path.dirname(target))
        if not status.ok:
            return status
        try:
            shutil.copyfile(source, target)
            return InternalOperationResult(ExecutionStatus.SUCCESS)
        except Exception as e:
            logger.error('Can\'t copy %s to %s: %s', source, target, e)
            return InternalOperationResult(ExecutionStatus.FATAL_ERROR, str(e))

    def listdir_files(self, path: str, extension: str = '') -> List[str]:
        if not os.path.isdir(path):
            return []

        return sorted(f for f in os.listdir(path)
                      if os.path.isfile(os.path.join(path, f)) and f.endswith(extension))

    @staticmethod
    def walk_files(root: str, extension: str) -> List[Tuple[str, str]]:
        """(relative posix path, absolute path) of every file below root with the extension, sorted."""
        found = []
        for directory, _, files in os.walk(root):
            for name in files:
                if name.endswith(extension):
                    full = os.path.join(directory, name)
                    found.append((os.path.relpath(full, root).replace(os.sep, '/'), full))
        return sorted(found)

    def create_recursively(self, path: str) -> InternalOperationResult:
        try:
            if not path or os.path.exists(path):
                return InternalOperationResult(ExecutionStatus.SUCCESS)
            os.makedirs(path, exist_ok=True)
            return InternalOperationResult(ExecutionStatus.SUCCESS)
        except Exception as e:
            logger.error('Can\'t create dirs recursively: %s', e)
            return InternalOperationResult(ExecutionStatus.FATAL_ERROR, str(e))


def _decode(raw) -> str:
    if raw is None:
        return ''
    return raw.decode('utf-8', errors='replace')
