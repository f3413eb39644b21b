import json
import logging
import os
import time
from dataclasses import replace
from typing import Callable, Dict, List, Optional, Tuple

from dafnystudio.const import ATTEMPTS_FOLDER_NAME, CURVE_CSV_NAME, DAFNY_EXTENSION, JSON_EXTENSION, RUN_REPORT_NAME
from dafnystudio.corpus.reports import ProgramSummary, RunReport
from dafnystudio.file_system_utils.file_system_client import FileSystemClient
from dafnystudio.llm_gateway.providers import uses_script
from dafnystudio.operations_statuses.operation_result import InternalOperationResult
from dafnystudio.operations_statuses.statuses import ExecutionStatus
from dafnystudio.orchestration.config import PipelineConfig
from dafnystudio.orchestration.pipeline import PipelineDeps, run_pipeline
from dafnystudio.orchestration.records import PipelineResult
from dafnystudio.scheduling.task_manager import BatchRunner

logger = logging.getLogger(__name__)

DepsFactory = Callable[[str, PipelineConfig], PipelineDeps]


class CorpusError(ValueError):
    pass


def discover_programs(corpus_dir: str) -> List[Tuple[str, str]]:
    """(program id, absolute path) pairs; the id is the path relative to the corpus root."""
    if not os.path.isdir(corpus_dir):
        raise CorpusError('Corpus directory {0} does not exist'.format(corpus_dir))
    return FileSystemClient.walk_files(corpus_dir, DAFNY_EXTENSION)


def summarize(result: PipelineResult, wall_seconds: float) -> ProgramSummary:
    return ProgramSummary(status=result.label,
                          verified_at_attempt=result.verified_at_attempt,
                          attempts_used=len(result.attempts),
                          wall_seconds=wall_seconds,
                          verified=result.verified,
                          detail=result.failure_detail)


def ablation_flags(cfg: PipelineConfig) -> dict:
    return {'pruneEnabled': cfg.prune_enabled,
            'hintMode': cfg.hint_mode.value,
            'diffCheckEnabled': cfg.diff_check_enabled}


def bench_run(corpus_dir: str, cfg: Optional[PipelineConfig] = None, workers: int = 1,
              out_dir: Optional[str] = None, deps_factory: Optional[DepsFactory] = None,
              clock: Callable[[], float] = time.monotonic) -> RunReport:
    cfg = cfg or PipelineConfig.from_settings()
    programs = discover_programs(corpus_dir)
    if deps_factory is None:
        shared = PipelineDeps.from_config(cfg)
        scripted = uses_script(cfg)

        def deps_factory(program_id, run_cfg):
            if not scripted:
                return shared
            complete, schedule = PipelineDeps.providers_for(run_cfg)
            return replace(shared, complete=complete, schedule=schedule)

    fs_client = FileSystemClient()

    def run_one(program_id: str, path: str):
        status, text = fs_client.read_text_file(path)
        if not status.ok:
            raise CorpusError(status.message)
        started = clock()
        result = run_pipeline(text, cfg, deps_factory(program_id, cfg))
        logger.info('%s: %s after %s attempts', program_id, result.label, len(result.attempts))
        return text, result, clock() - started

    logger.info('Bench over %s programs from %s with %s workers', len(programs), corpus_dir, workers)
    results, errors = BatchRunner(workers).run(run_one, [(pid, (pid, path)) for pid, path in programs])

    per_program: Dict[str, ProgramSummary] = {}
    for program_id, _ in programs:
        if program_id in results:
            _, result, wall_seconds = results[program_id]
            per_program[program_id] = summarize(result, wall_seconds)
        else:
            error = errors.get(program_id)
            logger.warning('%s did not complete: %s', program_id, error)
            per_program[program_id] = ProgramSummary('Error', detail=str(error))

    report = RunReport.aggregate(per_program, cfg.max_attempts, cfg.snapshot(), ablation_flags(cfg))
    if out_dir:
        status = write_run_artifacts(out_dir, report, {pid: (text, result) for pid, (text, result, _)
                                                        in results.items()})
        if not status.ok:
            raise CorpusError('Cannot write bench results to {0}: {1}'.format(out_dir, status.message))
    logger.info('Bench finished: %s/%s verified', report.verified_count, report.total)
    return report


def write_run_artifacts(out_dir: str, report: RunReport,
                        runs: Dict[str, Tuple[str, PipelineResult]]) -> InternalOperationResult:
    fs_client = FileSystemClient()
    status = fs_client.write_text_file(os.path.join(out_dir, RUN_REPORT_NAME), report.to_json())
    if not status.ok:
        return status
    status = fs_client.write_text_file(os.path.join(out_dir, CURVE_CSV_NAME), report.curve_csv())
    if not status.ok:
        return status
    for program_id in sorted(runs):
        base, result = runs[program_id]
        artifact = {'programId': program_id, 'baseProgram': base, 'result': result.to_dict()}
        path = os.path.join(out_dir, ATTEMPTS_FOLDER_NAME, program_id + JSON_EXTENSION)
        status = fs_client.write_text_file(path, json.dumps(artifact, indent=2, sort_keys=True) + '\n')
        if not status.ok:
            return status
    return InternalOperationResult(ExecutionStatus.SUCCESS)


def load_run_artifacts(run_dir: str) -> List[dict]:
    """Per-program artifacts written by a bench run, ordered by program id."""
    attempts_dir = os.path.join(run_dir, ATTEMPTS_FOLDER_NAME)
    if not os.path.isdir(attempts_dir):
        raise CorpusError('No {0} folder in run directory {1}'.format(ATTEMPTS_FOLDER_NAME, run_dir))
    artifacts = []
    for _, path in FileSystemClient.walk_files(attempts_dir, JSON_EXTENSION):
        status, text = FileSystemClient.read_text_file(path)
        if not status.ok:
            raise CorpusError(status.message)
        try:
            artifacts.append(json.loads(text))
        except ValueError as e:
            raise CorpusError('Malformed run artifact {0}: {1}'.format(path, e))
    return sorted(artifacts, key=lambda artifact: artifact.get('programId', ''))
