import logging
import os
from typing import Callable, Dict, Optional

from dafnystudio.const import REPAIR_REPORT_NAME
from dafnystudio.corpus.bench import CorpusError, discover_programs
from dafnystudio.corpus.reports import RepairEntry, RepairReport
from dafnystudio.dafny_surface.program import strippable_set
from dafnystudio.dafny_surface.scanner import parse_program
from dafnystudio.dafny_surface.stripping import strip
from dafnystudio.file_system_utils.file_system_client import FileSystemClient
from dafnystudio.verification.dafny_verifier import VerifierConfig, resolve_only, resolves
from dafnystudio.verification.diagnostics import VerifierOutcome

logger = logging.getLogger(__name__)

ResolveFn = Callable[[str], VerifierOutcome]


def repair_dataset(ground_truth_dir: str, out_dir: str, verifier_cfg: Optional[VerifierConfig] = None,
                   resolve_fn: Optional[ResolveFn] = None, strippable=None,
                   lemma_allowlist=()) -> RepairReport:
    """Regenerates every base program from its annotated ground truth.

    Base files already in out_dir are resolve-checked before being replaced;
    a failing one is reported as broken.
    """
    if resolve_fn is None:
        def resolve_fn(text):
            return resolve_only(text, verifier_cfg)

    if os.path.abspath(ground_truth_dir) == os.path.abspath(out_dir):
        raise CorpusError('Output directory must differ from the ground truth directory')
    kinds = strippable_set(strippable)
    fs_client = FileSystemClient()
    entries: Dict[str, RepairEntry] = {}

    for program_id, path in discover_programs(ground_truth_dir):
        status, text = fs_client.read_text_file(path)
        if not status.ok:
            entries[program_id] = RepairEntry(None, False, 0, status.message)
            continue
        program = parse_program(text, lemma_allowlist)
        if not program.ok:
            logger.warning('Ground truth %s does not scan: %s', program_id, program.scan_status)
            entries[program_id] = RepairEntry(None, False, 0, 'ground truth does not scan: {0}'
                                              .format(program.scan_status))
            continue

        target = os.path.join(out_dir, *program_id.split('/'))
        was_broken = None
        if os.path.isfile(target):
            status, previous = fs_client.read_text_file(target)
            was_broken = not status.ok or not resolves(resolve_fn(previous))
            if was_broken:
                logger.info('Existing base %s does not resolve', program_id)

        base = strip(program, kinds)
        removed = sum(1 for span in program.annotations if span.kind in kinds)
        status = fs_client.write_text_file(target, base)
        if not status.ok:
            entries[program_id] = RepairEntry(was_broken, False, removed, status.message)
            continue

        outcome = resolve_fn(base)
        repaired = resolves(outcome)
        if not repaired:
            logger.warning('Regenerated base %s does not resolve: %s', program_id, outcome.status.value)
        entries[program_id] = RepairEntry(was_broken, repaired, removed,
                                          '' if repaired else 'regenerated base: {0}'.format(outcome.status.value))

    report = RepairReport(entries)
    fs_client.write_text_file(os.path.join(out_dir, REPAIR_REPORT_NAME), report.to_json())
    logger.info('Repair finished: %s', report.totals)
    return report
