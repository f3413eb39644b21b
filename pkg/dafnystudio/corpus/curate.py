import json
import logging
import os
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, List, Optional, Tuple

from dafnystudio.const import SKIPPED_SUFFIX
from dafnystudio.corpus.bench import load_run_artifacts
from dafnystudio.dafny_surface.diff_check import diff_check
from dafnystudio.file_system_utils.file_system_client import FileSystemClient
from dafnystudio.llm_gateway.errors import ProviderError
from dafnystudio.llm_gateway.prompt import Prompt, make_prompt
from dafnystudio.llm_gateway.templates import render_template
from dafnystudio.verification.dafny_verifier import DafnyVerifier
from dafnystudio.verification.diagnostics import VerifierOutcome

logger = logging.getLogger(__name__)


class ExampleRole(Enum):
    ATTEMPT_REPAIR = 'attempt-repair'
    INFORMALIZATION = 'informalization'


@dataclass(frozen=True)
class CurationExample:
    role: ExampleRole
    program_id: str
    base_program: str
    verifier_feedback: str
    target: str
    failed_attempt: Optional[str] = None
    informal_feedback: Optional[str] = None

    def __post_init__(self):
        if self.role is ExampleRole.ATTEMPT_REPAIR and not (self.failed_attempt and self.target):
            raise ValueError('attempt-repair example needs a failed attempt and a target program')

    def to_dict(self) -> dict:
        return {'role': self.role.value,
                'programId': self.program_id,
                'baseProgram': self.base_program,
                'failedAttempt': self.failed_attempt,
                'verifierFeedback': self.verifier_feedback,
                'informalFeedback': self.informal_feedback,
                'target': self.target}


def attempt_feedback_text(attempt: dict) -> str:
    """Raw tool feedback of a serialized attempt: its diff rejection or its error diagnostics."""
    verdict = attempt.get('diffVerdict')
    if verdict and verdict['verdict'] != 'Equal':
        return 'diff check: {0}'.format(json.dumps(verdict, sort_keys=True))
    outcome = attempt.get('preOutcome') or {}
    lines = ['line {0}: {1}'.format(d['line'], d['message'])
             for d in outcome.get('diagnostics', ()) if d['severity'] == 'error']
    return '\n'.join(lines) or 'verifier: {0}'.format(outcome.get('status', 'unknown'))


def failed_attempts(result: dict) -> List[dict]:
    verified_at = result.get('verifiedAtAttempt')
    return [attempt for attempt in result.get('attempts', ()) if attempt['index'] != verified_at]


def distinct_diagnostics(attempts: List[dict]) -> List[Tuple[dict, dict]]:
    """(diagnostic, attempt it first appeared in) for each distinct error diagnostic, keyed on line and message."""
    seen = {}
    for attempt in attempts:
        for diagnostic in (attempt.get('preOutcome') or {}).get('diagnostics', ()):
            key = (diagnostic['line'], diagnostic['message'])
            if diagnostic['severity'] == 'error' and key not in seen:
                seen[key] = (diagnostic, attempt)
    return list(seen.values())


def informalization_prompt(program: str, diagnostic: dict) -> Prompt:
    user_turn = render_template('informalize', LINE=diagnostic['line'], MESSAGE=diagnostic['message'],
                                PROGRAM=program.strip('\n'))
    return make_prompt(render_template('informalize_system'), [user_turn])


def curate(run_dir: str, ground_truth_dir: str, llm: Callable[[Prompt], str], out_path: str,
           verify_fn: Optional[Callable[[str], VerifierOutcome]] = None, strippable=None,
           lemma_allowlist=()) -> int:
    """Writes fine-tuning examples from a bench run as JSON lines; returns how many were written.

    Programs whose ground truth is missing, modifies the base or does not verify
    are skipped and listed in `<out>.skipped.jsonl`.
    """
    verify_fn = verify_fn or DafnyVerifier()
    fs_client = FileSystemClient()
    examples: List[CurationExample] = []
    skipped: List[Dict[str, str]] = []

    def skip(program_id, reason):
        logger.warning('Skipping %s: %s', program_id, reason)
        skipped.append({'programId': program_id, 'reason': reason})

    for artifact in load_run_artifacts(run_dir):
        program_id, base = artifact['programId'], artifact['baseProgram']
        attempts = failed_attempts(artifact['result'])
        if not attempts:
            continue

        status, ground_truth = fs_client.read_text_file(os.path.join(ground_truth_dir, *program_id.split('/')))
        if not status.ok:
            skip(program_id, 'no ground truth: {0}'.format(status.message))
            continue
        verdict = diff_check(ground_truth, base, strippable, lemma_allowlist)
        if not verdict.is_equal:
            skip(program_id, 'ground truth modifies the base program: {0}'.format(verdict))
            continue
        outcome = verify_fn(ground_truth)
        if not outcome.verified:
            skip(program_id, 'ground truth does not verify: {0}'.format(outcome.status.value))
            continue

        for attempt in attempts:
            if not attempt['extractedProgram'].strip():
                continue
            examples.append(CurationExample(ExampleRole.ATTEMPT_REPAIR, program_id, base,
                                            attempt_feedback_text(attempt), ground_truth,
                                            failed_attempt=attempt['extractedProgram']))

        for diagnostic, attempt in distinct_diagnostics(attempts):
            raw = 'line {0}: {1}'.format(diagnostic['line'], diagnostic['message'])
            try:
                informal = llm(informalization_prompt(attempt['extractedProgram'], diagnostic)).strip()
            except ProviderError as e:
                skip(program_id, 'informalization failed for "{0}": {1}'.format(raw, e))
                continue
            if not informal:
                skip(program_id, 'empty informalization for "{0}"'.format(raw))
                continue
            examples.append(CurationExample(ExampleRole.INFORMALIZATION, program_id, base, raw, informal,
                                            failed_attempt=attempt['extractedProgram'],
                                            informal_feedback=informal))

    lines = ''.join(json.dumps(example.to_dict(), sort_keys=True) + '\n' for example in examples)
    status = fs_client.write_text_file(out_path, lines)
    if not status.ok:
        raise OSError('Cannot write {0}: {1}'.format(out_path, status.message))
    if skipped:
        fs_client.write_text_file(out_path + SKIPPED_SUFFIX,
                                  ''.join(json.dumps(record, sort_keys=True) + '\n' for record in skipped))
    elif os.path.isfile(out_path + SKIPPED_SUFFIX):
        fs_client.remove_file(out_path + SKIPPED_SUFFIX)
    logger.info('Curated %s examples, skipped %s entries', len(examples), len(skipped))
    return len(examples)
