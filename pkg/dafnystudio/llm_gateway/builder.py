import logging
import re
from typing import Iterable, Optional, Sequence

from dafnystudio.dafny_surface.diff_check import REMOVED_LEXEME, DiffVerdict, Verdict
from dafnystudio.dafny_surface.program import AnnotationKind, strippable_set
from dafnystudio.hints.store import format_for_prompt
from dafnystudio.hints.tactics import Tactic
from dafnystudio.llm_gateway.errors import PromptTooLarge
from dafnystudio.llm_gateway.prompt import Prompt, make_prompt
from dafnystudio.llm_gateway.templates import render_template
from dafnystudio.verification.diagnostics import VerifierOutcome, VerifierStatus

logger = logging.getLogger(__name__)

BLANK_LINES = re.compile(r'\n{3,}')

KIND_DESCRIPTIONS = {
    AnnotationKind.LOOP_INVARIANT: 'loop invariants',
    AnnotationKind.LOOP_DECREASES: 'decreases clauses on loops',
    AnnotationKind.METHOD_DECREASES: 'decreases clauses on methods, functions and lemmas',
    AnnotationKind.ASSERT_STMT: 'assert statements',
    AnnotationKind.ASSERT_BY_BLOCK: 'assert ... by { ... } blocks',
    AnnotationKind.CALC_BLOCK: 'calc blocks',
    AnnotationKind.GHOST_DECL: 'ghost variables',
    AnnotationKind.LEMMA_CALL_STMT: 'calls to helper lemmas',
}


def describe_kinds(kinds: Iterable = None) -> str:
    """'a, b and c' over the annotation kinds a candidate may add, in declaration order."""
    allowed = strippable_set(kinds)
    names = [description for kind, description in KIND_DESCRIPTIONS.items() if kind in allowed]
    if len(names) < 2:
        return ''.join(names)
    return '{0} and {1}'.format(', '.join(names[:-1]), names[-1])


def diff_feedback(verdict: DiffVerdict) -> str:
    if verdict.verdict is Verdict.MISMATCH and verdict.mismatch.candidate_token == REMOVED_LEXEME:
        m = verdict.mismatch
        return ('The diff checker rejected this attempt because it dropped `{0}`, which the base program has at '
                'line {1}, column {2}. Keep every assertion and calc block of the base program unchanged.'
                .format(m.base_token, m.base_loc[0], m.base_loc[1]))
    if verdict.verdict is Verdict.MISMATCH:
        m = verdict.mismatch
        return ('The diff checker rejected this attempt because it modified base logic: the attempt has `{0}` '
                'at line {1}, column {2} where the base program has `{3}` at line {4}, column {5}. '
                'Only add annotations and keep every base token unchanged.'
                .format(m.candidate_token, m.candidate_loc[0], m.candidate_loc[1],
                        m.base_token, m.base_loc[0], m.base_loc[1]))
    if verdict.verdict is Verdict.UNSOUND_CONSTRUCT:
        hit = verdict.unsound
        return ('The diff checker rejected this attempt because it uses an unsound construct ({0}) at line {1}, '
                'column {2}. assume, expect, axioms and annotations that switch verification off are not allowed.'
                .format(hit.kind.value, hit.location[0], hit.location[1]))
    if verdict.verdict is Verdict.SCAN_FAILURE:
        return 'This attempt could not be read as a Dafny program: {0}.'.format(verdict.scan_failure.detail)
    return ''


def verifier_feedback(outcome: VerifierOutcome) -> str:
    if outcome.status is VerifierStatus.TIMEOUT:
        return 'The verifier timed out on this attempt.'
    if outcome.status is VerifierStatus.TOOL_ERROR:
        return 'The verifier could not check this attempt: {0}.'.format(outcome.exit_detail)
    if not outcome.errors:
        return 'The verifier rejected this attempt without reporting a location.'
    lines = ['The Dafny verifier reported:']
    lines.extend('- line {0}: {1}'.format(d.line, d.message) for d in outcome.errors)
    return '\n'.join(lines)


def attempt_feedback(record) -> str:
    """Feedback for one history entry: the diff rejection reason, else the verifier's errors."""
    verdict: Optional[DiffVerdict] = record.diff_verdict
    if verdict is not None and not verdict.is_equal:
        return diff_feedback(verdict)
    if record.pre_outcome is not None:
        return verifier_feedback(record.pre_outcome)
    return 'This attempt was not checked.'


def build_prompt(base: str, attempts: Sequence = (), hints: Sequence[Tactic] = (),
                 ceiling: Optional[int] = None, templates_dir: Optional[str] = None,
                 allowed_kinds: Iterable = None) -> Prompt:
    turns = [render_template('base', templates_dir, BASE=base.strip('\n'))]
    if attempts:
        turns.append(render_template('history', templates_dir, ATTEMPTS=len(attempts)))
    for record in sorted(attempts, key=lambda r: r.index):
        turns.append(render_template('attempt', templates_dir, INDEX=record.index,
                                     PROGRAM=record.extracted_program.strip('\n'),
                                     FEEDBACK=attempt_feedback(record)))
    hints_text = render_template('hints', templates_dir, HINTS=format_for_prompt(hints)) if hints else ''
    request = render_template('request', templates_dir, HINTS=hints_text)
    turns.append(BLANK_LINES.sub('\n\n', request).strip('\n'))

    system = render_template('system', templates_dir, ALLOWED_ANNOTATIONS=describe_kinds(allowed_kinds))
    prompt = make_prompt(system, turns)
    if ceiling and prompt.estimated_tokens > ceiling:
        raise PromptTooLarge(prompt.estimated_tokens, ceiling)
    return prompt


def build_prompt_within(base: str, attempts: Sequence = (), hints: Sequence[Tactic] = (),
                        ceiling: Optional[int] = None, templates_dir: Optional[str] = None,
                        allowed_kinds: Iterable = None) -> Prompt:
    """build_prompt that drops the oldest attempts until the prompt fits; the latest attempt is always kept."""
    kept = sorted(attempts, key=lambda r: r.index)
    while True:
        try:
            return build_prompt(base, kept, hints, ceiling, templates_dir, allowed_kinds)
        except PromptTooLarge as e:
            if len(kept) <= 1:
                raise
            logger.warning('Prompt too large (%s tokens), dropping attempt %s', e.estimated_tokens, kept[0].index)
            kept = kept[1:]
