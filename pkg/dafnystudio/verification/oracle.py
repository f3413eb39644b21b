"""In-memory stand-in for the Dafny verifier.

A ScriptedOracle answers verify calls from a script: digest-keyed entries are
looked up first and never consumed, then sequential steps are consumed in
order. A step is either a fixed VerifierOutcome or a FlagClauses plan that
places invariant diagnostics on named clauses of whatever program it is given,
so line numbers stay right after clauses are deleted.
"""
import logging
import threading
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Tuple, Union

from dafnystudio.dafny_surface.diff_check import program_digest
from dafnystudio.dafny_surface.program import AnnotatedProgram, AnnotationKind
from dafnystudio.dafny_surface.scanner import parse_program
from dafnystudio.verification.diagnostics import (Classification, Diagnostic, Severity, VerifierOutcome,
                                                  VerifierStatus, tool_error)
from dafnystudio.verification.patterns import classify

logger = logging.getLogger(__name__)

SAMPLE_MESSAGES = {
    Classification.INVARIANT_NOT_MAINTAINED: 'this invariant could not be proved to be maintained by the loop',
    Classification.INVARIANT_ON_ENTRY: 'this loop invariant could not be proved on entry',
    Classification.POSTCONDITION_FAILURE: 'a postcondition could not be proved on this return path',
    Classification.ASSERTION_FAILURE: 'assertion could not be proved',
    Classification.DECREASES_FAILURE: 'decreases expression might not decrease',
    Classification.SYNTAX_OR_RESOLVE: 'unresolved identifier: undefinedName',
    Classification.OTHER: 'index out of range',
}


def verified_outcome() -> VerifierOutcome:
    return VerifierOutcome(VerifierStatus.VERIFIED, (), 'Dafny program verifier finished with 1 verified, 0 errors')


def failing_outcome(classification=Classification.POSTCONDITION_FAILURE, line=1, col=1,
                    message=None) -> VerifierOutcome:
    message = message or SAMPLE_MESSAGES[classification]
    status = VerifierStatus.PARSE_OR_RESOLVE_ERROR if classification is Classification.SYNTAX_OR_RESOLVE \
        else VerifierStatus.VERIFICATION_FAILED
    return VerifierOutcome(status, (Diagnostic(line, col, Severity.ERROR, message, classify(message)),))


def flagging_outcome(program: AnnotatedProgram, clause_texts: Iterable[str] = (), clause_ids: Iterable[str] = (),
                     classification=Classification.INVARIANT_NOT_MAINTAINED,
                     extra: Iterable[Diagnostic] = ()) -> VerifierOutcome:
    """VerificationFailed with one invariant diagnostic positioned on each named loop invariant."""
    texts, ids = set(clause_texts), set(clause_ids)
    message = SAMPLE_MESSAGES[classification]
    diagnostics: List[Diagnostic] = []
    for span in program.spans_of(AnnotationKind.LOOP_INVARIANT):
        if span.clause_text in texts or span.clause_id in ids:
            anchor = program.tokens[min(span.first_token + 1, span.last_token)]
            diagnostics.append(Diagnostic(anchor.line, anchor.col, Severity.ERROR, message, classify(message)))
    if not diagnostics and (texts or ids):
        # named clauses are absent: report the failure without a position
        diagnostics.append(Diagnostic(0, 0, Severity.ERROR, message, classify(message)))
    diagnostics.extend(extra)
    if not diagnostics:
        return verified_outcome()
    return VerifierOutcome(VerifierStatus.VERIFICATION_FAILED, tuple(diagnostics))


@dataclass(frozen=True)
class FlagClauses:
    clause_texts: Tuple[str, ...] = field(default=())
    classification: Classification = Classification.INVARIANT_NOT_MAINTAINED
    clause_ids: Tuple[str, ...] = field(default=())

    def __call__(self, program: AnnotatedProgram) -> VerifierOutcome:
        return flagging_outcome(program, self.clause_texts, self.clause_ids, self.classification)


OracleStep = Union[VerifierOutcome, Callable[[AnnotatedProgram], VerifierOutcome]]


class ScriptedOracle(object):
    def __init__(self, steps: Iterable[OracleStep] = (), by_digest: Dict[str, OracleStep] = None,
                 lemma_allowlist: Iterable[str] = ()):
        self._steps: List[OracleStep] = list(steps)
        self._by_digest: Dict[str, OracleStep] = dict(by_digest or {})
        self._lemma_allowlist = tuple(lemma_allowlist)
        self._lock = threading.Lock()
        self.calls = 0
        self.seen: List[str] = []

    def when(self, program_text: str, step: OracleStep) -> 'ScriptedOracle':
        """Registers a non-consuming answer for every program token-identical to program_text."""
        self._by_digest[program_digest(program_text)] = step
        return self

    @property
    def remaining(self) -> int:
        return len(self._steps)

    def __call__(self, program_text: str) -> VerifierOutcome:
        digest = program_digest(program_text)
        with self._lock:
            self.calls += 1
            self.seen.append(digest)
            step = self._by_digest.get(digest)
            if step is None:
                if not self._steps:
                    logger.warning('Scripted oracle exhausted after %s calls', self.calls)
                    return tool_error('scripted oracle exhausted after {0} calls'.format(self.calls))
                step = self._steps.pop(0)
        if isinstance(step, VerifierOutcome):
            return step
        return step(parse_program(program_text, self._lemma_allowlist))
