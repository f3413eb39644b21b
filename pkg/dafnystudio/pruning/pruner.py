import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterable, List, Optional, Tuple

from dafnystudio.dafny_surface.errors import ScanStatusError
from dafnystudio.dafny_surface.program import AnnotatedProgram
from dafnystudio.dafny_surface.scanner import parse_program
from dafnystudio.dafny_surface.stripping import remove_spans
from dafnystudio.verification.binding import bind_diagnostics
from dafnystudio.verification.diagnostics import VerifierOutcome, VerifierStatus

logger = logging.getLogger(__name__)

VerifyFn = Callable[[str], VerifierOutcome]


class PruneFinalStatus(Enum):
    PRUNED_VERIFIED = 'PrunedVerified'
    RESTORED_ORIGINAL = 'RestoredOriginal'


class RestoreReason(Enum):
    POSTCONDITION_UNPROVABLE = 'PostconditionUnprovable'
    NO_FLAGGED_CLAUSES = 'NoFlaggedClauses'
    ROUND_LIMIT = 'RoundLimit'
    VERIFIER_ABORTED = 'VerifierAborted'
    SCAN_FAILURE = 'ScanFailure'


@dataclass(frozen=True)
class PruneRound:
    removed_clause_ids: Tuple[str, ...]
    outcome_status: VerifierStatus

    def to_dict(self) -> dict:
        return {'removedClauseIds': list(self.removed_clause_ids), 'outcomeStatus': self.outcome_status.value}


@dataclass(frozen=True)
class PruneTrace:
    """Clause ids are those of the input program, even for clauses removed in later rounds."""
    rounds: Tuple[PruneRound, ...]
    final_status: PruneFinalStatus
    verifier_calls: int
    restore_reason: Optional[RestoreReason] = None

    @property
    def removed_clause_ids(self) -> Tuple[str, ...]:
        return tuple(clause_id for r in self.rounds for clause_id in r.removed_clause_ids)

    def to_dict(self) -> dict:
        return {
            'rounds': [r.to_dict() for r in self.rounds],
            'finalStatus': self.final_status.value,
            'restoreReason': self.restore_reason.value if self.restore_reason else None,
            'verifierCalls': self.verifier_calls,
        }


@dataclass(frozen=True)
class PruneResult:
    program: AnnotatedProgram
    trace: PruneTrace
    final_outcome: VerifierOutcome = field(repr=False)

    @property
    def verified(self) -> bool:
        return self.trace.final_status is PruneFinalStatus.PRUNED_VERIFIED

    def __iter__(self):
        return iter((self.program, self.trace, self.final_outcome))


def prune_non_inductive(program: AnnotatedProgram, verify_fn: VerifyFn,
                        initial_outcome: Optional[VerifierOutcome] = None,
                        lemma_allowlist: Iterable[str] = ()) -> PruneResult:
    """Greedily deletes loop invariants the verifier reports as non-inductive until the program
    verifies; on any other ending the input program is handed back untouched.

    initial_outcome, when given, is taken as the verdict for the input program and saves one call.
    """
    if not program.ok:
        raise ScanStatusError('Cannot prune a program that did not scan: {0}'.format(program.scan_status))

    lemma_allowlist = tuple(lemma_allowlist)
    alive: List[str] = [span.clause_id for span in program.invariants]
    round_cap = len(alive)
    current = program
    rounds: List[PruneRound] = []
    calls = 0
    pending = initial_outcome

    def restore(reason: RestoreReason, outcome: VerifierOutcome) -> PruneResult:
        logger.info('Pruning gave up after %s rounds (%s); original program restored', len(rounds), reason.value)
        trace = PruneTrace(tuple(rounds), PruneFinalStatus.RESTORED_ORIGINAL, calls, reason)
        return PruneResult(program, trace, outcome)

    while True:
        if pending is not None:
            outcome, pending = pending, None
        else:
            outcome = verify_fn(current.source)
            calls += 1

        if outcome.verified:
            if rounds:
                logger.info('Pruned %s invariant clauses in %s rounds',
                            sum(len(r.removed_clause_ids) for r in rounds), len(rounds))
            trace = PruneTrace(tuple(rounds), PruneFinalStatus.PRUNED_VERIFIED, calls)
            return PruneResult(current, trace, bind_diagnostics(outcome, current))

        if outcome.aborted:
            rounds.append(PruneRound((), outcome.status))
            return restore(RestoreReason.VERIFIER_ABORTED, outcome)

        bound = bind_diagnostics(outcome, current)
        flagged = set(bound.flagged_clause_ids())
        if not flagged:
            rounds.append(PruneRound((), outcome.status))
            reason = RestoreReason.POSTCONDITION_UNPROVABLE if bound.errors else RestoreReason.NO_FLAGGED_CLAUSES
            return restore(reason, bound)

        if sum(1 for r in rounds if r.removed_clause_ids) >= round_cap:
            rounds.append(PruneRound((), outcome.status))
            return restore(RestoreReason.ROUND_LIMIT, bound)

        invariants = current.invariants
        # invariants keep their relative order, so position maps current ids back to the input's ids
        removed = tuple(alive[k] for k, span in enumerate(invariants) if span.clause_id in flagged)
        rounds.append(PruneRound(removed, outcome.status))
        logger.debug('Pruning round %s removes %s', len(rounds), removed)

        current = parse_program(remove_spans(current.source,
                                             [span for span in invariants if span.clause_id in flagged]),
                                lemma_allowlist)
        alive = [clause_id for clause_id in alive if clause_id not in removed]
        if not current.ok or len(current.invariants) != len(alive):
            logger.error('Program no longer scans consistently after removing %s', removed)
            return restore(RestoreReason.SCAN_FAILURE, bound)
