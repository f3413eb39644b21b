from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Tuple

from dafnystudio.dafny_surface.diff_check import DiffVerdict
from dafnystudio.pruning.pruner import PruneTrace
from dafnystudio.verification.diagnostics import VerifierOutcome


class PipelineStatus(Enum):
    VERIFIED = 'Verified'
    VERIFIED_AFTER_PRUNE = 'VerifiedAfterPrune'
    FAILED = 'Failed'


class FailureReason(Enum):
    ATTEMPTS_EXHAUSTED = 'AttemptsExhausted'
    PROVIDER_ERROR = 'ProviderError'
    TOOL_ERROR = 'ToolError'


SUCCESS_STATUSES = frozenset({PipelineStatus.VERIFIED, PipelineStatus.VERIFIED_AFTER_PRUNE})


@dataclass(frozen=True)
class AttemptRecord:
    index: int
    prompt_digest: str
    raw_response: str
    extracted_program: str
    diff_verdict: Optional[DiffVerdict] = None
    pre_outcome: Optional[VerifierOutcome] = None
    prune_trace: Optional[PruneTrace] = None
    post_outcome: Optional[VerifierOutcome] = None
    retrieved_tactic_ids: Tuple[str, ...] = field(default=())
    elapsed_seconds: float = 0.0

    @property
    def failed(self) -> bool:
        return self.diff_verdict is not None and not self.diff_verdict.is_equal \
            or self.pre_outcome is not None and not self.pre_outcome.verified

    def to_dict(self) -> dict:
        return {
            'index': self.index,
            'promptDigest': self.prompt_digest,
            'rawResponse': self.raw_response,
            'extractedProgram': self.extracted_program,
            'diffVerdict': self.diff_verdict.to_dict() if self.diff_verdict else None,
            'preOutcome': self.pre_outcome.to_dict() if self.pre_outcome else None,
            'pruneTrace': self.prune_trace.to_dict() if self.prune_trace else None,
            'postOutcome': self.post_outcome.to_dict() if self.post_outcome else None,
            'retrievedTacticIds': list(self.retrieved_tactic_ids),
            'elapsedSeconds': round(self.elapsed_seconds, 3),
        }


@dataclass(frozen=True)
class PipelineResult:
    status: PipelineStatus
    attempts: Tuple[AttemptRecord, ...] = field(default=())
    final_program: Optional[str] = None
    verified_at_attempt: Optional[int] = None
    failure_reason: Optional[FailureReason] = None
    failure_detail: str = ''
    # set when the run skipped the diff check, so nothing guarantees the base was kept
    unsound: bool = False

    @property
    def verified(self) -> bool:
        return self.status in SUCCESS_STATUSES

    @property
    def label(self) -> str:
        label = self.status.value
        if self.failure_reason:
            label = '{0}({1})'.format(label, self.failure_reason.value)
        return label + (' UNSOUND' if self.unsound else '')

    def to_dict(self) -> dict:
        return {
            'status': self.status.value,
            'failureReason': self.failure_reason.value if self.failure_reason else None,
            'failureDetail': self.failure_detail,
            'unsound': self.unsound,
            'verifiedAtAttempt': self.verified_at_attempt,
            'finalProgram': self.final_program,
            'attempts': [record.to_dict() for record in self.attempts],
        }
