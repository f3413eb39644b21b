from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Optional, Tuple


class Severity(Enum):
    ERROR = 'error'
    WARNING = 'warning'


class Classification(Enum):
    INVARIANT_NOT_MAINTAINED = 'InvariantNotMaintained'
    INVARIANT_ON_ENTRY = 'InvariantOnEntry'
    POSTCONDITION_FAILURE = 'PostconditionFailure'
    ASSERTION_FAILURE = 'AssertionFailure'
    DECREASES_FAILURE = 'DecreasesFailure'
    SYNTAX_OR_RESOLVE = 'SyntaxOrResolve'
    OTHER = 'Other'


NON_INDUCTIVE = frozenset({Classification.INVARIANT_NOT_MAINTAINED, Classification.INVARIANT_ON_ENTRY})


class VerifierStatus(Enum):
    VERIFIED = 'Verified'
    VERIFICATION_FAILED = 'VerificationFailed'
    PARSE_OR_RESOLVE_ERROR = 'ParseOrResolveError'
    TIMEOUT = 'Timeout'
    TOOL_ERROR = 'ToolError'


@dataclass(frozen=True)
class Diagnostic:
    line: int
    col: int
    severity: Severity
    message: str
    classification: Classification
    bound_clause_id: Optional[str] = None

    @property
    def is_error(self) -> bool:
        return self.severity is Severity.ERROR

    def bind(self, clause_id: Optional[str]) -> 'Diagnostic':
        return replace(self, bound_clause_id=clause_id)

    def to_dict(self) -> dict:
        return {
            'line': self.line,
            'col': self.col,
            'severity': self.severity.value,
            'message': self.message,
            'classification': self.classification.value,
            'boundClauseId': self.bound_clause_id,
        }


@dataclass(frozen=True)
class VerifierOutcome:
    status: VerifierStatus
    diagnostics: Tuple[Diagnostic, ...] = field(default=())
    raw_output: str = ''
    wall_seconds: float = 0.0
    exit_detail: str = ''

    @property
    def verified(self) -> bool:
        return self.status is VerifierStatus.VERIFIED

    @property
    def aborted(self) -> bool:
        """The verifier produced no usable verdict."""
        return self.status in (VerifierStatus.TOOL_ERROR, VerifierStatus.TIMEOUT)

    @property
    def errors(self) -> Tuple[Diagnostic, ...]:
        return tuple(d for d in self.diagnostics if d.is_error)

    def flagged_clause_ids(self) -> Tuple[str, ...]:
        """Bound clause ids of non-inductive invariant diagnostics, first occurrence order."""
        seen = []
        for diagnostic in self.errors:
            if diagnostic.classification in NON_INDUCTIVE and diagnostic.bound_clause_id \
                    and diagnostic.bound_clause_id not in seen:
                seen.append(diagnostic.bound_clause_id)
        return tuple(seen)

    def to_dict(self) -> dict:
        return {
            'status': self.status.value,
            'diagnostics': [d.to_dict() for d in self.diagnostics],
            'wallSeconds': round(self.wall_seconds, 3),
            'exitDetail': self.exit_detail,
        }


def tool_error(detail: str, raw_output='', wall_seconds=0.0) -> VerifierOutcome:
    return VerifierOutcome(VerifierStatus.TOOL_ERROR, (), raw_output, wall_seconds, detail)
