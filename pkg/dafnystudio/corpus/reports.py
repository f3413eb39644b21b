import io
import json
from dataclasses import dataclass, field
from typing import Dict, Mapping, Optional, Tuple

import numpy as np


@dataclass(frozen=True)
class ProgramSummary:
    status: str
    verified_at_attempt: Optional[int] = None
    attempts_used: int = 0
    wall_seconds: float = 0.0
    verified: bool = False
    detail: str = ''

    def to_dict(self) -> dict:
        return {'status': self.status,
                'verifiedAtAttempt': self.verified_at_attempt,
                'attemptsUsed': self.attempts_used,
                'wallSeconds': round(self.wall_seconds, 3),
                'detail': self.detail}


@dataclass(frozen=True)
class RunReport:
    per_program: Dict[str, ProgramSummary]
    total: int
    verified_count: int
    verified_fraction: float
    cumulative_by_attempt: Tuple[int, ...]
    config_snapshot: dict = field(default_factory=dict)
    ablation_flags: dict = field(default_factory=dict)

    @classmethod
    def aggregate(cls, per_program: Mapping[str, ProgramSummary], max_attempts: int,
                  config_snapshot: dict = None, ablation_flags: dict = None) -> 'RunReport':
        ordered = {program_id: per_program[program_id] for program_id in sorted(per_program)}
        hits = np.zeros(max_attempts, dtype=np.int64)
        for summary in ordered.values():
            if summary.verified and summary.verified_at_attempt is not None:
                hits[summary.verified_at_attempt] += 1
        cumulative = np.cumsum(hits)
        verified_count = sum(1 for summary in ordered.values() if summary.verified)
        total = len(ordered)
        return cls(per_program=ordered,
                   total=total,
                   verified_count=verified_count,
                   verified_fraction=verified_count / total if total else 0.0,
                   cumulative_by_attempt=tuple(int(value) for value in cumulative),
                   config_snapshot=config_snapshot or {},
                   ablation_flags=ablation_flags or {})

    def to_dict(self) -> dict:
        return {
            'perProgram': {program_id: summary.to_dict() for program_id, summary in self.per_program.items()},
            'aggregates': {'total': self.total,
                           'verifiedCount': self.verified_count,
                           'verifiedFraction': self.verified_fraction,
                           'cumulativeByAttempt': list(self.cumulative_by_attempt)},
            'configSnapshot': self.config_snapshot,
            'ablationFlags': self.ablation_flags,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + '\n'

    def curve_csv(self) -> str:
        """attempt,cumulative,total rows for verified-by-attempt plots."""
        attempts = np.arange(len(self.cumulative_by_attempt))
        rows = np.column_stack((attempts, np.array(self.cumulative_by_attempt, dtype=np.int64),
                                np.full(len(attempts), self.total))) if len(attempts) else np.empty((0, 3))
        buffer = io.StringIO()
        np.savetxt(buffer, rows, fmt='%d', delimiter=',', header='attempt,cumulative,total', comments='')
        return buffer.getvalue()


@dataclass(frozen=True)
class RepairEntry:
    was_broken: Optional[bool]
    repaired: bool
    annotations_removed: int
    detail: str = ''

    def to_dict(self) -> dict:
        return {'wasBroken': self.was_broken, 'repaired': self.repaired,
                'annotationsRemoved': self.annotations_removed, 'detail': self.detail}


@dataclass(frozen=True)
class RepairReport:
    per_program: Dict[str, RepairEntry]

    @property
    def totals(self) -> dict:
        entries = self.per_program.values()
        return {'programs': len(self.per_program),
                'wasBroken': sum(1 for e in entries if e.was_broken),
                'fixed': sum(1 for e in entries if e.was_broken and e.repaired),
                'resolvable': sum(1 for e in entries if e.repaired),
                'annotationsRemoved': sum(e.annotations_removed for e in entries)}

    def broken_ids(self) -> Tuple[str, ...]:
        return tuple(program_id for program_id, entry in self.per_program.items() if entry.was_broken)

    def to_dict(self) -> dict:
        return {'perProgram': {program_id: entry.to_dict() for program_id, entry in self.per_program.items()},
                'totals': self.totals}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + '\n'
