import bisect
import hashlib
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Tuple

from dafnystudio.dafny_surface.tokens import Token, Trivia


class AnnotationKind(Enum):
    LOOP_INVARIANT = 'LoopInvariant'
    ASSERT_STMT = 'AssertStmt'
    ASSERT_BY_BLOCK = 'AssertByBlock'
    CALC_BLOCK = 'CalcBlock'
    LOOP_DECREASES = 'LoopDecreases'
    METHOD_DECREASES = 'MethodDecreases'
    ASSUME_STMT = 'AssumeStmt'
    GHOST_DECL = 'GhostDecl'
    LEMMA_CALL_STMT = 'LemmaCallStmt'

    @classmethod
    def parse(cls, name: str) -> 'AnnotationKind':
        for kind in cls:
            if kind.value == name or kind.name == name:
                return kind
        raise ValueError('Unknown annotation kind: {0}'.format(name))


DEFAULT_STRIPPABLE = frozenset({
    AnnotationKind.LOOP_INVARIANT,
    AnnotationKind.ASSERT_STMT,
    AnnotationKind.ASSERT_BY_BLOCK,
    AnnotationKind.CALC_BLOCK,
    AnnotationKind.LOOP_DECREASES,
    AnnotationKind.METHOD_DECREASES,
})


def strippable_set(kinds) -> frozenset:
    """Normalizes a collection of kinds or kind names; AssumeStmt never survives."""
    if kinds is None:
        return DEFAULT_STRIPPABLE
    result = set()
    for kind in kinds:
        result.add(kind if isinstance(kind, AnnotationKind) else AnnotationKind.parse(kind))
    result.discard(AnnotationKind.ASSUME_STMT)
    return frozenset(result)


def clause_digest(kind: AnnotationKind, clause_text: str, ordinal: int) -> str:
    payload = '{0}\x00{1}\x00{2}'.format(kind.value, clause_text, ordinal)
    return hashlib.sha1(payload.encode('utf-8')).hexdigest()[:16]


@dataclass(frozen=True)
class AnnotationSpan:
    kind: AnnotationKind
    start: int
    end: int
    enclosing_construct_id: Optional[int]
    clause_text: str
    clause_id: str
    first_token: int
    last_token: int

    @property
    def span(self) -> Tuple[int, int]:
        return self.start, self.end

    def contains(self, offset: int) -> bool:
        return self.start <= offset < self.end

    def to_dict(self) -> dict:
        return {
            'kind': self.kind.value,
            'span': [self.start, self.end],
            'enclosingConstructId': self.enclosing_construct_id,
            'clauseText': self.clause_text,
            'clauseId': self.clause_id,
        }


class ScanState(Enum):
    OK = 'ok'
    UNBALANCED_DELIMITERS = 'unbalanced-delimiters'
    UNTERMINATED_LITERAL = 'unterminated-literal'
    UNTERMINATED_COMMENT = 'unterminated-comment'


@dataclass(frozen=True)
class ScanStatus:
    state: ScanState = ScanState.OK
    line: int = 0
    col: int = 0
    detail: str = ''

    @property
    def ok(self) -> bool:
        return self.state is ScanState.OK

    def __str__(self):
        if self.ok:
            return 'ok'
        return '{0} at line {1}, column {2}: {3}'.format(self.state.value, self.line, self.col, self.detail)


@dataclass(frozen=True)
class AnnotatedProgram:
    source: str
    tokens: Tuple[Token, ...]
    annotations: Tuple[AnnotationSpan, ...]
    scan_status: ScanStatus = ScanStatus()
    trivia: Tuple[Trivia, ...] = ()
    _line_starts: Tuple[int, ...] = field(default=(), repr=False, compare=False)

    @property
    def ok(self) -> bool:
        return self.scan_status.ok

    def spans_of(self, *kinds) -> Tuple[AnnotationSpan, ...]:
        return tuple(span for span in self.annotations if span.kind in kinds)

    @property
    def invariants(self) -> Tuple[AnnotationSpan, ...]:
        return self.spans_of(AnnotationKind.LOOP_INVARIANT)

    def clause_ids(self) -> frozenset:
        return frozenset(span.clause_id for span in self.annotations)

    def find(self, clause_id: str) -> Optional[AnnotationSpan]:
        for span in self.annotations:
            if span.clause_id == clause_id:
                return span
        return None

    def offset_at(self, line: int, col: int) -> int:
        """Character offset of a 1-based (line, col) position, clamped to the line."""
        starts = self._line_starts or _line_starts(self.source)
        if line < 1:
            return 0
        if line > len(starts):
            return len(self.source)
        line_start = starts[line - 1]
        line_end = starts[line] - 1 if line < len(starts) else len(self.source)
        return min(line_start + max(col, 1) - 1, max(line_end, line_start))

    def location_of(self, offset: int) -> Tuple[int, int]:
        starts = self._line_starts or _line_starts(self.source)
        line = bisect.bisect_right(starts, offset)
        return line, offset - starts[line - 1] + 1


def _line_starts(source: str) -> Tuple[int, ...]:
    starts = [0]
    for index, ch in enumerate(source):
        if ch == '\n':
            starts.append(index + 1)
    return tuple(starts)


def build_program(source, tokens, annotations, scan_status=ScanStatus(), trivia=()) -> AnnotatedProgram:
    return AnnotatedProgram(source, tuple(tokens), tuple(annotations), scan_status, tuple(trivia),
                            _line_starts(source))
