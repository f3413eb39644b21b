import hashlib
import logging
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, List, Optional, Sequence, Tuple

from dafnystudio.dafny_surface.program import AnnotatedProgram, AnnotationKind, AnnotationSpan, strippable_set
from dafnystudio.dafny_surface.scanner import parse_program
from dafnystudio.dafny_surface.tokens import Token, TokenKind

logger = logging.getLogger(__name__)

EOF_LEXEME = '<end of file>'


class Verdict(Enum):
    EQUAL = 'Equal'
    MISMATCH = 'Mismatch'
    UNSOUND_CONSTRUCT = 'UnsoundConstruct'
    SCAN_FAILURE = 'ScanFailure'


class UnsoundKind(Enum):
    ASSUME = 'AssumeStmt'
    AXIOM = 'AxiomAttribute'
    EXPECT = 'ExpectStmt'
    ONLY = 'OnlyAttribute'
    VERIFY_FALSE = 'VerifyFalseAttribute'
    DECREASES_STAR = 'DecreasesStar'


# base annotations that are checked claims; a candidate must keep every one of them
OBLIGATION_KINDS = frozenset({AnnotationKind.ASSERT_STMT, AnnotationKind.ASSERT_BY_BLOCK, AnnotationKind.CALC_BLOCK})
REMOVED_LEXEME = '<removed annotation>'


@dataclass(frozen=True)
class Mismatch:
    candidate_token: str
    base_token: str
    candidate_loc: Tuple[int, int]
    base_loc: Tuple[int, int]


@dataclass(frozen=True)
class UnsoundHit:
    kind: UnsoundKind
    location: Tuple[int, int]


@dataclass(frozen=True)
class ScanFailure:
    side: str
    detail: str


@dataclass(frozen=True)
class DiffVerdict:
    verdict: Verdict
    mismatch: Optional[Mismatch] = None
    unsound: Optional[UnsoundHit] = None
    scan_failure: Optional[ScanFailure] = None
    added_annotations: Tuple[AnnotationSpan, ...] = field(default=())

    @property
    def is_equal(self) -> bool:
        return self.verdict is Verdict.EQUAL

    def to_dict(self) -> dict:
        data = {'verdict': self.verdict.value}
        if self.mismatch:
            data['mismatch'] = {
                'candidateToken': self.mismatch.candidate_token,
                'baseToken': self.mismatch.base_token,
                'candidateLoc': list(self.mismatch.candidate_loc),
                'baseLoc': list(self.mismatch.base_loc),
            }
        if self.unsound:
            data['unsound'] = {'kind': self.unsound.kind.value, 'location': list(self.unsound.location)}
        if self.scan_failure:
            data['scanFailure'] = {'side': self.scan_failure.side, 'detail': self.scan_failure.detail}
        if self.verdict is Verdict.EQUAL:
            data['addedAnnotations'] = [span.to_dict() for span in self.added_annotations]
        return data

    def __str__(self):
        if self.mismatch:
            m = self.mismatch
            return 'Mismatch: candidate {0!r} at {1}:{2} vs base {3!r} at {4}:{5}'.format(
                m.candidate_token, m.candidate_loc[0], m.candidate_loc[1],
                m.base_token, m.base_loc[0], m.base_loc[1])
        if self.unsound:
            return 'UnsoundConstruct: {0} at {1}:{2}'.format(self.unsound.kind.value, *self.unsound.location)
        if self.scan_failure:
            return 'ScanFailure ({0}): {1}'.format(self.scan_failure.side, self.scan_failure.detail)
        return 'Equal ({0} added annotations)'.format(len(self.added_annotations))


def diff_check(candidate_text: str, base_text: str, strippable=None,
               lemma_allowlist: Iterable[str] = ()) -> DiffVerdict:
    """Accepts a candidate only if it is the base program plus annotations."""
    kinds = strippable_set(strippable)
    candidate = parse_program(candidate_text, lemma_allowlist)
    if not candidate.ok:
        return DiffVerdict(Verdict.SCAN_FAILURE, scan_failure=ScanFailure('candidate', str(candidate.scan_status)))
    base = parse_program(base_text, lemma_allowlist)
    if not base.ok:
        return DiffVerdict(Verdict.SCAN_FAILURE, scan_failure=ScanFailure('base', str(base.scan_status)))

    known = base.clause_ids()
    added = tuple(span for span in candidate.annotations if span.kind in kinds and span.clause_id not in known)

    hit = find_unsound_construct(candidate.tokens)
    for span in added:
        if hit is not None:
            break
        hit = find_verification_bypass(candidate.tokens[span.first_token:span.last_token + 1])
    if hit is not None:
        return DiffVerdict(Verdict.UNSOUND_CONSTRUCT, unsound=hit)

    candidate_core = canonical_tokens(candidate, kinds)
    base_core = canonical_tokens(base, kinds)
    for index in range(max(len(candidate_core), len(base_core))):
        cand = candidate_core[index] if index < len(candidate_core) else None
        orig = base_core[index] if index < len(base_core) else None
        if cand is None or orig is None or cand.canonical() != orig.canonical():
            mismatch = Mismatch(candidate_token=cand.lexeme if cand else EOF_LEXEME,
                                base_token=orig.lexeme if orig else EOF_LEXEME,
                                candidate_loc=_location(candidate, cand),
                                base_loc=_location(base, orig))
            logger.debug('Diff check mismatch: %s', mismatch)
            return DiffVerdict(Verdict.MISMATCH, mismatch=mismatch)

    removed = removed_obligation(candidate, base, kinds)
    if removed is not None:
        # core tokens line up one to one, so the token after the removed clause locates it in the candidate
        after = next((k for k, tok in enumerate(base_core) if tok.start >= removed.end), len(base_core))
        mismatch = Mismatch(candidate_token=REMOVED_LEXEME,
                            base_token=removed.clause_text,
                            candidate_loc=_location(candidate, candidate_core[after] if after < len(candidate_core)
                                                    else None),
                            base_loc=base.location_of(removed.start))
        logger.debug('Diff check: candidate drops base %s %r', removed.kind.value, removed.clause_text)
        return DiffVerdict(Verdict.MISMATCH, mismatch=mismatch)

    return DiffVerdict(Verdict.EQUAL, added_annotations=added)


def find_unsound_construct(tokens: Sequence[Token]) -> Optional[UnsoundHit]:
    """Constructs that are unsound wherever they appear in a candidate."""
    for index, tok in enumerate(tokens):
        nxt = tokens[index + 1] if index + 1 < len(tokens) else None
        if tok.is_keyword('assume'):
            return UnsoundHit(UnsoundKind.ASSUME, (tok.line, tok.col))
        if tok.is_keyword('expect'):
            return UnsoundHit(UnsoundKind.EXPECT, (tok.line, tok.col))
        if tok.kind is TokenKind.ATTRIBUTE_OPEN and nxt is not None and nxt.lexeme == 'axiom':
            return UnsoundHit(UnsoundKind.AXIOM, (tok.line, tok.col))
        if tok.is_op('@') and nxt is not None and nxt.lexeme == 'Axiom':
            return UnsoundHit(UnsoundKind.AXIOM, (tok.line, tok.col))
    return None


def find_verification_bypass(tokens: Sequence[Token]) -> Optional[UnsoundHit]:
    """Constructs that switch checks off: `{:only}`, `{:verify false}`, `@VerifyFalse` and `decreases *`.

    Applied to the annotations a candidate adds; the same constructs written in the base are its own business.
    """
    for index, tok in enumerate(tokens):
        nxt = tokens[index + 1] if index + 1 < len(tokens) else None
        after = tokens[index + 2] if index + 2 < len(tokens) else None
        if nxt is None:
            break
        if tok.kind is TokenKind.ATTRIBUTE_OPEN and nxt.lexeme == 'only':
            return UnsoundHit(UnsoundKind.ONLY, (tok.line, tok.col))
        if tok.kind is TokenKind.ATTRIBUTE_OPEN and nxt.lexeme == 'verify' and after is not None \
                and after.is_keyword('false'):
            return UnsoundHit(UnsoundKind.VERIFY_FALSE, (tok.line, tok.col))
        if tok.is_op('@') and nxt.lexeme == 'VerifyFalse':
            return UnsoundHit(UnsoundKind.VERIFY_FALSE, (tok.line, tok.col))
        if tok.is_keyword('decreases') and nxt.is_op('*'):
            return UnsoundHit(UnsoundKind.DECREASES_STAR, (tok.line, tok.col))
    return None


def removed_obligation(candidate: AnnotatedProgram, base: AnnotatedProgram,
                       strippable=None) -> Optional[AnnotationSpan]:
    """First base assertion or calc block the candidate does not keep verbatim in the same construct."""
    kinds = strippable_set(strippable) & OBLIGATION_KINDS
    kept = Counter(_obligation_key(span) for span in candidate.annotations if span.kind in kinds)
    for span in base.annotations:
        if span.kind not in kinds:
            continue
        key = _obligation_key(span)
        if not kept[key]:
            return span
        kept[key] -= 1
    return None


def _obligation_key(span: AnnotationSpan):
    return span.kind, span.clause_text, span.enclosing_construct_id


def canonical_tokens(program: AnnotatedProgram, strippable=None) -> List[Token]:
    """Tokens outside strippable annotation spans, in order, keeping their original locations."""
    kinds = strippable_set(strippable)
    removed = set()
    for span in program.annotations:
        if span.kind in kinds:
            removed.update(range(span.first_token, span.last_token + 1))
    return [tok for index, tok in enumerate(program.tokens) if index not in removed]


def program_digest(text: str) -> str:
    """Layout-insensitive digest: equal for programs with identical token sequences."""
    program = parse_program(text)
    digest = hashlib.sha256()
    if program.tokens:
        for tok in program.tokens:
            digest.update(tok.kind.value.encode('utf-8'))
            digest.update(b'\x1f')
            digest.update(tok.lexeme.encode('utf-8'))
            digest.update(b'\x1e')
    else:
        digest.update(text.strip().encode('utf-8'))
    return digest.hexdigest()


def _location(program: AnnotatedProgram, tok: Optional[Token]) -> Tuple[int, int]:
    if tok is not None:
        return tok.line, tok.col
    return program.location_of(len(program.source))
