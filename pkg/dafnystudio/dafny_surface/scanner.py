import logging
from collections import Counter
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from dafnystudio.dafny_surface.errors import DafnyScanError, UnbalancedDelimiters
from dafnystudio.dafny_surface.lexer import tokenize
from dafnystudio.dafny_surface.program import (AnnotatedProgram, AnnotationKind, AnnotationSpan, ScanState,
                                               ScanStatus, build_program, clause_digest)
from dafnystudio.dafny_surface.tokens import Token, TokenKind, TokenStream

logger = logging.getLogger(__name__)

SPEC_KEYWORDS = frozenset({'invariant', 'decreases', 'modifies', 'requires', 'ensures', 'reads'})
DECL_KEYWORDS = frozenset({'method', 'function', 'lemma', 'predicate', 'constructor'})
DECL_STOP_KEYWORDS = DECL_KEYWORDS | frozenset({
    'class', 'datatype', 'codatatype', 'module', 'trait', 'iterator', 'newtype', 'type', 'const', 'import',
    'static', 'ghost', 'twostate', 'least', 'greatest', 'abstract', 'include', 'export',
})
LOOP_KEYWORDS = frozenset({'while', 'for'})

_EXPR_END_KEYWORDS = frozenset({'true', 'false', 'null', 'this', 'int', 'nat', 'bool', 'char', 'real', 'string',
                                'object', 'ORDINAL'})
_OPENERS = {'(': ')', '[': ']', '{': '}'}
_CLOSERS = frozenset(_OPENERS.values())


def parse_program(source_text: str, lemma_allowlist: Iterable[str] = ()) -> AnnotatedProgram:
    """tokenize + scan_annotations; lexical errors end up in scan_status instead of being raised."""
    try:
        stream = tokenize(source_text)
    except DafnyScanError as e:
        logger.debug('Cannot tokenize program: %s', e)
        return build_program(source_text, (), (), ScanStatus(ScanState(e.state), e.line, e.col, e.detail))
    return scan_annotations(stream, lemma_allowlist)


def scan_annotations(stream: TokenStream, lemma_allowlist: Iterable[str] = ()) -> AnnotatedProgram:
    try:
        matches = match_delimiters(stream.tokens)
    except UnbalancedDelimiters as e:
        status = ScanStatus(ScanState.UNBALANCED_DELIMITERS, e.line, e.col, e.detail)
        return build_program(stream.source, stream.tokens, (), status, stream.trivia)

    raw = _AnnotationScanner(stream.tokens, matches, frozenset(lemma_allowlist)).scan()
    return build_program(stream.source, stream.tokens, _assign_ids(stream.tokens, raw), ScanStatus(),
                         stream.trivia)


def match_delimiters(tokens: Sequence[Token]) -> Dict[int, int]:
    """Maps the index of every opener ( [ { {: to its closer and back."""
    matches = {}
    stack: List[int] = []
    for index, tok in enumerate(tokens):
        if tok.kind is TokenKind.ATTRIBUTE_OPEN or tok.is_op(*_OPENERS):
            stack.append(index)
        elif tok.is_op(*_CLOSERS):
            if not stack:
                raise UnbalancedDelimiters('unexpected {0!r}'.format(tok.lexeme), tok.line, tok.col)
            opener = tokens[stack[-1]]
            expected = '}' if opener.kind is TokenKind.ATTRIBUTE_OPEN else _OPENERS[opener.lexeme]
            if tok.lexeme != expected:
                raise UnbalancedDelimiters('{0!r} closes {1!r} opened at {2}:{3}'.format(
                    tok.lexeme, opener.lexeme, opener.line, opener.col), tok.line, tok.col)
            start = stack.pop()
            matches[start] = index
            matches[index] = start
    if stack:
        opener = tokens[stack[-1]]
        raise UnbalancedDelimiters('{0!r} is never closed'.format(opener.lexeme), opener.line, opener.col)
    return matches


class _RawSpan(object):
    __slots__ = ('kind', 'first', 'last', 'construct_id', 'intro')

    def __init__(self, kind, first, last, construct_id, intro):
        self.kind = kind
        self.first = first
        self.last = last
        self.construct_id = construct_id
        self.intro = intro


class _AnnotationScanner(object):
    def __init__(self, tokens: Sequence[Token], matches: Dict[int, int], lemma_allowlist: frozenset):
        self._toks = tokens
        self._n = len(tokens)
        self._match = matches
        self._lemmas = lemma_allowlist
        self._spans: List[_RawSpan] = []
        self._constructs = 0

    def scan(self) -> List[_RawSpan]:
        toks = self._toks
        enclosing: List[Tuple[int, int]] = []
        i = 0
        while i < self._n:
            while enclosing and i > enclosing[-1][0]:
                enclosing.pop()
            tok = toks[i]
            current = enclosing[-1][1] if enclosing else None

            if tok.kind is TokenKind.ATTRIBUTE_OPEN:
                i = self._match[i] + 1
            elif tok.is_keyword(*LOOP_KEYWORDS) or tok.is_keyword(*DECL_KEYWORDS):
                is_decl = not tok.is_keyword(*LOOP_KEYWORDS)
                start = i + 1
                if is_decl and start < self._n and toks[start].is_keyword('method'):
                    start += 1  # `function method` / `predicate method`
                construct_id = self._constructs
                self._constructs += 1
                body = self._scan_header(start, is_decl, construct_id)
                if body < self._n and toks[body].is_op('{'):
                    enclosing.append((self._match[body], construct_id))
                    i = body + 1
                else:
                    i = max(body, i + 1)
            elif tok.is_keyword('assert'):
                i = self._assert(i, current)
            elif tok.is_keyword('calc'):
                i = self._calc(i, current)
            elif tok.is_keyword('assume'):
                end = self._statement_end(i + 1)
                self._record(AnnotationKind.ASSUME_STMT, i, end, current, 1)
                i = end
            elif tok.is_keyword('ghost') and self._next_is_keyword(i, 'var') and enclosing:
                end = self._statement_end(i + 2)
                self._record(AnnotationKind.GHOST_DECL, i, end, current, 2)
                i = end
            elif self._is_lemma_call(i):
                end = self._match[i + 1] + 2
                self._record(AnnotationKind.LEMMA_CALL_STMT, i, end, current, 0)
                i = end
            else:
                i += 1
        return self._spans

    def _record(self, kind, first, end, construct_id, intro):
        if end > first:
            self._spans.append(_RawSpan(kind, first, end - 1, construct_id, intro))

    def _next_is_keyword(self, i, word) -> bool:
        return i + 1 < self._n and self._toks[i + 1].is_keyword(word)

    def _ends_expression(self, index: int, in_decl: bool) -> bool:
        if index < 0:
            return False
        tok = self._toks[index]
        if tok.kind in (TokenKind.IDENTIFIER, TokenKind.NUMERIC_LITERAL, TokenKind.STRING_LITERAL,
                        TokenKind.CHAR_LITERAL):
            return True
        if tok.is_op(')', ']', '}') or tok.is_keyword(*_EXPR_END_KEYWORDS):
            return True
        if tok.is_op('*') and index > 0 and self._toks[index - 1].is_keyword('decreases', 'while', 'reads'):
            return True
        if tok.is_op('|'):
            # closing bar of a cardinality |s|
            return self._ends_expression(index - 1, in_decl)
        return in_decl and tok.is_op('>', '>>')

    def _is_body_brace(self, index: int, in_decl: bool) -> bool:
        return self._toks[index].is_op('{') and self._ends_expression(index - 1, in_decl)

    def _scan_header(self, start: int, in_decl: bool, construct_id: int) -> int:
        """Walks a loop or declaration header; returns the index of the body brace or where the header stops."""
        toks = self._toks
        j = start
        while j < self._n:
            tok = toks[j]
            if tok.is_keyword('invariant') and not in_decl:
                end = self._clause_end(j + 1, in_decl)
                self._record(AnnotationKind.LOOP_INVARIANT, j, end, construct_id, 1)
                j = end
            elif tok.is_keyword('decreases'):
                end = self._clause_end(j + 1, in_decl)
                kind = AnnotationKind.METHOD_DECREASES if in_decl else AnnotationKind.LOOP_DECREASES
                self._record(kind, j, end, construct_id, 1)
                j = end
            elif tok.is_keyword(*SPEC_KEYWORDS):
                j = self._clause_end(j + 1, in_decl)
            elif in_decl and j > start and tok.is_keyword(*DECL_STOP_KEYWORDS):
                return j
            elif j > start and self._is_body_brace(j, in_decl):
                return j
            elif tok.kind is TokenKind.ATTRIBUTE_OPEN or tok.is_op(*_OPENERS):
                j = self._match[j] + 1
            elif tok.is_op(*_CLOSERS):
                return j
            else:
                j += 1
        return self._n

    def _clause_end(self, start: int, in_decl: bool) -> int:
        """Exclusive token index where a header clause starting at `start` ends."""
        toks = self._toks
        j = start
        while j < self._n:
            tok = toks[j]
            if tok.is_keyword(*SPEC_KEYWORDS):
                return j
            if in_decl and tok.is_keyword(*DECL_STOP_KEYWORDS):
                return j
            if tok.is_op(';'):
                return j + 1
            if j > start and self._is_body_brace(j, in_decl):
                return j
            if tok.is_op(*_CLOSERS):
                return j
            if j in self._match:
                j = self._match[j] + 1
            else:
                j += 1
        return self._n

    def _statement_end(self, start: int) -> int:
        """Exclusive index just past the terminating `;` (or at a stray closer)."""
        j = start
        while j < self._n:
            tok = self._toks[j]
            if tok.is_op(';'):
                return j + 1
            if tok.is_op(*_CLOSERS):
                return j
            if j in self._match:
                j = self._match[j] + 1
            else:
                j += 1
        return self._n

    def _assert(self, i: int, construct_id: Optional[int]) -> int:
        j = i + 1
        while j < self._n:
            tok = self._toks[j]
            if tok.is_op(';'):
                self._record(AnnotationKind.ASSERT_STMT, i, j + 1, construct_id, 1)
                return j + 1
            if tok.is_keyword('by') and j + 1 < self._n and self._toks[j + 1].is_op('{'):
                end = self._match[j + 1] + 1
                self._record(AnnotationKind.ASSERT_BY_BLOCK, i, end, construct_id, 1)
                return end
            if tok.is_op(*_CLOSERS):
                break
            j = self._match[j] + 1 if j in self._match else j + 1
        self._record(AnnotationKind.ASSERT_STMT, i, j, construct_id, 1)
        return max(j, i + 1)

    def _calc(self, i: int, construct_id: Optional[int]) -> int:
        j = i + 1
        while j < self._n and not self._toks[j].is_op('{'):
            if self._toks[j].kind is TokenKind.ATTRIBUTE_OPEN:
                j = self._match[j] + 1
            elif self._toks[j].is_op(';', *_CLOSERS):
                return i + 1
            else:
                j += 1
        if j >= self._n:
            return i + 1
        end = self._match[j] + 1
        if end < self._n and self._toks[end].is_op(';'):
            end += 1
        self._record(AnnotationKind.CALC_BLOCK, i, end, construct_id, 1)
        return end

    def _is_lemma_call(self, i: int) -> bool:
        toks = self._toks
        if not self._lemmas or toks[i].kind is not TokenKind.IDENTIFIER or toks[i].lexeme not in self._lemmas:
            return False
        if i > 0 and not toks[i - 1].is_op(';', '{', '}'):
            return False
        if i + 1 >= self._n or not toks[i + 1].is_op('('):
            return False
        close = self._match[i + 1]
        return close + 1 < self._n and toks[close + 1].is_op(';')


def _assign_ids(tokens: Sequence[Token], raw: List[_RawSpan]) -> List[AnnotationSpan]:
    seen = Counter()
    spans = []
    for item in sorted(raw, key=lambda r: r.first):
        body = tokens[item.first + item.intro:item.last + 1]
        if body and body[-1].is_op(';'):
            body = body[:-1]
        text = ' '.join(tok.lexeme for tok in body)
        ordinal = seen[(item.kind, text)]
        seen[(item.kind, text)] += 1
        spans.append(AnnotationSpan(kind=item.kind,
                                    start=tokens[item.first].start,
                                    end=tokens[item.last].end,
                                    enclosing_construct_id=item.construct_id,
                                    clause_text=text,
                                    clause_id=clause_digest(item.kind, text, ordinal),
                                    first_token=item.first,
                                    last_token=item.last))
    return spans
