import logging
from typing import List

from dafnystudio.dafny_surface.errors import UnterminatedComment, UnterminatedLiteral
from dafnystudio.dafny_surface.tokens import KEYWORDS, OPERATORS, Token, TokenKind, TokenStream, Trivia, TriviaKind

logger = logging.getLogger(__name__)

_HEX_DIGITS = frozenset('0123456789abcdefABCDEF_')


def tokenize(source_text: str) -> TokenStream:
    """Splits Dafny source into tokens.

    Whitespace and comments (line comments and nested block comments) are not
    tokens; their spans are kept as trivia so the input can be rebuilt exactly.

    Raises UnterminatedLiteral / UnterminatedComment on malformed source.
    """
    return _Lexer(source_text).run()


def _is_ident_start(ch: str) -> bool:
    return ch.isalpha() or ch == '_'


def _is_ident_part(ch: str) -> bool:
    return ch.isalnum() or ch in '_\'?'


class _Lexer(object):
    def __init__(self, source: str):
        self._source = source
        self._pos = 0
        self._line = 1
        self._col = 1
        self._tokens: List[Token] = []
        self._trivia: List[Trivia] = []

    def run(self) -> TokenStream:
        while self._pos < len(self._source):
            ch = self._source[self._pos]
            if ch.isspace():
                self._whitespace()
            elif self._source.startswith('//', self._pos):
                self._line_comment()
            elif self._source.startswith('/*', self._pos):
                self._block_comment()
            else:
                self._token()
        return TokenStream(self._source, tuple(self._tokens), tuple(self._trivia))

    def _peek(self, offset=0) -> str:
        index = self._pos + offset
        return self._source[index] if index < len(self._source) else ''

    def _advance(self, count=1):
        for _ in range(count):
            if self._source[self._pos] == '\n':
                self._line += 1
                self._col = 1
            else:
                self._col += 1
            self._pos += 1

    def _whitespace(self):
        start = self._pos
        while self._pos < len(self._source) and self._source[self._pos].isspace():
            self._advance()
        self._trivia.append(Trivia(TriviaKind.WHITESPACE, start, self._pos))

    def _line_comment(self):
        start = self._pos
        while self._pos < len(self._source) and self._source[self._pos] != '\n':
            self._advance()
        self._trivia.append(Trivia(TriviaKind.LINE_COMMENT, start, self._pos))

    def _block_comment(self):
        start, line, col = self._pos, self._line, self._col
        depth = 0
        while self._pos < len(self._source):
            if self._source.startswith('/*', self._pos):
                depth += 1
                self._advance(2)
            elif self._source.startswith('*/', self._pos):
                depth -= 1
                self._advance(2)
                if depth == 0:
                    self._trivia.append(Trivia(TriviaKind.BLOCK_COMMENT, start, self._pos))
                    return
            else:
                self._advance()
        raise UnterminatedComment('unterminated block comment', line, col)

    def _emit(self, kind: TokenKind, start: int, line: int, col: int):
        self._tokens.append(Token(kind, self._source[start:self._pos], line, col, start, self._pos))

    def _token(self):
        start, line, col = self._pos, self._line, self._col
        ch = self._source[self._pos]

        if ch == '@' and self._peek(1) == '"':
            self._verbatim_string(line, col)
            self._emit(TokenKind.STRING_LITERAL, start, line, col)
        elif ch == '"':
            self._string(line, col)
            self._emit(TokenKind.STRING_LITERAL, start, line, col)
        elif ch == '\'':
            self._char(line, col)
            self._emit(TokenKind.CHAR_LITERAL, start, line, col)
        elif _is_ident_start(ch):
            while self._pos < len(self._source) and _is_ident_part(self._source[self._pos]):
                self._advance()
            word = self._source[start:self._pos]
            self._emit(TokenKind.KEYWORD if word in KEYWORDS else TokenKind.IDENTIFIER, start, line, col)
        elif ch.isdigit():
            self._number()
            self._emit(TokenKind.NUMERIC_LITERAL, start, line, col)
        elif ch == '{' and self._peek(1) == ':':
            self._advance(2)
            self._emit(TokenKind.ATTRIBUTE_OPEN, start, line, col)
        else:
            for op in OPERATORS:
                if self._source.startswith(op, self._pos):
                    self._advance(len(op))
                    break
            else:
                # any other character is a single punctuation token
                self._advance()
            self._emit(TokenKind.OPERATOR, start, line, col)

    def _number(self):
        if self._peek() == '0' and self._peek(1) in ('x', 'X') and self._peek(2) in _HEX_DIGITS:
            self._advance(2)
            while self._peek() and self._peek() in _HEX_DIGITS:
                self._advance()
            return
        while self._peek().isdigit() or self._peek() == '_':
            self._advance()
        if self._peek() == '.' and self._peek(1).isdigit():
            self._advance()
            while self._peek().isdigit() or self._peek() == '_':
                self._advance()

    def _string(self, line, col):
        self._advance()
        while self._pos < len(self._source):
            ch = self._source[self._pos]
            if ch == '\n':
                break
            if ch == '\\':
                if self._pos + 1 >= len(self._source):
                    break
                self._advance(2)
                continue
            self._advance()
            if ch == '"':
                return
        raise UnterminatedLiteral('unterminated string literal', line, col)

    def _verbatim_string(self, line, col):
        self._advance(2)
        while self._pos < len(self._source):
            if self._source[self._pos] == '"':
                if self._peek(1) == '"':
                    self._advance(2)
                    continue
                self._advance()
                return
            self._advance()
        raise UnterminatedLiteral('unterminated verbatim string literal', line, col)

    def _char(self, line, col):
        self._advance()
        ch = self._peek()
        if ch == '\\':
            self._advance()
            if self._peek() == 'u':
                self._advance()
                while self._peek() and self._peek() in _HEX_DIGITS:
                    self._advance()
            elif self._peek() and self._peek() != '\n':
                self._advance()
        elif ch and ch not in '\'\n':
            self._advance()
        if self._peek() != '\'':
            raise UnterminatedLiteral('unterminated character literal', line, col)
        self._advance()
