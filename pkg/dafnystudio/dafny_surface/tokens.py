from dataclasses import dataclass, field
from enum import Enum
from typing import Tuple


class TokenKind(Enum):
    IDENTIFIER = 'identifier'
    KEYWORD = 'keyword'
    NUMERIC_LITERAL = 'numeric-literal'
    STRING_LITERAL = 'string-literal'
    CHAR_LITERAL = 'char-literal'
    OPERATOR = 'operator-punct'
    ATTRIBUTE_OPEN = 'attribute-open'


class TriviaKind(Enum):
    WHITESPACE = 'whitespace'
    LINE_COMMENT = 'line-comment'
    BLOCK_COMMENT = 'block-comment'


KEYWORDS = frozenset({
    'abstract', 'allocated', 'as', 'assert', 'assume', 'bool', 'break', 'by', 'calc', 'case', 'char', 'class',
    'codatatype', 'const', 'constructor', 'continue', 'datatype', 'decreases', 'downto', 'else', 'ensures',
    'exists', 'expect', 'export', 'extends', 'false', 'for', 'forall', 'fresh', 'function', 'ghost', 'greatest',
    'if', 'imap', 'import', 'in', 'include', 'int', 'invariant', 'is', 'iset', 'iterator', 'label', 'least',
    'lemma', 'map', 'match', 'method', 'modifies', 'module', 'multiset', 'nat', 'new', 'newtype', 'null',
    'object', 'old', 'opened', 'ORDINAL', 'predicate', 'print', 'reads', 'real', 'refines', 'requires',
    'return', 'returns', 'reveal', 'seq', 'set', 'static', 'string', 'then', 'this', 'to', 'trait', 'true',
    'twostate', 'type', 'unchanged', 'var', 'while', 'witness', 'yield', 'yields',
})

# Longest first; the lexer takes the first operator that matches.
OPERATORS = (
    '<==>', '-->', '==>', '<==', ':=', ':-', ':|', '::', '..', '==', '!=', '<=', '>=', '&&', '||', '->', '~>',
    '<-', '=>', '<<', '>>', '!!',
)


@dataclass(frozen=True)
class Token:
    """One lexeme of Dafny source. start/end are half-open character offsets into the source text."""
    kind: TokenKind
    lexeme: str
    line: int
    col: int
    start: int
    end: int

    @property
    def span(self) -> Tuple[int, int]:
        return self.start, self.end

    def is_keyword(self, *words) -> bool:
        return self.kind is TokenKind.KEYWORD and self.lexeme in words

    def is_op(self, *ops) -> bool:
        return self.kind is TokenKind.OPERATOR and self.lexeme in ops

    def canonical(self) -> Tuple[str, str]:
        return self.kind.value, self.lexeme


@dataclass(frozen=True)
class Trivia:
    kind: TriviaKind
    start: int
    end: int


@dataclass(frozen=True)
class TokenStream:
    source: str
    tokens: Tuple[Token, ...]
    trivia: Tuple[Trivia, ...] = field(default=())

    def __len__(self):
        return len(self.tokens)

    def __iter__(self):
        return iter(self.tokens)

    def reconstruct(self) -> str:
        """Concatenates tokens and trivia in offset order."""
        pieces = [(t.start, t.end) for t in self.tokens] + [(t.start, t.end) for t in self.trivia]
        return ''.join(self.source[start:end] for start, end in sorted(pieces))
