from django.test import SimpleTestCase

from dafnystudio.dafny_surface.errors import UnterminatedComment, UnterminatedLiteral
from dafnystudio.dafny_surface.lexer import tokenize
from dafnystudio.dafny_surface.tokens import TokenKind, TriviaKind
from tests import ONLY_ONCE_VERIFIED, PARTITION_BASE


def lexemes(text):
    return [tok.lexeme for tok in tokenize(text)]


class TestLexer(SimpleTestCase):
    def test_should_split_assignment(self):
        tokens = tokenize('b := a+1;').tokens

        self.assertEqual([(t.kind, t.lexeme) for t in tokens],
                         [(TokenKind.IDENTIFIER, 'b'), (TokenKind.OPERATOR, ':='), (TokenKind.IDENTIFIER, 'a'),
                          (TokenKind.OPERATOR, '+'), (TokenKind.NUMERIC_LITERAL, '1'), (TokenKind.OPERATOR, ';')])

    def test_comment_line_contributes_no_tokens(self):
        stream = tokenize('// FILL IN INVARIANTS.')

        self.assertEqual(len(stream), 0)
        self.assertEqual([t.kind for t in stream.trivia], [TriviaKind.LINE_COMMENT])

    def test_slice_assert_is_fourteen_tokens(self):
        tokens = tokenize('assert a[..] == a[..a.Length];').tokens

        self.assertEqual(len(tokens), 14)
        self.assertEqual(tokens[-1].lexeme, ';')
        self.assertEqual([t.lexeme for t in tokens if t.lexeme == '..'], ['..', '..'])
        self.assertTrue(all(t.kind is TokenKind.OPERATOR for t in tokens if t.lexeme == '..'))

    def test_member_access_is_three_tokens(self):
        self.assertEqual(lexemes('a.Length'), ['a', '.', 'Length'])
        self.assertIs(tokenize('array').tokens[0].kind, TokenKind.IDENTIFIER)

    def test_positions_are_one_based(self):
        tokens = tokenize('x := 1;\n  y := x;').tokens
        y = tokens[4]

        self.assertEqual((y.lexeme, y.line, y.col), ('y', 2, 3))
        self.assertEqual(y.span, (10, 11))

    def test_nested_block_comment_is_one_trivia(self):
        stream = tokenize('/* a /* b */ c */ x')

        self.assertEqual([t.lexeme for t in stream], ['x'])
        self.assertEqual(stream.trivia[0].kind, TriviaKind.BLOCK_COMMENT)
        self.assertEqual(stream.trivia[0].end, len('/* a /* b */ c */'))

    def test_literals(self):
        tokens = tokenize('@"say ""hi""" "a\\"b" \'\\n\' \'c\' 0x1F 1_000 3.14').tokens

        self.assertEqual([t.kind for t in tokens],
                         [TokenKind.STRING_LITERAL, TokenKind.STRING_LITERAL, TokenKind.CHAR_LITERAL,
                          TokenKind.CHAR_LITERAL, TokenKind.NUMERIC_LITERAL, TokenKind.NUMERIC_LITERAL,
                          TokenKind.NUMERIC_LITERAL])
        self.assertEqual(tokens[0].lexeme, '@"say ""hi"""')
        self.assertEqual(tokens[4].lexeme, '0x1F')
        self.assertEqual(tokens[6].lexeme, '3.14')

    def test_attribute_opener_is_one_token(self):
        tokens = tokenize('lemma {:axiom} L()').tokens

        self.assertEqual(tokens[1].kind, TokenKind.ATTRIBUTE_OPEN)
        self.assertEqual(tokens[1].lexeme, '{:')
        self.assertEqual(tokens[2].lexeme, 'axiom')

    def test_identifier_parts(self):
        self.assertEqual(lexemes("x' := t.Node?;"), ["x'", ':=', 't', '.', 'Node?', ';'])

    def test_longest_operator_wins(self):
        self.assertEqual(lexemes('a <==> b ==> c <= d'), ['a', '<==>', 'b', '==>', 'c', '<=', 'd'])

    def test_reconstruct_is_exact(self):
        for source in (PARTITION_BASE, ONLY_ONCE_VERIFIED, '  /* c */ x\t// end'):
            with self.subTest(source=source[:20]):
                self.assertEqual(tokenize(source).reconstruct(), source)

    def test_unterminated_string(self):
        with self.assertRaises(UnterminatedLiteral) as raised:
            tokenize('var s := "abc\nx;')
        self.assertEqual((raised.exception.line, raised.exception.col), (1, 10))

    def test_unterminated_comment(self):
        with self.assertRaises(UnterminatedComment) as raised:
            tokenize('x;\n/* open /* nested */')
        self.assertEqual(raised.exception.line, 2)
        self.assertEqual(raised.exception.state, 'unterminated-comment')

    def test_unterminated_char(self):
        with self.assertRaises(UnterminatedLiteral):
            tokenize("c := 'ab';")
