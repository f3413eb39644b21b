from django.test import SimpleTestCase

from dafnystudio.dafny_surface.errors import UnbalancedDelimiters
from dafnystudio.dafny_surface.lexer import tokenize
from dafnystudio.dafny_surface.program import AnnotationKind, ScanState
from dafnystudio.dafny_surface.scanner import match_delimiters, parse_program
from tests import (NON_INDUCTIVE_CLAUSE, ONLINE_MAX_ATTEMPT, ONLINE_MAX_BASE, ONLY_ONCE_VERIFIED,
                   PARTITION_GROUND_TRUTH)


def kinds(program):
    return [span.kind for span in program.annotations]


def texts(program):
    return [span.clause_text for span in program.annotations]


class TestScanAnnotations(SimpleTestCase):
    def test_online_max_has_six_invariants_on_one_loop(self):
        program = parse_program(ONLINE_MAX_ATTEMPT)

        self.assertTrue(program.ok)
        self.assertEqual(kinds(program), [AnnotationKind.LOOP_INVARIANT] * 6)
        self.assertEqual(program.annotations[0].clause_text, 'x <= i <= a . Length')
        self.assertEqual(program.annotations[5].clause_text, NON_INDUCTIVE_CLAUSE)
        self.assertEqual(len({span.enclosing_construct_id for span in program.annotations}), 1)

    def test_program_without_annotations(self):
        program = parse_program(ONLINE_MAX_BASE)

        self.assertTrue(program.ok)
        self.assertEqual(program.annotations, ())

    def test_slicing_program_has_three_invariants_and_an_assert(self):
        program = parse_program(ONLY_ONCE_VERIFIED)

        self.assertEqual(kinds(program), [AnnotationKind.LOOP_INVARIANT] * 3 + [AnnotationKind.ASSERT_STMT])
        self.assertEqual(texts(program), ['0 <= i <= a . Length',
                                          'keyCount == multiset ( a [ .. i ] ) [ key ]',
                                          'b <==> keyCount == 1',
                                          'a [ .. ] == a [ .. a . Length ]'])
        assert_span = program.annotations[-1]
        self.assertEqual(ONLY_ONCE_VERIFIED[assert_span.start:assert_span.end], 'assert a[..] == a[..a.Length];')
        # the assert belongs to the method, not to the loop
        self.assertNotEqual(assert_span.enclosing_construct_id, program.annotations[0].enclosing_construct_id)

    def test_specifications_are_never_annotations(self):
        source = '''method M(a: array<int>) returns (r: int)
  requires a.Length > 0
  modifies a
  ensures r >= 0
{
  r := 0;
}
'''
        self.assertEqual(parse_program(source).annotations, ())

    def test_invariant_ends_at_spec_keyword_and_body(self):
        source = '''method M(s: seq<int>)
{
  var i := 0;
  while i < |s|
    invariant 0 <= i <= |s|
    decreases |s| - i
    invariant forall k :: 0 <= k < i ==> s[k] in {1, 2}
  {
    i := i + 1;
  }
}
'''
        program = parse_program(source)

        self.assertEqual(kinds(program), [AnnotationKind.LOOP_INVARIANT, AnnotationKind.LOOP_DECREASES,
                                          AnnotationKind.LOOP_INVARIANT])
        self.assertEqual(texts(program), ['0 <= i <= | s |', '| s | - i',
                                          'forall k :: 0 <= k < i ==> s [ k ] in { 1 , 2 }'])

    def test_multiline_invariant_is_one_span(self):
        source = '''method M(s: array<nat>)
{
  var i := 0;
  while i < s.Length
    invariant forall j :: 0 <= j < i ==>
      if s[j] % 2 == 1 then s[j] > 0
      else s[j] >= 0
  {
    i := i + 1;
  }
}
'''
        program = parse_program(source)

        self.assertEqual(len(program.annotations), 1)
        span = program.annotations[0]
        self.assertTrue(source[span.start:span.end].endswith('else s[j] >= 0'))

    def test_statement_annotations(self):
        source = '''lemma L(n: nat)
  decreases n
{
  assert n >= 0 by {
    assert true;
  }
  calc {
    n + 0;
    == { assert n + 0 == n; }
    n;
  }
  assume n < 10;
  ghost var g := n;
}
'''
        program = parse_program(source)

        self.assertEqual(kinds(program), [AnnotationKind.METHOD_DECREASES, AnnotationKind.ASSERT_BY_BLOCK,
                                          AnnotationKind.CALC_BLOCK, AnnotationKind.ASSUME_STMT,
                                          AnnotationKind.GHOST_DECL])
        self.assertEqual(program.annotations[0].clause_text, 'n')
        self.assertEqual(program.annotations[3].clause_text, 'n < 10')
        self.assertEqual(program.annotations[4].clause_text, 'g := n')

    def test_function_decreases_before_body(self):
        program = parse_program('function F(n: nat): nat decreases n { if n == 0 then 0 else F(n - 1) }')

        self.assertEqual(kinds(program), [AnnotationKind.METHOD_DECREASES])

    def test_lemma_calls_need_the_allowlist(self):
        source = 'method M() {\n  Helper(1, 2);\n  x := Helper(3);\n}\n'

        self.assertEqual(parse_program(source).annotations, ())
        program = parse_program(source, lemma_allowlist=['Helper'])
        self.assertEqual(kinds(program), [AnnotationKind.LEMMA_CALL_STMT])
        self.assertEqual(program.annotations[0].clause_text, 'Helper ( 1 , 2 )')

    def test_for_loop_header(self):
        program = parse_program('method M(n: nat) {\n  for i := 0 to n\n    invariant i <= n\n  {\n  }\n}\n')

        self.assertEqual(texts(program), ['i <= n'])

    def test_spans_are_ordered(self):
        program = parse_program(ONLY_ONCE_VERIFIED)
        starts = [span.start for span in program.annotations]

        self.assertEqual(starts, sorted(starts))

    def test_clause_ids_survive_reformatting(self):
        reformatted = PARTITION_GROUND_TRUTH.replace('invariant 0 <= a < b <= n+1',
                                                     'invariant   0<=a <b<= n + 1 // lower bound')

        self.assertEqual(parse_program(reformatted).clause_ids(), parse_program(PARTITION_GROUND_TRUTH).clause_ids())

    def test_duplicate_clauses_get_distinct_ids(self):
        source = 'while i < n\n  invariant i <= n\n  invariant i <= n\n{\n}\n'

        self.assertEqual(len(parse_program(source).clause_ids()), 2)

    def test_unbalanced_program(self):
        program = parse_program('method M() {\n  while (i < n {\n  }\n}\n')

        self.assertFalse(program.ok)
        self.assertEqual(program.scan_status.state, ScanState.UNBALANCED_DELIMITERS)
        self.assertEqual(program.annotations, ())

    def test_lexical_error_is_reported_not_raised(self):
        program = parse_program('method M() { var s := "open; }')

        self.assertEqual(program.scan_status.state, ScanState.UNTERMINATED_LITERAL)
        self.assertIn('line 1', str(program.scan_status))

    def test_locations(self):
        program = parse_program('ab\ncd\n')

        self.assertEqual(program.offset_at(2, 2), 4)
        self.assertEqual(program.location_of(4), (2, 2))
        self.assertEqual(program.offset_at(9, 1), len(program.source))


class TestMatchDelimiters(SimpleTestCase):
    def test_pairs_point_both_ways(self):
        self.assertEqual(match_delimiters(tokenize('f(a[i])').tokens), {1: 6, 6: 1, 3: 5, 5: 3})
        self.assertEqual(match_delimiters(tokenize('{:only} x').tokens), {0: 2, 2: 0})

    def test_errors_carry_the_offending_location(self):
        cases = [
            ('f(a]', "']' closes '(' opened at 1:2", (1, 4)),
            ('x)', "unexpected ')'", (1, 2)),
            ('f(a', "'(' is never closed", (1, 2)),
            ('method M() {\n  while (i < n {\n  }\n}\n', "'}' closes '(' opened at 2:9", (4, 1)),
        ]
        for source, detail, location in cases:
            with self.subTest(source=source):
                with self.assertRaises(UnbalancedDelimiters) as raised:
                    match_delimiters(tokenize(source).tokens)
                self.assertEqual(raised.exception.detail, detail)
                self.assertEqual((raised.exception.line, raised.exception.col), location)

    def test_scan_status_keeps_the_location(self):
        status = parse_program('method M() {\n  while (i < n {\n  }\n}\n').scan_status

        self.assertEqual((status.line, status.col), (4, 1))
        self.assertEqual(status.detail, "'}' closes '(' opened at 2:9")
