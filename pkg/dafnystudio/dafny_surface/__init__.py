from dafnystudio.dafny_surface.diff_check import (DiffVerdict, Mismatch, ScanFailure, UnsoundHit, UnsoundKind,
                                                  Verdict, canonical_tokens, diff_check, find_unsound_construct,
                                                  program_digest)
from dafnystudio.dafny_surface.errors import (DafnyScanError, ScanStatusError, UnbalancedDelimiters,
                                              UnterminatedComment, UnterminatedLiteral)
from dafnystudio.dafny_surface.lexer import tokenize
from dafnystudio.dafny_surface.program import (DEFAULT_STRIPPABLE, AnnotatedProgram, AnnotationKind,
                                               AnnotationSpan, ScanState, ScanStatus, strippable_set)
from dafnystudio.dafny_surface.scanner import match_delimiters, parse_program, scan_annotations
from dafnystudio.dafny_surface.stripping import remove_spans, strip
from dafnystudio.dafny_surface.tokens import KEYWORDS, Token, TokenKind, TokenStream, Trivia, TriviaKind
