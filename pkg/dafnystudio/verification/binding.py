from dataclasses import replace

from dafnystudio.dafny_surface.errors import ScanStatusError
from dafnystudio.dafny_surface.program import AnnotatedProgram, AnnotationKind
from dafnystudio.verification.diagnostics import VerifierOutcome


def bind_diagnostics(outcome: VerifierOutcome, program: AnnotatedProgram) -> VerifierOutcome:
    """Attaches the clause id of the loop invariant whose span contains each diagnostic position."""
    if not program.ok:
        raise ScanStatusError('Cannot bind diagnostics to a program that did not scan: {0}'
                              .format(program.scan_status))
    invariants = program.spans_of(AnnotationKind.LOOP_INVARIANT)
    bound = []
    for diagnostic in outcome.diagnostics:
        clause_id = None
        if diagnostic.line > 0:
            offset = program.offset_at(diagnostic.line, diagnostic.col)
            for span in invariants:
                if span.contains(offset):
                    clause_id = span.clause_id
                    break
        bound.append(diagnostic.bind(clause_id))
    return replace(outcome, diagnostics=tuple(bound))
