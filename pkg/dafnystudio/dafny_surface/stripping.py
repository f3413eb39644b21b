from typing import Iterable

from dafnystudio.dafny_surface.errors import ScanStatusError
from dafnystudio.dafny_surface.program import AnnotatedProgram, AnnotationSpan, strippable_set


def strip(program: AnnotatedProgram, strippable=None) -> str:
    """Source text with every annotation of a strippable kind removed."""
    if not program.ok:
        raise ScanStatusError('Cannot strip a program that did not scan: {0}'.format(program.scan_status))
    kinds = strippable_set(strippable)
    return remove_spans(program.source, [span for span in program.annotations if span.kind in kinds])


def remove_spans(source: str, spans: Iterable[AnnotationSpan]) -> str:
    """Deletes character ranges from source.

    A line left with nothing but whitespace after the deletion is dropped
    whole, so multiline clauses leave no blank or dangling lines behind.
    A single space is put back where a deletion would glue two tokens.
    """
    masked = bytearray(len(source))
    any_span = False
    for span in spans:
        masked[span.start:span.end] = b'\x01' * (span.end - span.start)
        any_span = True
    if not any_span:
        return source

    out = []
    pos = 0
    for line in source.splitlines(keepends=True):
        line_end = pos + len(line)
        line_mask = masked[pos:line_end]
        if any(line_mask) and all(flag or ch.isspace() for ch, flag in zip(line, line_mask)):
            pos = line_end
            continue

        kept = []
        in_gap = False
        for ch, flag in zip(line, line_mask):
            if flag:
                in_gap = True
                continue
            if in_gap and kept and not kept[-1].isspace() and not ch.isspace():
                kept.append(' ')
            in_gap = False
            kept.append(ch)
        out.append(''.join(kept))
        pos = line_end
    return ''.join(out)
