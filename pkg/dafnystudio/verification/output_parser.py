import re
from typing import List, Optional

from dafnystudio.verification.diagnostics import (Classification, Diagnostic, Severity, VerifierOutcome,
                                                  VerifierStatus)
from dafnystudio.verification.patterns import PatternTable

DIAGNOSTIC_LINE = re.compile(
    r'^(?P<file>.*?)\((?P<line>\d+),(?P<col>\d+)\): (?P<severity>Error|Warning)[^:]*: (?P<message>.*)$')
SUMMARY_LINE = re.compile(
    r'finished with (?P<verified>\d+) verified, (?P<errors>\d+) errors?'
    r'(?:, (?P<timeouts>\d+) time outs?)?(?:, (?P<oom>\d+) out of resource)?')
PARSE_OR_RESOLVE_LINE = re.compile(r'\d+ (parse|resolution/type) errors? detected in')


def parse_diagnostics(raw_output: str, table: PatternTable, column_base: int = 0) -> List[Diagnostic]:
    """Error/warning lines of verifier output, columns normalized to 1-based."""
    diagnostics = []
    for line in raw_output.splitlines():
        match = DIAGNOSTIC_LINE.match(line.strip())
        if match is None:
            continue
        message = match.group('message').strip()
        diagnostics.append(Diagnostic(line=int(match.group('line')),
                                      col=int(match.group('col')) + 1 - column_base,
                                      severity=Severity.ERROR if match.group('severity') == 'Error'
                                      else Severity.WARNING,
                                      message=message,
                                      classification=table.classify(message)))
    return diagnostics


def parse_outcome(raw_output: str, table: PatternTable, return_code: Optional[int] = None,
                  wall_seconds: float = 0.0, column_base: int = 0) -> VerifierOutcome:
    diagnostics = parse_diagnostics(raw_output, table, column_base)
    errors = [d for d in diagnostics if d.is_error]
    summary = None
    for match in SUMMARY_LINE.finditer(raw_output):
        summary = match

    if PARSE_OR_RESOLVE_LINE.search(raw_output) \
            or any(d.classification is Classification.SYNTAX_OR_RESOLVE for d in errors):
        status = VerifierStatus.PARSE_OR_RESOLVE_ERROR
    elif errors:
        status = VerifierStatus.VERIFICATION_FAILED
    elif summary is not None and int(summary.group('errors')) == 0 \
            and not int(summary.group('timeouts') or 0) and not int(summary.group('oom') or 0):
        status = VerifierStatus.VERIFIED
    elif summary is not None:
        # verifier-internal time outs / resource limits without located errors
        status = VerifierStatus.VERIFICATION_FAILED
        diagnostics.append(Diagnostic(0, 0, Severity.ERROR, summary.group(0), table.classify(summary.group(0))))
    else:
        detail = 'verifier exited with code {0} and no recognizable output'.format(return_code)
        return VerifierOutcome(VerifierStatus.TOOL_ERROR, tuple(diagnostics), raw_output, wall_seconds, detail)

    return VerifierOutcome(status, tuple(diagnostics), raw_output, wall_seconds,
                           '' if return_code in (None, 0) else 'exit code {0}'.format(return_code))
