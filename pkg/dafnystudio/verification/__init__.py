from dafnystudio.verification.binding import bind_diagnostics
from dafnystudio.verification.dafny_verifier import (DafnyVerifier, VerifierConfig, VerifierSlots, resolve_only,
                                                     resolves, verify)
from dafnystudio.verification.diagnostics import (NON_INDUCTIVE, Classification, Diagnostic, Severity,
                                                  VerifierOutcome, VerifierStatus, tool_error)
from dafnystudio.verification.oracle import (FlagClauses, ScriptedOracle, failing_outcome, flagging_outcome,
                                             verified_outcome)
from dafnystudio.verification.output_parser import parse_diagnostics, parse_outcome
from dafnystudio.verification.patterns import (PatternRule, PatternTable, PatternTableError, classify,
                                               default_pattern_table, load_pattern_table)
