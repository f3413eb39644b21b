from dafnystudio.hints.tactics import (Condition, ConditionKind, Provenance, ProvenanceKind, Tactic, TacticLoadError,
                                       TacticStore, Trigger, parse_tactic)
from dafnystudio.hints.store import (HintMode, builtin_tactics, format_for_prompt, load_tactics, promote_tactic,
                                     quarantine_tactic, retrieve, save_tactics)
from dafnystudio.hints.errors import (BaseMismatch, NoDifference, ProblemSpecificTactic, TacticFormatError,
                                      TacticGenerationError)
from dafnystudio.hints.generation import generate_tactic, parse_tactic_response, program_identifiers
