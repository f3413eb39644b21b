import logging
import re
from typing import Callable, FrozenSet

from dafnystudio.dafny_surface.diff_check import canonical_tokens, diff_check
from dafnystudio.dafny_surface.program import AnnotatedProgram
from dafnystudio.dafny_surface.scanner import DECL_KEYWORDS, parse_program
from dafnystudio.dafny_surface.stripping import strip
from dafnystudio.dafny_surface.tokens import KEYWORDS, TokenKind
from dafnystudio.hints.errors import BaseMismatch, NoDifference, ProblemSpecificTactic, TacticFormatError
from dafnystudio.hints.tactics import Provenance, ProvenanceKind, Tactic
from dafnystudio.llm_gateway.prompt import Prompt, make_prompt
from dafnystudio.llm_gateway.templates import render_template
from dafnystudio.utils.extra import slugify_title

logger = logging.getLogger(__name__)

# Names every Dafny program may use; a tactic mentioning them is still generic.
BUILTIN_NAMES = frozenset({
    'array', 'array2', 'array3', 'Length', 'Length0', 'Length1', 'Keys', 'Values', 'Items', 'Floor',
    'IsLimit', 'IsSucc', 'Offset', 'IsNat', 'ORDINAL', 'string', 'object', 'real', 'char',
})
MIN_GENERIC_LENGTH = 3

TACTIC_HEADING = re.compile(r'^[ \t#*]*Tactic:[ \t]*(?P<title>.+?)[ \t*]*$', re.MULTILINE)
OUTER_FENCE = re.compile(r'^```[^\n]*\n(.*)\n```\s*$', re.DOTALL)

TACTIC_LAYOUT = '''Tactic: <short title>

<one paragraph stating the strategy>

Specifically:
- <what to look for>
- <what annotation to add>

This pattern applies to any verification problem where:
1. <condition>
2. <condition>'''


def program_identifiers(program: AnnotatedProgram) -> FrozenSet[str]:
    """Identifiers a tactic must not mention: every declared name, plus the non-trivial local ones."""
    tokens = canonical_tokens(program)
    declared = set()
    for index, tok in enumerate(tokens[:-1]):
        if tok.is_keyword(*DECL_KEYWORDS) and tokens[index + 1].kind is TokenKind.IDENTIFIER:
            declared.add(tokens[index + 1].lexeme)
    local = {tok.lexeme for tok in tokens
             if tok.kind is TokenKind.IDENTIFIER and len(tok.lexeme) >= MIN_GENERIC_LENGTH}
    return frozenset((declared | local) - KEYWORDS - BUILTIN_NAMES)


def parse_tactic_response(response: str):
    text = response.strip()
    fenced = OUTER_FENCE.match(text)
    if fenced:
        text = fenced.group(1).strip()
    match = TACTIC_HEADING.search(text)
    if match is None:
        raise TacticFormatError('No "Tactic: <title>" heading in the response', response)
    title = match.group('title').strip()
    body = text[match.end():].strip()
    if not title or not body:
        raise TacticFormatError('Tactic response lacks a title or a body', response)
    return title, body


def tactic_generation_prompt(failed_program: str, ground_truth: str) -> Prompt:
    user_turn = render_template('tactic_generation', FAILED=failed_program.strip('\n'),
                                GROUND_TRUTH=ground_truth.strip('\n'), EXAMPLE=TACTIC_LAYOUT)
    return make_prompt(render_template('tactic_system'), [user_turn])


def generate_tactic(failed_program: str, ground_truth: str, llm: Callable[[Prompt], str],
                    failed_ref: str = '', ground_truth_ref: str = '') -> Tactic:
    failed = parse_program(failed_program)
    verified = parse_program(ground_truth)
    if not failed.ok or not verified.ok:
        raise BaseMismatch('Cannot scan {0}: {1}'.format(
            'failed attempt' if not failed.ok else 'ground truth',
            failed.scan_status if not failed.ok else verified.scan_status))
    if [t.canonical() for t in failed.tokens] == [t.canonical() for t in verified.tokens]:
        raise NoDifference('Failed attempt and ground truth are token-identical')
    verdict = diff_check(ground_truth, strip(failed))
    if not verdict.is_equal:
        raise BaseMismatch('Ground truth does not share the failed attempt\'s base program: {0}'.format(verdict))

    prompt = tactic_generation_prompt(failed_program, ground_truth)
    logger.info('Requesting tactic for %s / %s (prompt %s)', failed_ref or '-', ground_truth_ref or '-',
                prompt.digest[:12])
    title, body = parse_tactic_response(llm(prompt))

    text = title + '\n' + body
    leaked = {name for name in program_identifiers(verified)
              if re.search(r'(?<![\w\'?]){0}(?![\w\'?])'.format(re.escape(name)), text)}
    if leaked:
        raise ProblemSpecificTactic(leaked)

    provenance = Provenance(ProvenanceKind.GENERATED, failed_ref, ground_truth_ref)
    return Tactic(slugify_title(title), title, body, (), provenance)
