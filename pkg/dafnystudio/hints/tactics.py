import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Optional, Sequence, Tuple

from dafnystudio.const import TACTIC_HEADER_SEPARATOR
from dafnystudio.verification.diagnostics import Classification, Diagnostic


class TacticLoadError(ValueError):
    pass


class ConditionKind(Enum):
    PROGRAM = 'program'
    PROGRAM_REGEX = 'program-re'
    DIAGNOSTIC = 'diagnostic'
    CLASSIFICATION = 'class'


@dataclass(frozen=True)
class Condition:
    kind: ConditionKind
    value: str

    def holds(self, program_text: str, diagnostics: Sequence[Diagnostic]) -> bool:
        if self.kind is ConditionKind.PROGRAM:
            return self.value in program_text
        if self.kind is ConditionKind.PROGRAM_REGEX:
            return re.search(self.value, program_text) is not None
        if self.kind is ConditionKind.DIAGNOSTIC:
            needle = self.value.lower()
            return any(needle in d.message.lower() for d in diagnostics)
        return any(d.classification.value == self.value for d in diagnostics)

    def __str__(self):
        return '{0}:{1}'.format(self.kind.value, self.value)


@dataclass(frozen=True)
class Trigger:
    """Conjunction of conditions, written `program:[.. & class:PostconditionFailure`."""
    conditions: Tuple[Condition, ...]

    def matches(self, program_text: str, diagnostics: Sequence[Diagnostic]) -> bool:
        return all(c.holds(program_text, diagnostics) for c in self.conditions)

    @classmethod
    def parse(cls, text: str) -> 'Trigger':
        conditions = []
        for part in text.split(' & '):
            kind_name, sep, value = part.strip().partition(':')
            if not sep or not value:
                raise ValueError('trigger condition must look like kind:value, got {0!r}'.format(part))
            kind = ConditionKind(kind_name.strip())
            if kind is ConditionKind.PROGRAM_REGEX:
                re.compile(value)
            if kind is ConditionKind.CLASSIFICATION:
                Classification(value)
            conditions.append(Condition(kind, value))
        return cls(tuple(conditions))

    def __str__(self):
        return ' & '.join(str(c) for c in self.conditions)


class ProvenanceKind(Enum):
    BUILTIN = 'builtin'
    GENERATED = 'generated'


@dataclass(frozen=True)
class Provenance:
    kind: ProvenanceKind = ProvenanceKind.BUILTIN
    failed_ref: str = ''
    ground_truth_ref: str = ''


@dataclass(frozen=True)
class Tactic:
    id: str
    title: str
    body: str
    triggers: Tuple[Trigger, ...] = field(default=())
    provenance: Provenance = Provenance()

    def matches(self, program_text: str, diagnostics: Sequence[Diagnostic]) -> bool:
        return any(t.matches(program_text, diagnostics) for t in self.triggers)

    def to_text(self) -> str:
        lines = ['id: ' + self.id, 'title: ' + self.title]
        lines.extend('trigger: {0}'.format(t) for t in self.triggers)
        lines.append('provenance: ' + self.provenance.kind.value)
        if self.provenance.failed_ref:
            lines.append('failed-ref: ' + self.provenance.failed_ref)
        if self.provenance.ground_truth_ref:
            lines.append('ground-truth-ref: ' + self.provenance.ground_truth_ref)
        lines.append(TACTIC_HEADER_SEPARATOR)
        lines.append(self.body)
        return '\n'.join(lines) + '\n'


def parse_tactic(text: str, source_name: str = '<text>') -> Tactic:
    header, sep, body = text.replace('\r\n', '\n').partition('\n' + TACTIC_HEADER_SEPARATOR + '\n')
    if not sep:
        raise TacticLoadError('{0}: missing "{1}" line between header and body'
                              .format(source_name, TACTIC_HEADER_SEPARATOR))
    values = {'trigger': []}
    for number, line in enumerate(header.split('\n'), start=1):
        if not line.strip():
            continue
        key, colon, value = line.partition(':')
        key, value = key.strip(), value.strip()
        if not colon or key not in ('id', 'title', 'trigger', 'provenance', 'failed-ref', 'ground-truth-ref'):
            raise TacticLoadError('{0}:{1}: unexpected header line {2!r}'.format(source_name, number, line))
        if key == 'trigger':
            try:
                values['trigger'].append(Trigger.parse(value))
            except (ValueError, re.error) as e:
                raise TacticLoadError('{0}:{1}: bad trigger: {2}'.format(source_name, number, e))
        else:
            values[key] = value

    body = body.strip()
    missing = [key for key in ('id', 'title') if not values.get(key)]
    if missing:
        raise TacticLoadError('{0}: missing {1}'.format(source_name, ', '.join(missing)))
    if not body:
        raise TacticLoadError('{0}: empty tactic body'.format(source_name))
    try:
        provenance = Provenance(ProvenanceKind(values.get('provenance', 'builtin')),
                                values.get('failed-ref', ''), values.get('ground-truth-ref', ''))
    except ValueError as e:
        raise TacticLoadError('{0}: {1}'.format(source_name, e))
    return Tactic(values['id'], values['title'], body, tuple(values['trigger']), provenance)


@dataclass(frozen=True)
class TacticStore:
    tactics: Tuple[Tactic, ...] = field(default=())

    def __post_init__(self):
        ids, titles = set(), set()
        for tactic in self.tactics:
            if tactic.id in ids:
                raise TacticLoadError('duplicate tactic id {0!r}'.format(tactic.id))
            if tactic.title in titles:
                raise TacticLoadError('duplicate tactic title {0!r}'.format(tactic.title))
            ids.add(tactic.id)
            titles.add(tactic.title)

    def __len__(self):
        return len(self.tactics)

    def __iter__(self):
        return iter(self.tactics)

    def get(self, tactic_id: str) -> Optional[Tactic]:
        for tactic in self.tactics:
            if tactic.id == tactic_id:
                return tactic
        return None

    def ids(self) -> Tuple[str, ...]:
        return tuple(t.id for t in self.tactics)

    def with_tactics(self, extra: Iterable[Tactic]) -> 'TacticStore':
        return TacticStore(self.tactics + tuple(extra))
