import json
import logging
import os
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Tuple

from django.conf import settings

from dafnystudio.verification.diagnostics import Classification

logger = logging.getLogger(__name__)


class PatternTableError(ValueError):
    pass


@dataclass(frozen=True)
class PatternRule:
    pattern: str
    classification: Classification
    is_regex: bool = False

    def matches(self, message: str) -> bool:
        if self.is_regex:
            return _compiled(self.pattern).search(message) is not None
        return self.pattern in message


@dataclass(frozen=True)
class PatternTable:
    """Ordered message patterns; the first matching rule decides the classification."""
    rules: Tuple[PatternRule, ...]
    version_label: str

    def classify(self, message: str) -> Classification:
        for rule in self.rules:
            if rule.matches(message):
                return rule.classification
        return Classification.OTHER


CATCH_ALL = PatternRule('', Classification.OTHER)


def classify(message: str, table: Optional[PatternTable] = None) -> Classification:
    return (table or default_pattern_table()).classify(message)


def load_pattern_table(path: str) -> PatternTable:
    """Reads a JSON array of {pattern, classification, isRegex} (label = file stem)
    or an object {"versionLabel": ..., "patterns": [...]}."""
    try:
        with open(path, encoding='utf-8') as stream:
            data = json.load(stream)
    except (OSError, ValueError) as e:
        raise PatternTableError('Cannot read pattern table {0}: {1}'.format(path, e))

    label = os.path.splitext(os.path.basename(path))[0]
    if isinstance(data, dict):
        label = data.get('versionLabel', label)
        data = data.get('patterns')
    if not isinstance(data, list):
        raise PatternTableError('Pattern table {0} must hold a list of patterns'.format(path))

    rules = []
    for index, item in enumerate(data):
        try:
            classification = Classification(item['classification'])
            rule = PatternRule(str(item['pattern']), classification, bool(item.get('isRegex', False)))
            if rule.is_regex:
                _compiled(rule.pattern)
        except (KeyError, TypeError, ValueError, re.error) as e:
            raise PatternTableError('Bad entry #{0} in pattern table {1}: {2}'.format(index, path, e))
        rules.append(rule)

    if not rules or rules[-1].pattern or rules[-1].is_regex:
        rules.append(CATCH_ALL)
    logger.debug('Loaded pattern table %s with %s rules', label, len(rules))
    return PatternTable(tuple(rules), label)


@lru_cache(maxsize=None)
def cached_pattern_table(path: str) -> PatternTable:
    return load_pattern_table(path)


def default_pattern_table() -> PatternTable:
    return cached_pattern_table(settings.PATTERN_TABLE_PATH)


@lru_cache(maxsize=256)
def _compiled(pattern: str):
    return re.compile(pattern, re.IGNORECASE)
