import os
import re
from functools import lru_cache
from typing import Optional

from django.conf import settings

PLACEHOLDER = re.compile(r'{{([A-Z_]+)}}')


class TemplateError(ValueError):
    pass


@lru_cache(maxsize=64)
def _read(path: str) -> str:
    try:
        with open(path, encoding='utf-8') as stream:
            return stream.read()
    except OSError as e:
        raise TemplateError('Cannot read prompt template {0}: {1}'.format(path, e))


def load_template(name: str, templates_dir: Optional[str] = None) -> str:
    return _read(os.path.join(templates_dir or settings.PROMPT_TEMPLATES_DIR, name + '.txt'))


def render(template: str, **values) -> str:
    """Substitutes {{NAME}} placeholders; a placeholder without a value is an error."""
    def substitute(match):
        key = match.group(1)
        if key not in values:
            raise TemplateError('No value for placeholder {{{{{0}}}}}'.format(key))
        return str(values[key])
    return PLACEHOLDER.sub(substitute, template).strip('\n')


def render_template(name: str, templates_dir: Optional[str] = None, **values) -> str:
    return render(load_template(name, templates_dir), **values)
