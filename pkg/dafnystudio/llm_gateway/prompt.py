from dataclasses import dataclass, field
from typing import Iterable, Tuple

from dafnystudio.utils.extra import content_digest

SYSTEM_ROLE = 'system'
USER_ROLE = 'user'


@dataclass(frozen=True)
class Prompt:
    system_text: str
    user_turns: Tuple[str, ...] = field(default=())
    digest: str = ''

    @property
    def text(self) -> str:
        """Whole prompt as one document, as stored in transcripts."""
        return '\n\n'.join((self.system_text,) + self.user_turns)

    @property
    def estimated_tokens(self) -> int:
        return len(self.text) // 4

    def messages(self):
        return [{'role': USER_ROLE, 'content': turn} for turn in self.user_turns]


def make_prompt(system_text: str, user_turns: Iterable[str]) -> Prompt:
    turns = tuple(user_turns)
    return Prompt(system_text, turns, content_digest(system_text, *turns))
