import json
import logging
import os
import threading
import time
from collections import deque
from dataclasses import asdict, dataclass, field, fields, replace
from enum import Enum
from functools import lru_cache
from typing import Callable, Iterable, List, Optional, Sequence, Tuple, Union

import requests
from django.conf import settings
from django.core.exceptions import ImproperlyConfigured

from dafnystudio.llm_gateway.errors import AuthError, ProviderError, ReplayMiss, ScriptExhausted, TransportError
from dafnystudio.llm_gateway.prompt import SYSTEM_ROLE, Prompt
from dafnystudio.utils.extra import stable_json

logger = logging.getLogger(__name__)

CompletionFn = Callable[[Prompt], str]

ANTHROPIC_VERSION = '2023-06-01'
MAX_BACKOFF_SECONDS = 30


class ProviderKind(Enum):
    REMOTE = 'remote'
    REPLAY = 'replay'
    SCRIPTED = 'scripted'


class EndpointStyle(Enum):
    OPENAI_CHAT = 'openai-chat'
    ANTHROPIC_MESSAGES = 'anthropic-messages'


REQUIRED_FIELDS = {
    ProviderKind.REMOTE: ('endpoint_url', 'model_id', 'auth_token_env_var'),
    ProviderKind.REPLAY: ('transcript_path',),
    ProviderKind.SCRIPTED: ('script',),
}


@dataclass(frozen=True)
class ProviderConfig:
    kind: ProviderKind = ProviderKind.REMOTE
    endpoint_style: EndpointStyle = EndpointStyle.OPENAI_CHAT
    endpoint_url: str = ''
    model_id: str = ''
    # name of the environment variable holding the token, never the token itself
    auth_token_env_var: str = ''
    transcript_path: str = ''
    strict: bool = False
    script: Tuple[str, ...] = field(default=())
    max_output_tokens: int = 4096
    temperature: float = 0.0
    request_timeout_seconds: int = 120
    max_retries: int = 3
    max_in_flight: int = 4
    requests_per_minute: int = 60

    def validate(self) -> 'ProviderConfig':
        missing = [name for name in REQUIRED_FIELDS[self.kind] if not getattr(self, name)]
        if missing:
            raise ImproperlyConfigured('{0} provider needs {1}'.format(self.kind.value, ', '.join(missing)))
        if self.max_retries < 0 or self.max_in_flight < 1:
            raise ImproperlyConfigured('max_retries must be >= 0 and max_in_flight >= 1')
        return self

    @classmethod
    def from_dict(cls, data: dict) -> 'ProviderConfig':
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ImproperlyConfigured('Unknown provider setting(s): {0}'.format(', '.join(unknown)))
        values = dict(data)
        try:
            if 'kind' in values:
                values['kind'] = ProviderKind(values['kind'])
            if 'endpoint_style' in values:
                values['endpoint_style'] = EndpointStyle(values['endpoint_style'])
        except ValueError as e:
            raise ImproperlyConfigured(str(e))
        if 'script' in values:
            values['script'] = tuple(values['script'])
        return cls(**values).validate()

    @classmethod
    def from_settings(cls) -> 'ProviderConfig':
        return cls.from_dict(settings.LLM_PROVIDER)

    def snapshot(self) -> dict:
        data = asdict(self)
        data['kind'] = self.kind.value
        data['endpoint_style'] = self.endpoint_style.value
        data['script'] = len(self.script)
        return data


class RequestBudget(object):
    """Sliding one-minute window of request start times."""

    def __init__(self, per_minute: int, clock=time.monotonic, sleep=time.sleep):
        self.per_minute = per_minute
        self._clock = clock
        self._sleep = sleep
        self._stamps = deque()
        self._lock = threading.Lock()

    def acquire(self):
        if not self.per_minute:
            return
        while True:
            with self._lock:
                now = self._clock()
                while self._stamps and now - self._stamps[0] >= 60:
                    self._stamps.popleft()
                if len(self._stamps) < self.per_minute:
                    self._stamps.append(now)
                    return
                wait = 60 - (now - self._stamps[0])
            logger.debug('Request budget spent, waiting %.1f s', wait)
            self._sleep(wait)


class RemoteChatProvider(object):
    def __init__(self, cfg: ProviderConfig, session: Optional[requests.Session] = None, sleep=time.sleep,
                 clock=time.monotonic):
        self.cfg = cfg.validate()
        self._session = session or requests.Session()
        self._sleep = sleep
        self._in_flight = threading.BoundedSemaphore(cfg.max_in_flight)
        self._budget = RequestBudget(cfg.requests_per_minute, clock, sleep)

    def __call__(self, prompt: Prompt) -> str:
        return self.complete(prompt)

    def _token(self) -> str:
        token = os.environ.get(self.cfg.auth_token_env_var)
        if not token:
            raise AuthError('Environment variable {0} is not set'.format(self.cfg.auth_token_env_var))
        return token

    def request_for(self, prompt: Prompt, token: str):
        if self.cfg.endpoint_style is EndpointStyle.ANTHROPIC_MESSAGES:
            headers = {'x-api-key': token, 'anthropic-version': ANTHROPIC_VERSION}
            payload = {'model': self.cfg.model_id,
                       'system': prompt.system_text,
                       'messages': prompt.messages(),
                       'max_tokens': self.cfg.max_output_tokens,
                       'temperature': self.cfg.temperature}
        else:
            headers = {'Authorization': 'Bearer ' + token}
            payload = {'model': self.cfg.model_id,
                       'messages': [{'role': SYSTEM_ROLE, 'content': prompt.system_text}] + prompt.messages(),
                       'max_tokens': self.cfg.max_output_tokens,
                       'temperature': self.cfg.temperature}
        return headers, payload

    def parse_response(self, data: dict) -> str:
        if self.cfg.endpoint_style is EndpointStyle.ANTHROPIC_MESSAGES:
            return ''.join(block['text'] for block in data['content'] if block.get('type') == 'text')
        return data['choices'][0]['message']['content'] or ''

    def complete(self, prompt: Prompt) -> str:
        headers, payload = self.request_for(prompt, self._token())
        last_error: ProviderError = TransportError('No request was made')
        for attempt in range(self.cfg.max_retries + 1):
            if attempt:
                delay = min(2 ** (attempt - 1), MAX_BACKOFF_SECONDS)
                logger.warning('Retrying prompt %s in %s s after: %s', prompt.digest[:12], delay, last_error)
                self._sleep(delay)
            self._budget.acquire()
            try:
                with self._in_flight:
                    response = self._session.post(self.cfg.endpoint_url, headers=headers, json=payload,
                                                  timeout=self.cfg.request_timeout_seconds)
            except requests.RequestException as e:
                last_error = TransportError('Request to {0} failed: {1}'.format(self.cfg.endpoint_url, e))
                continue

            if response.status_code in (401, 403):
                raise AuthError('Endpoint rejected the credentials (HTTP {0})'.format(response.status_code))
            if response.status_code == 429 or response.status_code >= 500:
                last_error = TransportError('HTTP {0} from {1}'.format(response.status_code, self.cfg.endpoint_url))
                continue
            if response.status_code >= 400:
                raise TransportError('HTTP {0} from {1}: {2}'.format(response.status_code, self.cfg.endpoint_url,
                                                                     response.text[:200]))
            try:
                text = self.parse_response(response.json())
            except (ValueError, KeyError, IndexError, TypeError) as e:
                raise TransportError('Malformed completion response: {0!r}'.format(e))
            logger.info('Completion for prompt %s: %s chars', prompt.digest[:12], len(text))
            return text
        raise last_error


def transcript_record(prompt: Prompt, response_text: str, meta: Optional[dict] = None) -> dict:
    return {'promptDigest': prompt.digest,
            'promptText': prompt.text,
            'responseText': response_text,
            'providerMeta': meta or {}}


def load_transcript(path: str) -> List[dict]:
    records = []
    try:
        with open(path, encoding='utf-8') as stream:
            for number, line in enumerate(stream, start=1):
                if not line.strip():
                    continue
                record = json.loads(line)
                if 'promptDigest' not in record or 'responseText' not in record:
                    raise ValueError('line {0} lacks promptDigest or responseText'.format(number))
                records.append(record)
    except OSError as e:
        raise ProviderError('Cannot read transcript {0}: {1}'.format(path, e))
    except ValueError as e:
        raise ProviderError('Malformed transcript {0}: {1}'.format(path, e))
    return records


class ReplayProvider(object):
    """Answers from a transcript: by prompt digest first, then by call position unless strict."""

    def __init__(self, transcript_path: str, strict: bool = False):
        self.strict = strict
        self._records = load_transcript(transcript_path)
        self._by_digest = {}
        for record in self._records:
            self._by_digest.setdefault(record['promptDigest'], record)
        self._position = 0
        self._lock = threading.Lock()

    def __call__(self, prompt: Prompt) -> str:
        with self._lock:
            ordinal = self._position
            self._position += 1
            record = self._by_digest.get(prompt.digest)
            if record is not None:
                return record['responseText']
            if self.strict or ordinal >= len(self._records):
                raise ReplayMiss(prompt.digest, ordinal)
            logger.warning('Fuzzy replay hit: prompt %s answered by transcript record #%s',
                           prompt.digest[:12], ordinal)
            return self._records[ordinal]['responseText']


ScriptItem = Union[str, CompletionFn]


class ScriptedProvider(object):
    """Hands out responses in order; an item may be a callable computing the response from the prompt."""

    def __init__(self, responses: Iterable[ScriptItem] = ()):
        self._responses = list(responses)
        self._lock = threading.Lock()
        self.calls = 0
        self.prompts: List[Prompt] = []

    def __call__(self, prompt: Prompt) -> str:
        with self._lock:
            self.calls += 1
            self.prompts.append(prompt)
            if not self._responses:
                raise ScriptExhausted(self.calls)
            item = self._responses.pop(0)
        return item(prompt) if callable(item) else item


class RecordingProvider(object):
    """Passes calls through and appends each exchange to a transcript in the replay format."""

    def __init__(self, inner: CompletionFn, transcript_path: str, meta: Optional[dict] = None):
        self.inner = inner
        self.transcript_path = transcript_path
        self.meta = meta or {}
        self._lock = threading.Lock()

    def __call__(self, prompt: Prompt) -> str:
        response = self.inner(prompt)
        line = stable_json(transcript_record(prompt, response, self.meta))
        with self._lock:
            with open(self.transcript_path, 'a', encoding='utf-8') as stream:
                stream.write(line + '\n')
        return response


def make_provider(cfg: ProviderConfig) -> CompletionFn:
    cfg.validate()
    if cfg.kind is ProviderKind.REPLAY:
        return ReplayProvider(cfg.transcript_path, cfg.strict)
    if cfg.kind is ProviderKind.SCRIPTED:
        return ScriptedProvider(cfg.script)
    return RemoteChatProvider(cfg)


@lru_cache(maxsize=None)
def shared_provider(cfg: ProviderConfig) -> CompletionFn:
    """One provider per distinct configuration, so replay and script positions survive across calls."""
    return make_provider(cfg)


def run_provider(cfg: ProviderConfig) -> CompletionFn:
    """Provider for one pipeline run: scripted providers are consumed in order, so each run gets its own."""
    if cfg.kind is ProviderKind.SCRIPTED:
        return make_provider(cfg)
    return shared_provider(cfg)


def uses_script(cfg) -> bool:
    """True when a run configuration draws any completion from a scripted provider."""
    kinds = [cfg.provider.kind] + [entry.provider.kind for entry in cfg.provider_schedule]
    return ProviderKind.SCRIPTED in kinds


def complete(prompt: Prompt, provider: Union[ProviderConfig, CompletionFn]) -> str:
    if isinstance(provider, ProviderConfig):
        provider = shared_provider(provider)
    return provider(prompt)


@dataclass(frozen=True)
class ScheduleEntry:
    first_attempt: int
    provider: ProviderConfig


class ProviderSchedule(object):
    """Picks the provider for an attempt: the entry with the greatest first_attempt not above it."""

    def __init__(self, entries: Sequence[Tuple[int, CompletionFn]], default: Optional[CompletionFn] = None):
        self._entries = sorted(entries, key=lambda entry: entry[0])
        self._default = default
        if self._default is None and (not self._entries or self._entries[0][0] > 0):
            raise ImproperlyConfigured('Provider schedule must cover attempt 0')

    def for_attempt(self, index: int) -> CompletionFn:
        chosen = self._default
        for first_attempt, provider in self._entries:
            if first_attempt <= index:
                chosen = provider
        return chosen

    def wrapped(self, wrap: Callable[[CompletionFn], CompletionFn]) -> 'ProviderSchedule':
        default = wrap(self._default) if self._default is not None else None
        return ProviderSchedule([(first_attempt, wrap(provider)) for first_attempt, provider in self._entries],
                                default)

    @classmethod
    def from_entries(cls, entries: Sequence[ScheduleEntry], default: Optional[CompletionFn] = None):
        return cls([(entry.first_attempt, run_provider(entry.provider)) for entry in entries], default)


def schedule_entries(raw: Sequence[dict]) -> Tuple[ScheduleEntry, ...]:
    entries = []
    for item in raw:
        try:
            entries.append(ScheduleEntry(int(item['first_attempt']), ProviderConfig.from_dict(item['provider'])))
        except (KeyError, TypeError, ValueError) as e:
            raise ImproperlyConfigured('Bad provider schedule entry {0!r}: {1}'.format(item, e))
    return tuple(entries)


def with_transcript(cfg: ProviderConfig, transcript_path: str) -> ProviderConfig:
    return replace(cfg, kind=ProviderKind.REPLAY, transcript_path=transcript_path)
