from dafnystudio.llm_gateway.errors import (AuthError, EmptyResponse, PromptTooLarge, ProviderError, ReplayMiss,
                                            ScriptExhausted, TransportError)
from dafnystudio.llm_gateway.prompt import Prompt, make_prompt
from dafnystudio.llm_gateway.templates import TemplateError, load_template, render, render_template
from dafnystudio.llm_gateway.extraction import extract_program
from dafnystudio.llm_gateway.providers import (CompletionFn, EndpointStyle, ProviderConfig, ProviderKind,
                                               ProviderSchedule, RecordingProvider, RemoteChatProvider,
                                               ReplayProvider, ScheduleEntry, ScriptedProvider, complete,
                                               load_transcript, make_provider, schedule_entries)
from dafnystudio.llm_gateway.builder import build_prompt, build_prompt_within
