class ProviderError(Exception):
    """Base of every failure to obtain a completion."""


class TransportError(ProviderError):
    pass


class AuthError(ProviderError):
    pass


class ReplayMiss(ProviderError):
    def __init__(self, digest: str, ordinal: int):
        super().__init__('No recorded response for prompt {0} (call #{1})'.format(digest, ordinal))
        self.digest = digest
        self.ordinal = ordinal


class ScriptExhausted(ProviderError):
    def __init__(self, calls: int):
        super().__init__('Scripted provider has no response left for call #{0}'.format(calls))
        self.calls = calls


class PromptTooLarge(ValueError):
    def __init__(self, estimated_tokens: int, ceiling: int):
        super().__init__('Prompt needs ~{0} tokens, ceiling is {1}'.format(estimated_tokens, ceiling))
        self.estimated_tokens = estimated_tokens
        self.ceiling = ceiling


class EmptyResponse(ValueError):
    pass
