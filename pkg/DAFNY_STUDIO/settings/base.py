import os

BASE_DIR = os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
APP_DIR = os.path.join(BASE_DIR, 'dafnystudio')

SECRET_KEY = os.environ.get('DAFNY_STUDIO_SECRET_KEY', 'dafny-studio-local-only')

DEBUG = os.environ.get('DAFNY_STUDIO_DEBUG', '') == '1'

ALLOWED_HOSTS = []

INSTALLED_APPS = [
    'dafnystudio.apps.DafnyStudioConfig',
]

# Nothing is persisted in a database: runs, transcripts and reports are files.
DATABASES = {}

USE_TZ = True
TIME_ZONE = 'UTC'

# Verifier
DAFNY_PATH = os.environ.get('DAFNY_PATH', 'dafny')
VERIFICATION_TIME_LIMIT = 60
VERIFIER_KILL_GRACE = 5
VERIFIER_MAX_WORKERS = int(os.environ.get('VERIFIER_MAX_WORKERS', os.cpu_count() or 2))
VERIFIER_EXTRA_ARGS = []
# Dafny reports 0-based columns in its "file(line,col)" prefix
VERIFIER_COLUMN_BASE = 0
KEEP_VERIFIER_TEMP_FILES = DEBUG
RESOLVE_TIME_LIMIT = 1
PATTERN_TABLE_PATH = os.path.join(APP_DIR, 'verification', 'patterns', 'dafny-4.11.json')

# Annotation surface
STRIPPABLE_KINDS = ['LoopInvariant', 'AssertStmt', 'AssertByBlock', 'CalcBlock',
                    'LoopDecreases', 'MethodDecreases']
LEMMA_ALLOWLIST = []

# Hints
TACTICS_DIR = os.path.join(APP_DIR, 'hints', 'builtin')
GENERATED_TACTICS_DIR = os.path.join(BASE_DIR, 'generated_tactics')
HINT_MODE = 'all'

# Pipeline
MAX_ATTEMPTS = 10
PRUNE_ENABLED = True
DIFF_CHECK_ENABLED = True
PROMPT_TOKEN_CEILING = 100000
PROMPT_TEMPLATES_DIR = os.path.join(APP_DIR, 'llm_gateway', 'templates')
BENCH_WORKERS = 4

LLM_PROVIDER = {
    'kind': 'remote',
    'endpoint_style': 'openai-chat',
    'endpoint_url': os.environ.get('LLM_ENDPOINT_URL', 'https://api.openai.com/v1/chat/completions'),
    'model_id': os.environ.get('LLM_MODEL_ID', 'gpt-4o'),
    'auth_token_env_var': 'LLM_API_TOKEN',
    'max_output_tokens': 4096,
    'temperature': 0.0,
    'request_timeout_seconds': 120,
    'max_retries': 3,
    'max_in_flight': 4,
    'requests_per_minute': 60,
}

# Optional list of {"first_attempt": k, "provider": {...}}; empty means LLM_PROVIDER for every attempt.
LLM_PROVIDER_SCHEDULE = []

# Error reporting
SENTRY_DSN = os.environ.get('SENTRY_DSN', '')
LOGGER_TAG = os.environ.get('DAFNY_STUDIO_LOCATION', 'local')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '%(asctime)s %(levelname)s %(name)s [%(threadName)s] %(message)s',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'verbose',
        },
    },
    'loggers': {
        'dafnystudio': {
            'handlers': ['console'],
            'level': os.environ.get('DAFNY_STUDIO_LOG_LEVEL', 'INFO'),
            'propagate': False,
        },
        'apscheduler': {
            'handlers': ['console'],
            'level': 'WARNING',
        },
        'urllib3': {
            'handlers': ['console'],
            'level': 'WARNING',
        },
    },
}
