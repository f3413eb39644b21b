import logging

import sentry_sdk
from django.conf import settings
from sentry_sdk.integrations.django import DjangoIntegration
from sentry_sdk.integrations.logging import LoggingIntegration

logger = logging.getLogger(__name__)


def init_error_reporting() -> bool:
    """Sends ERROR log records and unhandled exceptions to Sentry, tagged with this installation's location."""
    if not settings.SENTRY_DSN:
        return False

    sentry_sdk.init(dsn=settings.SENTRY_DSN,
                    integrations=[DjangoIntegration(),
                                  LoggingIntegration(level=logging.INFO, event_level=logging.ERROR)],
                    send_default_pii=False)
    sentry_sdk.set_tag('location', settings.LOGGER_TAG)
    logger.info('Error reporting enabled for location %s', settings.LOGGER_TAG)
    return True
