import logging
import threading
from datetime import datetime
from typing import Any, Callable, Dict, Iterable, Tuple

from apscheduler.events import EVENT_JOB_ERROR, EVENT_JOB_EXECUTED, EVENT_JOB_MISSED
from apscheduler.executors.pool import ThreadPoolExecutor
from apscheduler.schedulers.background import BackgroundScheduler
from apscheduler.triggers.date import DateTrigger
from tzlocal import get_localzone

logging.getLogger('apscheduler').setLevel(logging.WARNING)
logger = logging.getLogger(__name__)

# jobs of a batch are all due at once; a busy pool must not drop them
MISFIRE_GRACE_SECONDS = 60 * 60 * 24


class BatchRunner(object):
    """Runs one job per item on a pool of `workers` threads and collects every outcome in one place."""

    def __init__(self, workers: int = 1):
        self.workers = max(1, int(workers))
        executors = {'default': ThreadPoolExecutor(max_workers=self.workers)}
        self.scheduler = BackgroundScheduler(executors=executors, timezone=get_localzone())
        self.__logger = logging.getLogger(__name__)
        self.__lock = threading.Lock()
        self.__finished = threading.Event()
        self.__pending = set()
        self.results: Dict[str, Any] = {}
        self.errors: Dict[str, BaseException] = {}
        self.scheduler.add_listener(self.__job_listener, EVENT_JOB_EXECUTED | EVENT_JOB_ERROR | EVENT_JOB_MISSED)

    def run(self, job: Callable, items: Iterable[Tuple[str, tuple]]) -> Tuple[Dict[str, Any], Dict[str, BaseException]]:
        """items: (item id, job args) pairs with unique ids. Blocks until every job has ended."""
        items = list(items)
        if not items:
            return {}, {}
        self.__pending = {item_id for item_id, _ in items}
        if len(self.__pending) != len(items):
            raise ValueError('Batch item ids must be unique')
        self.__finished.clear()

        self.scheduler.start()
        launch_time = datetime.now(self.scheduler.timezone)
        try:
            for item_id, args in items:
                self.scheduler.add_job(func=job,
                                       trigger=DateTrigger(launch_time, timezone=self.scheduler.timezone),
                                       args=args,
                                       id=item_id,
                                       name=item_id,
                                       misfire_grace_time=MISFIRE_GRACE_SECONDS)
            self.__logger.info('Batch of %s jobs submitted to %s workers', len(items), self.workers)
            self.__finished.wait()
        finally:
            self.scheduler.shutdown(wait=True)
        return self.results, self.errors

    def __job_listener(self, event):
        with self.__lock:
            if event.code == EVENT_JOB_EXECUTED:
                self.results[event.job_id] = event.retval
            elif event.code == EVENT_JOB_MISSED:
                self.errors[event.job_id] = RuntimeError('job missed its run time')
            else:
                self.__logger.warning('Exception was caught while handling %s: %s', event.job_id, event.exception)
                self.errors[event.job_id] = event.exception
            self.__pending.discard(event.job_id)
            if not self.__pending:
                self.__finished.set()


def run_batch(job: Callable, items: Iterable[Tuple[str, tuple]], workers: int = 1):
    return BatchRunner(workers).run(job, items)
