from enum import Enum


class ExecutionStatus(Enum):
    SUCCESS = 1
    # the operation failed but a retry or a different input may succeed
    FIXABLE_ERROR = 2
    FATAL_ERROR = 3
    # a child process outlived its time limit and was killed
    TIMED_OUT = 4
