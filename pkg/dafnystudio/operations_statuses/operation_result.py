from dafnystudio.operations_statuses.statuses import ExecutionStatus


class InternalOperationResult(object):
    """Outcome of a file-system or process operation that callers branch on instead of catching."""

    def __init__(self, status: ExecutionStatus, message=''):
        self.message = message
        self.status = status

    @property
    def ok(self) -> bool:
        return self.status is ExecutionStatus.SUCCESS

    def __str__(self):
        return self.message

    def __repr__(self):
        return 'InternalOperationResult({0}, {1!r})'.format(self.status.name, self.message)
