class DafnyScanError(Exception):
    state = 'scan-error'

    def __init__(self, message: str, line: int, col: int):
        super().__init__('{0} at {1}:{2}'.format(message, line, col))
        self.detail = message
        self.line = line
        self.col = col


class UnterminatedLiteral(DafnyScanError):
    state = 'unterminated-literal'


class UnterminatedComment(DafnyScanError):
    state = 'unterminated-comment'


class UnbalancedDelimiters(DafnyScanError):
    state = 'unbalanced-delimiters'


class ScanStatusError(ValueError):
    """Raised when an operation needs a cleanly scanned program and got a broken one."""
