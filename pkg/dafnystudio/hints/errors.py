class TacticGenerationError(ValueError):
    pass


class NoDifference(TacticGenerationError):
    pass


class BaseMismatch(TacticGenerationError):
    """The failed attempt and the ground truth are not annotations of one base program."""


class TacticFormatError(TacticGenerationError):
    def __init__(self, message: str, response: str = ''):
        super().__init__(message)
        self.response = response


class ProblemSpecificTactic(TacticGenerationError):
    def __init__(self, names):
        self.names = tuple(sorted(names))
        super().__init__('Generated tactic mentions program identifiers: {0}'.format(', '.join(self.names)))
