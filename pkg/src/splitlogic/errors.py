"""Exception hierarchy shared by every module."""


class SplitLogicError(Exception):
    """Base class for all library errors."""


class UsageError(SplitLogicError):
    """Malformed input: bad syntax, bad file format, bad JSON."""


class FormulaSyntaxError(UsageError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


class FormatError(UsageError):
    """A model set, partition, graph or defaults file could not be read."""


class SemanticError(SplitLogicError):
    """Well-formed input that the requested operation cannot accept."""


class UnknownVariableError(SemanticError):
    pass


class LanguageMismatchError(SemanticError):
    pass


class EmptyModelSetError(SemanticError):
    pass


class NotRealizableError(SemanticError):
    pass


class PartitionError(SemanticError):
    """Blocks do not form a partition of the language."""


class NotJointlyFactorizableError(SemanticError):
    pass


class LanguageTooLargeError(SemanticError):
    pass
