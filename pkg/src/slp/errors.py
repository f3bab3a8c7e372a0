"""Exception hierarchy shared by every stage of the pipeline."""


class SlpError(Exception):
    """Base class for all user-facing errors."""


class ParseError(SlpError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column


class ArityError(SlpError):
    pass


class SafetyError(SlpError):
    def __init__(self, clause, variable: str):
        super().__init__(f"unsafe variable {variable} in clause: {clause}")
        self.clause = clause
        self.variable = variable


class NotDefiniteError(SlpError):
    pass


class TooLargeError(SlpError):
    pass


class UnknownAtomError(SlpError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class EncodingError(SlpError):
    pass
