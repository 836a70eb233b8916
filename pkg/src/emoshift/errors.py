"""Exception hierarchy shared by all modules.

Two broad failure classes matter to callers: a resource could not be
loaded (missing or malformed file), or the data handed to an operation
violates its contract (out-of-vocabulary word, empty batch, bad weights).
The CLI maps these onto distinct exit codes.
"""


class EmoshiftError(Exception):
    """Base class for all library errors."""


class ResourceError(EmoshiftError):
    """A resource file is missing or malformed.

    Parser errors carry the offending file and, where known, the
    1-based line number.
    """

    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        loc = ""
        if path is not None:
            loc = f"{path}"
            if line is not None:
                loc += f":{line}"
            loc = f" [{loc}]"
        super().__init__(f"{message}{loc}")


class DataError(EmoshiftError):
    """Runtime data violates an operation's contract."""
