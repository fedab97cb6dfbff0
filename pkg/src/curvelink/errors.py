"""Exception hierarchy shared across the package."""


class CurvelinkError(Exception):
    """Base class for all domain errors raised by this package."""


class FixtureError(CurvelinkError):
    """A problem in a fixture document.

    ``code`` is one of the stable machine-readable codes:

    * ``"syntax"``        -- malformed line, unknown key/section, bad literal
    * ``"dangling-ref"``  -- a name that does not resolve to a declaration
    * ``"strand-count"``  -- braid word / strand labeling inconsistency
    """

    def __init__(self, code, message, line=None, column=None):
        self.code = code
        self.line = line
        self.column = column
        super().__init__(message)

    def __str__(self):
        location = ""
        if self.line is not None:
            location = f"line {self.line}"
            if self.column is not None:
                location += f", col {self.column}"
            location = f" ({location})"
        return f"[{self.code}]{location} {self.args[0]}"


class NotAHomomorphismError(CurvelinkError):
    """The proposed generator images do not send relations to relations."""


class ContractibleProjectionError(CurvelinkError):
    """A multi-component cycle whose projection is contractible; such a cycle
    should be decomposed into single-component subcycles before computing a
    linking set."""


class InternalInvariantError(CurvelinkError):
    """An internal consistency check failed; indicates a bug, never bad input."""
