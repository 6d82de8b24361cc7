"""Exception types raised by sdkit."""


class SdkitError(Exception):
    pass


class DimensionTooLargeError(SdkitError):
    """Full codeword enumeration would exceed the budget."""


class NotSelfDualError(SdkitError, ValueError):
    pass


class SearchBudgetExceeded(SdkitError):
    """A backtrack or enumeration search hit its node budget."""

    def __init__(self, message, progress=None):
        super().__init__(message)
        self.progress = progress


class InvalidLatticeError(SdkitError, ValueError):
    pass


class InvalidFrameError(SdkitError, ValueError):
    pass


class CatalogError(SdkitError):
    pass


class ParseError(CatalogError):
    def __init__(self, path, line, column, message):
        super().__init__("%s:%d:%d: %s" % (path, line, column, message))
        self.path, self.line, self.column = path, line, column


class ValidationError(CatalogError, ValueError):
    pass
