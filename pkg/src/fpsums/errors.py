"""Exception hierarchy shared by every module."""


class FpError(Exception):
    """Base class for all library errors."""


class NotPrime(FpError, ValueError):
    pass


class TooLarge(FpError):
    """A table-backed context or oracle would exceed its resource budget."""


class ZeroArgument(FpError, ValueError):
    pass


class LengthMismatch(FpError, ValueError):
    pass


class NotDivisor(FpError, ValueError):
    pass


class BadLength(FpError, ValueError):
    pass


class BadSize(FpError, ValueError):
    pass


class ContextMismatch(FpError, ValueError):
    pass


class CapExceeded(FpError):
    """An oracle was asked to enumerate beyond its configured cap."""


class NormViolation(FpError, ValueError):
    pass


class SupportMismatch(FpError, ValueError):
    pass


class ConfigError(FpError, ValueError):
    pass


class ParseError(FpError, ValueError):
    def __init__(self, message, text="", position=0):
        self.text = text
        self.position = position
        super().__init__(f"{message} (at position {position} in {text!r})")
