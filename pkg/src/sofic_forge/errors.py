"""Exception hierarchy.

Every domain failure raised by the library derives from :class:`SoficError`;
the CLI maps those to exit status 1 and prints the attached witness.
"""


class SoficError(Exception):
    """Base class for domain errors."""


class ListFormatError(SoficError, ValueError):
    pass


class EmptyList(ListFormatError):
    def __init__(self, msg="generating list is empty"):
        super().__init__(msg)


class EmptyWord(ListFormatError):
    def __init__(self, msg="the empty word cannot be a generator"):
        super().__init__(msg)


class MalformedLine(ListFormatError):
    def __init__(self, line_no, text=""):
        self.line_no = line_no
        super().__init__(f"malformed line {line_no}: {text!r}")


class SymbolNotInAlphabet(SoficError, KeyError):
    def __str__(self):
        return f"symbol not in alphabet: {self.args[0]!r}"


class FreshSymbolCollision(SoficError, ValueError):
    pass


class NotInLanguage(SoficError, ValueError):
    pass


class EmptyGraph(SoficError, ValueError):
    pass


class UnknownVertexId(SoficError, KeyError):
    pass


class NotSftError(SoficError):
    """Raised when an operation needs a memory bound but the shift is strictly sofic."""

    def __init__(self, certificate):
        self.certificate = certificate
        super().__init__(f"not a shift of finite type: {certificate.describe()}")


class NotWellDefined(SoficError, AssertionError):
    pass


class NotIrreducible(SoficError, ValueError):
    pass


class NotNonnegative(SoficError, ValueError):
    pass


class MissingWeight(SoficError, KeyError):
    pass


class UniversalPointMissing(SoficError):
    pass


class NotModular(SoficError):
    def __init__(self, msg, counterexample=None):
        self.counterexample = counterexample
        super().__init__(msg)


class AlphabetsOverlap(SoficError, ValueError):
    pass


class InvalidParams(SoficError, ValueError):
    pass


class NoClosedForm(SoficError):
    pass
