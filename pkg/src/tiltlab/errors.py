"""Exception hierarchy.  Every error raised on purpose derives from TiltlabError."""


class TiltlabError(Exception):
    pass


class RingMismatch(TiltlabError):
    pass


class UnsupportedRing(TiltlabError):
    pass


class ZeroInput(TiltlabError, ValueError):
    pass


class ShapeMismatch(TiltlabError, ValueError):
    pass


class FactorizationError(TiltlabError):
    pass


class HypothesisViolated(TiltlabError):
    pass


class InfiniteSpectrum(TiltlabError):
    pass


class SizeLimitExceeded(TiltlabError):
    pass


class ZeroDivisor(TiltlabError):
    pass


class OracleDisagreement(TiltlabError):
    """The bounded product search and the prime test gave different answers."""


class ParseError(TiltlabError):
    """Malformed input text; carries a 1-based line and column."""

    def __init__(self, message: str, text: str = "", pos: int = 0):
        self.text = text
        self.pos = pos
        self.line = text.count("\n", 0, pos) + 1
        self.column = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{message} (line {self.line}, column {self.column})")


class SemanticError(TiltlabError):
    """Well-formed input that names an invalid object (e.g. GF(4))."""


class TiltlabWarning(UserWarning):
    pass


class UnitIdealWarning(TiltlabWarning):
    """ctr of the unit ideal: its cokernel is projective."""


class NonFaithfulWarning(TiltlabWarning):
    """A Gabriel basis or tree ideal with nonzero annihilator."""
