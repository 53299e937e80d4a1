"""Exception hierarchy shared by all ramper modules."""


class RamperError(Exception):
    """Base class for every error raised by ramper."""


class FieldMismatchError(RamperError, ValueError):
    pass


class NotAUnitError(RamperError, ValueError):
    pass


class PellError(RamperError):
    pass


class PrecisionError(RamperError, ArithmeticError):
    """A p-adic value is indistinguishable from zero where a decision is needed."""

    def __init__(self, message, needed=None):
        super().__init__(message)
        self.needed = needed


class HenselError(RamperError, ValueError):
    pass


class HypothesisError(RamperError, ValueError):
    """One or more parameter hypotheses failed; ``reasons`` names each one."""

    def __init__(self, reasons):
        self.reasons = list(reasons)
        super().__init__("; ".join(self.reasons))


class ConstructionError(RamperError):
    """An identity that must hold by construction did not."""


class BadReductionError(RamperError):
    def __init__(self, reasons):
        self.reasons = list(reasons)
        super().__init__("bad reduction: " + "; ".join(self.reasons))


class InapplicableError(RamperError):
    pass


class CertificateError(RamperError):
    pass
