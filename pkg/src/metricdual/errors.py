class InputError(ValueError):
    """Raised for malformed or out-of-contract inputs (CLI exit code 1)."""


class NotQuasiConcaveError(InputError):
    pass


class TheoremViolation(RuntimeError):
    """An identity that must hold by theory failed; always an implementation defect (CLI exit code 2)."""
