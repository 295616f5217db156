"""Exception types shared across the package."""


class NitmError(Exception):
    """Base class for numerical failures of the transformation method."""


class BlowupError(NitmError):
    """Integration produced a state outside the admissible range."""

    def __init__(self, eta: float):
        super().__init__(f"integration blew up at eta = {eta:.6g}")
        self.eta = eta


class ScalingBreakdownError(NitmError):
    """The scaling group cannot match the computed asymptote.

    Raised when the power-law base (fp_inf_star/d, or fp_inf_star + b_star
    for the moving wall) is not positive: the chosen star parameters and
    sign cannot represent the requested physical regime.
    """


class NoConvergenceError(NitmError):
    """An iteration exhausted its budget without meeting its tolerance."""

    def __init__(self, values, label: str = "lambda"):
        seq = ", ".join(f"{v:.9g}" for v in values)
        super().__init__(f"no {label} agreement (sequence: {seq})")
        self.values = tuple(values)


class BracketingError(NitmError):
    """A scan failed to bracket the requested root or minimum."""

    def __init__(self, message: str, scanned=()):
        self.scanned = tuple(scanned)
        if self.scanned:
            listing = ", ".join(f"{x:.6g}" for x in self.scanned)
            message = f"{message} (scanned: {listing})"
        super().__init__(message)


class UnsupportedVariantError(NitmError):
    """The requested operation does not apply to this problem variant."""
