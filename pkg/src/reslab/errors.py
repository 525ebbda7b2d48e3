"""Exception types shared across the workbench."""


class GridConfigError(ValueError):
    """Grid parameters violate the sampling contract (e.g. non-power-of-two size)."""


class EvaluationWindowError(ValueError):
    """Requested evaluation point lies outside the safe interpolation window."""


class PreconditionError(ValueError):
    """An operation's stated precondition does not hold for the given input."""


class DegenerateProfile(ValueError):
    """No finite critical coupling exists for the requested profile."""


class SingularBoundaryPoint(ValueError):
    """Boundary value requested at a point where the perturbed resolvent blows up."""


class ResonanceNotBracketed(RuntimeError):
    """The resonance curve could not be bracketed; coupling lies outside the window."""


class NotAbsolutelyContinuous(ValueError):
    """Spectral density requested at the critical coupling, where a point mass exists."""


class ResolutionError(ValueError):
    """A spike or smoothing scale cannot be resolved at the available resolution."""


class HypothesisViolated(ValueError):
    """A theorem hypothesis (e.g. nonvanishing profile derivative) fails for the model."""


class NumericalError(RuntimeError):
    """A dense linear-algebra kernel failed; carries a condition report in the message."""


class DecayWarning(UserWarning):
    """Sampled function does not decay to roundoff at the grid edges."""
