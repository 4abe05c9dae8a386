"""Exception types raised by the numeric routines."""


class CavmagError(Exception):
    """Base class for model and solver failures."""


class CouplingBelowMinimum(CavmagError):
    """g1 is below the smallest coupling admitting a real detuning solution."""


class NoPhysicalSolution(CavmagError):
    """The coupling-ratio equation has no positive k^2 solution."""


class BracketFailure(CavmagError):
    """No sign change of the discriminant inside the search interval."""


class PoleAtRealFrequency(CavmagError):
    """Self-energy evaluated exactly on an undamped magnon resonance."""


class SingularDenominator(CavmagError):
    """Cavity response denominator vanished (lasing threshold of the linear model)."""


class StepTooLarge(CavmagError):
    """Integrator step exceeds the stability bound for this spectrum."""


class DivergenceDetected(CavmagError):
    """Trajectory norm exceeded the runaway guard."""


class DegenerateSpectrum(CavmagError):
    """Modal fit is ill-posed: modes too close or trajectory rank-deficient."""
