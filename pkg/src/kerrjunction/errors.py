"""Exception hierarchy shared by all engines.

Exit-code mapping used by the CLI: configuration problems (ValidationError,
ConfigError) -> 2, numerical-invariant violations -> 3, I/O failures -> 4.
"""

from dataclasses import dataclass


class KerrJunctionError(Exception):
    """Base class for all package-specific errors."""


@dataclass(frozen=True)
class Violation:
    """One violated input invariant: a stable code plus a human message."""

    code: str
    message: str

    def __str__(self):
        return f"{self.code}: {self.message}"


class ValidationError(KerrJunctionError, ValueError):
    """Raised with the complete list of violated input invariants."""

    def __init__(self, violations):
        self.violations = tuple(violations)
        super().__init__("; ".join(str(v) for v in self.violations))

    def codes(self):
        return {v.code for v in self.violations}


class ConfigError(KerrJunctionError, ValueError):
    """Malformed or unknown configuration content (strict parsing)."""


class NumericalInvariantError(KerrJunctionError, RuntimeError):
    """Base for runtime violations of numerical invariants."""


# -- propagator --------------------------------------------------------------

class GridTooSmall(KerrJunctionError, ValueError):
    """Initial pulse support does not fit the spatial grid."""


class BadEnvelope(KerrJunctionError, ValueError):
    """Envelope unsupported by time propagation (monochromatic input)."""


class UnstableStep(NumericalInvariantError):
    """Wavefunction norm drifted beyond tolerance during evolution."""


class DomainOverrun(KerrJunctionError, ValueError):
    """Requested final time exceeds what the grid can represent."""


class CavityNotEmpty(NumericalInvariantError):
    """Amplitude extraction requested before the cavity rang down."""


# -- scattering ---------------------------------------------------------------

class ResonancePole(KerrJunctionError, ZeroDivisionError):
    """Closed-form amplitudes evaluated at gamma = 0 (excluded by validate)."""


# -- lindblad -----------------------------------------------------------------

class CutoffTooSmall(NumericalInvariantError):
    """Steady state populates the top Fock level beyond tolerance."""


class NonUniqueSteadyState(NumericalInvariantError):
    """Liouvillian null space has dimension > 1; refusing to guess."""


class PropagationDrift(NumericalInvariantError):
    """Trace of the propagated matrix drifted during regression stepping."""


class UnsettledCorrelator(NumericalInvariantError):
    """Correlator did not reach its asymptote by t_max."""


class VanishingDenominator(NumericalInvariantError):
    """Normally-ordered moment ratio with vanishing mean occupation."""
