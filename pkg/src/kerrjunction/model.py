"""Parameter types shared by all engines, with validation and unit scaling.

Conventions: hbar = c = 1 throughout.  The junction is a single cavity mode
(resonance ``omega_c``, Kerr shift ``u`` per photon pair) coupled to a left
and a right waveguide with rates ``gamma_L`` and ``gamma_R``; the amplitude
linewidth is ``gamma = (gamma_L + gamma_R) / 2``.  Engines internally rescale
so that gamma = 1; public results are reported back in caller units.
"""

import json
import math
from dataclasses import dataclass, replace
from enum import Enum

from .errors import ConfigError, ValidationError, Violation

__all__ = [
    "CavityParams",
    "Envelope",
    "PulseSpec",
    "Units",
    "validate",
    "nondimensionalize",
    "config_from_json",
    "config_to_json",
]


class Envelope(Enum):
    """Incident two-photon envelope families."""

    MONOCHROMATIC = "mono"
    UNCORRELATED_GAUSSIAN = "uncorr_gauss"
    CORRELATED_GAUSSIAN = "corr_gauss"


@dataclass(frozen=True)
class CavityParams:
    """Physical constants of the junction.

    Attributes
    ----------
    omega_c : float
        Cavity resonance frequency.
    u : float
        Kerr interaction strength; a second photon in the cavity costs an
        extra 2*u of energy.  May be zero (linear cavity).
    gamma_L, gamma_R : float
        Couplings to the left/right waveguide, >= 0 with gamma > 0.
    """

    omega_c: float
    u: float
    gamma_L: float
    gamma_R: float

    @property
    def gamma(self) -> float:
        """Amplitude linewidth (gamma_L + gamma_R) / 2, always recomputed."""
        return 0.5 * (self.gamma_L + self.gamma_R)


@dataclass(frozen=True)
class PulseSpec:
    """Incident drive description.

    ``tau`` is the temporal extent; ``math.inf`` is allowed only for the
    monochromatic envelope.  ``b`` is the coherent amplitude of a classical
    pump and is used only by the lindblad/langevin engines.
    """

    omega_0: float
    tau: float
    envelope: Envelope = Envelope.MONOCHROMATIC
    b: complex = 0.0 + 0.0j


@dataclass(frozen=True)
class Units:
    """Unit convention marker: frequencies in units of gamma_scale.

    ``to_dimensionless``/``to_physical`` convert frequencies; times scale
    with the inverse factor.  Round-tripping is exact up to rounding.
    """

    gamma_scale: float

    def frequency_to_dimensionless(self, omega):
        return omega / self.gamma_scale

    def frequency_to_physical(self, omega):
        return omega * self.gamma_scale

    def time_to_dimensionless(self, t):
        return t * self.gamma_scale

    def time_to_physical(self, t):
        return t / self.gamma_scale


def _finite(x) -> bool:
    return isinstance(x, (int, float)) and math.isfinite(x)


def validate(params: CavityParams, pulse: PulseSpec | None = None):
    """Check every invariant and raise one error listing all violations.

    Returns the inputs unchanged when valid, so calls can be chained.
    """
    violations = []

    finite_fields = [("omega_c", params.omega_c), ("u", params.u),
                     ("gamma_L", params.gamma_L), ("gamma_R", params.gamma_R)]
    if pulse is not None:
        finite_fields.append(("omega_0", pulse.omega_0))
        try:
            b = complex(pulse.b)
        except (TypeError, ValueError):
            b = complex("nan")
        if not (math.isfinite(b.real) and math.isfinite(b.imag)):
            violations.append(
                Violation("NonFiniteInput", f"b = {pulse.b!r} is not finite"))
    for name, value in finite_fields:
        if not _finite(value):
            violations.append(
                Violation("NonFiniteInput", f"{name} = {value!r} is not finite"))

    if _finite(params.gamma_L) and params.gamma_L < 0:
        violations.append(
            Violation("NegativeCoupling", f"gamma_L = {params.gamma_L} < 0"))
    if _finite(params.gamma_R) and params.gamma_R < 0:
        violations.append(
            Violation("NegativeCoupling", f"gamma_R = {params.gamma_R} < 0"))
    if _finite(params.gamma_L) and _finite(params.gamma_R) and params.gamma <= 0:
        violations.append(
            Violation("NonPositiveGamma", f"gamma = {params.gamma} <= 0"))

    if pulse is not None:
        if pulse.envelope is Envelope.MONOCHROMATIC:
            if not (pulse.tau > 0):  # inf allowed
                violations.append(
                    Violation("BadTau", f"tau = {pulse.tau!r} must be > 0"))
        else:
            if not (math.isfinite(pulse.tau) and pulse.tau > 0):
                violations.append(Violation(
                    "BadTau",
                    f"tau = {pulse.tau!r} must be finite and > 0 for "
                    f"envelope {pulse.envelope.value}"))

    if violations:
        raise ValidationError(violations)
    return (params, pulse) if pulse is not None else params


def nondimensionalize(params: CavityParams, pulse: PulseSpec | None = None):
    """Rescale so gamma = 1: frequencies /= gamma, times *= gamma.

    Returns ``(params, pulse, units)`` (``pulse`` is None if not given).
    Applying the function twice equals applying it once.
    """
    if pulse is not None:
        validate(params, pulse)
    else:
        validate(params)
    g = params.gamma
    units = Units(gamma_scale=g)
    scaled_params = CavityParams(
        omega_c=params.omega_c / g,
        u=params.u / g,
        gamma_L=params.gamma_L / g,
        gamma_R=params.gamma_R / g,
    )
    scaled_pulse = None
    if pulse is not None:
        scaled_pulse = replace(pulse, omega_0=pulse.omega_0 / g,
                               tau=pulse.tau * g)
    return scaled_params, scaled_pulse, units


_CONFIG_KEYS = ("omega_c", "u", "gamma_L", "gamma_R",
                "omega_0", "tau", "envelope", "b_re", "b_im")
_ENVELOPES = {e.value: e for e in Envelope}


def config_from_json(doc) -> tuple[CavityParams, PulseSpec]:
    """Parse the strict model/pulse configuration document.

    ``doc`` may be a JSON string or an already-decoded mapping.  Unknown
    keys are an error; all keys are required except ``b_re``/``b_im``
    (default 0) and ``tau`` (default inf, monochromatic only).
    """
    if isinstance(doc, (str, bytes)):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigError("configuration must be a JSON object")

    unknown = sorted(set(doc) - set(_CONFIG_KEYS))
    if unknown:
        raise ConfigError(f"unknown configuration keys: {', '.join(unknown)}")
    missing = sorted({"omega_c", "u", "gamma_L", "gamma_R",
                      "omega_0", "envelope"} - set(doc))
    if missing:
        raise ConfigError(f"missing configuration keys: {', '.join(missing)}")

    env_name = doc["envelope"]
    if env_name not in _ENVELOPES:
        raise ConfigError(
            f"envelope must be one of {sorted(_ENVELOPES)}, got {env_name!r}")
    envelope = _ENVELOPES[env_name]

    def number(key, default=None):
        value = doc.get(key, default)
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise ConfigError(f"{key} must be a number, got {value!r}")
        return float(value)

    tau = number("tau", math.inf) if ("tau" in doc or
                                      envelope is Envelope.MONOCHROMATIC) \
        else number("tau")
    params = CavityParams(omega_c=number("omega_c"), u=number("u"),
                          gamma_L=number("gamma_L"), gamma_R=number("gamma_R"))
    pulse = PulseSpec(omega_0=number("omega_0"), tau=tau, envelope=envelope,
                      b=complex(number("b_re", 0.0), number("b_im", 0.0)))
    validate(params, pulse)
    return params, pulse


def config_to_json(params: CavityParams, pulse: PulseSpec) -> dict:
    """Inverse of :func:`config_from_json` (dict form, JSON-serializable)."""
    return {
        "omega_c": params.omega_c, "u": params.u,
        "gamma_L": params.gamma_L, "gamma_R": params.gamma_R,
        "omega_0": pulse.omega_0, "tau": pulse.tau,
        "envelope": pulse.envelope.value,
        "b_re": pulse.b.real, "b_im": pulse.b.imag,
    }
