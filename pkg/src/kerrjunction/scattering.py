"""Closed-form few-photon scattering amplitudes and the pair spectral density.

Geometry: two semi-infinite waveguides joined only through the cavity, so a
far-detuned photon is fully reflected.  One- and two-photon quantities below
are for a pair incident from the left guide; ``c_L`` is the reflection
amplitude, ``c_R`` the transmission amplitude.

The two-photon amplitude in channel (i, j) at separation d = |x1 - x2| is a
product of independent single-photon amplitudes minus a bound-state term that
decays as exp(-gamma*d) and is created by the photon-photon interaction.
The pair spectral density factorizes into a pump-frequency-dependent pair
formation probability (two maxima, near omega_c and omega_c + u) and a
four-wave-mixing emission profile symmetric about the pump (maxima at omega_c
and 2*omega_0 - omega_c), plus an elastic delta contribution at the pump
frequency whose weight is returned separately, never rasterized on the grid.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ResonancePole
from .model import CavityParams

__all__ = [
    "SingleAmplitudes",
    "PairAmplitude",
    "SpectrumResult",
    "single_amplitudes",
    "pair_amplitude",
    "pair_spectral_density",
    "pair_formation_probability",
    "emission_profile",
    "default_spectral_grid",
]


@dataclass(frozen=True)
class SingleAmplitudes:
    """Single-photon reflection (c_L) and transmission (c_R) amplitudes."""

    c_L: complex
    c_R: complex

    def as_dict(self):
        return {"c_L": self.c_L, "c_R": self.c_R}


@dataclass(frozen=True)
class PairAmplitude:
    """Two-photon amplitude a_ij evaluated at one channel and separation."""

    channel: str
    separation: float
    value: complex


@dataclass(frozen=True)
class SpectrumResult:
    """Elastic delta weight plus sampled continuous spectral density.

    ``continuous[k]`` is the smooth density at ``grid[k]``; the elastic
    single-photon peak at the pump frequency is reported as ``delta_weight``
    and is intentionally not added onto the grid samples.
    """

    grid: np.ndarray
    continuous: np.ndarray
    delta_weight: float


def _check_pole(params: CavityParams):
    if params.gamma <= 0:
        raise ResonancePole(
            f"gamma = {params.gamma} <= 0: closed forms have a pole; "
            "run validate() first")


def single_amplitudes(params: CavityParams, omega_0) -> SingleAmplitudes:
    """Single-photon amplitudes at carrier frequency omega_0.

    Satisfies |c_L|^2 + |c_R|^2 = 1 for any real detuning and admissible
    couplings.  Vectorizes over omega_0 (returns array-valued fields).
    """
    _check_pole(params)
    delta = np.asarray(omega_0) - params.omega_c
    gamma = params.gamma
    denom = delta + 1j * gamma
    c_L = -(delta + 0.5j * (params.gamma_R - params.gamma_L)) / denom
    c_R = 1j * np.sqrt(params.gamma_L * params.gamma_R) / denom
    if np.ndim(omega_0) == 0:
        return SingleAmplitudes(c_L=complex(c_L), c_R=complex(c_R))
    return SingleAmplitudes(c_L=c_L, c_R=c_R)


_CHANNELS = {"LL": ("L", "L"), "RR": ("R", "R"), "LR": ("L", "R")}


def pair_amplitude(params: CavityParams, omega_0, channel: str,
                   separation) -> PairAmplitude:
    """Two-photon amplitude a_ij for a monochromatic pair incident from L.

    Parameters
    ----------
    channel : {"LL", "RR", "LR"}
        Output guides of the two photons (LL both reflected, RR both
        transmitted, LR one each).
    separation : float or array
        d = |x1 - x2| >= 0.

    For u = 0 this is exactly the product of single-photon amplitudes; for
    u -> inf the RR amplitude at d = 0 vanishes (photon blockade).
    """
    if channel not in _CHANNELS:
        raise ValueError(f"channel must be one of {sorted(_CHANNELS)}")
    d = np.asarray(separation, dtype=float)
    if np.any(d < 0):
        raise ValueError("separation must be >= 0")
    _check_pole(params)

    amps = single_amplitudes(params, omega_0)
    coupling = {"L": params.gamma_L, "R": params.gamma_R}
    single = {"L": amps.c_L, "R": amps.c_R}
    i, j = _CHANNELS[channel]

    delta = omega_0 - params.omega_c
    gamma = params.gamma
    bound = (params.u * params.gamma_L
             * np.sqrt(coupling[i] * coupling[j])
             * np.exp((1j * delta - gamma) * d)
             / ((delta + 1j * gamma) ** 2 * (delta - params.u + 1j * gamma)))
    value = single[i] * single[j] - bound
    if np.ndim(value) == 0:
        value = complex(value)
    return PairAmplitude(channel=channel, separation=separation, value=value)


def pair_formation_probability(params: CavityParams, omega_0, tau) -> float:
    """Probability factor for forming the interacting pair in the cavity.

    Two maxima for u >> gamma: pumping the empty-cavity resonance omega_c,
    or pumping half the interacting-pair energy, omega_c + u.
    """
    delta = np.asarray(omega_0) - params.omega_c
    gamma = params.gamma
    return (2.0 * gamma**2 / (np.pi * tau**2)
            / ((delta**2 + gamma**2)
               * ((delta - params.u) ** 2 + gamma**2)))


def emission_profile(params: CavityParams, omega_0, omega) -> np.ndarray:
    """Four-wave-mixing emission profile, symmetric under omega <-> 2*omega_0 - omega.

    Lorentzian ridges at omega_c and at the mixing partner 2*omega_0 - omega_c.
    Integrates to 2*pi*u^2*gamma / ((omega_0 - omega_c)^2 + gamma^2).
    """
    gamma = params.gamma
    w = np.asarray(omega)
    return (4.0 * params.u**2 * gamma**2
            / (((w - params.omega_c) ** 2 + gamma**2)
               * ((w - 2.0 * omega_0 + params.omega_c) ** 2 + gamma**2)))


def pair_spectral_density(params: CavityParams, omega_0, tau, grid,
                          detected: str = "R",
                          incident: str = "L") -> SpectrumResult:
    """Spectral density of photons detected in one guide from a pair in another.

    Parameters
    ----------
    tau : float
        Temporal extent of the incident pair; enters the continuous part as
        1/tau^2 and the elastic weight as 1/tau.  For the monochromatic
        idealization pass tau = 1 (in units of 1/gamma) as the documented
        normalization constant: the plotted shape is tau-independent.
    grid : array
        Strictly increasing detection frequencies.
    detected, incident : {"L", "R"}
        Detection guide i and source guide j of the channel (i <- j).

    The continuous part carries the prefactor gamma_j^2 * gamma_i / gamma^3
    (two absorptions from the source guide, one detected emission); the
    elastic weight is 2|c_L|^2/tau for i == j and 2|c_R|^2/tau otherwise.
    """
    if detected not in ("L", "R") or incident not in ("L", "R"):
        raise ValueError("detected and incident must be 'L' or 'R'")
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise ValueError("grid must be a non-empty 1-D array")
    if grid.size > 1 and not np.all(np.diff(grid) > 0):
        raise ValueError("grid must be strictly increasing")
    if not (tau > 0):
        raise ValueError(f"tau must be > 0, got {tau!r}")
    _check_pole(params)

    coupling = {"L": params.gamma_L, "R": params.gamma_R}
    gamma = params.gamma
    prefactor = coupling[incident] ** 2 * coupling[detected] / gamma**3
    continuous = (prefactor
                  * pair_formation_probability(params, omega_0, tau)
                  * emission_profile(params, omega_0, grid))

    amps = single_amplitudes(params, omega_0)
    elastic = abs(amps.c_L) ** 2 if detected == incident else abs(amps.c_R) ** 2
    return SpectrumResult(grid=grid, continuous=continuous,
                          delta_weight=2.0 * elastic / tau)


def default_spectral_grid(params: CavityParams, omega_0,
                          points: int = 2001) -> np.ndarray:
    """Uniform grid spanning omega_0 +/- max(5*gamma, 2*u): covers both ridges."""
    half = max(5.0 * params.gamma, 2.0 * abs(params.u))
    return np.linspace(omega_0 - half, omega_0 + half, points)
