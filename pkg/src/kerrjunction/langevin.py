"""Mean-field steady state, linearized fluctuations, and the analytic
weak-nonlinearity emission spectrum of the classically pumped cavity.

The pump enters through f = sqrt(gamma_L / tau) * b (coherent amplitude b
arriving over a time tau).  The mean cavity amplitude obeys the cubic

    n * [gamma^2 + (Delta - 2*u*n)^2] = |f|^2,      n = |<a>|^2,

which develops three real roots (bistability) for blue detuning.  Small
fluctuations around a root evolve with the real 2x2 drift matrix

    A = [[-gamma,              Delta - 2*n*u],
         [-(Delta - 6*n*u),   -gamma        ]]

and diffusion D = diag(-2i*u*<a>^2, +2i*u*<a*>^2); trace(A) = -2*gamma
exactly, and the fixed point is stable when both eigenvalues of A have
negative real part.  In the weak-nonlinearity limit the emitted spectral
density equals |b|^4 times the two-photon-pair result, which is exposed
here as an exact pointwise identity (same code path).
"""

import warnings
from dataclasses import dataclass

import numpy as np

from .model import CavityParams, PulseSpec
from .scattering import SpectrumResult, pair_spectral_density

__all__ = [
    "SteadyAmplitude",
    "LinearizedSystem",
    "drive_amplitude",
    "steady_amplitude",
    "linearize",
    "analytic_spectrum",
]


@dataclass(frozen=True)
class SteadyAmplitude:
    """All mean-field roots plus the selected physical branch.

    ``roots`` are the complex amplitudes <a> for every real nonnegative
    root of the cubic (ascending in occupation), ``occupations`` the
    corresponding n = |<a>|^2.  ``selected`` indexes the low branch;
    ``multivalued`` flags bistability.
    """

    roots: tuple
    occupations: tuple
    selected: int
    multivalued: bool
    drive: complex
    detuning: float

    @property
    def amplitude(self) -> complex:
        return self.roots[self.selected]

    @property
    def n_bar(self) -> float:
        return self.occupations[self.selected]


@dataclass(frozen=True)
class LinearizedSystem:
    """Drift/diffusion matrices of the fluctuation variables (r, theta)."""

    A: np.ndarray
    D: np.ndarray
    eigenvalues: np.ndarray
    stable: bool


def drive_amplitude(params: CavityParams, pulse: PulseSpec) -> complex:
    """Pump amplitude f = sqrt(gamma_L / tau) * b."""
    return np.sqrt(params.gamma_L / pulse.tau) * complex(pulse.b)


def steady_amplitude(params: CavityParams, f, omega_0=None,
                     pulse: PulseSpec | None = None) -> SteadyAmplitude:
    """Solve the mean-field steady-state cubic for the pump f.

    ``omega_0`` may be given directly or through ``pulse``.  Every returned
    root back-substitutes into the cubic with relative residual <= 1e-10.
    Branch selection: smallest occupation, with ``multivalued`` set when the
    cubic has several real roots.
    """
    if omega_0 is None:
        if pulse is None:
            raise ValueError("provide omega_0 or pulse")
        omega_0 = pulse.omega_0
    f = complex(f)
    delta = omega_0 - params.omega_c
    gamma = params.gamma
    u = params.u
    f2 = abs(f) ** 2

    if u == 0.0:
        occupations = [f2 / (delta**2 + gamma**2)]
    else:
        # 4u^2 n^3 - 4u*Delta n^2 + (Delta^2 + gamma^2) n - |f|^2 = 0
        coeffs = [4.0 * u**2, -4.0 * u * delta, delta**2 + gamma**2, -f2]
        roots = np.roots(coeffs)
        scale = max(abs(delta), gamma)
        occupations = sorted(
            float(r.real) for r in roots
            if abs(r.imag) <= 1e-9 * max(abs(r), scale**2) and r.real >= -1e-30)
        occupations = [max(n, 0.0) for n in occupations]
        if not occupations:  # cubic with real coefficients always has one
            occupations = [float(np.real(roots[np.argmin(np.abs(roots.imag))]))]

    amplitudes = []
    residual_scale = max(f2, gamma**2 * max(occupations, default=1.0), 1e-300)
    for n in occupations:
        denom = (delta - 2.0 * u * n) + 1j * gamma
        amplitudes.append(f / denom)
        residual = abs(n * (gamma**2 + (delta - 2.0 * u * n) ** 2) - f2)
        if residual > 1e-10 * residual_scale:
            raise ArithmeticError(
                f"cubic residual {residual:.3e} exceeds tolerance for root {n}")

    return SteadyAmplitude(
        roots=tuple(amplitudes),
        occupations=tuple(occupations),
        selected=0,
        multivalued=len(occupations) > 1,
        drive=f,
        detuning=delta,
    )


def linearize(params: CavityParams, steady: SteadyAmplitude,
              root: int | None = None) -> LinearizedSystem:
    """Drift and diffusion matrices of small fluctuations around a root.

    Emits a warning (result still returned) when the fixed point is
    unstable, which happens only on the intermediate bistable branch.
    """
    idx = steady.selected if root is None else root
    n = steady.occupations[idx]
    a = steady.roots[idx]
    delta = steady.detuning
    gamma = params.gamma
    u = params.u

    A = np.array([[-gamma, delta - 2.0 * n * u],
                  [-(delta - 6.0 * n * u), -gamma]])
    D = np.array([[-2j * u * a**2, 0.0],
                  [0.0, 2j * u * np.conj(a) ** 2]])
    eigenvalues = np.linalg.eigvals(A)
    stable = bool(np.all(eigenvalues.real < 0))
    if not stable:
        warnings.warn("unstable fixed point (intermediate branch)",
                      RuntimeWarning, stacklevel=2)
    return LinearizedSystem(A=A, D=D, eigenvalues=eigenvalues, stable=stable)


def analytic_spectrum(params: CavityParams, pulse: PulseSpec,
                      grid) -> SpectrumResult:
    """Weak-nonlinearity emission spectrum of the pumped cavity.

    Exactly |b|^4 times the two-photon pair spectral density for the
    (R <- L) channel, same code path, so the identity holds pointwise to
    rounding.  Valid in the weak-nonlinearity regime; evaluated anywhere
    but a warning is emitted when n_bar * u > gamma / 10.
    """
    f = drive_amplitude(params, pulse)
    steady = steady_amplitude(params, f, omega_0=pulse.omega_0)
    if steady.n_bar * abs(params.u) > params.gamma / 10.0:
        warnings.warn(
            "outside the weak-nonlinearity validity domain "
            f"(n_bar*u = {steady.n_bar * params.u:.3e} > gamma/10)",
            RuntimeWarning, stacklevel=2)

    base = pair_spectral_density(params, pulse.omega_0, pulse.tau, grid,
                                 detected="R", incident="L")
    scale = abs(complex(pulse.b)) ** 4
    return SpectrumResult(grid=base.grid,
                          continuous=scale * base.continuous,
                          delta_weight=scale * base.delta_weight)
