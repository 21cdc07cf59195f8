"""Fock-truncated master-equation engine for the classically pumped cavity.

Works in the frame rotating at the pump frequency, where the generator is
time independent:

    H = -Delta*n + u*ad*ad*a*a + (f*ad + conj(f)*a),   Delta = omega_0 - omega_c
    drho/dt = -i[H, rho] + gamma*(2 a rho ad - ad a rho - rho ad a)

with the pump f = sqrt(gamma_L / tau) * b.  The dissipator uses the single
total-rate channel gamma; gamma_R enters only as the prefactor of the
emission spectrum.  Superoperators are stored dense with column-stacking
vectorization, vec(A X B) = (B^T kron A) vec(X); trace(X) = sum of vec
entries at i*(dim+1).  All internal arithmetic is done in units of gamma;
reported frequencies/weights are converted back to caller units.
"""

import numpy as np
import scipy.linalg

from . import langevin
from .errors import (CavityNotEmpty, CutoffTooSmall, NonUniqueSteadyState,
                     NumericalInvariantError, PropagationDrift,
                     UnsettledCorrelator, VanishingDenominator)
from .model import CavityParams, PulseSpec, nondimensionalize
from .scattering import SpectrumResult

__all__ = [
    "DensityMatrix",
    "Liouvillian",
    "CorrelatorSeries",
    "annihilation",
    "build_liouvillian",
    "calibrate_drive",
    "steady_state",
    "two_time_correlator",
    "emission_spectrum",
    "gn",
    "gn_scan",
]

TRACE_TOL = 1e-10
HERMITICITY_TOL = 1e-12
POSITIVITY_TOL = 1e-8
TOP_LEVEL_TOL = 1e-8


def annihilation(dim: int) -> np.ndarray:
    """Dense bosonic annihilation operator on the |0..dim-1> number basis."""
    return np.diag(np.sqrt(np.arange(1.0, dim)), k=1)


class DensityMatrix:
    """Fock-truncated cavity density operator."""

    def __init__(self, data: np.ndarray):
        data = np.asarray(data, dtype=complex)
        if data.ndim != 2 or data.shape[0] != data.shape[1]:
            raise ValueError("density matrix must be square")
        self.data = data

    @property
    def dim(self) -> int:
        return self.data.shape[0]

    def populations(self) -> np.ndarray:
        return self.data.diagonal().real.copy()

    def expect(self, op: np.ndarray) -> complex:
        return complex(np.trace(op @ self.data))

    def mean_occupation(self) -> float:
        return float(np.arange(self.dim) @ self.populations())

    def validate(self):
        """Hermiticity, unit trace, and positivity at their stated tolerances."""
        herm = np.max(np.abs(self.data - self.data.conj().T))
        if herm > HERMITICITY_TOL:
            raise NumericalInvariantError(
                f"hermiticity violation {herm:.3e} > {HERMITICITY_TOL}")
        tr = np.trace(self.data)
        if abs(tr - 1.0) > TRACE_TOL:
            raise NumericalInvariantError(
                f"trace deviates from 1 by {abs(tr - 1.0):.3e} > {TRACE_TOL}")
        eigmin = float(np.linalg.eigvalsh(0.5 * (self.data + self.data.conj().T))[0])
        if eigmin < -POSITIVITY_TOL:
            raise NumericalInvariantError(
                f"minimum eigenvalue {eigmin:.3e} < -{POSITIVITY_TOL}")
        return self


class Liouvillian:
    """Rotating-frame generator and its dense vectorized form."""

    def __init__(self, params: CavityParams, omega_0: float, f: complex,
                 n_max: int):
        if n_max < 1:
            raise ValueError("n_max must be >= 1")
        # internal gamma = 1 units
        scaled, _, units = nondimensionalize(params)
        self.params = params
        self.units = units
        self.omega_0 = omega_0
        self.n_max = int(n_max)
        self.dim = self.n_max + 1
        self.detuning = (omega_0 - params.omega_c) / units.gamma_scale
        self.f = complex(f) / units.gamma_scale
        self.gamma = 1.0

        dim = self.dim
        a = annihilation(dim)
        ad = a.T
        n_op = ad @ a
        kerr = n_op @ (n_op - np.eye(dim))
        H = (-self.detuning * n_op + scaled.u * kerr
             + self.f * ad + np.conj(self.f) * a)
        eye = np.eye(dim)
        self.a_op = a
        self.hamiltonian = H
        self.matrix = (
            -1j * (np.kron(eye, H) - np.kron(H.T, eye))
            + self.gamma * (2.0 * np.kron(a, a)
                            - np.kron(eye, n_op) - np.kron(n_op, eye))
        )

    def vec(self, X: np.ndarray) -> np.ndarray:
        return np.asarray(X, dtype=complex).flatten(order="F")

    def unvec(self, x: np.ndarray) -> np.ndarray:
        return x.reshape((self.dim, self.dim), order="F")

    def apply(self, X: np.ndarray) -> np.ndarray:
        """Generator applied to a matrix (for invariant checks and tests)."""
        return self.unvec(self.matrix @ self.vec(X))

    def trace_vector(self) -> np.ndarray:
        v = np.zeros(self.dim * self.dim)
        v[:: self.dim + 1] = 1.0
        return v


def calibrate_drive(params: CavityParams, omega_0: float,
                    target_occupation: float = 5.9e-4) -> float:
    """Pump amplitude whose mean-field steady state has the given |<a>|^2.

    Closed-form inversion of the steady-state cubic:
    |f| = sqrt(n * [(Delta - 2 u n)^2 + gamma^2]).
    """
    if not (target_occupation >= 0):
        raise ValueError("target_occupation must be >= 0")
    delta = omega_0 - params.omega_c
    n = target_occupation
    return float(np.sqrt(n * ((delta - 2.0 * params.u * n) ** 2
                              + params.gamma ** 2)))


def build_liouvillian(params: CavityParams, omega_0=None, f=None,
                      pulse: PulseSpec | None = None,
                      n_max: int = 8) -> Liouvillian:
    """Construct the rotating-frame generator.

    The pump may be given directly as ``f`` or derived from a pulse as
    sqrt(gamma_L / tau) * b.  ``n_max`` is the Fock cutoff; sufficiency is
    asserted downstream (steady_state raises CutoffTooSmall when the top
    level is populated beyond 1e-8).
    """
    if pulse is not None:
        if omega_0 is None:
            omega_0 = pulse.omega_0
        if f is None:
            f = langevin.drive_amplitude(params, pulse)
    if omega_0 is None:
        raise ValueError("provide omega_0 or pulse")
    if f is None:
        raise ValueError("provide f or pulse")
    return Liouvillian(params, float(omega_0), complex(f), n_max)


def _steady_by_integration(liouv: Liouvillian) -> np.ndarray:
    """Long-time integration fallback: propagate the vacuum until stationary."""
    dim = liouv.dim
    rho = np.zeros((dim, dim), dtype=complex)
    rho[0, 0] = 1.0
    x = liouv.vec(rho)
    span = 8.0  # a few cavity lifetimes per doubling
    for _ in range(40):
        P = scipy.linalg.expm(liouv.matrix * span)
        x_new = P @ x
        if np.linalg.norm(liouv.matrix @ x_new) <= 1e-11:
            return x_new
        x = x_new
        span *= 2.0
    return x


def steady_state(liouv: Liouvillian) -> DensityMatrix:
    """Stationary density matrix with ||L(rho)|| <= 1e-10 and unit trace.

    Null-space solve with the trace row substituted; falls back to an
    eigenvector / long-time integration when the direct solve is
    ill-conditioned.  Raises NonUniqueSteadyState when the null space is
    degenerate and CutoffTooSmall when the top Fock level is populated.
    """
    n2 = liouv.dim ** 2
    M = liouv.matrix.copy()
    M[0, :] = liouv.trace_vector()
    rhs = np.zeros(n2, dtype=complex)
    rhs[0] = 1.0

    def residual(x):
        return float(np.linalg.norm(liouv.matrix @ x))

    try:
        x = np.linalg.solve(M, rhs)
    except np.linalg.LinAlgError:
        x = None
    if x is None or residual(x) > 1e-10 or abs(x[:: liouv.dim + 1].sum() - 1) > 1e-8:
        # degenerate or ill-conditioned: inspect the spectrum of L
        eigvals, eigvecs = np.linalg.eig(liouv.matrix)
        order = np.argsort(np.abs(eigvals))
        null_count = int(np.sum(np.abs(eigvals) <= 1e-10 * max(1.0, np.max(np.abs(eigvals)))))
        if null_count > 1:
            raise NonUniqueSteadyState(
                f"Liouvillian null space has dimension {null_count}")
        x = eigvecs[:, order[0]]
        x = x / x[:: liouv.dim + 1].sum()
        if residual(x) > 1e-10:
            x = _steady_by_integration(liouv)
            x = x / x[:: liouv.dim + 1].sum()
            if residual(x) > 1e-10:
                raise NumericalInvariantError(
                    f"steady-state residual {residual(x):.3e} > 1e-10")

    rho = liouv.unvec(x)
    rho = 0.5 * (rho + rho.conj().T)
    rho /= np.trace(rho).real
    dm = DensityMatrix(rho)
    top = dm.populations()[-1]
    if top > TOP_LEVEL_TOL:
        raise CutoffTooSmall(
            f"top Fock level population {top:.3e} > {TOP_LEVEL_TOL}; "
            f"increase n_max beyond {liouv.n_max}")
    return dm.validate()


class CorrelatorSeries:
    """Rotating-frame two-time correlator C(t) = <ad(t) a(0)> at stationarity.

    ``values[k]`` approaches ``asymptote`` = |<a>_ss|^2 as t grows; the
    lab-frame correlator is exp(i*omega_0*t) * values.  Times are in caller
    units.
    """

    def __init__(self, times, values, asymptote, omega_0):
        self.times = np.asarray(times, dtype=float)
        self.values = np.asarray(values, dtype=complex)
        self.asymptote = float(asymptote)
        self.omega_0 = float(omega_0)

    def settled(self, rtol: float = 1e-8) -> bool:
        span = float(np.max(np.abs(self.values - self.asymptote)))
        if span == 0.0:
            return True
        return abs(self.values[-1] - self.asymptote) <= rtol * span


def two_time_correlator(rho_ss: DensityMatrix, liouv: Liouvillian,
                        t_max: float, dt: float) -> CorrelatorSeries:
    """Quantum-regression correlator: propagate (a rho_ss) and trace with ad.

    ``t_max`` and ``dt`` are in caller units; t_max >= 10/gamma is required
    so the asymptote is reachable.  The trace of the propagated matrix is
    conserved by the generator; drift beyond 1e-6 (or trace-norm growth)
    raises PropagationDrift.
    """
    g = liouv.units.gamma_scale
    t_max_s, dt_s = t_max * g, dt * g
    if t_max_s < 10.0:
        raise ValueError(f"t_max must be >= 10/gamma, got {t_max} (gamma={g})")
    if not (0 < dt_s < t_max_s):
        raise ValueError("need 0 < dt < t_max")

    a = liouv.a_op
    steps = int(round(t_max_s / dt_s))
    propagator = scipy.linalg.expm(liouv.matrix * dt_s)
    x = liouv.vec(a @ rho_ss.data)
    vec_a = liouv.vec(a)
    trace_idx = slice(0, liouv.dim ** 2, liouv.dim + 1)
    trace0 = x[trace_idx].sum()

    values = np.empty(steps + 1, dtype=complex)
    values[0] = np.vdot(vec_a, x)
    sample_every = max(1, steps // 64)
    tn0 = float(np.linalg.norm(liouv.unvec(x), ord="nuc"))
    for k in range(1, steps + 1):
        x = propagator @ x
        values[k] = np.vdot(vec_a, x)
        if k % sample_every == 0 or k == steps:
            drift = abs(x[trace_idx].sum() - trace0)
            if drift > 1e-6 * max(1.0, abs(trace0)):
                raise PropagationDrift(
                    f"trace drift {drift:.3e} at step {k}")
            growth = float(np.linalg.norm(liouv.unvec(x), ord="nuc")) - tn0
            if growth > 1e-6 * max(1.0, tn0):
                raise PropagationDrift(
                    f"trace-norm growth {growth:.3e} at step {k}")

    amp = np.trace(a @ rho_ss.data)
    times = np.arange(steps + 1) * dt
    return CorrelatorSeries(times, values, abs(amp) ** 2, liouv.omega_0)


def emission_spectrum(corr: CorrelatorSeries, gamma_R: float,
                      grid) -> SpectrumResult:
    """Emission spectrum from the settled correlator.

    The asymptote (elastic part) is subtracted and contributes
    delta_weight = gamma_R * |<a>_ss|^2 at the pump frequency; the remaining
    decaying part is one-sided Fourier transformed with Hermitian completion
    (exact discrete transform with trapezoid weights and rectangular
    truncation -- no window, so Lorentzian widths are unbiased), evaluated
    directly on the caller grid in absolute frequency.
    """
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise ValueError("grid must be a non-empty 1-D array")
    if not corr.settled():
        raise UnsettledCorrelator(
            "correlator has not reached its asymptote to 1e-8 by t_max; "
            "increase t_max")

    connected = corr.values - corr.asymptote
    dt = corr.times[1] - corr.times[0] if corr.times.size > 1 else 0.0
    weights = np.full(corr.times.size, dt)
    weights[0] = weights[-1] = 0.5 * dt
    phases = np.exp(-1j * np.outer(grid - corr.omega_0, corr.times))
    continuous = (gamma_R / np.pi) * (phases @ (weights * connected)).real

    floor = continuous.min()
    scale = max(continuous.max(), gamma_R * corr.asymptote, 1e-300)
    if floor < -1e-8 * scale:
        raise NumericalInvariantError(
            f"spectral density negative beyond truncation noise: {floor:.3e}")
    np.clip(continuous, 0.0, None, out=continuous)
    return SpectrumResult(grid=grid, continuous=continuous,
                          delta_weight=gamma_R * corr.asymptote)


def gn(rho_ss: DensityMatrix, n: int) -> float:
    """Normally-ordered n-th order equal-time coherence g^(n).

    1 for coherent light; < 1 antibunching; > 1 bunching.  Needs the Fock
    cutoff at least n + 4 so the factorial moment is represented.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if rho_ss.dim - 1 < n + 4:
        raise CutoffTooSmall(
            f"cutoff {rho_ss.dim - 1} < n + 4 = {n + 4} for g^({n})")
    pops = rho_ss.populations()
    m = np.arange(rho_ss.dim, dtype=float)
    mean = float(m @ pops)
    if mean < 1e-14:
        raise VanishingDenominator(f"mean occupation {mean:.3e} < 1e-14")
    factorial_moment = m.copy()
    for k in range(1, n):
        factorial_moment = factorial_moment * (m - k)
    return float(factorial_moment @ pops) / mean**n


def gn_scan(params: CavityParams, f, omega0_grid, orders=(2, 3, 4),
            n_max: int = 8) -> dict:
    """g^(n) versus pump frequency at fixed pump amplitude.

    Returns ``{"omega_0": grid, "g2": ..., ...}`` for the requested orders.
    Peaks sit near omega_c + (n-1)*u, the n-photon resonance condition.
    """
    omega0_grid = np.asarray(omega0_grid, dtype=float)
    out = {"omega_0": omega0_grid}
    results = {k: np.empty(omega0_grid.size) for k in orders}
    for idx, w0 in enumerate(omega0_grid):
        liouv = build_liouvillian(params, omega_0=w0, f=f, n_max=n_max)
        rho = steady_state(liouv)
        for k in orders:
            results[k][idx] = gn(rho, k)
    for k in orders:
        out[f"g{k}"] = results[k]
    return out
