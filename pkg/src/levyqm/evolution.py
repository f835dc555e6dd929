"""Wave-packet dynamics generated by a log-characteristic exponent.

The free evolution i d/dt psi = -(1/tau) eta(d/dx) psi acts in Fourier
space as the unitary multiplier

    psi_hat(u) -> exp(i dt eta(u) / tau) psi_hat(u),

exactly unitary because eta is real for symmetric laws.  Plane waves
are eigenfunctions with kinetic energy E0 = -eta(u)/tau; the rest-mass
phase is absorbed throughout, so all reported energies are kinetic.

For the pure-jump relativistic process the same generator has the
integro-differential form

    d/dt psi = (i/tau) int [psi(x+y) - psi(x)] W(y) dy,

discretized here as an explicit Euler step with cell-integrated kernel
weights and the sub-cell jump core folded into an effective diffusion;
its single-step agreement with the spectral propagator is the numerical
equivalence of the two forms.

Boundary conditions are periodic (discrete transform); packets must
keep negligible boundary amplitude, which is checked.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .densities import GridError, GridSpec, levy_density_1d
from .exponents import ExponentParams, eta_relativistic
from .spectrum import SpectrumSolution

JUMP_STABILITY_FACTOR = 1e-3
BOUNDARY_TAIL = 1e-12


class StabilityError(ValueError):
    """Explicit jump step outside its stability regime."""


@dataclass(frozen=True)
class WaveFunction:
    """Complex amplitudes on a grid, unit norm (sum |psi|^2 dx = 1).

    Spectral steps preserve the norm to rounding (< 1e-10 drift over
    thousands of steps); the explicit jump step carries its documented
    O(dt^2) drift, so the construction gate here is 1e-7.
    """

    grid: GridSpec
    values: np.ndarray

    def __post_init__(self):
        norm = float(np.sum(np.abs(self.values) ** 2) * self.grid.dx)
        if abs(norm - 1.0) > 1e-7:
            raise ValueError(f"wave function norm {norm!r} deviates from 1 "
                             "beyond 1e-7")

    @classmethod
    def from_samples(cls, grid: GridSpec, values, normalize: bool = True):
        values = np.asarray(values, dtype=complex)
        if normalize:
            norm = math.sqrt(float(np.sum(np.abs(values) ** 2) * grid.dx))
            if norm == 0.0:
                raise ValueError("cannot normalize a zero field")
            values = values / norm
        values = values.copy()
        values.setflags(write=False)
        return cls(grid=grid, values=values)


@dataclass(frozen=True)
class Observables:
    norm: float
    centroid: float
    variance: float
    momentum_centroid: float


@dataclass(frozen=True)
class JumpStepReport:
    """Documented error budget of one explicit jump step.

    euler_bound:  O(dt^2) bound on the L2 deviation from the exact
                  propagator, (dt |eta|_sup / tau)^2 / 2
    kernel_tail:  jump mass discarded beyond the truncation radius
    cells:        one-sided number of kernel cells
    y_max:        truncation radius
    """

    euler_bound: float
    kernel_tail: float
    cells: int
    y_max: float


def gaussian_packet(x0: float, p0: float, sigma: float,
                    grid: GridSpec) -> WaveFunction:
    """Normalized Gaussian envelope exp(-(x-x0)^2/(2 sigma^2)) e^{i p0 x}.

    The position density |psi|^2 then has variance sigma^2 / 2.  The
    envelope must be resolved (sigma >= 4 dx) and contained: boundary
    amplitude below 1e-12 of the peak.
    """
    if sigma < 4.0 * grid.dx:
        raise GridError(f"sigma = {sigma:g} under-resolved; need >= 4 dx = "
                        f"{4.0 * grid.dx:g}")
    x = grid.x_centers()
    envelope = np.exp(-((x - x0) ** 2) / (2.0 * sigma ** 2))
    if max(envelope[0], envelope[-1]) > BOUNDARY_TAIL:
        raise GridError("packet support reaches the grid boundary; enlarge "
                        "the grid or shrink sigma")
    return WaveFunction.from_samples(grid, envelope * np.exp(1j * p0 * x))


def observables(psi: WaveFunction) -> Observables:
    dx = psi.grid.dx
    density = np.abs(psi.values) ** 2
    norm = float(density.sum() * dx)
    prob = density / density.sum()
    x = psi.grid.x_centers()
    centroid = float(np.sum(x * prob))
    variance = float(np.sum((x - centroid) ** 2 * prob))
    spectral = np.abs(np.fft.fft(psi.values)) ** 2
    u = psi.grid.u_fft()
    momentum = float(np.sum(u * spectral) / spectral.sum())
    return Observables(norm=norm, centroid=centroid, variance=variance,
                       momentum_centroid=momentum)


def evolve_spectral(psi: WaveFunction, dt: float, eta, tau: float) -> WaveFunction:
    """Exact free step: multiply psi_hat by exp(i dt eta(u) / tau)."""
    u = psi.grid.u_fft()
    multiplier = np.exp(1j * (dt / tau) * np.asarray(eta(u), dtype=float))
    values = np.fft.ifft(multiplier * np.fft.fft(psi.values))
    return WaveFunction.from_samples(psi.grid, values, normalize=False)


def evolve_modified(psi: WaveFunction, dt: float, base: ExponentParams,
                    solution: SpectrumSolution, branch: int) -> WaveFunction:
    """Free step on one mass branch of a cutoff spectrum.

    The branch root x_i re-scales every natural-unit parameter to the
    branch mass M = m sqrt(x_i), i.e. a_M = tau_M = 1/M.
    """
    if not 0 <= branch < len(solution.roots):
        raise IndexError(f"branch {branch} outside spectrum of "
                         f"{len(solution.roots)} roots")
    flag = solution.flags[branch]
    if not (flag.real and flag.positive):
        raise ValueError(f"branch {branch} is not a real positive root")
    m_branch = base.m * math.sqrt(solution.roots[branch])
    params = ExponentParams.from_mass(m_branch)
    return evolve_spectral(psi, dt, lambda u: eta_relativistic(u, params),
                           params.tau)


# ---------------------------------------------------------------------------
# direct jump-quadrature step
# ---------------------------------------------------------------------------

_GL4_NODES = np.array([-0.8611363115940526, -0.3399810435848563,
                       0.3399810435848563, 0.8611363115940526])
_GL4_WEIGHTS = np.array([0.3478548451374538, 0.6521451548625461,
                         0.6521451548625461, 0.3478548451374538])


def _kernel_radius(params: ExponentParams) -> float:
    # outermost |y| where W(y) |y| = K1(y/a)/pi stays above 1e-16
    z = 30.0
    for _ in range(8):
        z -= (math.log(math.sqrt(math.pi / (2.0 * z))) - z
              - math.log(math.pi * 1e-16)) / (-1.0 - 0.5 / z)
    return z * params.a


@lru_cache(maxsize=8)
def _jump_kernel(grid: GridSpec, params: ExponentParams):
    """Cell-integrated weights of the jump kernel on the grid lattice.

    w[j-1] = int over [(j-1/2) dx, (j+1/2) dx] of W, j = 1..jmax;
    s_core = int over |y| < dx/2 of y^2 W(y) dy (both signs), the
    truncated small-jump second moment applied as a diffusion term.
    """
    dx = grid.dx
    y_max = _kernel_radius(params)
    jmax = min(int(math.ceil(y_max / dx)), grid.n // 2 - 1)

    j = np.arange(1, jmax + 1)
    nodes = j[:, None] * dx + 0.5 * dx * _GL4_NODES[None, :]
    w = 0.5 * dx * (levy_density_1d(nodes, params) @ _GL4_WEIGHTS)

    half = 0.5 * dx
    core_nodes = 0.5 * half * (_GL4_NODES + 1.0)
    core_vals = core_nodes ** 2 * levy_density_1d(core_nodes, params)
    s_core = 2.0 * 0.5 * half * float(core_vals @ _GL4_WEIGHTS)

    tail = 2.0 * levy_density_1d(jmax * dx + dx, params) * params.a \
        if jmax * dx < y_max else 0.0
    w.setflags(write=False)
    return w, s_core, jmax, float(tail)


def evolve_jump_quadrature(psi: WaveFunction, dt: float,
                           params: ExponentParams):
    """One explicit Euler step of the integro-differential jump form.

    Requires dt <= 1e-3 tau.  Returns (new_psi, JumpStepReport); the
    report carries the documented O(dt^2) and kernel-truncation bounds.
    """
    if dt > JUMP_STABILITY_FACTOR * params.tau:
        raise StabilityError(
            f"dt = {dt:g} exceeds the explicit-step stability bound "
            f"{JUMP_STABILITY_FACTOR:g} tau = {JUMP_STABILITY_FACTOR * params.tau:g}")

    w, s_core, jmax, tail = _jump_kernel(psi.grid, params)
    v = psi.values
    jump = np.zeros_like(v)
    for j in range(1, jmax + 1):
        jump += w[j - 1] * (np.roll(v, -j) + np.roll(v, j) - 2.0 * v)
    lap = (np.roll(v, -1) + np.roll(v, 1) - 2.0 * v) / psi.grid.dx ** 2
    jump += 0.5 * s_core * lap

    new_values = v + 1j * (dt / params.tau) * jump

    eta_sup = abs(eta_relativistic(psi.grid.u_max, params))
    report = JumpStepReport(
        euler_bound=0.5 * ((dt / params.tau) * eta_sup) ** 2,
        kernel_tail=tail,
        cells=jmax,
        y_max=jmax * psi.grid.dx,
    )
    new_psi = WaveFunction.from_samples(psi.grid, new_values, normalize=False)
    return new_psi, report
