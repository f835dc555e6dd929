"""Monte Carlo sampling of the relativistic pure-jump process.

Increments are drawn by Gaussian subordination: X = sqrt(S) Z with Z
standard normal and S inverse-Gaussian with mean mu = a^2 dt/tau and
shape lam = a^2 (dt/tau)^2.  The Laplace transform of that S is
exp((dt/tau)(1 - sqrt(1 + 2 a^2 s))) at argument s, so E exp(iuX) =
E exp(-S u^2/2) = exp((dt/tau)(1 - sqrt(1 + a^2 u^2))): the
subordinated form has exactly the required characteristic function,
with O(1) cost per increment.

Randomness comes from numpy's counter-based Philox generator keyed by
(seed, stream); distinct keys give non-overlapping sequences, and a
fixed key reproduces byte-identical output on any platform.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .densities import DensityTable, GridError
from .exponents import ExponentParams

KS_ALPHA_001_COEFF = 1.63  # asymptotic one-sample KS quantile at alpha = 0.01


@dataclass(frozen=True)
class SeededGenerator:
    """Reproducible (seed, stream) pair over a counter-based generator."""

    seed: int
    stream: int = 0

    def __post_init__(self):
        for name in ("seed", "stream"):
            v = getattr(self, name)
            if not (0 <= v < 2 ** 64):
                raise ValueError(f"{name} must be a 64-bit unsigned integer")

    def generator(self) -> np.random.Generator:
        return np.random.Generator(np.random.Philox(key=self.seed | (self.stream << 64)))


def _as_generator(g) -> np.random.Generator:
    if isinstance(g, SeededGenerator):
        return g.generator()
    if isinstance(g, np.random.Generator):
        return g
    raise TypeError("expected SeededGenerator or numpy Generator")


@dataclass(frozen=True)
class PathSample:
    """One trajectory: ascending times from 0, positions from X(0) = 0."""

    times: np.ndarray
    positions: np.ndarray

    def __post_init__(self):
        if self.positions[0] != 0.0 or self.times[0] != 0.0:
            raise ValueError("paths must start at (t, X) = (0, 0)")
        if np.any(np.diff(self.times) <= 0):
            raise ValueError("times must be strictly increasing")

    def increments(self) -> np.ndarray:
        return np.diff(self.positions)


@dataclass(frozen=True)
class KSReport:
    n: int
    d: float
    threshold: float
    passed: bool

    def to_dict(self):
        return {"n": self.n, "d": self.d, "threshold": self.threshold,
                "pass": self.passed}


# ---------------------------------------------------------------------------
# samplers
# ---------------------------------------------------------------------------

def sample_inverse_gaussian(mean: float, shape: float, g, size=None):
    """Inverse-Gaussian draw(s) by the Michael-Schucany-Haas transform.

    One squared normal plus one uniform per draw; the smaller root of
    the transformed quadratic is kept with probability mean/(mean+root).
    """
    if mean <= 0 or shape <= 0:
        raise ValueError("inverse-Gaussian mean and shape must be positive")
    rng = _as_generator(g)
    nu = rng.standard_normal(size)
    y = nu * nu
    root = (mean + mean * mean * y / (2.0 * shape)
            - (mean / (2.0 * shape)) * np.sqrt(4.0 * mean * shape * y
                                               + (mean * y) ** 2))
    u = rng.random(size)
    out = np.where(u <= mean / (mean + root), root, mean * mean / root)
    return float(out) if size is None else out


def sample_increment(dt: float, params: ExponentParams, g, size=None):
    """Time-dt increment(s) of the relativistic pure-jump process."""
    if dt <= 0:
        raise ValueError("dt must be positive")
    rng = _as_generator(g)
    ratio = dt / params.tau
    clock = sample_inverse_gaussian(params.a ** 2 * ratio,
                                    params.a ** 2 * ratio ** 2, rng, size)
    z = rng.standard_normal(size)
    out = np.sqrt(clock) * z
    return float(out) if size is None else out


def sample_path(T: float, steps: int, params: ExponentParams, g) -> PathSample:
    """Cumulative sum of `steps` independent stationary increments."""
    if steps < 1:
        raise ValueError("need at least one step")
    if T <= 0:
        raise ValueError("horizon must be positive")
    rng = _as_generator(g)
    incs = sample_increment(T / steps, params, rng, size=steps)
    positions = np.concatenate([[0.0], np.cumsum(incs)])
    times = np.linspace(0.0, T, steps + 1)
    return PathSample(times=times, positions=positions)


def sample_endpoints(T: float, params: ExponentParams, g, n_paths: int,
                     steps: int = 1) -> np.ndarray:
    """Endpoint draws X(T) for n_paths independent trajectories."""
    rng = _as_generator(g)
    if steps == 1:
        return sample_increment(T, params, rng, size=n_paths)
    incs = sample_increment(T / steps, params, rng, size=(n_paths, steps))
    return incs.sum(axis=1)


# ---------------------------------------------------------------------------
# validation against a gridded density
# ---------------------------------------------------------------------------

def table_cdf(reference: DensityTable):
    return reference.cdf_nodes()


def sample_from_table(reference: DensityTable, n: int, g) -> np.ndarray:
    """Inverse-CDF draws from a gridded density (test calibration aid)."""
    rng = _as_generator(g)
    x, cdf = reference.cdf_nodes()
    u = rng.random(n)
    return np.interp(u, cdf, x)


def ks_validate(samples, reference: DensityTable) -> KSReport:
    """One-sample Kolmogorov-Smirnov test against a gridded density.

    The reference CDF is the cumulative table mass, linearly
    interpolated between nodes; the grid must extend past every sample.
    Threshold 1.63/sqrt(N) (alpha = 0.01).
    """
    samples = np.asarray(samples, dtype=float)
    n = samples.size
    if n < 1000:
        raise ValueError("need at least 1e3 samples for the asymptotic test")
    x, cdf = reference.cdf_nodes()
    if samples.min() <= x[0] or samples.max() >= x[-1]:
        raise GridError("sample range leaves the reference grid; rebuild the "
                        "table on a wider grid")
    edge_mass = max(reference.values[0], reference.values[-1]) * reference.grid.dx
    if edge_mass > 1e-9:
        raise GridError(f"reference grid carries {edge_mass:.2e} mass per edge "
                        "cell; extend it so interpolation bias stays below the "
                        "test resolution")
    srt = np.sort(samples)
    f_ref = np.interp(srt, x, cdf)
    i = np.arange(1, n + 1)
    d = float(np.max(np.maximum(np.abs(i / n - f_ref),
                                np.abs((i - 1) / n - f_ref))))
    threshold = KS_ALPHA_001_COEFF / math.sqrt(n)
    return KSReport(n=n, d=d, threshold=threshold, passed=d < threshold)
