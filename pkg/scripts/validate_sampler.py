#!/usr/bin/env python3
"""Statistical validation run: subordinated sampler vs the FFT density.

Draws endpoint samples of the unit-mass pure-jump process, tests them
against the Fourier-inverted transition density (one-sample KS at
alpha = 0.01) and prints the moment checks.

Usage: validate_sampler.py [n_samples] [seed]
"""

import sys

import numpy as np

from levyqm import ExponentParams, LogCharacteristic
from levyqm.densities import default_grid, moments, transition_density
from levyqm.sampler import SeededGenerator, ks_validate, sample_endpoints


def run(n_samples=100_000, seed=42):
    n_samples, seed = int(n_samples), int(seed)
    params = ExponentParams.from_mass(1.0)
    eta = LogCharacteristic.relativistic(params)
    table = transition_density(1.0, params, eta, default_grid(params, 1.0))

    samples = sample_endpoints(1.0, params, SeededGenerator(seed), n_samples)
    report = ks_validate(samples, table)

    print(f"N = {report.n}, seed = {seed}")
    print(f"KS statistic D = {report.d:.5f}, threshold = {report.threshold:.5f} "
          f"-> {'PASS' if report.passed else 'FAIL'}")
    print(f"sample mean     {samples.mean():+.5f}   (law: 0)")
    print(f"sample variance {samples.var():.5f}   (law: {moments(table, 2):.5f})")
    print(f"sample kurtosis {float(np.mean(samples ** 4) / samples.var() ** 2):.3f}"
          f"   (law: {moments(table, 4) / moments(table, 2) ** 2:.3f})")
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(run(*sys.argv[1:]))
