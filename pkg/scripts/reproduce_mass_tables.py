#!/usr/bin/env python3
"""Recompute the bundled cutoff-coefficient tables from their mass triples.

Prints one row per preset: input masses, full-precision coefficients,
the deviation from the three-figure reference values, and the recovered
masses from re-solving the cubic.
"""

import sys

from levyqm.presets import PRESET_MASSES, REFERENCE_LAMBDAS
from levyqm.spectrum import MassTriple, lambdas_from_masses, masses_from_lambdas


def run():
    header = f"{'preset':9s} {'masses (GeV)':34s} {'l1':>12s} {'l2':>12s} {'l3':>12s} {'max rel':>9s}"
    print(header)
    print("-" * len(header))
    failures = 0
    for name, raw in PRESET_MASSES.items():
        triple = MassTriple.from_values(raw)
        c = lambdas_from_masses(triple)
        rel = max(abs(got / ref - 1.0)
                  for got, ref in zip(c.as_tuple(), REFERENCE_LAMBDAS[name]))
        masses = ", ".join(f"{m:.4g}" for m in triple.as_tuple())
        print(f"{name:9s} {masses:34s} {c.lambda1:12.4e} {c.lambda2:12.4e} "
              f"{c.lambda3:12.4e} {rel:9.2e}")
        solved = masses_from_lambdas(c, triple.m1)
        recovered = max(abs(got / want - 1.0)
                        for got, want in zip(solved.masses, triple.as_tuple()))
        if rel > 5e-3 or recovered > 1e-6:
            failures += 1
            print(f"  !! mismatch: coefficients {rel:.2e}, masses {recovered:.2e}")
    print(f"\n{len(PRESET_MASSES) - failures}/{len(PRESET_MASSES)} rows reproduce")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(run())
