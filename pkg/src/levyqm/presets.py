"""Bundled fermion mass triples (GeV) and their reference coefficients.

Five triples: charge -1/3 quarks (d, s, b) under two mass estimates,
charge +2/3 quarks (u, c, t) under two estimates, and the charged
leptons (e, mu, tau).  The reference cutoff coefficients are the
triples' known values rounded to three significant figures; the
reproduction command recomputes them from the masses at full precision
and compares at that rounding.
"""

PRESET_MASSES = {
    "table1a": (3e-3, 70e-3, 4.13),
    "table1b": (7e-3, 120e-3, 4.27),
    "table2a": (1.5e-3, 1.16, 171.2),
    "table2b": (3.0e-3, 1.34, 174.0),
    "table3": (5.11e-4, 105.6e-3, 1.77),
}

REFERENCE_LAMBDAS = {
    "table1a": (-1.84e-3, 1.84e-3, -9.69e-10),
    "table1b": (-3.41e-3, 3.41e-3, -9.14e-9),
    "table2a": (-1.67e-6, 1.67e-6, -1.28e-16),
    "table2b": (-5.01e-6, 5.01e-6, -1.49e-15),
    "table3": (-2.35e-5, 2.35e-5, -1.95e-12),
}

PRESET_NAMES = tuple(PRESET_MASSES)
