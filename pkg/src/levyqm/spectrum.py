"""Cubic-cutoff mass-spectrum algebra.

A cubic correction f(x) = l1 x + l2 x^2 + l3 x^3 to the squared-mass
constraint turns the single propagator pole into up to three: the real
positive solutions x_i of

    g(x) = x - f(x) = 1

carry masses M_i = m sqrt(x_i) and pole residues 1/g'(x_i).  The
inverse map from three roots to the coefficients is closed form
(Vieta on the monic cubic with constant term 1):

    l1 = 1 - sum 1/x_i,   l2 = sum_{i<j} 1/(x_i x_j),   l3 = -1/(x1 x2 x3).

The forward solve uses the closed-form cubic on a magnitude-rescaled
variable followed by Newton polishing of g(x) - 1 in the original
variable; the rescaling matters because realistic coefficient sets span
l3 ~ 1e-16 against roots ~ 1e10, where the raw closed form loses most
of its digits to cancellation.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

DEGENERATE_GPRIME = 1e-12
NEAR_COINCIDENT_RATIO = 1e-6
ROOT_CERTIFICATE = 1e-9


class DegenerateRootError(RuntimeError):
    """g'(x) vanished at a root: multiple pole, residue undefined."""


class NearDegenerateRootsWarning(UserWarning):
    pass


@dataclass(frozen=True)
class CutoffPolynomial:
    """Coefficients (l1, l2, l3) of the cubic cutoff f(x) = l1 x + l2 x^2 + l3 x^3."""

    lambda1: float
    lambda2: float
    lambda3: float

    def __post_init__(self):
        for v in (self.lambda1, self.lambda2, self.lambda3):
            if not math.isfinite(v):
                raise ValueError("cutoff coefficients must be finite")

    @classmethod
    def zero(cls) -> "CutoffPolynomial":
        return cls(0.0, 0.0, 0.0)

    def as_tuple(self):
        return (self.lambda1, self.lambda2, self.lambda3)


@dataclass(frozen=True)
class MassTriple:
    """Three target masses in GeV, ascending."""

    m1: float
    m2: float
    m3: float

    def __post_init__(self):
        if not (0.0 < self.m1 <= self.m2 <= self.m3):
            raise ValueError("masses must satisfy 0 < m1 <= m2 <= m3")

    @classmethod
    def from_values(cls, values) -> "MassTriple":
        vals = sorted(float(v) for v in values)
        if len(vals) != 3:
            raise ValueError("exactly three masses required")
        return cls(*vals)

    def as_tuple(self):
        return (self.m1, self.m2, self.m3)


@dataclass(frozen=True)
class RootFlags:
    real: bool
    positive: bool
    residue_positive: bool | None


@dataclass(frozen=True)
class SpectrumSolution:
    """Real roots of g(x) = 1 with masses, residues and physicality flags.

    Complex-conjugate root pairs are reported through ``n_complex`` and
    the (sign-faithful, magnitude-rescaled) ``discriminant``; degenerate
    roots set ``degenerate`` and leave their residue as NaN.
    """

    roots: tuple
    masses: tuple
    residues: tuple
    flags: tuple
    discriminant: float | None
    degenerate: bool
    n_complex: int
    base_mass: float | None = None

    def to_dict(self) -> dict:
        return {
            "roots": list(self.roots),
            "masses": list(self.masses),
            "residues": list(self.residues),
            "flags": [
                {"real": f.real, "positive": f.positive,
                 "residue_positive": f.residue_positive}
                for f in self.flags
            ],
            "discriminant": self.discriminant,
            "degenerate": self.degenerate,
            "n_complex": self.n_complex,
            "base_mass": self.base_mass,
        }


# ---------------------------------------------------------------------------
# polynomial evaluation
# ---------------------------------------------------------------------------

def f_eval(x, c: CutoffPolynomial):
    """Cutoff cubic, Horner form."""
    return x * (c.lambda1 + x * (c.lambda2 + x * c.lambda3))


def g_eval(x, c: CutoffPolynomial):
    return x - f_eval(x, c)


def g_prime(x, c: CutoffPolynomial):
    return 1.0 - (c.lambda1 + x * (2.0 * c.lambda2 + 3.0 * x * c.lambda3))


# ---------------------------------------------------------------------------
# roots <-> coefficients <-> masses
# ---------------------------------------------------------------------------

def lambdas_from_roots(x1: float, x2: float, x3: float) -> CutoffPolynomial:
    """Coefficients whose spectrum equation has the given positive roots."""
    roots = (float(x1), float(x2), float(x3))
    if any(x <= 0 or not math.isfinite(x) for x in roots):
        raise ValueError("roots must be positive and finite")
    _warn_near_coincident(roots)

    r1, r2, r3 = (1.0 / x for x in roots)
    c = CutoffPolynomial(
        lambda1=1.0 - (r1 + r2 + r3),
        lambda2=r1 * r2 + r1 * r3 + r2 * r3,
        lambda3=-r1 * r2 * r3,
    )
    for x in roots:
        if abs(g_eval(x, c) - 1.0) > ROOT_CERTIFICATE * max(1.0, abs(x)):
            raise RuntimeError(f"coefficient construction failed certificate at x={x}")
    return c


def _warn_near_coincident(roots):
    for i in range(3):
        for j in range(i + 1, 3):
            if abs(roots[i] / roots[j] - 1.0) < NEAR_COINCIDENT_RATIO:
                warnings.warn(
                    f"roots {roots[i]} and {roots[j]} are nearly coincident",
                    NearDegenerateRootsWarning, stacklevel=3)


def _newton_polish(x: float, c: CutoffPolynomial, iters: int = 12) -> float:
    for _ in range(iters):
        f = g_eval(x, c) - 1.0
        df = g_prime(x, c)
        if df == 0.0:
            break
        step = f / df
        limit = 0.5 * abs(x) + 1.0
        step = max(-limit, min(limit, step))
        x -= step
        if abs(step) <= 4.0 * np.finfo(float).eps * max(1.0, abs(x)):
            break
    return x


def _solve_cubic_scaled(c: CutoffPolynomial):
    """Real roots of l3 x^3 + l2 x^2 + (l1-1) x + 1 = 0 plus diagnostics.

    Returns (roots, discriminant, n_complex).  The discriminant is the
    depressed-cubic invariant -4p^3 - 27q^2 of the rescaled monic
    polynomial: same sign as the true discriminant, tame magnitude.
    """
    l1, l2, l3 = c.lambda1, c.lambda2, c.lambda3
    s = abs(l3) ** (1.0 / 3.0)
    # monic in y = x*s: y^3 + B y^2 + C y + D, D = sign(l3)
    b_coef = (l2 / l3) * s
    c_coef = ((l1 - 1.0) / l3) * s * s
    d_coef = math.copysign(1.0, l3)

    p = c_coef - b_coef * b_coef / 3.0
    q = (2.0 * b_coef ** 3) / 27.0 - b_coef * c_coef / 3.0 + d_coef
    disc = -4.0 * p ** 3 - 27.0 * q * q

    if disc > 0.0:
        # three real roots, trigonometric form (p < 0 here)
        r = 2.0 * math.sqrt(-p / 3.0)
        arg = 3.0 * q / (p * r)
        arg = max(-1.0, min(1.0, arg))
        theta = math.acos(arg)
        ts = [r * math.cos((theta - 2.0 * math.pi * k) / 3.0) for k in range(3)]
        n_complex = 0
    elif disc == 0.0:
        # multiple real roots: triple at 0 when p = 0, else double + simple
        if p == 0.0:
            ts = [0.0, 0.0, 0.0]
        else:
            ts = [3.0 * q / p, -1.5 * q / p, -1.5 * q / p]
        n_complex = 0
    else:
        # one real root; Cardano with the larger-magnitude cube root to
        # dodge cancellation
        rad = math.sqrt(-disc / 108.0)
        if q >= 0.0:
            u = -_cbrt(0.5 * q + rad)
        else:
            u = _cbrt(-0.5 * q + rad)
        v = 0.0 if u == 0.0 else -p / (3.0 * u)
        ts = [u + v]
        n_complex = 2

    roots = [(t - b_coef / 3.0) / s for t in ts]
    return roots, disc, n_complex


def _cbrt(x: float) -> float:
    return math.copysign(abs(x) ** (1.0 / 3.0), x)


def roots_from_lambdas(c: CutoffPolynomial) -> SpectrumSolution:
    """Real solutions of g(x) = 1, closed form plus Newton polishing.

    Complex-conjugate pairs are reported as absent (``n_complex``) with
    the discriminant attached; a vanished leading coefficient reduces
    the degree instead of failing.
    """
    l1, l2, l3 = c.lambda1, c.lambda2, c.lambda3

    if l3 == 0.0 and l2 == 0.0:
        if l1 == 1.0:
            return _solution_from_roots([], c, discriminant=None, n_complex=0)
        return _solution_from_roots([1.0 / (1.0 - l1)], c, discriminant=None,
                                    n_complex=0)

    if l3 == 0.0:
        # l2 x^2 + (l1-1) x + 1 = 0, stable two-root formula
        disc = (l1 - 1.0) ** 2 - 4.0 * l2
        if disc < 0.0:
            return _solution_from_roots([], c, discriminant=disc, n_complex=2)
        sq = math.sqrt(disc)
        b = l1 - 1.0
        qq = -0.5 * (b + math.copysign(sq, b))
        roots = [qq / l2, 1.0 / qq]
        roots = [_newton_polish(x, c) for x in roots]
        return _solution_from_roots(roots, c, discriminant=disc, n_complex=0)

    raw, disc, n_complex = _solve_cubic_scaled(c)
    polished = []
    for x in raw:
        if abs(g_prime(x, c)) > DEGENERATE_GPRIME:
            x = _newton_polish(x, c)
        polished.append(x)
    return _solution_from_roots(polished, c, discriminant=disc, n_complex=n_complex)


def _solution_from_roots(roots, c, discriminant, n_complex,
                         base_mass=None) -> SpectrumSolution:
    roots = sorted(roots)
    degenerate = False
    residues = []
    flags = []
    masses = []
    for x in roots:
        if abs(g_eval(x, c) - 1.0) > ROOT_CERTIFICATE * max(1.0, abs(x)):
            raise RuntimeError(f"root certificate violated at x={x!r}")
        gp = g_prime(x, c)
        if abs(gp) < DEGENERATE_GPRIME:
            degenerate = True
            residues.append(math.nan)
            flags.append(RootFlags(real=True, positive=x > 0.0,
                                   residue_positive=None))
        else:
            r = 1.0 / gp
            residues.append(r)
            flags.append(RootFlags(real=True, positive=x > 0.0,
                                   residue_positive=r > 0.0))
        if base_mass is not None:
            masses.append(base_mass * math.sqrt(x) if x > 0.0 else math.nan)
    return SpectrumSolution(
        roots=tuple(roots),
        masses=tuple(masses),
        residues=tuple(residues),
        flags=tuple(flags),
        discriminant=discriminant,
        degenerate=degenerate,
        n_complex=n_complex,
        base_mass=base_mass,
    )


def residues(c: CutoffPolynomial, roots) -> tuple:
    """Pole residues 1/g'(x_i) at simple roots; degenerate roots raise."""
    out = []
    for x in roots:
        gp = g_prime(x, c)
        if abs(gp) < DEGENERATE_GPRIME:
            raise DegenerateRootError(
                f"|g'({x})| = {abs(gp):.3e} < {DEGENERATE_GPRIME}: multiple root")
        out.append(1.0 / gp)
    return tuple(out)


def resolve_base_mass(masses: MassTriple, base="lightest") -> float:
    """Base-mass policy: the lightest family member by default."""
    if base == "lightest":
        return masses.m1
    m = float(base)
    if m <= 0:
        raise ValueError("explicit base mass must be positive")
    return m


def lambdas_from_masses(masses: MassTriple, base="lightest") -> CutoffPolynomial:
    """Cutoff coefficients reproducing three target masses.

    With the default policy the lightest mass anchors the base scale,
    so x1 = 1 exactly and l1 = -(1/x2 + 1/x3) up to the constant shift.
    """
    m = resolve_base_mass(masses, base)
    xs = [(mass / m) ** 2 for mass in masses.as_tuple()]
    return lambdas_from_roots(*xs)


def masses_from_lambdas(c: CutoffPolynomial, m: float) -> SpectrumSolution:
    """Full spectrum for base mass m: roots, masses, residues, flags."""
    if m <= 0:
        raise ValueError("base mass must be positive")
    sol = roots_from_lambdas(c)
    return _solution_from_roots(list(sol.roots), c, sol.discriminant,
                                sol.n_complex, base_mass=m)
