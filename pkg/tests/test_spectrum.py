import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from levyqm.presets import PRESET_MASSES, REFERENCE_LAMBDAS
from levyqm.spectrum import (CutoffPolynomial, DegenerateRootError, MassTriple,
                             NearDegenerateRootsWarning, f_eval, g_eval,
                             g_prime, lambdas_from_masses, lambdas_from_roots,
                             masses_from_lambdas, residues, roots_from_lambdas)

TABLE3 = CutoffPolynomial(-2.35e-5, 2.35e-5, -1.95e-12)
TRIPLE = CutoffPolynomial(-2.0, 3.0, -1.0)


# ---------------------------------------------------------------------------
# polynomial evaluation
# ---------------------------------------------------------------------------

def test_f_eval_basics():
    assert f_eval(0.0, TABLE3) == 0.0
    assert f_eval(1.0, TRIPLE) == 0.0
    # printed three-digit coefficients cancel pairwise at x = 1
    assert f_eval(1.0, TABLE3) == pytest.approx(-1.95e-12, rel=1e-12)


def test_g_eval_basics():
    assert g_eval(1.0, CutoffPolynomial.zero()) == 1.0
    assert g_eval(1.0, TRIPLE) == 1.0


def test_g_eval_exact_coefficients_hit_one_at_roots():
    # full-precision coefficients put g(x_i) = 1 at every root; the
    # three-digit printed roundings shift g(x2) by O(x2^2 dl2) ~ 0.8,
    # while the root itself only moves by ~0.15% (|g'| ~ 1)
    x2 = (70.0 / 3.0) ** 2
    masses = MassTriple.from_values(PRESET_MASSES["table1a"])
    exact = lambdas_from_masses(masses)
    assert g_eval(x2, exact) == pytest.approx(1.0, abs=1e-9)

    printed = CutoffPolynomial(*REFERENCE_LAMBDAS["table1a"])
    sol = roots_from_lambdas(printed)
    assert sol.roots[1] == pytest.approx(x2, rel=5e-3)


# ---------------------------------------------------------------------------
# coefficients from roots
# ---------------------------------------------------------------------------

def test_lambdas_from_unit_roots():
    with pytest.warns(NearDegenerateRootsWarning):
        c = lambdas_from_roots(1.0, 1.0, 1.0)
    assert c.as_tuple() == (-2.0, 3.0, -1.0)


@pytest.mark.parametrize("roots,expected", [
    ((1.0, 42704.0, 1.19979e7), (-2.35e-5, 2.35e-5, -1.95e-12)),
    ((1.0, 544.4, 1.895e6), (-1.84e-3, 1.84e-3, -9.69e-10)),
])
def test_lambdas_from_roots_reference_rows(roots, expected):
    c = lambdas_from_roots(*roots)
    for got, want in zip(c.as_tuple(), expected):
        assert got == pytest.approx(want, rel=5e-3)


def test_lambdas_from_roots_domain():
    with pytest.raises(ValueError):
        lambdas_from_roots(-1.0, 2.0, 3.0)
    with pytest.raises(ValueError):
        lambdas_from_roots(0.0, 2.0, 3.0)


# ---------------------------------------------------------------------------
# roots from coefficients
# ---------------------------------------------------------------------------

def test_roots_all_zero_coefficients():
    sol = roots_from_lambdas(CutoffPolynomial.zero())
    assert sol.roots == (1.0,)
    assert sol.n_complex == 0


def test_roots_round_trip_reference_scale():
    x = (1.0, 42704.0, 1.19979e7)
    sol = roots_from_lambdas(lambdas_from_roots(*x))
    assert len(sol.roots) == 3
    for got, want in zip(sol.roots, x):
        assert got == pytest.approx(want, rel=1e-10)


def test_roots_triple_degenerate():
    sol = roots_from_lambdas(TRIPLE)
    assert sol.degenerate
    assert sol.roots == (1.0, 1.0, 1.0)
    assert all(math.isnan(r) for r in sol.residues)


def test_roots_one_real_two_complex():
    # x^3 + x + 1 scaled into the g convention: pick coefficients with a
    # known negative discriminant
    c = CutoffPolynomial(lambda1=1.0, lambda2=0.0, lambda3=-1.0)
    # g(x) - 1 = x - x + x^3 - 1 = x^3 - 1 ... has single real root 1
    sol = roots_from_lambdas(c)
    assert sol.n_complex == 2
    assert sol.roots == (pytest.approx(1.0, rel=1e-12),)
    assert sol.discriminant < 0


def test_quadratic_degree_reduction():
    # lambda3 = 0: quadratic with two real roots
    full = lambdas_from_roots(2.0, 5.0, 1e8)
    c = CutoffPolynomial(full.lambda1, full.lambda2, 0.0)
    sol = roots_from_lambdas(c)
    assert len(sol.roots) == 2
    for x in sol.roots:
        assert g_eval(x, c) == pytest.approx(1.0, abs=1e-9)


def test_quadratic_no_real_roots_is_diagnostic_not_error():
    c = CutoffPolynomial(lambda1=1.0, lambda2=1.0, lambda3=0.0)
    # x - x - x^2 = 1 has no real solution
    sol = roots_from_lambdas(c)
    assert sol.roots == ()
    assert sol.n_complex == 2
    assert sol.discriminant < 0


def test_linear_case():
    c = CutoffPolynomial(lambda1=0.5, lambda2=0.0, lambda3=0.0)
    sol = roots_from_lambdas(c)
    assert sol.roots == (pytest.approx(2.0),)


@settings(max_examples=120, deadline=None)
@given(st.lists(st.floats(min_value=-2.0, max_value=2.0), min_size=3,
                max_size=3, unique=True))
def test_round_trip_property(exponents):
    xs = sorted(10.0 ** e for e in exponents)
    if min(xs[1] / xs[0], xs[2] / xs[1]) < 1.0 + 1e-5:
        return
    c = lambdas_from_roots(*xs)
    sol = roots_from_lambdas(c)
    assert len(sol.roots) == 3
    for got, want in zip(sol.roots, xs):
        assert got == pytest.approx(want, rel=1e-10)


def test_round_trip_eleven_orders_of_magnitude():
    # widest realistic regime: root span ~1e10 against l3 ~ 1e-16
    xs = (1.0, 598044.44, 1.3026438e10)
    sol = roots_from_lambdas(lambdas_from_roots(*xs))
    assert len(sol.roots) == 3
    for got, want in zip(sol.roots, xs):
        assert got == pytest.approx(want, rel=1e-6)


def test_vieta_consistency():
    xs = (0.7, 13.0, 812.0)
    c = lambdas_from_roots(*xs)
    sol = roots_from_lambdas(c)
    x1, x2, x3 = sol.roots
    assert x1 + x2 + x3 == pytest.approx(-c.lambda2 / c.lambda3, rel=1e-9)
    assert x1 * x2 + x1 * x3 + x2 * x3 == pytest.approx(
        (c.lambda1 - 1.0) / c.lambda3, rel=1e-9)
    assert x1 * x2 * x3 == pytest.approx(-1.0 / c.lambda3, rel=1e-9)


def test_root_certificate():
    for name in PRESET_MASSES:
        c = lambdas_from_masses(MassTriple.from_values(PRESET_MASSES[name]))
        sol = roots_from_lambdas(c)
        for x in sol.roots:
            assert abs(g_eval(x, c) - 1.0) <= 1e-9 * max(1.0, x)


# ---------------------------------------------------------------------------
# masses and residues
# ---------------------------------------------------------------------------

def test_mass_triple_validation():
    with pytest.raises(ValueError):
        MassTriple(1.0, 0.5, 2.0)
    with pytest.raises(ValueError):
        MassTriple(-1.0, 0.5, 2.0)
    assert MassTriple.from_values((3.0, 1.0, 2.0)).as_tuple() == (1.0, 2.0, 3.0)


@pytest.mark.parametrize("name", sorted(PRESET_MASSES))
def test_reference_rows_lambda_reproduction(name):
    c = lambdas_from_masses(MassTriple.from_values(PRESET_MASSES[name]))
    for got, want in zip(c.as_tuple(), REFERENCE_LAMBDAS[name]):
        assert got == pytest.approx(want, rel=5e-3)


@pytest.mark.parametrize("name", sorted(PRESET_MASSES))
def test_sign_pattern(name):
    c = lambdas_from_masses(MassTriple.from_values(PRESET_MASSES[name]))
    assert c.lambda1 < 0 and c.lambda2 > 0 and c.lambda3 < 0


def test_masses_round_trip_full_precision():
    masses = PRESET_MASSES["table3"]
    c = lambdas_from_masses(MassTriple.from_values(masses))
    sol = masses_from_lambdas(c, masses[0])
    for got, want in zip(sol.masses, masses):
        assert got == pytest.approx(want, rel=1e-6)


def test_explicit_base_mass():
    masses = MassTriple(1.0, 2.0, 3.0)
    c = lambdas_from_masses(masses, base=0.5)
    sol = masses_from_lambdas(c, 0.5)
    assert sol.roots[0] == pytest.approx(4.0, rel=1e-12)
    with pytest.raises(ValueError):
        lambdas_from_masses(masses, base=-1.0)


def test_masses_from_lambdas_zero_cutoff():
    sol = masses_from_lambdas(CutoffPolynomial.zero(), 1.0)
    assert sol.roots == (1.0,)
    assert sol.masses == (1.0,)
    assert sol.residues == (1.0,)
    assert sol.flags[0].residue_positive


def test_residues_against_finite_differences():
    c = lambdas_from_masses(MassTriple.from_values(PRESET_MASSES["table3"]))
    sol = roots_from_lambdas(c)
    rs = residues(c, sol.roots)
    for x, r in zip(sol.roots, rs):
        h = 1e-6 * max(1.0, abs(x))
        fd = (g_eval(x + h, c) - g_eval(x - h, c)) / (2.0 * h)
        assert r == pytest.approx(1.0 / fd, rel=1e-8)


def test_residues_degenerate_error():
    with pytest.raises(DegenerateRootError):
        residues(TRIPLE, (1.0,))


def test_degenerate_flagged_not_raised_in_masses():
    sol = masses_from_lambdas(TRIPLE, 1.0)
    assert sol.degenerate
    assert sol.masses == (1.0, 1.0, 1.0)


def test_solution_serialization():
    sol = masses_from_lambdas(CutoffPolynomial.zero(), 2.0)
    d = sol.to_dict()
    assert d["roots"] == [1.0]
    assert d["masses"] == [2.0]
    assert d["flags"][0]["residue_positive"] is True
