import math

import numpy as np
import pytest

from xop_pdm import susy
from xop_pdm.models import JacobiModel, LaguerreModel, auto_domain, wavefunction, wavefunction_deriv
from xop_pdm.solver import Grid, build_hamiltonian


def xs(model, n=200):
    return np.linspace(*auto_domain(model), n)


def test_superpotential_value(fig1):
    assert susy.superpotential(fig1, 0.0) == pytest.approx(11 / 12, rel=1e-14)


def test_superpotential_is_log_derivative_of_ground_state(model):
    x = np.linspace(*auto_domain(model, 0), 100)
    h = 1e-6 * model.length_scale
    psi = lambda y: wavefunction(model, 0, y)
    dpsi = (psi(x + h) - psi(x - h)) / (2 * h)
    oracle = -dpsi / (np.sqrt(model.mass(x)) * psi(x))
    assert np.allclose(susy.superpotential(model, x), oracle, rtol=1e-8, atol=1e-8)


def test_quoted_jacobi_superpotential_misses_cosh_factor(fig2):
    x = np.linspace(-20, 20, 41)
    oracle = -wavefunction_deriv(fig2, 0, x) / (np.sqrt(fig2.mass(x)) * wavefunction(fig2, 0, x))
    assert np.abs(susy.superpotential_uncorrected(fig2, x) - oracle).max() > 1e-4
    assert np.allclose(susy.superpotential(fig2, x), oracle, rtol=1e-12, atol=1e-13)


def test_superpotential_derivative(model):
    x = xs(model, 50)
    fd = susy.derivative(lambda y: susy.superpotential(model, y), x, 1e-3 * model.length_scale)
    assert np.allclose(susy.superpotential_deriv(model, x), fd, rtol=1e-8, atol=1e-9)


def test_partner_potential_value(fig1):
    assert susy.partner_potential(fig1, 0.0) == pytest.approx(1.125, rel=1e-14)


def test_shape_invariance_relations(fig1, fig2):
    x = xs(fig1)
    assert np.allclose(susy.partner_potential(fig1, x),
                       LaguerreModel(1.0, 3.0).potential(x) + 1.0, rtol=1e-12, atol=1e-9)
    x = xs(fig2)
    assert np.allclose(susy.partner_potential(fig2, x),
                       JacobiModel(0.2, 3.0, 3.5).potential(x) + 0.26, rtol=1e-12, atol=1e-9)


@pytest.mark.parametrize("model, R", [(LaguerreModel(1.0, 2.0), 1.0), (JacobiModel(0.2, 2.0, 2.5), 0.26),
                                      (LaguerreModel(0.7, 0.4), 0.49), (JacobiModel(0.5, -0.3, -0.2), 0.25 * 1.5)])
def test_shape_invariance_check(model, R):
    x = np.linspace(-3, 3, 200) * model.length_scale
    rem, dev = susy.shape_invariance_check(model, x)
    assert rem == pytest.approx(R, rel=1e-9)
    assert dev <= 1e-9 * (1 + abs(rem))
    assert susy.partner_model(model).remainder == pytest.approx(R, rel=1e-12)
    assert rem == pytest.approx(model.energy(1), rel=1e-9)


def test_shape_invariance_needs_samples(fig1):
    with pytest.raises(ValueError):
        susy.shape_invariance_check(fig1, np.linspace(0, 1, 5))


def test_factorization_and_partner_from_B(model):
    x = xs(model)
    V, V1 = model.potential(x), susy.partner_potential(model, x)
    assert np.all(np.abs(susy.potential_from_B(model, x) - V) <= 1e-6 * (1 + np.abs(V)))
    assert np.all(np.abs(susy.partner_from_B(model, x) - V1) <= 1e-6 * (1 + np.abs(V1)))


def test_partner_from_B_with_numeric_derivatives(model):
    x = xs(model, 60)
    L = model.length_scale
    dB = susy.derivative(lambda y: susy.superpotential(model, y), x, 1e-3 * L)
    u = 1 / np.sqrt(model.mass(x))
    u2 = (1 / np.sqrt(model.mass(x + 1e-3 * L)) - 2 * u + 1 / np.sqrt(model.mass(x - 1e-3 * L))) / (1e-3 * L) ** 2
    V1 = model.potential(x) + 2 * dB * u - u * u2
    ref = susy.partner_potential(model, x)
    assert np.all(np.abs(V1 - ref) <= 1e-5 * (1 + np.abs(ref)))


def test_susy_requires_zero_point_offset():
    m = LaguerreModel(1.0, 2.0, v0bar=0.5)
    with pytest.raises(ValueError):
        susy.partner_potential(m, 0.0)
    with pytest.raises(ValueError):
        susy.partner_model(m)


def test_ground_state_annihilated(model):
    x = xs(model)
    psi = lambda y: wavefunction(model, 0, y, True)
    out = susy.apply_A(model, psi, x, lambda y: wavefunction_deriv(model, 0, y, True))
    assert np.abs(out).max() <= 1e-7 * np.abs(psi(x)).max()
    # numeric-derivative path agrees too
    assert np.abs(susy.apply_A(model, psi, x)).max() <= 1e-7 * np.abs(psi(x)).max()


@pytest.mark.parametrize("m", range(4))
def test_ladder_relations(model, m):
    x = xs(model)
    ref = susy.partner_eigenstate(model, m, x, normalized=True)
    down = susy.ladder_down(model, m, x)
    assert np.abs(susy.align_sign(down, ref) - ref).max() <= 1e-6
    base = wavefunction(model, m + 1, x, True)
    up = susy.ladder_up(model, m, x)
    assert np.abs(susy.align_sign(up, base) - base).max() <= 1e-6


@pytest.mark.parametrize("m", range(3))
def test_A_norm_squared_is_energy(model, m):
    from xop_pdm.numerics import integrate
    lo, hi = auto_domain(model, m + 2)
    psi = lambda y: wavefunction(model, m + 1, y, True)
    dpsi = lambda y: wavefunction_deriv(model, m + 1, y, True)
    nrm = integrate(lambda y: susy.apply_A(model, psi, y, dpsi) ** 2, lo, hi,
                    points=np.linspace(lo, hi, 9)[1:-1])
    assert nrm == pytest.approx(model.energy(m + 1), rel=1e-8)


@pytest.mark.parametrize("m", range(4))
def test_hamiltonian_factorizes(model, m):
    x = xs(model)
    psi = lambda y: wavefunction(model, m, y, True)
    dpsi = lambda y: wavefunction_deriv(model, m, y, True)
    Apsi = lambda y: susy.apply_A(model, psi, y, dpsi)
    lhs = susy.apply_A_dagger(model, Apsi, x)
    tol = 1e-6 * (1 + model.energy(m)) * np.abs(psi(x)).max()
    assert np.abs(lhs - model.energy(m) * psi(x)).max() <= tol
    if m == 0:
        assert np.abs(lhs).max() <= tol


def test_A_dagger_closed_derivative_path(model):
    x = xs(model, 50)
    phi = lambda y: wavefunction(model, 1, y)
    dphi = lambda y: wavefunction_deriv(model, 1, y)
    assert np.allclose(susy.apply_A_dagger(model, phi, x, dphi), susy.apply_A_dagger(model, phi, x),
                       rtol=1e-7, atol=1e-10)


def test_partner_state_value_laguerre(fig1):
    assert susy.partner_eigenstate(fig1, 0, 0.0) == pytest.approx(math.exp(-0.5) * 5 / 4, rel=1e-14)


@pytest.mark.parametrize("m", range(3))
def test_partner_state_rayleigh_quotient(model, m):
    grid = Grid(*auto_domain(model, m + 2), 4000)
    H = build_hamiltonian(model.mass, lambda y: susy.partner_potential(model, y), grid)
    v = np.asarray(susy.partner_eigenstate(model, m, grid.x))
    v = v / np.linalg.norm(v)
    assert v @ H.matvec(v) == pytest.approx(model.energy(m + 1), abs=5e-3)


def test_jacobi_partner_denominator_finite(fig2):
    x = np.linspace(-200, 200, 4001)
    for al, be in [(2.0, 2.5), (-0.4, -0.3), (0.1, 5.0)]:
        v = susy.partner_eigenstate(JacobiModel(0.2, al, be), 1, x)
        assert np.all(np.isfinite(v))


def test_quoted_jacobi_partner_state_is_not_an_eigenstate(fig2):
    # the printed sinh sign breaks proportionality to A psi_{m+1}
    x = np.linspace(-20, 20, 41)
    q = susy.partner_eigenstate_uncorrected(fig2, 0, x) / susy.partner_eigenstate(fig2, 0, x)
    assert np.ptp(q) > 0.1
    lag = LaguerreModel()
    assert np.allclose(susy.partner_eigenstate_uncorrected(lag, 1, x), susy.partner_eigenstate(lag, 1, x))
