import numpy as np
import pytest

from xop_pdm.models import JacobiModel, LaguerreModel, count_nodes
from xop_pdm.solver import (
    Grid,
    auto_grid,
    build_hamiltonian,
    convergence_ratios,
    sampled_eigenvector,
    solve_spectrum,
    verify_model,
)


def test_grid():
    g = Grid(0.0, 1.0, 9)
    assert g.h == pytest.approx(0.1)
    assert g.x[0] == pytest.approx(0.1) and g.x[-1] == pytest.approx(0.9)
    assert g.refined().h == pytest.approx(0.05)
    with pytest.raises(ValueError):
        Grid(1.0, 0.0, 5)
    with pytest.raises(ValueError):
        Grid(0.0, 1.0, 2)


def test_constant_mass_gives_laplacian():
    g = Grid(0.0, 1.0, 9)
    H = build_hamiltonian(lambda x: np.ones_like(x), lambda x: np.zeros_like(x), g)
    assert np.allclose(H.diag, 2 / g.h**2) and np.allclose(H.offdiag, -1 / g.h**2)


def test_constant_shift():
    g = Grid(-1.0, 2.0, 50)
    mass = lambda x: 1 + 0.5 * np.sin(x) ** 2
    H0 = build_hamiltonian(mass, lambda x: x**2, g)
    H1 = build_hamiltonian(mass, lambda x: x**2 + 3.25, g)
    e0 = [p[0] for p in solve_spectrum(H0, 5)]
    e1 = [p[0] for p in solve_spectrum(H1, 5)]
    assert np.allclose(np.array(e1) - e0, 3.25, atol=1e-11)


def test_nonpositive_mass_rejected():
    with pytest.raises(ValueError):
        build_hamiltonian(lambda x: x, lambda x: 0 * x, Grid(-1.0, 1.0, 10))


def test_matrix_is_symmetric_under_varying_mass(fig2):
    g = Grid(-5.0, 5.0, 20)
    H = build_hamiltonian(fig2.mass, fig2.potential, g)
    dense = np.diag(H.diag) + np.diag(H.offdiag, 1) + np.diag(H.offdiag, -1)
    assert np.array_equal(dense, dense.T)


def test_figure_spectra_low_levels(fig1, fig2):
    H = build_hamiltonian(fig1.mass, fig1.potential, auto_grid(fig1))
    assert solve_spectrum(H, 1)[0][0] == pytest.approx(0.0, abs=5e-3)
    H = build_hamiltonian(fig2.mass, fig2.potential, auto_grid(fig2))
    assert solve_spectrum(H, 2)[1][0] == pytest.approx(0.26, abs=5e-3)


def test_eigenvector_nodes(model):
    g = auto_grid(model)
    pairs = solve_spectrum(build_hamiltonian(model.mass, model.potential, g), 5)
    assert [count_nodes(v, 1e-8) for _, v in pairs] == list(range(5))


@pytest.mark.parametrize("partner", [False, True])
def test_verify_model(model, partner):
    rep = verify_model(model, 4, partner=partner)
    assert rep.converged
    for lv in rep.levels:
        assert lv.abs_err <= 5e-3 and lv.overlap >= 0.9999
    assert [lv.m for lv in rep.levels] == [0, 1, 2, 3]
    d = rep.to_dict()
    assert d["grid"]["n"] == rep.grid.n and len(d["levels"]) == 4


def test_verify_model_flags_failure(fig1):
    rep = verify_model(fig1, 2, grid=auto_grid(fig1), tol=1e-9)
    assert not rep.converged


def test_default_grids(fig1, fig2):
    g1, g2 = auto_grid(fig1), auto_grid(fig2)
    assert (g1.xmin, g1.xmax) == (-5.0, 12.0) and g1.h == pytest.approx(0.005, rel=1e-3)
    assert (g2.xmin, g2.xmax) == (-35.0, 40.0) and g2.h == pytest.approx(0.01, rel=1e-3)


def test_second_order_convergence(fig1):
    errs, ratios = convergence_ratios(fig1, Grid.with_spacing(-5.0, 12.0, 0.04), 2)
    assert all(3.5 <= r <= 4.5 for r in ratios)


def test_boundary_insensitivity(model):
    g = auto_grid(model)
    span = g.xmax - g.xmin
    wide = Grid.with_spacing(g.xmin - 0.1 * span, g.xmax + 0.1 * span, g.h)
    e = [p[0] for p in solve_spectrum(build_hamiltonian(model.mass, model.potential, g), 4)]
    ew = [p[0] for p in solve_spectrum(build_hamiltonian(model.mass, model.potential, wide), 4)]
    assert np.abs(np.array(ew) - e).max() < 1e-6


def test_quoted_jacobi_potential_spectrum_is_shifted(fig2):
    # numerical evidence for the missing a**2: every level sits a**2 low
    g = auto_grid(fig2)
    H = build_hamiltonian(fig2.mass, fig2.potential_uncorrected, g)
    e = np.array([p[0] for p in solve_spectrum(H, 4)])
    assert np.allclose(e, np.array([fig2.energy(m) for m in range(4)]) - 0.04, atol=1e-4)


def test_sampled_eigenvector_alignment(fig2):
    g = auto_grid(fig2)
    v = sampled_eigenvector(fig2, g, 2)
    assert v[np.argmax(np.abs(v))] * JacobiModel()._raw_wavefunction(2, g.x[np.argmax(np.abs(v))]) > 0
