import math

import numpy as np
import pytest

from hirota_solitons import SpectralConfig, TailNotDecayed
from hirota_solitons.residuals import (
    ResidualWindow,
    StencilSpec,
    central_weights,
    conserved_mass,
    field_evaluator,
    first_flux_matrix,
    pde_residual,
    potential_matrix,
    second_flux_matrix,
    space_generator,
    time_generator,
    zero_curvature_residual,
)


def rand_fields(rng, n=3):
    return (
        rng.normal(size=n) + 1j * rng.normal(size=n),
        rng.normal(size=n) + 1j * rng.normal(size=n),
        rng.normal(size=n) + 1j * rng.normal(size=n),
    )


def test_central_weights_classic_values():
    _, w = central_weights(1, 2)
    assert np.allclose(w, [-0.5, 0.0, 0.5])
    _, w = central_weights(2, 2)
    assert np.allclose(w, [1.0, -2.0, 1.0])
    o, w = central_weights(1, 6)
    assert o[-1] == 3
    assert np.allclose(w, [-1 / 60, 3 / 20, -3 / 4, 0, 3 / 4, -3 / 20, 1 / 60])
    o, w = central_weights(3, 2)
    assert np.allclose(w, [-0.5, 1.0, 0.0, -1.0, 0.5])


def test_central_weights_exact_on_polynomials():
    for deriv in (1, 2, 3):
        for order in (2, 4, 6, 8):
            o, w = central_weights(deriv, order)
            # differentiate x^k exactly for k below the stencil's exactness
            for k in range(len(o)):
                vals = o.astype(float) ** k
                expect = math.factorial(deriv) if k == deriv else 0.0
                assert np.dot(w, vals) == pytest.approx(expect, abs=1e-8)


def test_potential_matrix_structure(rng):
    q, _, _ = rand_fields(rng)
    Q = potential_matrix(q)
    assert np.all(Q.conj().T == -Q)
    assert np.trace(Q) == 0
    assert np.all(potential_matrix(np.zeros(3)) == 0)
    assert np.allclose(potential_matrix([1.0]), [[0, 1], [-1, 0]])


def test_first_flux_matrix_structure(rng):
    q, qx, _ = rand_fields(rng)
    Q1 = first_flux_matrix(q, qx)
    assert np.allclose(Q1.conj().T, Q1)
    assert np.all(first_flux_matrix(np.zeros(2), np.zeros(2)) == 0)
    # N=1, q=1, qx=0: diag(1, -1)
    assert np.allclose(first_flux_matrix([1.0], [0.0]), np.diag([1.0, -1.0]))


def test_second_flux_matrix_structure(rng):
    q, qx, qxx = rand_fields(rng)
    Q2 = second_flux_matrix(q, qx, qxx)
    assert np.max(np.abs(Q2.conj().T + Q2)) < 1e-12
    # N=1, q=1, derivatives zero: first row (0, 2), first column (0, -2)
    m = second_flux_matrix([1.0], [0.0], [0.0])
    assert np.allclose(m, [[0, 2], [-2, 0]])


def test_generators_zero_field_commute():
    q = np.zeros(3)
    lam = 1.3 + 0.4j
    U = space_generator(q, lam)
    V = time_generator(q, np.zeros(3), np.zeros(3), lam, 1.0)
    assert np.max(np.abs(U @ V - V @ U)) == 0.0


def test_pde_residual_zero_field():
    rep = pde_residual(lambda x, t: np.zeros(2, dtype=complex), 1.0,
                       ResidualWindow(-1, 1, -1, 1, 3, 3))
    assert rep.max_abs == 0.0
    assert rep.rms == 0.0


def test_pde_residual_one_soliton(fig1_config):
    rep = pde_residual(
        field_evaluator(fig1_config), fig1_config.epsilon,
        ResidualWindow(-10, 10, -2, 2, 9, 5), StencilSpec(6, 1e-2, 1e-2)
    )
    assert rep.max_abs <= 1e-6
    assert rep.rms <= rep.max_abs
    assert rep.per_component.shape == (3,)


def test_pde_residual_detects_corruption(fig1_config):
    fn = field_evaluator(fig1_config)

    def corrupted(x, t):
        q = fn(x, t).copy()
        q[0] *= 1.01
        return q

    rep = pde_residual(corrupted, fig1_config.epsilon,
                       ResidualWindow(-3, 3, -0.5, 0.5, 5, 3), StencilSpec(6, 1e-2, 1e-2))
    assert rep.max_abs > 1e-3


def test_pde_residual_convergence_order(fig1_config):
    # truncation should shrink like h^order; use order 4 and larger h so the
    # truncation floor stays far above roundoff
    fn = field_evaluator(fig1_config)
    window = ResidualWindow(-2, 2, -0.5, 0.5, 5, 3)
    r1 = pde_residual(fn, 1.0, window, StencilSpec(4, 0.2, 0.2)).max_abs
    r2 = pde_residual(fn, 1.0, window, StencilSpec(4, 0.1, 0.1)).max_abs
    r3 = pde_residual(fn, 1.0, window, StencilSpec(4, 0.05, 0.05)).max_abs
    order12 = math.log2(r1 / r2)
    order23 = math.log2(r2 / r3)
    assert abs(order12 - 4) <= 0.5 or abs(order23 - 4) <= 0.5


def test_zero_curvature_zero_field():
    # vacuum generators are constant and diagonal; only the finite-difference
    # weights' roundoff (weights sum to ~1 ulp, not exactly 0) survives
    cfg = SpectralConfig(2, 1.0, ())
    assert zero_curvature_residual(cfg, 1.0 + 0.5j, 0.0, 0.0) <= 1e-13


def test_zero_curvature_one_soliton(fig1_config):
    r = zero_curvature_residual(fig1_config, 1 + 0.3j, 0.7, 0.4, StencilSpec(6, 1e-2, 1e-2))
    assert r <= 1e-5


def test_zero_curvature_many_lambdas(fig1_config, rng):
    for _ in range(5):
        lam = complex(rng.uniform(-2, 2), rng.uniform(-1, 1))
        r = zero_curvature_residual(fig1_config, lam, 0.3, -0.2, StencilSpec(6, 1e-2, 1e-2))
        assert r <= 1e-5


def test_zero_curvature_convergence(fig1_config):
    lam = 0.8 + 0.2j
    r1 = zero_curvature_residual(fig1_config, lam, 0.5, 0.3, StencilSpec(2, 0.1, 0.1))
    r2 = zero_curvature_residual(fig1_config, lam, 0.5, 0.3, StencilSpec(2, 0.05, 0.05))
    assert math.log2(r1 / r2) >= 1.0  # observed order >= stencil order - 1


def test_conserved_mass_zero_field():
    assert conserved_mass(lambda x, t: np.zeros(3, dtype=complex), 0.0, (-10, 10), 101) == 0.0


def test_conserved_mass_one_soliton_analytic(fig1_config):
    # analytic value 4*b with b = 0.5
    m = conserved_mass(field_evaluator(fig1_config), 0.0, (-40, 40), 4001)
    assert m == pytest.approx(2.0, abs=1e-8)


def test_conserved_mass_time_invariant(two_soliton_config):
    fn = field_evaluator(two_soliton_config)
    masses = [conserved_mass(fn, t, (-60, 60), 8001) for t in (-1.0, 0.0, 1.0)]
    mean = sum(masses) / 3
    for m in masses:
        assert abs(m - mean) / mean <= 1e-8


def test_conserved_mass_tail_guard(fig1_config):
    with pytest.raises(TailNotDecayed):
        conserved_mass(field_evaluator(fig1_config), 0.0, (-3, 3), 101)


def test_stencil_spec_validation():
    with pytest.raises(ValueError):
        StencilSpec(order=3)
    with pytest.raises(ValueError):
        StencilSpec(order=6, h_x=0.0)
    with pytest.raises(ValueError):
        conserved_mass(lambda x, t: np.zeros(1), 0.0, (-1, 1), 100)
