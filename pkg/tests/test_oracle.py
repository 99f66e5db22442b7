import numpy as np
import pytest

from harmcont.oracle import oscillatory_quadrature, shoot
from harmcont.problems import Nonlinearity, ProblemSpec, catalog
from harmcont.solver import solution_series, solve_at_signature
from harmcont.spectral import SineSeries

PI2 = np.pi ** 2


def zero_fn(u):
    return np.zeros_like(np.asarray(u, dtype=float))


def linear_spec(e_pairs=(), n=8):
    nl = Nonlinearity(g=zero_fn, g_prime=zero_fn, descriptor="0")
    e = SineSeries.from_pairs(1.0, e_pairs, n_modes=n) if e_pairs else SineSeries.zero(1.0, n)
    return ProblemSpec(L=1.0, k=1, e=e, nonlinearity=nl)


class TestShootingLinear:
    def test_pure_harmonic_closed_form(self):
        res = shoot(linear_spec(), 1.0, n_steps=2000)
        assert res.converged
        assert res.slope == pytest.approx(np.pi, abs=1e-9)
        assert res.mu == pytest.approx(-PI2, abs=1e-8)
        exact = np.sin(np.pi * res.nodes)
        assert np.max(np.abs(res.grid_solution - exact)) < 1e-9

    def test_rk4_order_via_boundary_defect(self):
        # with the exact (slope, mu) frozen, the defect is pure RK4 error
        p = linear_spec(e_pairs=[(2, 1.0)])
        s_exact = np.pi - 1 / (2 * np.pi)  # u = sin(pi x) - sin(2 pi x)/(4 pi^2)
        defects = {}
        for n in (100, 200):
            res = shoot(p, 1.0, n_steps=n, s0=s_exact, mu0=-PI2, max_iter=0)
            defects[n] = res.boundary_defect
        ratio = defects[100] / defects[200]
        assert 12.0 < ratio < 20.0

    def test_k_limit(self):
        nl = Nonlinearity(g=zero_fn, g_prime=zero_fn, descriptor="0")
        p = ProblemSpec(L=1.0, k=9, e=SineSeries.zero(1.0, 9), nonlinearity=nl)
        with pytest.raises(ValueError, match="k <= 8"):
            shoot(p, 1.0)


class TestShootingCrossValidation:
    def test_cubic_matches_spectral(self):
        p = catalog("cubic(pi^2/2)")
        pt = solve_at_signature(p, 0.0, n_modes=64)
        res = shoot(p, 0.0, n_steps=4000)
        assert res.converged and pt.converged
        u_spec = solution_series(pt, 1).eval(res.nodes)
        assert np.max(np.abs(u_spec - res.grid_solution)) < 1e-6
        assert abs(pt.mu - res.mu) < 1e-8

    def test_root_selection_follows_warm_start(self):
        # perturbing the warm start slightly still lands on the same root
        p = catalog("resonant-bounded")
        a = shoot(p, 3.0, n_steps=3000)
        b = shoot(p, 3.0, n_steps=3000, s0=3.0 * np.pi * 1.05, mu0=a.mu + 0.01)
        assert a.converged and b.converged
        assert a.mu == pytest.approx(b.mu, abs=1e-9)


class TestOscillatoryQuadrature:
    def test_lambda_zero_unit_integrand(self):
        one = lambda x: np.ones_like(np.asarray(x, dtype=float)) if np.ndim(x) else 1.0
        sq = lambda x: np.asarray(x, dtype=float) ** 2
        assert oscillatory_quadrature(one, sq, 0.0, 0.0, 1.0) == pytest.approx(1.0, abs=1e-12)

    def test_fresnel_self_consistency(self):
        one = lambda x: 1.0
        sq = lambda x: x * x
        loose = oscillatory_quadrature(one, sq, 400.0, -1.0, 1.0, abs_tol=1e-8)
        tight = oscillatory_quadrature(one, sq, 400.0, -1.0, 1.0, abs_tol=1e-11)
        assert abs(loose - tight) < 1e-8

    def test_sine_phase_self_consistency(self):
        f = lambda x: np.sin(np.pi * x)
        loose = oscillatory_quadrature(f, f, 40.0, 0.0, 1.0, abs_tol=1e-8)
        tight = oscillatory_quadrature(f, f, 40.0, 0.0, 1.0, abs_tol=1e-11)
        assert abs(loose - tight) < 1e-8

    def test_linear_phase_closed_form(self):
        # int_0^1 e^{i lam x} dx = (e^{i lam} - 1) / (i lam)
        one = lambda x: 1.0
        ident = lambda x: x
        lam = 37.0
        got = oscillatory_quadrature(one, ident, lam, 0.0, 1.0)
        expected = (np.exp(1j * lam) - 1.0) / (1j * lam)
        assert got == pytest.approx(expected, abs=1e-10)

    def test_empty_interval_rejected(self):
        with pytest.raises(ValueError):
            oscillatory_quadrature(lambda x: 1.0, lambda x: x, 1.0, 1.0, 1.0)
