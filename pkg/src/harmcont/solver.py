"""Newton solver for one point of a solution curve.

Given a problem and a prescribed k-th harmonic xi, find the remainder
U _|_ sin(k pi x/L) and the scalar mu_k so that u = xi sin(k pi x/L) + U
solves u'' + g(u) = mu_k sin(k pi x/L) + e(x).  The harmonic projection of
the equation fixes mu_k directly; the complementary projection is solved by
a damped Newton iteration on the sine coefficients of U.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import lapack, lu_factor, lu_solve

from .problems import ProblemSpec
from .spectral import Grid, SineSeries, eigenvalue, from_grid, multiplication_matrix, to_grid

__all__ = [
    "SolverSettings", "SolutionPoint", "residual", "solve_at_signature",
    "jacobian_check", "solution_series", "SINGULAR_CONDITION",
]

SINGULAR_CONDITION = 1e14


@dataclass(frozen=True)
class SolverSettings:
    newton_tol: float = 1e-10
    max_iter: int = 50
    min_damping: float = 2.0 ** -10

    def __post_init__(self):
        if self.newton_tol <= 0:
            raise ValueError("newton_tol must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")


@dataclass(frozen=True)
class SolutionPoint:
    """One point on a solution curve.

    failure is None for converged points; otherwise one of "max_iter",
    "singular_jacobian" (condition estimate above 1e14, the numerical
    signature of a violated g' sandwich) or "line_search_stalled".
    """

    xi: float
    mu: float
    U: SineSeries
    residual_norm: float
    newton_iters: int
    converged: bool
    failure: str | None = None


def solution_series(point: SolutionPoint, k: int) -> SineSeries:
    """u = xi * phi_k + U as a single sine series."""
    c = point.U.coeffs.copy()
    c[k - 1] = point.xi
    return SineSeries(point.U.L, c)


class _Workspace:
    """Per-(problem, N) arrays shared by residual and Jacobian assembly."""

    def __init__(self, p: ProblemSpec, n_modes: int):
        if n_modes < p.k:
            raise ValueError(f"need at least k={p.k} modes, got {n_modes}")
        if n_modes < p.e.n_modes:
            raise ValueError(
                f"forcing has {p.e.n_modes} modes; raise modes above that"
            )
        self.p = p
        self.N = n_modes
        self.M = 4 * n_modes
        self.grid = Grid(self.M, p.L)
        self.lam = np.array([eigenvalue(j, p.L) for j in range(1, self.N + 1)])
        self.e_pad = p.e.padded(self.N)
        self.reduced = np.array([j for j in range(self.N) if j != p.k - 1])
        # g(u) does not vanish at the Dirichlet ends unless g(0) = 0; its sine
        # tail then decays like 1/j and aliases into the computed modes.  Split
        # off the constant g(0), whose coefficients 2 g(0) (1 - (-1)^j)/(j pi)
        # are known exactly, and transform only the end-vanishing remainder.
        self.g0 = float(np.asarray(p.nonlinearity.g(0.0), dtype=float))
        j = np.arange(1, self.N + 1)
        self.const_coeffs = 2.0 * (1.0 - (-1.0) ** j) / (j * np.pi)

    def g_coefficients(self, g_vals: np.ndarray) -> np.ndarray:
        if self.g0 == 0.0:
            return from_grid(g_vals, self.p.L, self.N).coeffs
        tilted = from_grid(g_vals - self.g0, self.p.L, self.N).coeffs
        return tilted + self.g0 * self.const_coeffs

    def full_coeffs(self, xi: float, U: SineSeries) -> np.ndarray:
        c = U.padded(self.N)
        c[self.p.k - 1] = xi
        return c

    def residual_mu(self, xi: float, U: SineSeries):
        """Projected residual coefficients (k-th slot zero) and mu."""
        c = self.full_coeffs(xi, U)
        u_vals = to_grid(SineSeries(self.p.L, c), self.grid)
        g_vals = np.asarray(self.p.nonlinearity.g(u_vals), dtype=float)
        g_coef = self.g_coefficients(g_vals)
        k = self.p.k
        mu = -self.lam[k - 1] * xi + g_coef[k - 1]
        R = -self.lam * c + g_coef - self.e_pad
        R[k - 1] = 0.0
        return R, mu, u_vals

    def jacobian(self, u_vals: np.ndarray) -> np.ndarray:
        """Dense reduced Jacobian d(residual)/dU on the non-k modes."""
        gp_vals = np.asarray(self.p.nonlinearity.g_prime(u_vals), dtype=float)
        J = multiplication_matrix(gp_vals, self.N)
        J[np.diag_indices(self.N)] -= self.lam
        return J[np.ix_(self.reduced, self.reduced)]


def _norm(p: ProblemSpec, coeffs: np.ndarray) -> float:
    return float(np.sqrt(p.L / 2.0 * np.dot(coeffs, coeffs)))


def residual(p: ProblemSpec, xi: float, U: SineSeries):
    """Projected residual R = P[u'' + g(u) - e] and the harmonic balance mu.

    R is a SineSeries with zero k-th coefficient; mu is fixed by the k-th
    sine coefficient of the equation, mu = -lambda_k xi + (2/L) int g(u) phi_k.
    """
    ws = _Workspace(p, U.n_modes)
    R, mu, _ = ws.residual_mu(xi, U)
    return SineSeries(p.L, R), mu


def solve_at_signature(p: ProblemSpec, xi: float, U0: SineSeries | None = None,
                       settings: SolverSettings | None = None,
                       n_modes: int = 64) -> SolutionPoint:
    """Damped Newton iteration for the curve point at prescribed xi.

    U0 is a warm start orthogonal to the driven harmonic (zero series if
    omitted); its mode count sets the spectral resolution unless it is None,
    in which case n_modes is used.  Non-convergence is reported in the
    returned point, never raised.
    """
    settings = settings or SolverSettings()
    if U0 is None:
        U0 = SineSeries.zero(p.L, n_modes)
    if p.k <= U0.n_modes and U0.coeffs[p.k - 1] != 0.0:
        raise ValueError("warm start must have zero coefficient on the driven harmonic")
    ws = _Workspace(p, U0.n_modes)
    red = ws.reduced

    U = U0.padded(ws.N)
    U[p.k - 1] = 0.0
    R, mu, u_vals = ws.residual_mu(xi, SineSeries(p.L, U))
    rnorm = _norm(p, R)
    iters = 0
    failure = None

    while rnorm >= settings.newton_tol and iters < settings.max_iter:
        J = ws.jacobian(u_vals)
        lu, piv = lu_factor(J, check_finite=False)
        anorm = np.linalg.norm(J, 1)
        rcond = lapack.dgecon(lu, anorm, norm="1")[0]
        if not np.isfinite(rcond) or rcond == 0 or 1.0 / rcond > SINGULAR_CONDITION:
            failure = "singular_jacobian"
            break
        delta = lu_solve((lu, piv), -R[red], check_finite=False)

        step = 1.0
        accepted = False
        while step >= settings.min_damping:
            U_try = U.copy()
            U_try[red] += step * delta
            R_try, mu_try, u_try = ws.residual_mu(xi, SineSeries(p.L, U_try))
            rnorm_try = _norm(p, R_try)
            if rnorm_try < rnorm:
                U, R, mu, u_vals, rnorm = U_try, R_try, mu_try, u_try, rnorm_try
                accepted = True
                break
            step *= 0.5
        iters += 1
        if not accepted:
            failure = "line_search_stalled"
            break

    converged = rnorm < settings.newton_tol and failure is None
    if not converged and failure is None:
        failure = "max_iter"
    Useries = SineSeries(p.L, np.where(np.arange(ws.N) == p.k - 1, 0.0, U))
    return SolutionPoint(xi=float(xi), mu=float(mu), U=Useries,
                         residual_norm=rnorm, newton_iters=iters,
                         converged=converged, failure=failure)


def jacobian_check(p: ProblemSpec, xi: float, U: SineSeries,
                   n_directions: int = 5, seed: int = 0) -> float:
    """Finite-difference validation of the assembled Jacobian.

    Compares J v against (R(U+hv) - R(U-hv)) / 2h for random directions v
    orthogonal to the driven harmonic; returns the worst relative error.
    """
    ws = _Workspace(p, U.n_modes)
    red = ws.reduced
    Uc = U.padded(ws.N)
    Uc[p.k - 1] = 0.0
    _, _, u_vals = ws.residual_mu(xi, SineSeries(p.L, Uc))
    J = ws.jacobian(u_vals)
    h = 1e-6 * (1.0 + _norm(p, Uc))
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n_directions):
        v = rng.standard_normal(red.size)
        v /= np.linalg.norm(v)
        Up, Um = Uc.copy(), Uc.copy()
        Up[red] += h * v
        Um[red] -= h * v
        Rp, _, _ = ws.residual_mu(xi, SineSeries(p.L, Up))
        Rm, _, _ = ws.residual_mu(xi, SineSeries(p.L, Um))
        fd = (Rp[red] - Rm[red]) / (2 * h)
        Jv = J @ v
        denom = max(np.linalg.norm(Jv), 1e-30)
        worst = max(worst, float(np.linalg.norm(Jv - fd) / denom))
    return worst
