"""Sine-basis representation of functions on (0, L) with Dirichlet ends.

A function is stored as coefficients a_1..a_N of sum_j a_j sin(j pi x / L);
the plain-sine convention is used throughout, so harmonics are extracted with
the (2/L) projection factor.  Grid transforms go through the type-I discrete
sine transform on the interior nodes x_m = m L / (M+1).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.fft import dst


def eigenvalue(k: int, L: float) -> float:
    """k-th Dirichlet eigenvalue of -u'' on (0, L): (k pi / L)^2."""
    if k < 1 or int(k) != k:
        raise ValueError(f"harmonic index must be a positive integer, got {k}")
    if L <= 0:
        raise ValueError(f"interval length must be positive, got {L}")
    return (k * np.pi / L) ** 2


@dataclass(frozen=True)
class SineSeries:
    """Coefficients of sum_j a_j sin(j pi x / L) on (0, L)."""

    L: float
    coeffs: np.ndarray

    def __post_init__(self):
        if self.L <= 0:
            raise ValueError(f"interval length must be positive, got {self.L}")
        c = np.atleast_1d(np.asarray(self.coeffs, dtype=float))
        if c.ndim != 1 or c.size < 1:
            raise ValueError("coefficients must be a non-empty 1-D array")
        if not np.all(np.isfinite(c)):
            raise ValueError("coefficients must be finite")
        object.__setattr__(self, "coeffs", c)

    @property
    def n_modes(self) -> int:
        return self.coeffs.size

    @classmethod
    def zero(cls, L: float, n_modes: int) -> "SineSeries":
        return cls(L, np.zeros(n_modes))

    @classmethod
    def from_pairs(cls, L: float, pairs, n_modes: int | None = None) -> "SineSeries":
        """Build from (mode, coefficient) pairs; modes are 1-based."""
        pairs = list(pairs)
        top = max((m for m, _ in pairs), default=1)
        n = max(n_modes or 0, top, 1)
        c = np.zeros(n)
        for m, a in pairs:
            if m < 1 or int(m) != m:
                raise ValueError(f"mode index must be a positive integer, got {m}")
            c[int(m) - 1] += a
        return cls(L, c)

    def eval(self, x) -> np.ndarray:
        """Evaluate the represented function at arbitrary points (direct sum)."""
        x = np.asarray(x, dtype=float)
        j = np.arange(1, self.n_modes + 1)
        return np.sin(np.multiply.outer(x, j) * (np.pi / self.L)) @ self.coeffs

    def padded(self, n_modes: int) -> np.ndarray:
        """Coefficient vector zero-padded (or identical) to n_modes entries."""
        if n_modes < self.n_modes:
            raise ValueError(
                f"cannot shrink a {self.n_modes}-mode series to {n_modes} modes"
            )
        out = np.zeros(n_modes)
        out[: self.n_modes] = self.coeffs
        return out

    def l2_norm(self) -> float:
        """L2 norm of the represented function: sqrt(L/2 * sum a_j^2)."""
        return float(np.sqrt(self.L / 2.0 * np.dot(self.coeffs, self.coeffs)))


@dataclass(frozen=True)
class Grid:
    """Interior collocation nodes x_m = m L/(M+1), m = 1..M."""

    M: int
    L: float
    nodes: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if self.M < 2:
            raise ValueError(f"grid needs at least 2 nodes, got {self.M}")
        if self.L <= 0:
            raise ValueError(f"interval length must be positive, got {self.L}")
        m = np.arange(1, self.M + 1, dtype=float)
        object.__setattr__(self, "nodes", m * self.L / (self.M + 1))


def to_grid(s: SineSeries, grid: Grid) -> np.ndarray:
    """Values of the represented function at the grid nodes (exact via DST-I)."""
    if grid.M < 2 * s.n_modes:
        raise ValueError(
            f"grid too coarse: M={grid.M} nodes for N={s.n_modes} modes (need M >= 2N)"
        )
    if not np.isclose(grid.L, s.L):
        raise ValueError(f"grid length {grid.L} does not match series length {s.L}")
    return dst(s.padded(grid.M), type=1) / 2.0


def from_grid(values: np.ndarray, L: float, n_modes: int) -> SineSeries:
    """Sine coefficients a_j = (2/L) int f sin(j pi x/L) dx from node values.

    The quadrature is the discrete sine transform on the node set; the round
    trip from_grid(to_grid(s)) is exact to roundoff when s has <= n_modes
    modes and the grid satisfies M >= 2 n_modes.
    """
    values = np.asarray(values, dtype=float)
    if values.ndim != 1:
        raise ValueError("grid values must be a 1-D array")
    M = values.size
    if M < 2 * n_modes:
        raise ValueError(
            f"dimension mismatch: {M} grid values cannot resolve {n_modes} modes"
        )
    coeffs = dst(values, type=1)[:n_modes] / (M + 1)
    return SineSeries(L, coeffs)


def project_out(s: SineSeries, k: int) -> tuple[float, SineSeries]:
    """Split s into (k-th harmonic, remainder orthogonal to sin(k pi x/L))."""
    if k < 1 or k > s.n_modes:
        raise ValueError(f"harmonic {k} out of range for a {s.n_modes}-mode series")
    xi = float(s.coeffs[k - 1])
    rem = s.coeffs.copy()
    rem[k - 1] = 0.0
    return xi, SineSeries(s.L, rem)


def modal_linear_solve(rhs: SineSeries, shift: float, excluded: int) -> SineSeries:
    """Solve w'' + shift*w = rhs with w _|_ the excluded harmonic.

    Mode-wise w_j = r_j / (shift - lambda_j) for j != excluded; the excluded
    coefficient of the right-hand side must vanish and the shift must stay
    clear of every other eigenvalue carried by the rhs.
    """
    N = rhs.n_modes
    if excluded < 1 or excluded > N:
        raise ValueError(f"excluded harmonic {excluded} out of range for N={N}")
    if rhs.coeffs[excluded - 1] != 0.0:
        raise ValueError(
            f"rhs must have zero coefficient on the excluded harmonic {excluded}"
        )
    lam = np.array([eigenvalue(j, rhs.L) for j in range(1, N + 1)])
    denom = shift - lam
    w = np.zeros(N)
    for j in range(N):
        if j == excluded - 1:
            continue
        if rhs.coeffs[j] != 0.0 and abs(denom[j]) < 1e-9 * lam[j]:
            raise ValueError(
                f"resonance: shift {shift} coincides with eigenvalue {lam[j]} (mode {j + 1})"
            )
        if rhs.coeffs[j] != 0.0:
            w[j] = rhs.coeffs[j] / denom[j]
    return SineSeries(rhs.L, w)


@lru_cache(maxsize=16)
def _sine_matrix(M: int, N: int) -> np.ndarray:
    """B[m-1, j-1] = sin(j pi m/(M+1)); maps N coefficients to M node values."""
    m = np.arange(1, M + 1)
    j = np.arange(1, N + 1)
    B = np.sin(np.pi * np.outer(m, j) / (M + 1))
    B.setflags(write=False)
    return B


def multiplication_matrix(weights: np.ndarray, n_modes: int) -> np.ndarray:
    """Sine-coefficient matrix of f -> w(x) f(x), w given by grid node values.

    Entry (i, j) is the i-th sine coefficient of w(x) sin(j pi x/L), assembled
    by the same DST quadrature as from_grid.
    """
    weights = np.asarray(weights, dtype=float)
    M = weights.size
    if M < 2 * n_modes:
        raise ValueError(f"{M} nodes cannot resolve {n_modes} modes")
    B = _sine_matrix(M, n_modes)
    return (2.0 / (M + 1)) * (B.T @ (weights[:, None] * B))
