"""Closed-form large-xi predictions for the solution curves.

Two families: the principal curve of u'' + lambda_1 u + h(u) sin u = mu_1
phi_1 + e, where mu_1(xi) ~ (2 sqrt(2)/sqrt(pi |xi|)) sin(xi -+ pi/4) h(xi),
and the k-th curve of u'' + lambda_k u + sin u = mu_k phi_k + e, where the
same envelope appears with h == 1.  Both derive from the stationary-phase
evaluation of int f e^{i lambda g}; that evaluator is exposed directly.

The slowly-varying correction inside h's argument is dropped (h is evaluated
at xi itself), which shows up as a small phase error at moderate xi.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .spectral import SineSeries, eigenvalue, modal_linear_solve

PRINCIPAL_H = "principal-h"
HIGHER_K = "higher-k"


@dataclass(frozen=True)
class AsymptoticCurve:
    """A closed-form curve family evaluable for xi != 0."""

    kind: str
    k: int = 1
    L: float = 1.0
    h: Callable | None = None

    def __post_init__(self):
        if self.kind not in (PRINCIPAL_H, HIGHER_K):
            raise ValueError(f"unknown asymptotic family {self.kind!r}")
        if self.kind == PRINCIPAL_H and self.h is None:
            raise ValueError("principal-h family needs the amplitude function h")


def mu_asymptotic(a: AsymptoticCurve, xi):
    """Evaluate the curve formula at xi (scalar or array); xi = 0 is rejected."""
    xi_arr = np.asarray(xi, dtype=float)
    if np.any(xi_arr == 0.0):
        raise ValueError("the asymptotic formula is singular at xi = 0")
    phase = np.where(xi_arr > 0, xi_arr - np.pi / 4, xi_arr + np.pi / 4)
    envelope = 2.0 * np.sqrt(2.0 / (np.pi * np.abs(xi_arr)))
    out = envelope * np.sin(phase)
    if a.kind == PRINCIPAL_H:
        out = out * np.asarray(a.h(xi_arr), dtype=float)
    return out if out.ndim else float(out)


def envelope(a: AsymptoticCurve, xi):
    """Oscillation envelope |mu| <= envelope(xi) of the formula."""
    xi_arr = np.abs(np.asarray(xi, dtype=float))
    env = 2.0 * np.sqrt(2.0 / (np.pi * xi_arr))
    if a.kind == PRINCIPAL_H:
        env = env * np.abs(np.asarray(a.h(np.asarray(xi, dtype=float)), dtype=float))
    return env if env.ndim else float(env)


def for_catalog(name: str) -> AsymptoticCurve | None:
    """Asymptotic family matching a catalog problem, if any."""
    if name == "oscillatory-p512":
        return AsymptoticCurve(kind=PRINCIPAL_H, k=1, L=1.0,
                               h=lambda u: 5.0 * (np.asarray(u) ** 2 + 1) ** (5 / 12))
    if name == "resonance-k7":
        return AsymptoticCurve(kind=HIGHER_K, k=7, L=1.0)
    return None


def _derivative(fn, x, h):
    return (fn(x + h) - fn(x - h)) / (2 * h)


def _second_derivative(fn, x, h):
    """Centered second difference, Richardson-extrapolated in h.

    The extrapolation kills the h^2 truncation term, so genuinely degenerate
    points (g'' = 0) report ~0 instead of the stencil artifact 2h^2.
    """
    def stencil(step):
        return (fn(x + step) - 2 * fn(x) + fn(x - step)) / (step * step)

    return (4.0 * stencil(h / 2) - stencil(h)) / 3.0


def stationary_phase(f, g, lam: float, a: float, b: float,
                     x0: float | None = None) -> complex:
    """Leading term of int_a^b f(x) e^{i lam g(x)} dx for large lam.

    g must have a unique interior critical point x0 with g''(x0) != 0; x0 is
    located by bisection on g' when not supplied.  Returns
    e^{i [lam g(x0) +- pi/4]} sqrt(2 pi/(lam |g''(x0)|)) f(x0), the sign
    following the sign of g''(x0).  The dropped remainder is O(1/lam).
    """
    if not b > a:
        raise ValueError(f"empty interval [{a}, {b}]")
    width = b - a
    hd = 1e-6 * width
    if x0 is None:
        lo, hi = a + hd, b - hd
        glo, ghi = _derivative(g, lo, hd), _derivative(g, hi, hd)
        if glo == 0.0:
            x0 = lo
        elif ghi == 0.0:
            x0 = hi
        elif glo * ghi > 0:
            raise ValueError("no sign change of g' on the interval; "
                             "no interior critical point found")
        else:
            while hi - lo > 1e-12:
                mid = 0.5 * (lo + hi)
                gm = _derivative(g, mid, hd)
                if gm == 0.0:
                    break
                if gm * glo < 0:
                    hi = mid
                else:
                    lo, glo = mid, gm
                x0 = 0.5 * (lo + hi)
            x0 = 0.5 * (lo + hi)
    g2 = _second_derivative(g, x0, 1e-4 * width)
    if abs(g2) < 1e-8:
        raise ValueError(
            f"degenerate critical point: |g''({x0})| = {abs(g2):.2e} < 1e-8"
        )
    sign = 1.0 if g2 > 0 else -1.0
    amp = np.sqrt(2 * np.pi / (lam * abs(g2))) * f(x0)
    return complex(amp * np.exp(1j * (lam * g(x0) + sign * np.pi / 4)))


def universal_profile(e: SineSeries, xi: float) -> SineSeries:
    """Large-xi solution shape xi phi_1 + E for slowly growing perturbations.

    E is the unique solution of E'' + lambda_1 E = e with Dirichlet ends and
    E _|_ phi_1; it does not depend on the nonlinearity at all.
    """
    if e.n_modes >= 1 and e.coeffs[0] != 0.0:
        raise ValueError("e must be orthogonal to the principal harmonic")
    E = modal_linear_solve(e, eigenvalue(1, e.L), excluded=1)
    out = E.coeffs.copy()
    out[0] = xi
    return SineSeries(e.L, out)
