"""March the harmonic parameter over a range and analyze the resulting curve.

The k-th harmonic xi is a global graph parameter for the curve, so plain
fixed-step marching with warm starts suffices; a failed node is retried with
halved sub-steps before being recorded as a gap.  Only the branch reachable
by warm-started marching is followed; when the g' sandwich fails, other
branches may exist and are not searched for.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .problems import ProblemSpec
from .solver import SolutionPoint, SolverSettings, solve_at_signature
from .spectral import SineSeries, eigenvalue


def xi_nodes(xi_min: float, xi_max: float, step: float) -> np.ndarray:
    """Marching nodes xi_min, xi_min + step, ... (last node <= xi_max + tiny)."""
    if not xi_min < xi_max:
        raise ValueError(f"empty range [{xi_min}, {xi_max}]")
    if step <= 0:
        raise ValueError(f"step must be positive, got {step}")
    n = int(np.floor((xi_max - xi_min) / step + 1e-9))
    return xi_min + step * np.arange(n + 1)


@dataclass(frozen=True)
class Curve:
    """Ordered solution points over a xi-range, plus gap annotations."""

    problem: ProblemSpec
    points: list[SolutionPoint]
    step: float
    gaps: list[SolutionPoint] = field(default_factory=list)

    def xi(self) -> np.ndarray:
        return np.array([pt.xi for pt in self.points])

    def mu(self) -> np.ndarray:
        return np.array([pt.mu for pt in self.points])

    def all_rows(self) -> list[SolutionPoint]:
        """Converged points and gap records merged in xi order (for output)."""
        return sorted([*self.points, *self.gaps], key=lambda pt: pt.xi)


def follow_curve(p: ProblemSpec, xi_min: float, xi_max: float, step: float,
                 settings: SolverSettings | None = None,
                 n_modes: int = 64, max_halvings: int = 6) -> Curve:
    """Assemble the solution curve on a uniform xi grid.

    Each node is solved warm-started from the previous converged remainder
    (zero series at the first node).  A failed node is bridged from the last
    converged point with sub-steps step/2, step/4, ... step/2^max_halvings;
    if every depth fails the node is recorded as a gap and marching moves on.
    An entirely unsolvable range yields an empty curve with diagnostics.
    """
    settings = settings or SolverSettings()
    nodes = xi_nodes(xi_min, xi_max, step)
    points: list[SolutionPoint] = []
    gaps: list[SolutionPoint] = []
    warm = SineSeries.zero(p.L, n_modes)
    warm_xi = None

    for target in nodes:
        pt = solve_at_signature(p, target, warm, settings)
        if not pt.converged and warm_xi is not None:
            for depth in range(1, max_halvings + 1):
                sub = 2 ** depth
                bridge = warm
                ok = True
                for j in range(1, sub + 1):
                    # last sub-step lands on the node exactly, not within an ulp
                    xi_j = target if j == sub else warm_xi + (target - warm_xi) * j / sub
                    bp = solve_at_signature(p, xi_j, bridge, settings)
                    if not bp.converged:
                        ok = False
                        break
                    bridge = bp.U
                if ok:
                    pt = bp
                    break
        if pt.converged:
            points.append(pt)
            warm, warm_xi = pt.U, pt.xi
        else:
            gaps.append(pt)
    return Curve(problem=p, points=points, step=step, gaps=gaps)


def follow_many(tasks, jobs: int = 2) -> list[Curve]:
    """Run independent follow_curve calls in parallel.

    tasks is an iterable of dicts of follow_curve keyword arguments (with the
    problem under "p").  Runs share no mutable state.
    """
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(follow_curve, **task) for task in tasks]
        return [f.result() for f in futures]


@dataclass(frozen=True)
class CurveAnalysis:
    extrema: list[tuple[float, float, str]]
    global_min: tuple[float, float] | None
    sign_changes: list[float]


def _parabolic_vertex(x, y):
    """Vertex of the parabola through three samples; falls back to the middle."""
    x0, x1, x2 = x
    y0, y1, y2 = y
    denom = (x0 - x1) * (x0 - x2) * (x1 - x2)
    if denom == 0:
        return x1, y1
    a = (x2 * (y1 - y0) + x1 * (y0 - y2) + x0 * (y2 - y1)) / denom
    b = (x2 * x2 * (y0 - y1) + x1 * x1 * (y2 - y0) + x0 * x0 * (y1 - y2)) / denom
    if a == 0:
        return x1, y1
    xv = -b / (2 * a)
    if not min(x0, x2) <= xv <= max(x0, x2):
        return x1, y1
    c = y1 - a * x1 * x1 - b * x1
    return xv, a * xv * xv + b * xv + c


def analyze(c: Curve) -> CurveAnalysis:
    """Locate interior extrema, the sampled global minimum, and zero crossings.

    Extrema come from sign changes of centered-difference slopes, refined by
    the parabola through the three nearest samples; zero crossings from sign
    changes of mu with linear interpolation.
    """
    if len(c.points) < 3:
        raise ValueError("analysis needs at least 3 converged points")
    xi = c.xi()
    mu = c.mu()

    slopes = (mu[2:] - mu[:-2]) / (xi[2:] - xi[:-2])  # slope at node i+1
    extrema = []
    for i in range(len(slopes) - 1):
        s0, s1 = slopes[i], slopes[i + 1]
        if s0 == 0 and s1 == 0:
            continue
        if s0 * s1 < 0 or (s0 != 0 and s1 == 0):
            node = i + 1 if abs(s0) <= abs(s1) else i + 2
            node = min(max(node, 1), len(xi) - 2)
            xv, yv = _parabolic_vertex(xi[node - 1:node + 2], mu[node - 1:node + 2])
            kind = "min" if s0 < s1 else "max"
            if not extrema or abs(extrema[-1][0] - xv) > 1e-12:
                extrema.append((float(xv), float(yv), kind))

    idx = int(np.argmin(mu))
    if 0 < idx < len(mu) - 1:
        gx, gy = _parabolic_vertex(xi[idx - 1:idx + 2], mu[idx - 1:idx + 2])
    else:
        gx, gy = xi[idx], mu[idx]
    global_min = (float(gx), float(gy))

    sign_changes = []
    for i in range(len(mu) - 1):
        if mu[i] == 0.0:
            if i == 0 or mu[i - 1] != 0.0:
                sign_changes.append(float(xi[i]))
        elif mu[i] * mu[i + 1] < 0:
            t = mu[i] / (mu[i] - mu[i + 1])
            sign_changes.append(float(xi[i] + t * (xi[i + 1] - xi[i])))
    if len(mu) and mu[-1] == 0.0 and (len(mu) == 1 or mu[-2] != 0.0):
        sign_changes.append(float(xi[-1]))

    return CurveAnalysis(extrema=extrema, global_min=global_min,
                         sign_changes=sorted(sign_changes))


def count_solutions(c: Curve, mu_star: float) -> int:
    """Number of crossings of mu(xi) = mu_star on the sampled range.

    Sign changes between consecutive converged samples; exact hits at nodes
    (tangencies included) are counted once per contact.
    """
    if len(c.points) < 3:
        raise ValueError("counting needs at least 3 converged points")
    v = c.mu() - mu_star
    count = 0
    prev = 0.0  # sign of the last nonzero sample, 0 before any
    prev_was_zero = False
    for value in v:
        if value == 0.0:
            if not prev_was_zero:
                count += 1
            prev_was_zero = True
            prev = 0.0
            continue
        s = 1.0 if value > 0 else -1.0
        if prev != 0.0 and s != prev:
            count += 1
        prev = s
        prev_was_zero = False
    return count


@dataclass(frozen=True)
class ShapeEnd:
    """Remainder-to-harmonic ratio r = ||U||/|xi| at one end of the curve."""

    xi_far: float
    xi_near: float
    r_far: float
    r_near: float
    weighted_r_far: float
    weighted_r_near: float

    @property
    def decayed(self) -> bool:
        return self.r_far < self.r_near

    @property
    def weighted_decayed(self) -> bool:
        return self.weighted_r_far < self.weighted_r_near


@dataclass(frozen=True)
class ShapeReport:
    positive: ShapeEnd | None
    negative: ShapeEnd | None

    def summary(self) -> str:
        lines = []
        for label, end in (("xi > 0", self.positive), ("xi < 0", self.negative)):
            if end is None:
                lines.append(f"{label}: not sampled far enough")
                continue
            lines.append(
                f"{label}: r({end.xi_far:g}) = {end.r_far:.6g} vs r({end.xi_near:g}) = "
                f"{end.r_near:.6g} -> {'decays' if end.decayed else 'NO decay'}; "
                f"weighted {'decays' if end.weighted_decayed else 'NO decay'}"
            )
        return "\n".join(lines)


def _ratio_at(c: Curve, xi_target: float):
    xi = c.xi()
    idx = int(np.argmin(np.abs(xi - xi_target)))
    pt = c.points[idx]
    lam = np.array([eigenvalue(j, pt.U.L) for j in range(1, pt.U.n_modes + 1)])
    w = np.sqrt(pt.U.L / 2.0 * np.sum((lam * pt.U.coeffs) ** 2))
    return pt.xi, pt.U.l2_norm() / abs(pt.xi), float(w) / abs(pt.xi)


def shape_check(c: Curve) -> ShapeReport:
    """Check that the solution shape approaches the pure harmonic.

    Reports r(xi) = ||U||/|xi| at the extreme sampled xi against the value at
    half that xi, per curve end reaching |xi| >= 20; also in the H2-style
    weighted norm (lambda_j^2-weighted coefficients).
    """
    xi = c.xi()
    ends = {}
    for label, side in (("positive", xi[xi > 0]), ("negative", xi[xi < 0])):
        ends[label] = None
        if side.size == 0:
            continue
        far = side[np.argmax(np.abs(side))]
        if abs(far) < 20:
            continue
        xf, rf, wf = _ratio_at(c, far)
        xn, rn, wn = _ratio_at(c, far / 2)
        ends[label] = ShapeEnd(xi_far=xf, xi_near=xn, r_far=rf, r_near=rn,
                               weighted_r_far=wf, weighted_r_near=wn)
    return ShapeReport(positive=ends["positive"], negative=ends["negative"])
