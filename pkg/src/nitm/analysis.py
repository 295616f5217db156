"""Independent verification instruments.

The wall power series of the Blasius solution and the Rubel error bound
for boundary truncation. Both are checks on the solver, produced by
routes independent of the lambda-agreement machinery.
"""

import math
from dataclasses import dataclass

import numpy as np

from .models import BlasiusFamilyRhs
from .ode import GridConfig, SolutionTable, integrate
from .scaling import ScalingGroup, rescale

# nonzero powers of the wall series; every other coefficient through
# eta^13 vanishes, the next nonzero term is eta^14
SERIES_POWERS = (2, 5, 8, 11)

_ZERO_POWERS = (0, 1, 3, 4, 6, 7, 9, 10)


@dataclass(frozen=True)
class BlasiusSeries:
    """Wall expansion f = C2 eta^2 + C5 eta^5 + C8 eta^8 + C11 eta^11."""

    shear: float
    coefficients: tuple[float, float, float, float]

    def coefficient(self, power: int) -> float:
        """Series coefficient of eta**power, for power in 0..11."""
        if power in _ZERO_POWERS:
            return 0.0
        try:
            return self.coefficients[SERIES_POWERS.index(power)]
        except ValueError:
            raise ValueError(f"series is truncated past eta^11, got power {power}")


def series_coefficients(shear: float) -> BlasiusSeries:
    """Series coefficients in terms of the wall shear.

    C2 = shear/2, C5 = -shear^2/(2*5!), C8 = 11 shear^3/(4*8!),
    C11 = -375 shear^4/(8*11!).
    """
    if shear == 0.0 or not math.isfinite(shear):
        raise ValueError(f"shear must be finite and nonzero, got {shear}")
    return BlasiusSeries(shear, (
        shear / 2.0,
        -shear ** 2 / 240.0,
        11.0 * shear ** 3 / 161280.0,
        -375.0 * shear ** 4 / 319334400.0,
    ))


def series_eval(series: BlasiusSeries, eta: float) -> float:
    """Sum of the series through the eta^11 term."""
    c2, c5, c8, c11 = series.coefficients
    e3 = eta ** 3
    return eta * eta * (c2 + e3 * (c5 + e3 * (c8 + e3 * c11)))


def truncation_order(series: BlasiusSeries, table: SolutionTable,
                     window: tuple[float, float] = (0.3, 0.5)) -> float:
    """Fitted power of the series truncation error against a fine solve.

    Least-squares slope of log|f_numeric - f_series| versus log eta
    over the window; the first dropped term makes the theoretical
    answer 14. Nodes where the deviation is below 1e-14 are excluded
    as roundoff-dominated.
    """
    etas = table.etas()
    errs = np.abs(table.f - np.array([series_eval(series, e) for e in etas]))
    mask = (etas >= window[0]) & (etas <= window[1]) & (errs > 1e-14)
    if mask.sum() < 2:
        raise ValueError("window leaves too few usable nodes for the fit")
    slope = np.polyfit(np.log(etas[mask]), np.log(errs[mask]), 1)[0]
    return float(slope)


@dataclass(frozen=True)
class RubelBound:
    """Computable truncation-error bound M * fpp_M(M) / f_M(M)."""

    M: float
    fM_at_M: float
    fppM_at_M: float
    bound: float


@dataclass(frozen=True, eq=False)
class TruncatedSolution:
    """beta=1 problem solved on [0, M] with fp(M) = 1 enforced exactly."""

    t_star: float
    lam: float
    table: SolutionTable


def truncated_solution(M: float, nodes_per_unit: int = 1000,
                       tol: float = 1e-12, max_iter: int = 60) -> TruncatedSolution:
    """Truncated-boundary solution by the non-iterative method.

    The star boundary T solves T^2 fp*(T) = M^2 by secant iteration
    (each evaluation is one IVP solve); lambda = M/T then rescales the
    star table so the physical boundary lands on M with fp(M) = 1.
    The physical grid step is M/(M*nodes_per_unit), so solutions for
    M and 2M share their nodes on [0, M].
    """
    if M <= 0.0:
        raise ValueError(f"M must be positive, got {M}")
    n = round(M * nodes_per_unit)
    if n < 8:
        raise ValueError(f"grid too coarse for M = {M}")
    rhs = BlasiusFamilyRhs(1.0)
    target = M * M

    def residual(t: float) -> tuple[float, SolutionTable]:
        star = integrate(rhs, (0.0, 0.0, 1.0), GridConfig(eta_max=t, step=t / n))
        return t * t * star.fp_inf - target, star

    t0, t1 = 0.75 * M, 0.8 * M
    g0, _ = residual(t0)
    g1, star = residual(t1)
    for _ in range(max_iter):
        if abs(g1) <= tol * target:
            break
        if g1 == g0:
            raise ValueError("secant stalled while matching the truncated boundary")
        t0, t1 = t1, t1 - g1 * (t1 - t0) / (g1 - g0)
        g0 = g1
        g1, star = residual(t1)
    else:
        raise ValueError(f"no secant convergence for M = {M}")

    lam = M / t1
    # physical step lam * (T/n) equals M/n up to rounding, and fp(M) =
    # fp*(T)/lam^2 = 1 by the choice of T
    table = rescale(star, lam, ScalingGroup(delta=-1.0, d=1.0))
    return TruncatedSolution(t_star=t1, lam=lam, table=table)


def rubel_bound(table: SolutionTable) -> RubelBound:
    """Error bound for truncating the beta=1 problem at M = eta_max.

    The table must hold a truncated-boundary solution with fp(M)
    rescaled to 1 (as produced by truncated_solution); the bound is
    M * fpp(M) / f(M).
    """
    M = table.grid.eta_max
    fM = float(table.f[-1])
    fpM = float(table.fp[-1])
    fppM = float(table.fpp[-1])
    if abs(fpM - 1.0) > 1e-6:
        raise ValueError(f"table is not rescaled to fp(M) = 1, got fp = {fpM!r}")
    if fM <= 0.0:
        raise ValueError(f"f_M(M) must be positive, got {fM!r}")
    return RubelBound(M=M, fM_at_M=fM, fppM_at_M=fppM, bound=M * fppM / fM)


def series_deviation(eta_max: float = 0.5, step: float = 1e-4,
                     shear: float = 1.0) -> tuple[float, float]:
    """Max series-versus-solve deviation on (0, eta_max] and fitted order.

    Integrates the star IVP of the classic problem (shear plays the
    seeded second derivative) on a fine grid, compares it against the
    wall series for that shear, and fits the truncation order on the
    upper part of the window.
    """
    grid = GridConfig(eta_max=eta_max, step=step)
    star = integrate(BlasiusFamilyRhs(0.5), (0.0, 0.0, shear), grid)
    series = series_coefficients(shear)
    etas = star.etas()
    errs = np.abs(star.f - np.array([series_eval(series, e) for e in etas]))
    order = truncation_order(series, star, window=(0.6 * eta_max, eta_max))
    return float(errs.max()), order
