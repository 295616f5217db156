"""Fixed-step classical RK4 integration on uniform grids.

Fixed stepping is deliberate: the lambda-agreement test and the table
reproductions depend on deterministic grids, so no adaptive control is
offered. Grid nodes are computed as i*step (never by accumulation) to
keep the last node exactly on the requested boundary.
"""

import math
from dataclasses import dataclass
from typing import Callable, Iterator, NamedTuple

import numpy as np

from . import kernels
from .errors import BlowupError

BLOWUP_LIMIT = kernels.BLOWUP_LIMIT

DEFAULT_STEP = 0.01


class State3(NamedTuple):
    """State of the similarity ODE written as a first-order system."""

    f: float
    fp: float
    fpp: float


@dataclass(frozen=True)
class GridConfig:
    """Uniform grid on [0, eta_max] with eta_max an integer multiple of step."""

    eta_max: float
    step: float = DEFAULT_STEP

    def __post_init__(self):
        if not (math.isfinite(self.step) and self.step > 0.0):
            raise ValueError(f"step must be positive, got {self.step}")
        if not (math.isfinite(self.eta_max) and self.eta_max >= self.step):
            raise ValueError(f"eta_max must be at least one step, got {self.eta_max}")
        n = round(self.eta_max / self.step)
        # tolerate float representation of step*n, not genuine misalignment
        if abs(n * self.step - self.eta_max) > 1e-9 * max(1.0, self.eta_max):
            raise ValueError(
                f"eta_max = {self.eta_max} is not an integer multiple of step = {self.step}"
            )

    @property
    def nodes(self) -> int:
        return round(self.eta_max / self.step) + 1

    def etas(self) -> np.ndarray:
        """Node coordinates, exactly i*step for node i."""
        return np.arange(self.nodes) * self.step


class _StateView:
    """Sequence view presenting table columns as State3 tuples."""

    __slots__ = ("_table",)

    def __init__(self, table: "SolutionTable"):
        self._table = table

    def __len__(self) -> int:
        return self._table.grid.nodes

    def __getitem__(self, i):
        if isinstance(i, slice):
            return [self[j] for j in range(*i.indices(len(self)))]
        t = self._table
        return State3(float(t.f[i]), float(t.fp[i]), float(t.fpp[i]))

    def __iter__(self) -> Iterator[State3]:
        t = self._table
        for f, fp, fpp in zip(t.f, t.fp, t.fpp):
            yield State3(float(f), float(fp), float(fpp))


@dataclass(frozen=True, eq=False)
class SolutionTable:
    """Dense solution on a uniform grid, one row per node."""

    grid: GridConfig
    f: np.ndarray
    fp: np.ndarray
    fpp: np.ndarray

    @property
    def states(self) -> _StateView:
        return _StateView(self)

    @property
    def fp_inf(self) -> float:
        """Last-node fp, the finite-boundary estimate of the asymptote."""
        return float(self.fp[-1])

    def state(self, i: int) -> State3:
        return State3(float(self.f[i]), float(self.fp[i]), float(self.fpp[i]))

    def etas(self) -> np.ndarray:
        return self.grid.etas()


Rhs = Callable[[float, State3], tuple]


def rk4_step(rhs: Rhs, eta: float, state: State3, h: float) -> State3:
    """One classical four-stage RK4 update of size h.

    Mirrors the kernel arithmetic exactly, so a single generic step
    agrees bit for bit with the specialized Blasius-family fill.
    """
    if h <= 0.0:
        raise ValueError(f"step must be positive, got {h}")
    cf, cp, cq = state
    h2 = 0.5 * h
    h6 = h / 6.0
    k1f, k1p, k1q = rhs(eta, State3(cf, cp, cq))
    tf = cf + h2 * k1f
    tp = cp + h2 * k1p
    tq = cq + h2 * k1q
    k2f, k2p, k2q = rhs(eta + h2, State3(tf, tp, tq))
    tf = cf + h2 * k2f
    tp = cp + h2 * k2p
    tq = cq + h2 * k2q
    k3f, k3p, k3q = rhs(eta + h2, State3(tf, tp, tq))
    tf = cf + h * k3f
    tp = cp + h * k3p
    tq = cq + h * k3q
    k4f, k4p, k4q = rhs(eta + h, State3(tf, tp, tq))
    nf = cf + h6 * (k1f + 2.0 * (k2f + k3f) + k4f)
    np_ = cp + h6 * (k1p + 2.0 * (k2p + k3p) + k4p)
    nq = cq + h6 * (k1q + 2.0 * (k2q + k3q) + k4q)
    if not (abs(nf) <= BLOWUP_LIMIT and abs(np_) <= BLOWUP_LIMIT
            and abs(nq) <= BLOWUP_LIMIT):
        raise BlowupError(eta + h)
    return State3(nf, np_, nq)


def integrate(rhs: Rhs, initial, grid: GridConfig) -> SolutionTable:
    """Integrate rhs from eta=0 to grid.eta_max, storing every node.

    Blasius-family right-hand sides are dispatched to the compiled
    kernel; anything else goes through the generic rk4_step loop.
    """
    start = State3(*initial)
    if not all(math.isfinite(v) for v in start):
        raise ValueError(f"initial state must be finite, got {start}")
    n = grid.nodes
    h = grid.step
    f = np.empty(n)
    fp = np.empty(n)
    fpp = np.empty(n)
    f[0], fp[0], fpp[0] = start

    from .models import BlasiusFamilyRhs  # deferred: models imports State3

    if isinstance(rhs, BlasiusFamilyRhs):
        bad = kernels.fill_blasius_family(rhs.beta, f, fp, fpp, h, 0, n - 1)
        if bad >= 0:
            raise BlowupError(bad * h)
    else:
        state = start
        for i in range(n - 1):
            state = rk4_step(rhs, i * h, state, h)
            f[i + 1], fp[i + 1], fpp[i + 1] = state
    return SolutionTable(grid, f, fp, fpp)
