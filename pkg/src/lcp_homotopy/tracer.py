"""Predictor-corrector tracing of a homotopy path from (y0, 1) toward lambda = 0.

One outer iteration:

1. unit tangent ``xi = (s, -1) / ||(s, -1)||`` with ``s = Hy^{-1} Hlam``,
   oriented by the sign of ``det Hy``;
2. Euler predictor with step ``a = l0**l`` followed by one Gauss-Newton
   correction through the pseudoinverse of ``[Hy | Hlam]``;
3. accept when the corrected lambda lies in (0, 1), the residual is below
   ``residual_accept`` and the corrected point is inside the system's open
   domain; otherwise bump ``l`` and retry;
4. when the ladder bottoms out, stop on stagnation (solution if lambda is
   already below ``eps2``) or restart from the last candidate;
5. stop with a solution once ``|lambda| <= eps1``.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field

import numpy as np

from .errors import RankDeficientError, SingularMatrixError
from .homotopy import HomotopyState, HomotopySystem
from .linalg import lu_factor, pinv_apply

log = logging.getLogger(__name__)


class Status(enum.Enum):
    SOLVED = "Solved"
    UNABLE = "Unable"
    MAX_ITER = "MaxIter"
    SINGULAR_JACOBIAN = "SingularJacobian"
    LEFT_DOMAIN = "LeftDomain"


class Event(enum.Enum):
    PREDICTOR = "Predictor"
    CORRECTOR = "Corrector"
    SHRINK = "Shrink"
    ACCEPT = "Accept"


@dataclass(frozen=True)
class TracerConfig:
    eps1: float = 1e-7
    eps2: float = 1e-2
    eps3: float = 1e-4
    l0: float = 0.5
    a0: float = 1e-10
    max_outer: int = 1000
    residual_accept: float = 1e-6

    def __post_init__(self):
        if not (0.0 < self.eps1 < self.eps3 < self.eps2):
            raise ValueError("tolerances must satisfy 0 < eps1 < eps3 < eps2")
        if not (0.0 < self.l0 < 1.0):
            raise ValueError("l0 must lie in (0, 1)")
        if self.a0 <= 0 or self.residual_accept <= 0:
            raise ValueError("a0 and residual_accept must be positive")
        if self.max_outer < 0:
            raise ValueError("max_outer must be non-negative")


@dataclass(frozen=True)
class TraceRecord:
    outer_index: int
    y: np.ndarray
    lam: float
    step_a: float
    residual: float
    det_sign: int
    event: Event


@dataclass
class TracerResult:
    status: Status
    final_state: HomotopyState
    trace: list[TraceRecord] = field(default_factory=list)
    outer_iterations: int = 0
    final_residual: float = float("nan")

    @property
    def solved(self) -> bool:
        return self.status is Status.SOLVED


def _sign(v: float) -> int:
    return 1 if v > 0 else (-1 if v < 0 else 0)


def residual_norm(system: HomotopySystem, y: np.ndarray, lam: float) -> float:
    return float(np.max(np.abs(system.residual(y, lam))))


def tangent(system: HomotopySystem, y: np.ndarray, lam: float, orientation: int = 1) -> tuple[np.ndarray, int]:
    """Unit tangent at ``(y, lam)`` and the sign of ``det(dH/dy)`` there.

    The raw direction ``xi`` always has a negative lambda component; it is
    flipped when ``det(dH/dy)`` disagrees with ``orientation`` (the anchor's
    determinant sign, +1 for the KKT map).

    Raises SingularMatrixError when ``dH/dy`` is singular.
    """
    lu = lu_factor(system.jacobian_y(y, lam))
    s = lu.solve(system.jacobian_lambda(y, lam))
    xi = np.append(s, -1.0)
    xi /= np.linalg.norm(xi)
    sgn = _sign(lu.det())
    return (xi if sgn == orientation else -xi), sgn


def predictor(state: HomotopyState, tau: np.ndarray, a: float) -> HomotopyState:
    z = state.stacked() + a * tau
    return HomotopyState(z[:-1], float(z[-1]))


def corrector(system: HomotopySystem, pred: HomotopyState) -> tuple[np.ndarray, HomotopyState]:
    """One Gauss-Newton step ``(y, lam) - [Hy | Hlam]^+ H``.

    Returns the stacked correction and the corrected state; raises
    RankDeficientError when the Jacobian loses row rank.
    """
    h = system.residual(pred.y, pred.lam)
    corr = pinv_apply(system.jacobian(pred.y, pred.lam), h)
    z = pred.stacked() - corr
    return corr, HomotopyState(z[:-1], float(z[-1]))


def bordered_determinant(system: HomotopySystem, y: np.ndarray, lam: float, tau: np.ndarray) -> float:
    tau = np.asarray(tau, dtype=float)
    if tau.shape[0] != system.dim + 1:
        raise ValueError("tau must have length dim + 1")
    m = np.vstack([system.jacobian(y, lam), tau[None, :]])
    return lu_factor(m).det()


def trace_path(system: HomotopySystem, config: TracerConfig | None = None) -> TracerResult:
    cfg = config or TracerConfig()
    state = system.anchor()
    if not system.domain_check(state.y, state.lam):
        raise ValueError("anchor (y0, 1) is outside the system's domain")

    records: list[TraceRecord] = []

    def record(i, st, a, res, sgn, ev):
        records.append(TraceRecord(i, st.y.copy(), st.lam, a, res, sgn, ev))

    try:
        orientation = _sign(lu_factor(system.jacobian_y(state.y, 1.0)).det()) or 1
    except SingularMatrixError:
        orientation = 1
    record(0, state, 1.0, residual_norm(system, state.y, state.lam), orientation, Event.ACCEPT)

    def finish(status, st, outer):
        res = residual_norm(system, st.y, st.lam)
        log.debug("trace finished: %s after %d outer iterations, lam=%.3e", status.value, outer, st.lam)
        return TracerResult(status, st, records, outer, res)

    for i in range(cfg.max_outer):
        # Step 1
        try:
            tau, sgn = tangent(system, state.y, state.lam, orientation)
        except SingularMatrixError:
            return finish(Status.SINGULAR_JACOBIAN, state, i)

        # Steps 2 and 3 share one step-length ladder
        l = 0
        candidate: HomotopyState | None = None
        accepted: HomotopyState | None = None
        while True:
            a = cfg.l0**l
            pred = predictor(state, tau, a)
            record(i, pred, a, residual_norm(system, pred.y, pred.lam), sgn, Event.PREDICTOR)
            try:
                corr, new = corrector(system, pred)
            except RankDeficientError:
                new = None
            if new is not None:
                record(i, new, a, residual_norm(system, new.y, new.lam), sgn, Event.CORRECTOR)
            if new is None or not (0.0 < new.lam < 1.0):
                if new is None:
                    m = a
                else:
                    m = min(a, float(np.linalg.norm(new.stacked() - state.stacked())))
                if m > cfg.a0:
                    l += 1
                    record(i, pred, cfg.l0**l, records[-1].residual, sgn, Event.SHRINK)
                    continue
                break
            candidate = new
            r = residual_norm(system, new.y, new.lam)
            if r <= cfg.residual_accept and system.domain_check(new.y, new.lam):
                accepted = new
                break
            if a > cfg.eps3:
                l += 1
                record(i, new, cfg.l0**l, r, sgn, Event.SHRINK)
                continue
            break

        if accepted is not None:
            record(i + 1, accepted, a, residual_norm(system, accepted.y, accepted.lam), sgn, Event.ACCEPT)
            state = accepted
            # Step 5
            if abs(state.lam) <= cfg.eps1:
                return finish(Status.SOLVED, state, i + 1)
            continue

        # Step 4
        nxt = candidate if candidate is not None else state
        if abs(nxt.lam - state.lam) < cfg.eps2:
            if abs(nxt.lam) < cfg.eps2 and residual_norm(system, nxt.y, nxt.lam) <= cfg.residual_accept:
                return finish(Status.SOLVED, nxt, i + 1)
            return finish(Status.UNABLE, state, i + 1)
        if not system.domain_check(nxt.y, nxt.lam):
            return finish(Status.LEFT_DOMAIN, nxt, i + 1)
        state = nxt

    return finish(Status.MAX_ITER, state, cfg.max_outer)
