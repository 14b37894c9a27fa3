"""Turn a converged KKT-homotopy endpoint into an LCP solution report.

At lambda = 0 the endpoint ``(x, z1, z2)`` satisfies

    (A + A^T) x + q - z1 - A^T z2 = 0,   Z1 x = 0,   Z2 (A x + q) = 0.

Writing ``z1 = w - dw`` and ``z2 = x - dx`` (``w = A x + q``), ``x`` solves
the LCP exactly when, for every i, ``dx_i dw_i = 0`` or ``z1_i + z2_i > 0``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import as_vector, determinant
from .model import LcpInstance, check_solution


@dataclass(frozen=True)
class ExtractionReport:
    x_bar: np.ndarray
    w_bar: np.ndarray
    z1_bar: np.ndarray
    z2_bar: np.ndarray
    delta_w: np.ndarray
    delta_x: np.ndarray
    iff_holds: bool
    cert_det: float
    certified: bool
    sys_residual: float
    lcp_verified: bool

    def as_dict(self) -> dict:
        out = {}
        for k, v in self.__dict__.items():
            out[k] = v.tolist() if isinstance(v, np.ndarray) else v
        return out


def _split(inst: LcpInstance, y_bar) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    y = as_vector(y_bar, "y_bar")
    n = inst.n
    if y.shape[0] != 3 * n:
        raise ValueError(f"y_bar has length {y.shape[0]}, expected {3 * n}")
    return y[:n], y[n : 2 * n], y[2 * n :]


def residual_system_check(inst: LcpInstance, y_bar) -> float:
    """Infinity norm of the lambda = 0 system at ``y_bar``."""
    x, z1, z2 = _split(inst, y_bar)
    A, q = inst.A, inst.q
    w = A @ x + q
    r = np.concatenate([(A + A.T) @ x + q - z1 - A.T @ z2, z1 * x, z2 * w])
    return float(np.max(np.abs(r))) if r.size else 0.0


def nonsingularity_certificate(inst: LcpInstance, x_bar, tol: float = 1e-6) -> tuple[float, bool]:
    """``det(diag(w) + diag(x) A^T)`` and whether it clears ``tol``.

    A nonzero value is sufficient (not necessary) for ``x_bar`` to solve the
    LCP given a zero lambda = 0 residual.
    """
    x = as_vector(x_bar, "x_bar")
    w = inst.A @ x + inst.q
    d = determinant(np.diag(w) + x[:, None] * inst.A.T)
    return d, abs(d) > tol


def _clamp_dust(v: np.ndarray, tol: float) -> np.ndarray:
    v = v.copy()
    v[(v < 0) & (v > -tol)] = 0.0
    return v


def extract(inst: LcpInstance, y_bar, tol: float = 1e-6) -> ExtractionReport:
    x, z1, z2 = (_clamp_dust(v, tol) for v in _split(inst, y_bar))
    # residual on the raw endpoint, before clamping
    sys_res = residual_system_check(inst, y_bar)
    w = inst.A @ x + inst.q
    dw = w - z1
    dx = x - z2
    iff = bool(np.all((np.abs(dx * dw) <= tol) | (z1 + z2 > tol)))
    cert_det, certified = nonsingularity_certificate(inst, x, tol)
    verified, _ = check_solution(inst, x, tol)
    return ExtractionReport(
        x_bar=x,
        w_bar=w,
        z1_bar=z1,
        z2_bar=z2,
        delta_w=dw,
        delta_x=dx,
        iff_holds=iff,
        cert_det=cert_det,
        certified=certified,
        sys_residual=sys_res,
        lcp_verified=verified,
    )
