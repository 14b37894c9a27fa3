"""Dense small-matrix numerics.

Everything here works on plain ``numpy`` float arrays and is deterministic:
LU uses partial pivoting with first-index tie breaking, and the Jacobi
eigenvalue sweep visits pairs in a fixed cyclic order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import NotSymmetricError, RankDeficientError, SingularMatrixError

PIVOT_RTOL = 1e-12
PINV_RTOL = 1e-10
SYMMETRY_TOL = 1e-10


def as_matrix(a, name: str = "matrix") -> np.ndarray:
    m = np.array(a, dtype=float)
    if m.ndim != 2:
        raise ValueError(f"{name} must be two-dimensional, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError(f"{name} has non-finite entries")
    return m


def as_vector(v, name: str = "vector") -> np.ndarray:
    x = np.array(v, dtype=float)
    if x.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise ValueError(f"{name} has non-finite entries")
    return x


def _inf_norm(a: np.ndarray) -> float:
    if a.size == 0:
        return 0.0
    return float(np.max(np.sum(np.abs(a), axis=1)))


@dataclass(frozen=True)
class LUFactorization:
    """``P A = L U`` packed into one array; ``perm[i]`` is the source row of row i."""

    lu: np.ndarray
    perm: np.ndarray
    parity: int
    singular: bool

    def det(self) -> float:
        if self.lu.shape[0] == 0:
            return 1.0
        d = float(np.prod(np.diag(self.lu)))
        return self.parity * d

    def solve(self, b) -> np.ndarray:
        if self.singular:
            raise SingularMatrixError("matrix is singular to working precision")
        b = np.asarray(b, dtype=float)
        n = self.lu.shape[0]
        if b.shape[0] != n:
            raise ValueError(f"right-hand side has length {b.shape[0]}, expected {n}")
        y = b[self.perm].copy()
        for i in range(n):
            y[i] -= self.lu[i, :i] @ y[:i]
        for i in range(n - 1, -1, -1):
            y[i] = (y[i] - self.lu[i, i + 1 :] @ y[i + 1 :]) / self.lu[i, i]
        return y


def lu_factor(a) -> LUFactorization:
    """Doolittle LU with partial pivoting.

    Elimination continues past small pivots so that the determinant stays
    available; ``singular`` is set when any pivot magnitude drops below
    ``PIVOT_RTOL * ||A||_inf``.
    """
    lu = as_matrix(a).copy()
    n, m = lu.shape
    if n != m:
        raise ValueError(f"matrix must be square, got {lu.shape}")
    perm = np.arange(n)
    parity = 1
    tol = PIVOT_RTOL * _inf_norm(lu)
    singular = n > 0 and tol == 0.0
    for k in range(n):
        p = k + int(np.argmax(np.abs(lu[k:, k])))
        if p != k:
            lu[[k, p]] = lu[[p, k]]
            perm[[k, p]] = perm[[p, k]]
            parity = -parity
        pivot = lu[k, k]
        if abs(pivot) <= tol:
            singular = True
        if pivot == 0.0:
            continue
        lu[k + 1 :, k] /= pivot
        lu[k + 1 :, k + 1 :] -= np.outer(lu[k + 1 :, k], lu[k, k + 1 :])
    return LUFactorization(lu, perm, parity, singular)


def lu_solve(a, b) -> np.ndarray:
    a = as_matrix(a)
    b = as_vector(b, "b")
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"matrix must be square, got {a.shape}")
    if b.shape[0] != a.shape[0]:
        raise ValueError("dimension mismatch between matrix and right-hand side")
    return lu_factor(a).solve(b)


def determinant(a) -> float:
    """Determinant from the LU factors; exactly 0.0 for a zero pivot column."""
    return lu_factor(a).det()


def pinv_apply(j, r) -> np.ndarray:
    """Minimum-norm solution of ``J v = r`` for a wide, full-row-rank ``J``.

    Goes through the thin SVD rather than ``J^T (J J^T)^{-1}`` so the
    conditioning is not squared.
    """
    j = as_matrix(j, "J")
    r = as_vector(r, "r")
    m, n = j.shape
    if m > n:
        raise ValueError(f"expected a wide matrix (m <= n), got {j.shape}")
    if r.shape[0] != m:
        raise ValueError("dimension mismatch between J and r")
    u, sigma, vt = np.linalg.svd(j, full_matrices=False)
    smax = sigma[0] if sigma.size else 0.0
    keep = sigma > PINV_RTOL * smax
    rank = int(np.count_nonzero(keep))
    if smax == 0.0 or rank < m:
        raise RankDeficientError(f"effective row rank {rank} < {m}")
    return vt.T @ ((u.T @ r) / sigma)


def symmetric_eigenvalues(s, tol: float = 1e-15, max_sweeps: int = 100) -> np.ndarray:
    """Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending."""
    a = as_matrix(s, "S").copy()
    n = a.shape[0]
    if a.shape[1] != n:
        raise ValueError(f"matrix must be square, got {a.shape}")
    if n and np.max(np.abs(a - a.T)) > SYMMETRY_TOL:
        raise NotSymmetricError("matrix is not symmetric")
    a = 0.5 * (a + a.T)
    scale = np.linalg.norm(a)
    for _ in range(max_sweeps):
        off = np.sqrt(max(np.sum(a * a) - np.sum(np.diag(a) ** 2), 0.0))
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                diff = a[q, q] - a[p, p]
                if abs(apq) <= 1e-300 or abs(apq) <= 1e-18 * abs(diff):
                    a[p, q] = a[q, p] = 0.0
                    continue
                theta = diff / (2.0 * apq)
                t = 1.0 if theta == 0.0 else np.sign(theta) / (abs(theta) + np.hypot(1.0, theta))
                c = 1.0 / np.sqrt(1.0 + t * t)
                sn = t * c
                # A <- G^T A G with G the (p, q) rotation
                ap = a[:, p].copy()
                aq = a[:, q].copy()
                a[:, p] = c * ap - sn * aq
                a[:, q] = sn * ap + c * aq
                ap = a[p, :].copy()
                aq = a[q, :].copy()
                a[p, :] = c * ap - sn * aq
                a[q, :] = sn * ap + c * aq
                a[p, q] = a[q, p] = 0.0
    return np.sort(np.diag(a))


def fd_jacobian(f: Callable[[np.ndarray], np.ndarray], y, h: float = 1e-6) -> np.ndarray:
    """Central-difference Jacobian, one column per coordinate of ``y``."""
    if h <= 0:
        raise ValueError("step h must be positive")
    y = as_vector(y, "y")
    cols = []
    for j in range(y.size):
        e = np.zeros_like(y)
        e[j] = h
        cols.append((np.asarray(f(y + e), dtype=float) - np.asarray(f(y - e), dtype=float)) / (2.0 * h))
    if not cols:
        return np.zeros((np.asarray(f(y)).size, 0))
    return np.column_stack(cols)
