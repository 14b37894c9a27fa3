"""Homotopy maps H(y, lambda) for LCP(q, A), with analytic Jacobians.

``KktHomotopy`` works on ``y = (x, z1, z2)`` built from the KKT conditions of
the quadratic program ``min x^T (A x + q)`` over ``x >= 0, A x + q >= 0``::

    (1 - lam) [(A + A^T) x + q - z1 - A^T z2] + lam (x - x0)
    Z1 x - lam Z1_0 x0
    Z2 (A x + q) - lam Z2_0 (A x0 + q)

``VariantHomotopy`` covers the four older two-block maps on ``y = (x, s)``
with slack ``s`` (Yu/PSD, Zhao/N, Xu/P, Wang/P*).  Diagonal products are
computed componentwise.
"""

from __future__ import annotations

import enum
from abc import ABC, abstractmethod
from dataclasses import dataclass

import numpy as np

from .linalg import as_vector
from .model import LcpInstance


@dataclass(frozen=True)
class HomotopyState:
    y: np.ndarray
    lam: float

    def stacked(self) -> np.ndarray:
        return np.append(self.y, self.lam)


class HomotopySystem(ABC):
    """Residual/Jacobian interface consumed by the path tracer."""

    inst: LcpInstance
    y0: np.ndarray
    block_names: tuple[str, ...]

    @property
    def dim(self) -> int:
        return self.y0.shape[0]

    @property
    def n(self) -> int:
        return self.inst.n

    @abstractmethod
    def residual(self, y: np.ndarray, lam: float) -> np.ndarray: ...

    @abstractmethod
    def jacobian_y(self, y: np.ndarray, lam: float) -> np.ndarray: ...

    @abstractmethod
    def jacobian_lambda(self, y: np.ndarray, lam: float) -> np.ndarray: ...

    @abstractmethod
    def domain_check(self, y: np.ndarray, lam: float) -> bool: ...

    def jacobian(self, y: np.ndarray, lam: float) -> np.ndarray:
        """The ``dim x (dim + 1)`` matrix ``[dH/dy | dH/dlam]``."""
        return np.column_stack([self.jacobian_y(y, lam), self.jacobian_lambda(y, lam)])

    def x_part(self, y: np.ndarray) -> np.ndarray:
        return y[: self.n]

    def anchor(self) -> HomotopyState:
        return HomotopyState(self.y0.copy(), 1.0)


def _positive(v: np.ndarray) -> bool:
    return bool(np.all(v > 0))


class KktHomotopy(HomotopySystem):
    block_names = ("x", "z1", "z2")

    def __init__(self, inst: LcpInstance, x0, z1_0=None, z2_0=None):
        n = inst.n
        self.inst = inst
        self.x0 = as_vector(x0, "x0")
        self.z1_0 = np.ones(n) if z1_0 is None else as_vector(z1_0, "z1_0")
        self.z2_0 = np.ones(n) if z2_0 is None else as_vector(z2_0, "z2_0")
        for name, v in (("x0", self.x0), ("z1_0", self.z1_0), ("z2_0", self.z2_0)):
            if v.shape[0] != n:
                raise ValueError(f"{name} has length {v.shape[0]}, expected {n}")
        self.w0 = inst.A @ self.x0 + inst.q
        if not (_positive(self.x0) and _positive(self.w0) and _positive(self.z1_0) and _positive(self.z2_0)):
            raise ValueError("initial point must satisfy x0 > 0, A x0 + q > 0, z1_0 > 0, z2_0 > 0")
        self.sym = inst.A + inst.A.T
        self.y0 = np.concatenate([self.x0, self.z1_0, self.z2_0])
        # lam-independent anchor terms of blocks 2 and 3
        self._c1 = self.z1_0 * self.x0
        self._c2 = self.z2_0 * self.w0

    def split(self, y: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        n = self.n
        return y[:n], y[n : 2 * n], y[2 * n :]

    def kkt_part(self, x, z1, z2) -> np.ndarray:
        """``(A + A^T) x + q - z1 - A^T z2``, the stationarity residual."""
        return self.sym @ x + self.inst.q - z1 - self.inst.A.T @ z2

    def residual(self, y, lam):
        x, z1, z2 = self.split(y)
        w = self.inst.A @ x + self.inst.q
        return np.concatenate(
            [
                (1.0 - lam) * self.kkt_part(x, z1, z2) + lam * (x - self.x0),
                z1 * x - lam * self._c1,
                z2 * w - lam * self._c2,
            ]
        )

    def jacobian_y(self, y, lam):
        x, z1, z2 = self.split(y)
        n = self.n
        A = self.inst.A
        w = A @ x + self.inst.q
        eye = np.eye(n)
        J = np.zeros((3 * n, 3 * n))
        J[:n, :n] = (1.0 - lam) * self.sym + lam * eye
        J[:n, n : 2 * n] = -(1.0 - lam) * eye
        J[:n, 2 * n :] = -(1.0 - lam) * A.T
        J[n : 2 * n, :n] = np.diag(z1)
        J[n : 2 * n, n : 2 * n] = np.diag(x)
        J[2 * n :, :n] = z2[:, None] * A
        J[2 * n :, 2 * n :] = np.diag(w)
        return J

    def jacobian_lambda(self, y, lam):
        x, z1, z2 = self.split(y)
        return np.concatenate([(x - self.x0) - self.kkt_part(x, z1, z2), -self._c1, -self._c2])

    def domain_check(self, y, lam):
        if not (0.0 < lam <= 1.0):
            return False
        x, z1, z2 = self.split(y)
        w = self.inst.A @ x + self.inst.q
        return _positive(x) and _positive(w) and _positive(z1) and _positive(z2)


class VariantKind(enum.Enum):
    YU_PSD = "yu-psd"
    ZHAO_N = "zhao-n"
    XU_P = "xu-p"
    WANG_PSTAR = "wang-pstar"


class VariantHomotopy(HomotopySystem):
    """Two-block homotopies on ``y = (x, s)``.

    Yu/PSD needs ``X0 S0 e = e`` at the anchor, so its slack is always
    ``1 / x0`` and ``s0`` is ignored. The other kinds default ``s0`` to
    ``A x0 + q``.
    """

    block_names = ("x", "y")

    def __init__(self, kind: VariantKind | str, inst: LcpInstance, x0, s0=None):
        self.kind = VariantKind(kind)
        self.inst = inst
        n = inst.n
        self.x0 = as_vector(x0, "x0")
        if self.x0.shape[0] != n:
            raise ValueError(f"x0 has length {self.x0.shape[0]}, expected {n}")
        if not _positive(self.x0):
            raise ValueError("x0 must be strictly positive")
        if self.kind is VariantKind.YU_PSD:
            s0 = 1.0 / self.x0
        elif s0 is None:
            s0 = inst.A @ self.x0 + inst.q
        self.s0 = as_vector(s0, "s0")
        if self.s0.shape[0] != n or not _positive(self.s0):
            raise ValueError("slack anchor must be a strictly positive vector of length n")
        self.y0 = np.concatenate([self.x0, self.s0])
        self._c = self.x0 * self.s0

    def split(self, y):
        return y[: self.n], y[self.n :]

    def residual(self, y, lam):
        x, s = self.split(y)
        w = self.inst.A @ x + self.inst.q
        k = self.kind
        if k is VariantKind.YU_PSD:
            return np.concatenate([(1.0 - lam) * (w - s) + lam * (x - self.x0), x * s - lam])
        if k is VariantKind.ZHAO_N:
            top = (1.0 - lam) * (s - w) + lam * (x - self.x0)
        elif k is VariantKind.XU_P:
            top = (1.0 - lam) * (s - w) - lam * (x - self.x0)
        else:
            top = (1.0 - lam) * w - s + lam * self.s0
        return np.concatenate([top, x * s - lam * self._c])

    def jacobian_y(self, y, lam):
        x, s = self.split(y)
        n = self.n
        A = self.inst.A
        eye = np.eye(n)
        k = self.kind
        if k is VariantKind.YU_PSD:
            jx, js = (1.0 - lam) * A + lam * eye, -(1.0 - lam) * eye
        elif k is VariantKind.ZHAO_N:
            jx, js = -(1.0 - lam) * A + lam * eye, (1.0 - lam) * eye
        elif k is VariantKind.XU_P:
            jx, js = -(1.0 - lam) * A - lam * eye, (1.0 - lam) * eye
        else:
            jx, js = (1.0 - lam) * A, -eye
        return np.block([[jx, js], [np.diag(s), np.diag(x)]])

    def jacobian_lambda(self, y, lam):
        x, s = self.split(y)
        w = self.inst.A @ x + self.inst.q
        k = self.kind
        if k is VariantKind.YU_PSD:
            return np.concatenate([(x - self.x0) - (w - s), -np.ones(self.n)])
        if k is VariantKind.ZHAO_N:
            top = (w - s) + (x - self.x0)
        elif k is VariantKind.XU_P:
            top = (w - s) - (x - self.x0)
        else:
            top = self.s0 - w
        return np.concatenate([top, -self._c])

    def domain_check(self, y, lam):
        if not (0.0 < lam <= 1.0):
            return False
        x, s = self.split(y)
        return _positive(x) and _positive(s)


def build_system(name: str, inst: LcpInstance, x0, z1_0=None, z2_0=None) -> HomotopySystem:
    """Factory keyed by CLI variant name (``kkt`` or a ``VariantKind`` value)."""
    if name == "kkt":
        return KktHomotopy(inst, x0, z1_0, z2_0)
    return VariantHomotopy(VariantKind(name), inst, x0)
