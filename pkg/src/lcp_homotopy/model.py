"""LCP(q, A) instances, solution checks, and the two non-homotopy solvers.

The brute-force enumerator is the independent oracle the test-suite checks
every other solver against; Lemke's method is the classical pivoting
baseline.
"""

from __future__ import annotations

import enum
import itertools
import logging
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import NoFeasiblePointError, SingularMatrixError, TooLargeError
from .linalg import as_matrix, as_vector, lu_solve

log = logging.getLogger(__name__)

DEFAULT_SCAN = (0.1, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0)
PERTURBATION_LATTICE = (0.75, 1.0, 1.25)
MAX_ENUM_N = 12


@dataclass(frozen=True, eq=False)
class LcpInstance:
    """Find ``x >= 0`` with ``w = A x + q >= 0`` and ``x^T w = 0``."""

    A: np.ndarray
    q: np.ndarray

    def __post_init__(self):
        a = as_matrix(self.A, "A")
        q = as_vector(self.q, "q")
        if a.shape[0] != a.shape[1]:
            raise ValueError(f"A must be square, got shape {a.shape}")
        if q.shape[0] != a.shape[0]:
            raise ValueError(f"q has length {q.shape[0]}, expected {a.shape[0]}")
        a.setflags(write=False)
        q.setflags(write=False)
        object.__setattr__(self, "A", a)
        object.__setattr__(self, "q", q)

    @property
    def n(self) -> int:
        return self.q.shape[0]


@dataclass(frozen=True, eq=False)
class LcpSolution:
    x: np.ndarray
    w: np.ndarray
    complementarity_gap: float

    def __repr__(self) -> str:
        return f"LcpSolution(x={self.x.tolist()}, gap={self.complementarity_gap:.3g})"


def compute_w(inst: LcpInstance, x) -> np.ndarray:
    x = as_vector(x, "x")
    if x.shape[0] != inst.n:
        raise ValueError(f"x has length {x.shape[0]}, expected {inst.n}")
    return inst.A @ x + inst.q


def check_solution(inst: LcpInstance, x, tol: float = 1e-6) -> tuple[bool, LcpSolution]:
    """Feasibility and complementarity under one symmetric tolerance."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    x = as_vector(x, "x")
    w = compute_w(inst, x)
    gap = float(np.max(np.abs(x * w))) if x.size else 0.0
    ok = bool(np.all(x >= -tol) and np.all(w >= -tol) and gap <= tol)
    return ok, LcpSolution(x, w, gap)


def _feasible(inst: LcpInstance, xs: np.ndarray) -> np.ndarray:
    return np.all(xs > 0, axis=1) & np.all(xs @ inst.A.T + inst.q > 0, axis=1)


def strictly_feasible_point(inst: LcpInstance, scan: Sequence[float] = DEFAULT_SCAN) -> np.ndarray:
    """First ``x > 0`` with ``A x + q > 0`` on a deterministic scan.

    Tries ``t * e`` for each ``t`` in ``scan``, then ``t * d`` with ``d`` drawn
    from the lattice ``{0.75, 1, 1.25}^n`` (single-coordinate perturbations
    only when ``n > 8``, to keep the lattice small).
    """
    scan = list(scan)
    if not scan or any(t <= 0 for t in scan):
        raise ValueError("scan must be non-empty and strictly positive")
    n = inst.n
    ones = np.ones(n)
    for t in scan:
        x = t * ones
        if _feasible(inst, x[None, :])[0]:
            return x
    if n <= 8:
        dirs = np.array(list(itertools.product(PERTURBATION_LATTICE, repeat=n)))
    else:
        rows = []
        for i in range(n):
            for f in (0.75, 1.25):
                d = ones.copy()
                d[i] = f
                rows.append(d)
        dirs = np.array(rows)
    for t in scan:
        cand = t * dirs
        ok = np.flatnonzero(_feasible(inst, cand))
        if ok.size:
            return cand[ok[0]]
    raise NoFeasiblePointError("no strictly feasible point on the scan lattice; supply x0")


def brute_force_solutions(inst: LcpInstance, tol: float = 1e-9) -> list[LcpSolution]:
    """All complementary solutions found by enumerating index subsets.

    For each subset ``alpha`` the system ``(A x + q)_alpha = 0`` with
    ``x_i = 0`` off ``alpha`` is solved; singular subsystems are skipped, so
    solution continua of singular principal blocks are not reported.
    """
    n = inst.n
    if n > MAX_ENUM_N:
        raise TooLargeError(f"n = {n} exceeds enumeration limit {MAX_ENUM_N}")
    found: list[LcpSolution] = []
    for size in range(n + 1):
        for alpha in itertools.combinations(range(n), size):
            x = np.zeros(n)
            if alpha:
                idx = list(alpha)
                try:
                    x[idx] = lu_solve(inst.A[np.ix_(idx, idx)], -inst.q[idx])
                except SingularMatrixError:
                    continue
            w = compute_w(inst, x)
            if np.any(x < -tol) or np.any(w < -tol):
                continue
            if any(np.max(np.abs(s.x - x)) <= tol for s in found):
                continue
            found.append(LcpSolution(x, w, float(np.max(np.abs(x * w))) if n else 0.0))
    return found


class LemkeStatus(enum.Enum):
    SOLUTION = "Solution"
    RAY_TERMINATION = "RayTermination"
    CYCLE_LIMIT = "CycleLimit"


@dataclass(frozen=True)
class LemkeOutcome:
    kind: LemkeStatus
    solution: LcpSolution | None = None
    pivots: int = 0
    # (entering, leaving) variable labels, e.g. ("z0", "w2")
    pivot_sequence: tuple[tuple[str, str], ...] = field(default=(), repr=False)

    def describe(self) -> str:
        if self.kind is LemkeStatus.SOLUTION:
            return f"Solution after {self.pivots} pivots"
        return f"{self.kind.value} after {self.pivots} pivots"


def _label(var: int, n: int) -> str:
    if var < n:
        return f"w{var + 1}"
    if var < 2 * n:
        return f"z{var - n + 1}"
    return "z0"


def lemke_solve(inst: LcpInstance, max_pivots: int = 1000, tol: float = 1e-12) -> LemkeOutcome:
    """Lemke's complementary pivoting with covering vector ``e``.

    Tableau columns are ``w (0..n-1), z (n..2n-1), z0 (2n)`` over the system
    ``w - A z - e z0 = q``. Ratio-test ties go to ``z0`` when it is among them,
    otherwise to the basic variable with the lowest index.
    """
    if max_pivots < 1:
        raise ValueError("max_pivots must be >= 1")
    n = inst.n
    q = inst.q
    if np.all(q >= 0):
        x = np.zeros(n)
        return LemkeOutcome(LemkeStatus.SOLUTION, check_solution(inst, x, 1e-6)[1], 0)

    z0 = 2 * n
    tab = np.hstack([np.eye(n), -inst.A, -np.ones((n, 1)), q[:, None]])
    basis = list(range(n))
    seq: list[tuple[str, str]] = []

    def pivot(row: int, col: int) -> None:
        tab[row] /= tab[row, col]
        for i in range(n):
            if i != row and tab[i, col] != 0.0:
                tab[i] -= tab[i, col] * tab[row]

    row = int(np.argmin(q))
    seq.append((_label(z0, n), _label(basis[row], n)))
    leaving = basis[row]
    pivot(row, z0)
    basis[row] = z0
    entering = leaving + n  # complement of w_r is z_r
    pivots = 1

    while True:
        if pivots >= max_pivots:
            log.debug("lemke: pivot limit %d reached", max_pivots)
            return LemkeOutcome(LemkeStatus.CYCLE_LIMIT, None, pivots, tuple(seq))
        col = tab[:, entering]
        scale = max(1.0, float(np.max(np.abs(tab[:, -1]))))
        rows = [i for i in range(n) if col[i] > tol]
        if not rows:
            return LemkeOutcome(LemkeStatus.RAY_TERMINATION, None, pivots, tuple(seq))
        ratios = np.array([tab[i, -1] / col[i] for i in rows])
        best = ratios.min()
        ties = [rows[k] for k in range(len(rows)) if ratios[k] <= best + 1e-12 * scale]
        z0_rows = [i for i in ties if basis[i] == z0]
        row = z0_rows[0] if z0_rows else min(ties, key=lambda i: basis[i])
        leaving = basis[row]
        seq.append((_label(entering, n), _label(leaving, n)))
        pivot(row, entering)
        basis[row] = entering
        pivots += 1
        if leaving == z0:
            x = np.zeros(n)
            for i, var in enumerate(basis):
                if n <= var < 2 * n:
                    x[var - n] = tab[i, -1]
            _, sol = check_solution(inst, x, 1e-6)
            return LemkeOutcome(LemkeStatus.SOLUTION, sol, pivots, tuple(seq))
        entering = leaving + n if leaving < n else leaving - n

