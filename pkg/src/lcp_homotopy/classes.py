"""Matrix-class tests used to label LCP instances.

P, N, PSD and N0-exact-order are decided exactly (up to a 1e-10 minor
threshold) by principal-minor enumeration or eigenvalues.  Copositivity is
co-NP-hard, so it is sampled on a simplex lattice and reported three-valued.
Q / Q0 membership is never computed; those labels come from instance
metadata.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import TooLargeError
from .linalg import as_matrix, determinant, symmetric_eigenvalues

MAX_MINOR_N = 12
MINOR_TOL = 1e-10
COPOSITIVE_TOL = 1e-9
DEFAULT_DENSITY = 30


class Verdict(enum.Enum):
    YES = "Yes"
    NO = "No"
    INCONCLUSIVE = "Inconclusive"


class Sampled(NamedTuple):
    verdict: Verdict
    witness: np.ndarray | None = None


def _square(a) -> np.ndarray:
    m = as_matrix(a, "A")
    if m.shape[0] != m.shape[1]:
        raise ValueError(f"A must be square, got {m.shape}")
    return m


def principal_minors(a) -> dict[tuple[int, ...], float]:
    """Every nonempty principal minor, keyed by 0-based index tuples.

    Keys are ordered by subset size, then lexicographically.
    """
    m = _square(a)
    n = m.shape[0]
    if n > MAX_MINOR_N:
        raise TooLargeError(f"n = {n} exceeds principal-minor limit {MAX_MINOR_N}")
    out: dict[tuple[int, ...], float] = {}
    for k in range(1, n + 1):
        for alpha in itertools.combinations(range(n), k):
            out[alpha] = determinant(m[np.ix_(alpha, alpha)])
    return out


def is_P(a) -> bool:
    return all(v > MINOR_TOL for v in principal_minors(a).values())


def is_N(a) -> bool:
    return all(v < -MINOR_TOL for v in principal_minors(a).values())


def is_psd(a) -> bool:
    m = _square(a)
    if m.shape[0] == 0:
        return True
    lo = symmetric_eigenvalues(0.5 * (m + m.T))[0]
    norm = float(np.max(np.sum(np.abs(m), axis=1)))
    return bool(lo >= -1e-9 * (1.0 + norm))


def n0_exact_order(a) -> int | None:
    """Smallest k in 1..n-1 such that every order-(n-k) principal submatrix
    has only nonpositive principal minors and every principal minor of order
    above n-k is positive; None when no k qualifies."""
    minors = principal_minors(a)
    n = _square(a).shape[0]
    for k in range(1, n):
        base = n - k
        ok = all(v > MINOR_TOL for key, v in minors.items() if len(key) > base)
        # all minors of an order-base submatrix are exactly the minors of order <= base
        ok = ok and all(v <= MINOR_TOL for key, v in minors.items() if len(key) <= base)
        if ok:
            return k
    return None


def simplex_lattice(n: int, density: int) -> np.ndarray:
    """All ``x >= 0`` with ``sum(x) = 1`` and entries multiples of ``1/density``."""
    rows = []
    for bars in itertools.combinations(range(density + n - 1), n - 1):
        prev = -1
        parts = []
        for b in bars:
            parts.append(b - prev - 1)
            prev = b
        parts.append(density + n - 2 - prev)
        rows.append(parts)
    return np.array(rows, dtype=float).reshape(-1, n) / density


def copositive_sampled(a, grid_density: int = DEFAULT_DENSITY) -> Sampled:
    if grid_density < 2:
        raise ValueError("grid_density must be >= 2")
    m = _square(a)
    n = m.shape[0]
    if n == 0:
        return Sampled(Verdict.YES)
    pts = simplex_lattice(n, grid_density)
    vals = np.einsum("ij,jk,ik->i", pts, m, pts)
    worst = int(np.argmin(vals))
    if vals[worst] < -COPOSITIVE_TOL:
        return Sampled(Verdict.NO, pts[worst])
    sym = 0.5 * (m + m.T)
    if np.all(vals >= 0) and (np.all(sym >= 0) or is_psd(m)):
        return Sampled(Verdict.YES)
    return Sampled(Verdict.INCONCLUSIVE)


def almost_c0_sampled(a, grid_density: int = DEFAULT_DENSITY) -> Verdict:
    """Copositive on every order-(n-1) principal submatrix but not in full."""
    m = _square(a)
    n = m.shape[0]
    if n < 2:
        raise ValueError("almost-C0 needs n >= 2")
    full = copositive_sampled(m, grid_density).verdict
    if full is Verdict.YES:
        return Verdict.NO
    subs = [
        copositive_sampled(m[np.ix_(idx, idx)], grid_density).verdict
        for idx in itertools.combinations(range(n), n - 1)
    ]
    if any(v is Verdict.NO for v in subs):
        return Verdict.NO
    if full is Verdict.NO and all(v is Verdict.YES for v in subs):
        return Verdict.YES
    return Verdict.INCONCLUSIVE


@dataclass
class ClassReport:
    is_P: bool | None
    is_N: bool | None
    is_PSD: bool
    N0_exact_order: int | None
    copositive_sampled: Verdict
    almost_C0_sampled: Verdict | None
    principal_minor_extremes: dict[int, tuple[float, float]] = field(default_factory=dict)
    labels: tuple[str, ...] = ()
    copositive_witness: np.ndarray | None = None

    def as_dict(self) -> dict:
        return {
            "is_P": self.is_P,
            "is_N": self.is_N,
            "is_PSD": self.is_PSD,
            "N0_exact_order": self.N0_exact_order,
            "copositive_sampled": self.copositive_sampled.value,
            "copositive_witness": None if self.copositive_witness is None else self.copositive_witness.tolist(),
            "almost_C0_sampled": None if self.almost_C0_sampled is None else self.almost_C0_sampled.value,
            "principal_minor_extremes": {str(k): list(v) for k, v in self.principal_minor_extremes.items()},
            "labels": list(self.labels),
        }


def default_density(n: int) -> int:
    # keeps the lattice below ~5e4 points
    if n <= 5:
        return DEFAULT_DENSITY
    return max(2, {6: 14, 7: 9, 8: 7, 9: 5, 10: 4}.get(n, 3))


def classify(a, labels=(), grid_density: int | None = None) -> ClassReport:
    m = _square(a)
    n = m.shape[0]
    d = grid_density or default_density(n)
    cop = copositive_sampled(m, d)
    if n <= MAX_MINOR_N:
        minors = principal_minors(m)
        extremes: dict[int, tuple[float, float]] = {}
        for key, v in minors.items():
            lo, hi = extremes.get(len(key), (v, v))
            extremes[len(key)] = (min(lo, v), max(hi, v))
        p = all(v > MINOR_TOL for v in minors.values())
        nn = all(v < -MINOR_TOL for v in minors.values())
        n0 = None if p else n0_exact_order(m)
    else:
        extremes, p, nn, n0 = {}, None, None, None
    return ClassReport(
        is_P=p,
        is_N=nn,
        is_PSD=is_psd(m),
        N0_exact_order=n0,
        copositive_sampled=cop.verdict,
        almost_C0_sampled=almost_c0_sampled(m, d) if n >= 2 else None,
        principal_minor_extremes=extremes,
        labels=tuple(labels),
        copositive_witness=cop.witness,
    )
