from __future__ import annotations

import numpy as np
import pytest

from lcp_homotopy import KktHomotopy, LcpInstance, VariantHomotopy, VariantKind
from lcp_homotopy.instances import FIXTURE_NAMES, load_fixture

_verdicts: list[str] = []


def record_verdict(label: str, ok: bool, detail: str = "") -> None:
    line = f"{'PASS' if ok else 'FAIL'}  {label}"
    if detail:
        line += f"  ({detail})"
    _verdicts.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if _verdicts:
        terminalreporter.section("acceptance criteria")
        for line in _verdicts:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def examples():
    return {name: load_fixture(name) for name in FIXTURE_NAMES}


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_feasible(rng, n: int) -> tuple[LcpInstance, np.ndarray]:
    """Random instance plus an anchor x0 with x0 > 0 and A x0 + q > 0."""
    a = rng.uniform(-2, 2, (n, n))
    x0 = rng.uniform(0.2, 3.0, n)
    q = rng.uniform(0.1, 2.0, n) - a @ x0
    return LcpInstance(a, q), x0


def all_systems(inst: LcpInstance, x0: np.ndarray, rng=None):
    """KKT plus the four variants; variant slack anchors drawn when rng is given."""
    out = [KktHomotopy(inst, x0)]
    for kind in VariantKind:
        s0 = None if rng is None else rng.uniform(0.2, 3.0, inst.n)
        out.append(VariantHomotopy(kind, inst, x0, s0))
    return out


def interior_state(rng, system):
    """A random point with every block strictly positive and lambda in (0, 1)."""
    y = rng.uniform(0.1, 3.0, system.dim)
    return y, float(rng.uniform(0.05, 0.95))
