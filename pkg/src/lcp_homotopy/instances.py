"""JSON instance files and the bundled reference fixtures.

An instance file is a JSON object::

    {"A": [[...], ...], "q": [...],
     "x0": [...], "z1_0": [...], "z2_0": [...],      # optional
     "metadata": {"classes": ["N", ...], ...}}        # optional

Floats are written with ``repr`` (shortest round-trip form), so write/read
reproduces ``A`` and ``q`` bit-exactly.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from .errors import InstanceError
from .model import LcpInstance

CLASS_LABELS = frozenset({"P", "N", "PSD", "C0", "almostC0", "N0k", "Q", "Q0", "Pstar"})
FIXTURE_NAMES = tuple(f"ex4_{i}" for i in range(1, 8))


@dataclass
class InstanceFile:
    inst: LcpInstance
    x0: np.ndarray | None = None
    z1_0: np.ndarray | None = None
    z2_0: np.ndarray | None = None
    metadata: dict = field(default_factory=dict)

    @property
    def classes(self) -> tuple[str, ...]:
        return tuple(self.metadata.get("classes", ()))

    @property
    def name(self) -> str:
        return str(self.metadata.get("name", "instance"))


def _number(v, where: str) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise InstanceError(f"{where}: expected a number, got {v!r}")
    f = float(v)
    if not math.isfinite(f):
        raise InstanceError(f"{where}: non-finite value")
    return f


def _vector(doc: dict, key: str, n: int | None) -> np.ndarray:
    v = doc[key]
    if not isinstance(v, list):
        raise InstanceError(f"field '{key}': expected an array")
    out = np.array([_number(t, f"field '{key}'[{i}]") for i, t in enumerate(v)])
    if n is not None and out.shape[0] != n:
        raise InstanceError(f"field '{key}': length {out.shape[0]}, expected {n}")
    return out


def parse_instance(doc) -> InstanceFile:
    if not isinstance(doc, dict):
        raise InstanceError("top level: expected a JSON object")
    for key in ("A", "q"):
        if key not in doc:
            raise InstanceError(f"field '{key}': missing")
    rows = doc["A"]
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise InstanceError("field 'A': expected a non-empty array of row arrays")
    n = len(rows)
    a = np.zeros((n, n))
    for i, row in enumerate(rows):
        if len(row) != n:
            raise InstanceError(f"field 'A' row {i + 1}: length {len(row)}, expected {n} (A must be square)")
        for j, t in enumerate(row):
            a[i, j] = _number(t, f"field 'A' row {i + 1} column {j + 1}")
    q = _vector(doc, "q", n)
    inst = LcpInstance(a, q)

    extras = {}
    for key in ("x0", "z1_0", "z2_0"):
        extras[key] = _vector(doc, key, n) if doc.get(key) is not None else None
    x0 = extras["x0"]
    if x0 is not None:
        if np.any(x0 <= 0):
            raise InstanceError("field 'x0': must be strictly positive")
        if np.any(a @ x0 + q <= 0):
            raise InstanceError("field 'x0': A x0 + q must be strictly positive")
    for key in ("z1_0", "z2_0"):
        if extras[key] is not None and np.any(extras[key] <= 0):
            raise InstanceError(f"field '{key}': must be strictly positive")

    meta = doc.get("metadata") or {}
    if not isinstance(meta, dict):
        raise InstanceError("field 'metadata': expected an object")
    classes = meta.get("classes", [])
    if not isinstance(classes, list) or any(c not in CLASS_LABELS for c in classes):
        raise InstanceError(f"field 'metadata.classes': labels must come from {sorted(CLASS_LABELS)}")
    return InstanceFile(inst, x0, extras["z1_0"], extras["z2_0"], dict(meta))


def loads_instance(text: str) -> InstanceFile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return parse_instance(doc)


def read_instance(path) -> InstanceFile:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InstanceError(f"cannot read {path}: {exc.strerror}") from None
    return loads_instance(text)


def _fmt_row(v) -> str:
    return "[" + ", ".join(repr(float(t)) for t in v) + "]"


def dumps_instance(f: InstanceFile) -> str:
    """Serialize with one matrix row per line."""
    lines = ["{", '  "A": [']
    rows = [_fmt_row(r) for r in f.inst.A]
    lines += ["    " + r + ("," if i < len(rows) - 1 else "") for i, r in enumerate(rows)]
    lines.append("  ],")
    lines.append(f'  "q": {_fmt_row(f.inst.q)},')
    for key in ("x0", "z1_0", "z2_0"):
        v = getattr(f, key)
        if v is not None:
            lines.append(f'  "{key}": {_fmt_row(v)},')
    meta = json.dumps(f.metadata, indent=2, sort_keys=True)
    # compact numeric arrays inside metadata
    meta = re.sub(r"\[\s+([^\[\]{}]*?)\s+\]", lambda m: "[" + re.sub(r",\s+", ", ", m.group(1)) + "]", meta)
    lines.append('  "metadata": ' + meta.replace("\n", "\n  "))
    lines.append("}")
    return "\n".join(lines) + "\n"


def write_instance(f: InstanceFile, path) -> None:
    Path(path).write_text(dumps_instance(f), encoding="utf-8")


def load_fixture(name: str) -> InstanceFile:
    """One of the bundled reference examples, e.g. ``ex4_1``."""
    if name not in FIXTURE_NAMES:
        raise KeyError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURE_NAMES)}")
    text = resources.files(__package__).joinpath("fixtures", f"{name}.json").read_text(encoding="utf-8")
    return loads_instance(text)


def fixtures() -> list[InstanceFile]:
    return [load_fixture(n) for n in FIXTURE_NAMES]
