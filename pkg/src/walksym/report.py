"""Machine-readable reports for the command-line tools.

Reports are plain JSON: complex numbers are ``[re, im]`` pairs, angles are
radians in (-pi, pi], vertex indices are 0-based. Nothing time-dependent is
written, so equal inputs give byte-identical reports.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

import numpy as np

from . import __version__
from .gauge import InvariantFingerprint
from .symmetry import Classification


def dumps(obj, indent: int = 2) -> str:
    """JSON with lists of scalars kept on one line."""

    def leaf(x):
        return not isinstance(x, (list, dict))

    def enc(x, level):
        pad = " " * (indent * (level + 1))
        end = " " * (indent * level)
        if isinstance(x, dict):
            if not x:
                return "{}"
            items = [f"{pad}{json.dumps(k)}: {enc(v, level + 1)}" for k, v in x.items()]
            return "{\n" + ",\n".join(items) + "\n" + end + "}"
        if isinstance(x, list):
            if all(leaf(v) for v in x):
                return "[" + ", ".join(json.dumps(v) for v in x) + "]"
            return "[\n" + ",\n".join(pad + enc(v, level + 1) for v in x) + "\n" + end + "]"
        return json.dumps(x)

    return enc(obj, 0) + "\n"


def _f(x) -> float:
    return float(x) + 0.0


def _phases(p):
    return None if p is None else [_f(x) for x in p]


def fingerprint_dict(fp: InvariantFingerprint) -> dict:
    return {
        "moduli": [{"edge": list(e), "value": _f(v)} for e, v in fp.moduli.items()],
        "diagonal": [_f(d) for d in fp.diagonal],
        "cycles": [
            {"vertices": list(c), "weight": [_f(w.real), _f(w.imag)], "ab_phase": _f(a)}
            for c, w, a in zip(fp.cycles, fp.cycle_weights, fp.ab_phases())
        ],
    }


@dataclass
class Report:
    verdict: str
    symmetric: bool
    dim: int
    name: str | None = None
    witnesses: dict = field(default_factory=dict)
    components: list = field(default_factory=list)
    fingerprint: dict = field(default_factory=dict)
    scan: dict | None = None
    flags: dict = field(default_factory=dict)
    tolerances: dict = field(default_factory=dict)
    tool: dict = field(default_factory=lambda: {"name": "walksym", "version": __version__})

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> "Report":
        return cls(**d)

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls.from_dict(json.loads(text))


def build_report(c: Classification, fp: InvariantFingerprint, *, dim: int,
                 name: str | None = None, tolerances: dict | None = None,
                 grid_spec: tuple | None = None) -> Report:
    numeric = None
    if c.witness is not None:
        s, f, t, value = c.witness
        numeric = {"s": s, "f": f, "t": _f(t), "value": _f(value)}
    scan = None
    if c.scan is not None:
        s, f, t = c.scan.argmax
        scan = {
            "t_max": _f(grid_spec[0]) if grid_spec else _f(np.max(c.scan.grid)),
            "n_points": int(c.scan.grid.size),
            "time_scale": _f(c.scan.scale),
            "max_current": _f(c.scan.max_current),
            "argmax": {"s": s, "f": f, "t": _f(t)},
        }
    return Report(
        verdict=c.verdict.value,
        symmetric=c.symmetric,
        dim=dim,
        name=name,
        witnesses={
            "real_gauge": _phases(c.real_gauge),
            "sign_gauge": _phases(c.sign_gauge),
            "shift": None if c.shift is None else _f(c.shift),
            "numeric": numeric,
        },
        components=[
            {
                "vertices": list(comp.vertices),
                "trivial_gauge": comp.trivial_gauge,
                "bipartite": comp.bipartite,
                "uniform_diagonal": comp.uniform_diagonal,
                "shift": None if comp.shift is None else _f(comp.shift),
                "symmetric": comp.symmetric,
            }
            for comp in c.components
        ],
        fingerprint=fingerprint_dict(fp),
        scan=scan,
        flags=dict(c.flags),
        tolerances=dict(tolerances or {}),
    )
