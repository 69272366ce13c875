"""Reading and writing Hamiltonian documents.

Two interchangeable text formats are supported, both with 0-based indices.

JSON::

    {"dim": 3, "name": "triangle",
     "entries": [[0, 1, 1.0, 0.0], [1, 2, 1.0, 0.0], [2, 0, 0.0, 1.0]]}

Each record is ``[row, col, re, im]`` (objects with keys ``row``, ``col``,
``re``, ``im`` are accepted too). ``dim`` is required.

Edge list: one ``i j re im`` record per line, ``#`` starts a comment, and
the dimension is one more than the largest index seen.

For Hamiltonians each unordered pair is given once and the conjugate entry is
implied. A record for the mirrored position is allowed only if it agrees
with the conjugate within tolerance. Generators (``hermitian=False``) take
every record literally.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DocumentError, InconsistentDocument
from .hermitian import HERMITICITY_TOL

FORMATS = ("json", "edgelist")


@dataclass
class HamiltonianDocument:
    dim: int
    entries: list = field(default_factory=list)  # (row, col, re, im)
    name: str | None = None


def detect_format(text: str) -> str:
    return "json" if text.lstrip().startswith("{") else "edgelist"


def _number(x, what):
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise DocumentError(f"{what} must be a number, got {x!r}")
    if not math.isfinite(x):
        raise DocumentError(f"{what} must be finite")
    return float(x)


def _index(x, what):
    if isinstance(x, bool) or not isinstance(x, int) or x < 0:
        raise DocumentError(f"{what} must be a nonnegative integer, got {x!r}")
    return x


def _parse_json(text):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise DocumentError("document must be a JSON object")
    if "dim" not in obj:
        raise DocumentError("document is missing 'dim'")
    dim = _index(obj["dim"], "dim")
    raw = obj.get("entries", [])
    if not isinstance(raw, list):
        raise DocumentError("'entries' must be a list")
    entries = []
    for i, rec in enumerate(raw):
        if isinstance(rec, dict):
            try:
                rec = [rec["row"], rec["col"], rec["re"], rec.get("im", 0.0)]
            except KeyError as exc:
                raise DocumentError(f"entry {i} is missing {exc}") from None
        if not isinstance(rec, list) or len(rec) not in (3, 4):
            raise DocumentError(f"entry {i} must be [row, col, re, im]")
        im = rec[3] if len(rec) == 4 else 0.0
        entries.append((_index(rec[0], "row"), _index(rec[1], "col"),
                        _number(rec[2], "re"), _number(im, "im")))
    name = obj.get("name")
    if name is not None and not isinstance(name, str):
        raise DocumentError("'name' must be a string")
    return HamiltonianDocument(dim, entries, name)


def _parse_edgelist(text):
    entries = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) not in (3, 4):
            raise DocumentError(f"line {lineno}: expected 'i j re im'")
        try:
            j, k = int(parts[0]), int(parts[1])
            vals = [float(p) for p in parts[2:]]
        except ValueError:
            raise DocumentError(f"line {lineno}: malformed number") from None
        if j < 0 or k < 0:
            raise DocumentError(f"line {lineno}: negative index")
        if not all(math.isfinite(v) for v in vals):
            raise DocumentError(f"line {lineno}: non-finite value")
        entries.append((j, k, vals[0], vals[1] if len(vals) == 2 else 0.0))
    if not entries:
        raise DocumentError("edge list has no records")
    dim = 1 + max(max(j, k) for j, k, _, _ in entries)
    return HamiltonianDocument(dim, entries, None)


def parse_document(text: str, fmt: str | None = None) -> HamiltonianDocument:
    fmt = fmt or detect_format(text)
    if fmt == "json":
        doc = _parse_json(text)
    elif fmt == "edgelist":
        doc = _parse_edgelist(text)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    if doc.dim == 0:
        raise DocumentError("dim must be positive")
    for j, k, _, _ in doc.entries:
        if j >= doc.dim or k >= doc.dim:
            raise DocumentError(f"index ({j}, {k}) out of range for dim {doc.dim}")
    return doc


def document_to_matrix(doc: HamiltonianDocument, hermitian: bool = True,
                       tol: float = HERMITICITY_TOL) -> np.ndarray:
    """Dense matrix described by ``doc``.

    Raises
    ------
    InconsistentDocument
        For duplicate records, a mirrored record that is not the conjugate,
        or a complex diagonal entry.
    """
    n = doc.dim
    m = np.zeros((n, n), dtype=complex)
    given = {}
    scale = max([1.0] + [abs(complex(re, im)) for _, _, re, im in doc.entries])
    for j, k, re, im in doc.entries:
        z = complex(re, im)
        if (j, k) in given:
            raise InconsistentDocument(f"duplicate record for ({j}, {k})")
        given[(j, k)] = z
        if not hermitian:
            m[j, k] = z
            continue
        if j == k:
            if abs(im) > tol * scale:
                raise InconsistentDocument(f"diagonal entry ({j}, {j}) is not real")
            m[j, j] = re
        elif (k, j) in given:
            if abs(given[(k, j)] - z.conjugate()) > tol * scale:
                raise InconsistentDocument(
                    f"records ({k}, {j}) and ({j}, {k}) are not complex conjugates")
        else:
            m[j, k] = z
            m[k, j] = z.conjugate()
    return m


def _clean(x: float, digits: int | None) -> float:
    x = float(x)
    if digits is not None:
        x = float(f"{x:.{digits}g}")
    return x + 0.0  # drop negative zero


def matrix_to_document(h, name: str | None = None, hermitian: bool = True,
                       digits: int | None = None, zero_tol: float = 0.0) -> HamiltonianDocument:
    """Records for the upper triangle (diagonal included) of a Hermitian
    matrix, or every nonzero entry of a general one.

    The last diagonal entry is always written so the dimension survives the
    edge-list format.
    """
    h = np.asarray(h, dtype=complex)
    n = h.shape[0]
    entries = []
    for j in range(n):
        for k in range(j if hermitian else 0, n):
            z = h[j, k]
            if abs(z) > zero_tol or (j == k == n - 1):
                re = _clean(z.real, digits) if abs(z.real) > zero_tol else 0.0
                im = _clean(z.imag, digits) if abs(z.imag) > zero_tol else 0.0
                if j == k and hermitian:
                    im = 0.0
                entries.append((j, k, re, im))
    return HamiltonianDocument(n, entries, name)


def format_document(doc: HamiltonianDocument, fmt: str = "json") -> str:
    if fmt == "json":
        obj = {"dim": doc.dim}
        if doc.name is not None:
            obj["name"] = doc.name
        head = json.dumps(obj, indent=2)[:-2]
        rows = ",\n".join("    " + json.dumps(list(e)) for e in doc.entries)
        body = f'  "entries": [\n{rows}\n  ]' if rows else '  "entries": []'
        return f"{head},\n{body}\n}}\n"
    if fmt == "edgelist":
        lines = []
        if doc.name is not None:
            lines.append(f"# {doc.name}")
        lines.extend(f"{j} {k} {re!r} {im!r}" for j, k, re, im in doc.entries)
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def read_matrix(path, fmt: str | None = None, hermitian: bool = True,
                tol: float = HERMITICITY_TOL):
    """Parse a file and return ``(matrix, document)``."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    doc = parse_document(text, fmt)
    return document_to_matrix(doc, hermitian, tol), doc
