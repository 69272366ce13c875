"""Gauge invariants of Hermitian matrices under diagonal unitary conjugation.

A gauge (element of U(1)^n) is represented by its vector of phases. The
orbit of ``H`` is described by edge moduli, the diagonal, and the weights of
the fundamental cycles of the support; ``canonical_form`` produces a
representative in which every spanning-forest edge is real and nonnegative.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, StepOffSupport, VerificationFailure, ZeroWeight
from .hermitian import gauge_conjugate, max_abs, wrap_phase
from .support import (
    SpanningForest,
    SupportGraph,
    fundamental_cycles,
    spanning_forest,
    support,
)

REAL_TOL = 1e-8
EQUIV_TOL = 1e-8


def _steps(cycle):
    k = len(cycle)
    return [(cycle[i], cycle[(i + 1) % k]) for i in range(k)]


def cycle_weight(h, cycle, g: SupportGraph | None = None) -> complex:
    """Product of ``H`` entries along the closed walk ``cycle``."""
    h = np.asarray(h)
    if g is None:
        g = support(h)
    w = complex(1.0)
    for j, k in _steps(cycle):
        if j == k:
            if j not in g.loops:
                raise StepOffSupport((j, k))
        elif not g.has_edge(j, k):
            raise StepOffSupport((j, k))
        w *= complex(h[j, k])
    return w


def ab_phase(h, cycle, g: SupportGraph | None = None) -> float:
    """Aharonov-Bohm phase: principal argument of the cycle weight."""
    w = cycle_weight(h, cycle, g)
    if w == 0:
        raise ZeroWeight(f"cycle {cycle} has zero weight")
    return float(wrap_phase(np.angle(w)))


def gauge_potential(h, tol: float | None = None) -> np.ndarray:
    """Skew-symmetric matrix of entry phases on support edges, zero elsewhere."""
    h = np.asarray(h)
    g = support(h, tol)
    theta = np.zeros(h.shape, dtype=float)
    for j, k in g.edges:
        a = float(wrap_phase(np.angle(h[j, k])))
        theta[j, k] = a
        # -pi is outside the principal range; H[k][j] = conj(H[j][k])
        theta[k, j] = float(wrap_phase(-a))
    return theta


@dataclass(frozen=True)
class CanonicalForm:
    matrix: np.ndarray
    gauge: np.ndarray
    graph: SupportGraph
    forest: SpanningForest


def canonical_form(h, tol: float | None = None) -> CanonicalForm:
    """Gauge-orbit representative with nonnegative real spanning-forest edges.

    Phases are propagated outward from each component's root (phase 0) along
    the deterministic BFS forest, so tree entries become their moduli and all
    gauge-invariant phase information sits on the chord entries.
    """
    h = np.asarray(h, dtype=complex)
    g = support(h, tol)
    forest = spanning_forest(g)
    phases = np.zeros(g.n)
    for v in forest.order:
        p = forest.parent[v]
        if p >= 0:
            # exp(i(phi_p - phi_v)) H[p][v] = |H[p][v]|
            phases[v] = phases[p] + np.angle(h[p, v])
    phases = wrap_phase(phases)
    m = gauge_conjugate(phases, h)
    for j, k in forest.tree_edges:
        m[j, k] = m[k, j] = abs(h[j, k])
    for v in range(g.n):
        m[v, v] = m[v, v].real
    return CanonicalForm(m, phases, g, forest)


@dataclass(frozen=True)
class InvariantFingerprint:
    moduli: dict
    diagonal: np.ndarray
    cycles: tuple
    cycle_weights: tuple

    def ab_phases(self):
        return [float(wrap_phase(np.angle(w))) for w in self.cycle_weights]


def fingerprint(h, tol: float | None = None) -> InvariantFingerprint:
    h = np.asarray(h, dtype=complex)
    g = support(h, tol)
    cycles = tuple(fundamental_cycles(g))
    moduli = {e: float(abs(h[e])) for e in sorted(g.edges)}
    weights = tuple(cycle_weight(h, c, g) for c in cycles)
    return InvariantFingerprint(moduli, np.real(np.diag(h)).copy(), cycles, weights)


def compare_fingerprints(a: InvariantFingerprint, b: InvariantFingerprint, tol: float = EQUIV_TOL):
    """Return ``None`` when fingerprints agree, else a short reason string.

    Moduli and diagonal are compared with tolerance ``tol * scale``; cycle
    weights relative to their magnitude, since they scale multiplicatively
    with the edge moduli.
    """
    if set(a.moduli) != set(b.moduli):
        return "supports differ"
    scale = max(1.0, *a.moduli.values(), *b.moduli.values()) if a.moduli else 1.0
    scale = max(scale, max_abs(a.diagonal), max_abs(b.diagonal))
    if a.diagonal.shape != b.diagonal.shape:
        return "dimensions differ"
    if max_abs(a.diagonal - b.diagonal) > tol * scale:
        return "diagonals differ"
    for e in a.moduli:
        if abs(a.moduli[e] - b.moduli[e]) > tol * scale:
            return f"modulus of edge {e} differs"
    for c, wa, wb in zip(a.cycles, a.cycle_weights, b.cycle_weights):
        if abs(wa - wb) > tol * max(abs(wa), abs(wb)):
            return f"weight of cycle {c} differs"
    return None


def gauge_equivalent(h1, h2, tol: float = EQUIV_TOL, support_tol: float | None = None):
    """Find phases ``phi`` with ``gauge_conjugate(phi, h1) == h2`` within tol.

    Returns ``None`` when the invariants differ. The witness is normalized
    so each component's lowest-index vertex has phase 0.

    Raises
    ------
    VerificationFailure
        If the invariants agree but the reconstructed gauge does not map
        ``h1`` to ``h2``.
    """
    h1 = np.asarray(h1, dtype=complex)
    h2 = np.asarray(h2, dtype=complex)
    if h1.shape != h2.shape:
        raise DimensionMismatch(f"shapes {h1.shape} and {h2.shape}")
    if compare_fingerprints(fingerprint(h1, support_tol), fingerprint(h2, support_tol), tol):
        return None
    c1 = canonical_form(h1, support_tol)
    c2 = canonical_form(h2, support_tol)
    phases = wrap_phase(c1.gauge - c2.gauge)
    err = max_abs(gauge_conjugate(phases, h1) - h2)
    if err > tol * max(1.0, max_abs(h1)):
        raise VerificationFailure(f"gauge reconstruction error {err:.3e} exceeds tolerance")
    return phases


def _real_cycles(fp: InvariantFingerprint, tol: float):
    return [abs(w.imag) <= tol * abs(w) for w in fp.cycle_weights]


def trivial_gauge(h, tol: float = REAL_TOL, support_tol: float | None = None):
    """Phases mapping ``h`` to a real matrix, or ``None`` if none exist.

    Such a gauge exists exactly when every cycle weight is real; checking the
    fundamental cycles suffices.
    """
    h = np.asarray(h, dtype=complex)
    fp = fingerprint(h, support_tol)
    if not all(_real_cycles(fp, tol)):
        return None
    cf = canonical_form(h, support_tol)
    if max_abs(cf.matrix.imag) > tol * max(1.0, max_abs(h)):
        raise VerificationFailure("canonical form of a real-invariant matrix is not real")
    return cf.gauge


def conjugate_to_conjugate(h, tol: float = REAL_TOL, support_tol: float | None = None):
    """Phases mapping ``h`` to its complex conjugate, or ``None``.

    If ``phi`` makes ``h`` real then ``2*phi`` maps ``h`` to ``conj(h)``.
    """
    h = np.asarray(h, dtype=complex)
    phi = trivial_gauge(h, tol, support_tol)
    if phi is None:
        return None
    phases = wrap_phase(2 * phi)
    err = max_abs(gauge_conjugate(phases, h) - h.conj())
    if err > tol * max(1.0, max_abs(h)):
        raise VerificationFailure(f"conjugation witness error {err:.3e}")
    return phases
