"""Hermitian matrices, spectral exponentials and probability currents.

Matrices are plain dense numpy arrays. Functions that accept a time ``t``
also accept a 1-D array of times and then return a stack with the time
axis first.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    ConvergenceFailure,
    DimensionMismatch,
    HermiticityViolation,
    NonSquareError,
)

HERMITICITY_TOL = 1e-9
UNITARITY_TOL = 1e-9
CURRENT_TOL = 1e-8


def max_abs(a) -> float:
    a = np.asarray(a)
    return float(np.max(np.abs(a))) if a.size else 0.0


def wrap_phase(phi):
    """Map angles into the principal range (-pi, pi]."""
    phi = np.asarray(phi, dtype=float)
    return np.pi - np.mod(np.pi - phi, 2 * np.pi)


def phase_factors(phases) -> np.ndarray:
    """``exp(i*phi)`` with exact values at multiples of pi/2."""
    phases = np.asarray(phases, dtype=float)
    out = np.exp(1j * phases)
    quarter = phases / (np.pi / 2)
    exact = np.isclose(quarter, np.round(quarter), rtol=0, atol=1e-15)
    lookup = np.array([1, 1j, -1, -1j])
    idx = np.mod(np.round(quarter).astype(int), 4)
    out[exact] = lookup[idx[exact]]
    return out


def _square(raw) -> np.ndarray:
    a = np.array(raw, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise NonSquareError(f"expected a non-empty square matrix, got shape {a.shape}")
    return a


def validate_hermitian(raw, tol: float = HERMITICITY_TOL) -> np.ndarray:
    """Check that ``raw`` is Hermitian and return its symmetrized copy.

    The tolerance is absolute for matrices with ``max|H| <= 1`` and relative
    to ``max|H|`` otherwise. Within tolerance, the matrix is replaced by
    ``(H + H^dagger) / 2`` so the result is exactly Hermitian. The returned
    array is read-only.

    Raises
    ------
    NonSquareError
        If ``raw`` is not a square 2-D array.
    HermiticityViolation
        If the largest asymmetry exceeds the tolerance; the worst entry is
        reported on the exception.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    a = _square(raw)
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix contains NaN or infinite entries")
    asym = np.abs(a - a.conj().T)
    worst = np.unravel_index(np.argmax(asym), asym.shape)
    bound = tol * max(1.0, max_abs(a))
    if asym[worst] > bound:
        raise HermiticityViolation(tuple(int(i) for i in worst), float(asym[worst]), bound)
    h = (a + a.conj().T) / 2
    h.flags.writeable = False
    return h


@dataclass(frozen=True)
class SpectralDecomposition:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def spectral(h) -> SpectralDecomposition:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending."""
    h = np.asarray(h, dtype=complex)
    try:
        w, v = np.linalg.eigh(h)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from exc
    dec = SpectralDecomposition(w, v)
    n = h.shape[0]
    err = max_abs(dec.reconstruct() - h)
    if err > 1e-10 * max(1.0, max_abs(h)) * n:
        raise ConvergenceFailure(f"spectral reconstruction error {err:.3e}")
    return dec


def _evolve_from(dec: SpectralDecomposition, t) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    v = dec.eigenvectors
    phases = np.exp(-1j * np.multiply.outer(t, dec.eigenvalues))
    # V diag(e^{-i t lambda}) V^dagger, broadcast over leading time axes
    return (v * phases[..., None, :]) @ v.conj().T


def evolve(h, t) -> np.ndarray:
    """Propagator ``exp(-i t H)`` for a scalar ``t`` or an array of times."""
    return _evolve_from(spectral(h), t)


def transition_probabilities(u) -> np.ndarray:
    """``P[f][s] = |U[f][s]|**2``, the probability of moving from s to f."""
    return np.abs(np.asarray(u)) ** 2


def _current_from_probabilities(p: np.ndarray) -> np.ndarray:
    # J[s][f] = P_{s->f} - P_{f->s} = P[f][s] - P[s][f]
    pt = np.swapaxes(p, -1, -2)
    return pt - p


def quantum_probability_current(h, t) -> np.ndarray:
    """Quantum probability current ``J[s][f] = |U[f][s]|^2 - |U[s][f]|^2``.

    Antisymmetric by construction. Vanishes identically (for all t) exactly
    when the walk is time-symmetric.
    """
    return _current_from_probabilities(transition_probabilities(evolve(h, t)))


def gauge_conjugate(phases, h) -> np.ndarray:
    """Apply the diagonal unitary ``diag(exp(i*phases))`` by conjugation.

    ``result[j][k] = exp(i(phi_j - phi_k)) * H[j][k]``.
    """
    phases = np.asarray(phases, dtype=float)
    h = np.asarray(h, dtype=complex)
    if phases.shape != (h.shape[0],) or h.shape[0] != h.shape[1]:
        raise DimensionMismatch(
            f"{phases.shape[0] if phases.ndim else 0} phases for a {h.shape} matrix"
        )
    d = phase_factors(phases)
    return d[:, None] * h * d.conj()[None, :]


@dataclass(frozen=True)
class DiagonalSplit:
    off_diagonal: np.ndarray
    diagonal: np.ndarray
    uniform: bool
    alpha: float | None


def diagonal_split(h, tol: float = HERMITICITY_TOL) -> DiagonalSplit:
    """Split ``H = H0 + diag(d)`` and test whether ``d`` is a uniform shift."""
    h = np.asarray(h, dtype=complex)
    d = np.real(np.diag(h)).copy()
    h0 = h.copy()
    np.fill_diagonal(h0, 0)
    mean = float(np.mean(d))
    uniform = bool(np.max(np.abs(d - mean)) <= tol * max(1.0, max_abs(h)))
    return DiagonalSplit(h0, d, uniform, mean if uniform else None)
