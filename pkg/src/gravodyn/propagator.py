"""Exact-diagonalization time evolution.

The solution of i dΨ/dt = HΨ is evaluated as the spectral sum
Ψ(t) = Σ_k e^{−iλ_k t} v_k ⟨v_k|Ψ(0)⟩ over the full eigendecomposition.
All model bases here are at most a few thousand states, so full
diagonalization is cheaper and more accurate than step integration
(a small-step integrator survives only as a test oracle).

Everything is deterministic: there is no random number generator anywhere
in this package, and repeated runs are bit-identical.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ContractViolationError
from .models import HamiltonianMatrix

NORM_TOL = 1e-10
ORTHO_TOL = 1e-12
RESIDUAL_TOL = 1e-10


@dataclass
class SpectralDecomposition:
    """Eigenpairs of a Hermitian matrix: ascending eigenvalues, orthonormal columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dim(self):
        return len(self.eigenvalues)


@dataclass
class TimeSeries:
    """Sampled named channels over a common ascending time grid."""

    times: np.ndarray
    channels: dict[str, np.ndarray]
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=float)
        for name, values in self.channels.items():
            values = np.asarray(values)
            if values.shape != self.times.shape:
                raise ValueError(
                    f"channel {name!r} length {values.shape} does not match time grid"
                )
            self.channels[name] = values

    def column_names(self):
        return ["t"] + list(self.channels)


def diagonalize(h: HamiltonianMatrix | np.ndarray) -> SpectralDecomposition:
    """Eigendecompose a Hermitian matrix, verifying the spectral contract.

    Raises ContractViolationError if the input is not Hermitian entrywise,
    if eigenvector residuals exceed 1e-10 times the spectral norm, or if
    the eigenbasis is not orthonormal to 1e-12.
    """
    entries = h.entries if isinstance(h, HamiltonianMatrix) else np.asarray(h, dtype=complex)
    if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
        raise ContractViolationError("matrix must be square")
    if not np.array_equal(entries, entries.conj().T):
        raise ContractViolationError("matrix is not Hermitian entrywise")
    eigenvalues, eigenvectors = np.linalg.eigh(entries)
    scale = float(np.max(np.abs(eigenvalues))) if len(eigenvalues) else 0.0
    residual = entries @ eigenvectors - eigenvectors * eigenvalues
    max_residual = float(np.max(np.linalg.norm(residual, axis=0))) if len(eigenvalues) else 0.0
    if max_residual > RESIDUAL_TOL * max(scale, 1e-300):
        raise ContractViolationError(
            f"eigenpair residual {max_residual:.3e} exceeds {RESIDUAL_TOL:.0e}·‖H‖"
        )
    gram = eigenvectors.conj().T @ eigenvectors
    ortho_defect = float(np.max(np.abs(gram - np.eye(len(eigenvalues)))))
    if ortho_defect > ORTHO_TOL:
        raise ContractViolationError(
            f"eigenbasis orthonormality defect {ortho_defect:.3e} exceeds {ORTHO_TOL:.0e}"
        )
    return SpectralDecomposition(eigenvalues=eigenvalues, eigenvectors=eigenvectors)


def _check_normalized(psi0):
    psi0 = np.asarray(psi0, dtype=complex)
    norm = float(np.linalg.norm(psi0))
    if abs(norm - 1.0) > NORM_TOL:
        raise ContractViolationError(f"initial state norm {norm} is not 1 within {NORM_TOL:.0e}")
    return psi0


def evolve(d: SpectralDecomposition, psi0, times) -> np.ndarray:
    """Propagate: rows are states Ψ(t) on the supplied time grid.

    Ψ(t) = Σ_k e^{−iλ_k t} v_k ⟨v_k|Ψ(0)⟩; the initial state must be
    normalized (contract violation otherwise) and the result stays
    normalized to 1e-10 at every time.
    """
    psi0 = _check_normalized(psi0)
    times = np.asarray(times, dtype=float)
    coeff = d.eigenvectors.conj().T @ psi0
    phases = np.exp(-1j * np.outer(times, d.eigenvalues))
    return (d.eigenvectors @ (phases * coeff).T).T


def amplitude(d: SpectralDecomposition, psi0, target_index, t) -> complex:
    """⟨target|Ψ(t)⟩ for a single basis target, consistent with evolve."""
    if not 0 <= target_index < d.dim:
        raise IndexError(f"target index {target_index} out of range for dim {d.dim}")
    psi0 = _check_normalized(psi0)
    coeff = d.eigenvectors.conj().T @ psi0
    return complex(d.eigenvectors[target_index, :] @ (np.exp(-1j * d.eigenvalues * t) * coeff))


def occupation_weights(times, states, groups) -> TimeSeries:
    """Sum |Ψ_i(t)|² over named index groups into a TimeSeries.

    ``groups`` maps channel name -> iterable of basis indices.  Overlapping
    groups are permitted but flagged in the metadata, since then the
    channels no longer partition the total weight.
    """
    times = np.asarray(times, dtype=float)
    states = np.asarray(states, dtype=complex)
    if states.shape[0] != len(times):
        raise ValueError("state count does not match time grid")
    weights = np.abs(states) ** 2
    channels = {}
    seen = set()
    overlapping = False
    for name, indices in groups.items():
        idx = list(indices)
        if any(i in seen for i in idx):
            overlapping = True
        seen.update(idx)
        if idx and not all(0 <= i < states.shape[1] for i in idx):
            raise IndexError(f"group {name!r} indexes outside the basis")
        channels[name] = weights[:, idx].sum(axis=1)
    metadata = {"overlapping_groups": overlapping}
    return TimeSeries(times=times, channels=channels, metadata=metadata)


def total_norms(states) -> np.ndarray:
    """Total norm Σ_i |Ψ_i|² at each sampled time."""
    return np.sum(np.abs(np.asarray(states)) ** 2, axis=1)
