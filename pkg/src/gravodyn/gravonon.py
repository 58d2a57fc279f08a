"""Matter-induced localized-mode structure.

A set of atomic cores at positions x_i each carries a normalized Gaussian
envelope g_i(x).  The interaction matrix

    Omega_ij = theta^2 * V_i * V_j * <g_i| (-d^2/dx^2 / (2 m_g) + V_o) |g_j>

defines a collection of coupled oscillators; diagonalizing it yields the
independent-mode spectrum, and each mode couples back to the matter field
through the envelope-weighted coupling function.

The envelopes are g_i(x) = (pi sigma^2)^{-1/4} exp(-(x-x_i)^2 / (2 sigma^2)),
so all matrix elements have closed forms:

    <g_i|g_j>                    = exp(-d^2/(4 sigma^2)),   d = x_i - x_j
    <g_i| -d^2/dx^2/(2m) |g_j>   = exp(-d^2/(4 sigma^2)) *
                                   (1/(4 m sigma^2)) * (1 - d^2/(2 sigma^2))

which a grid-quadrature assembly must reproduce (tested).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ContractViolationError


@dataclass(frozen=True)
class SiteBasis:
    """Localized-envelope basis: positions, width, couplings, mass, potential."""

    positions: tuple[float, ...]
    envelope_width: float
    vgrav_values: tuple[float, ...]
    theta: float = 1.0
    m_g: float = 1.0
    v_o: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "positions", tuple(float(x) for x in self.positions))
        object.__setattr__(self, "vgrav_values", tuple(float(v) for v in self.vgrav_values))
        if self.envelope_width <= 0:
            raise ValueError("envelope_width must be positive")
        if self.m_g <= 0:
            raise ValueError("m_g must be positive")
        if len(self.vgrav_values) != len(self.positions):
            raise ValueError("one coupling value per site required")
        diffs = np.diff(self.positions)
        if len(diffs) and not np.all(diffs > 0):
            raise ValueError("positions must be strictly increasing")

    @property
    def n_sites(self):
        return len(self.positions)

    def envelope(self, i, x):
        """Normalized Gaussian g_i(x) centered on site i."""
        sigma = self.envelope_width
        u = (np.asarray(x, dtype=float) - self.positions[i]) / sigma
        return (math.pi * sigma * sigma) ** (-0.25) * np.exp(-0.5 * u * u)


@dataclass(frozen=True)
class ModeSpectrum:
    """Eigenmodes of the site coupling matrix.

    ``frequencies`` ascend; ``transform`` columns map site coordinates to
    mode coordinates (orthogonal to 1e-12).
    """

    frequencies: np.ndarray
    transform: np.ndarray


def build_omega(basis: SiteBasis) -> np.ndarray:
    """Assemble the real symmetric mode matrix by closed-form integrals."""
    sigma = basis.envelope_width
    x = np.asarray(basis.positions)
    v = np.asarray(basis.vgrav_values)
    d = x[:, None] - x[None, :]
    overlap = np.exp(-(d * d) / (4 * sigma * sigma))
    kinetic = (1.0 / (4.0 * basis.m_g * sigma * sigma)) * (1.0 - (d * d) / (2 * sigma * sigma))
    omega = basis.theta**2 * np.outer(v, v) * overlap * (kinetic + basis.v_o)
    # symmetrize exactly: the formula is symmetric, but floating evaluation
    # of x_i - x_j and x_j - x_i can differ in the last bit
    omega = 0.5 * (omega + omega.T)
    return omega


def build_omega_quadrature(basis: SiteBasis, n_points=20001, pad=12.0) -> np.ndarray:
    """Trapezoid-rule assembly of the same matrix (reference route).

    The kinetic part is evaluated as <g_i|T|g_j> with the analytic second
    derivative of the Gaussian envelope, integrated on a uniform grid
    covering all sites plus ``pad`` widths on both ends.
    """
    sigma = basis.envelope_width
    lo = min(basis.positions) - pad * sigma
    hi = max(basis.positions) + pad * sigma
    x = np.linspace(lo, hi, n_points)
    n = basis.n_sites
    g = np.array([basis.envelope(i, x) for i in range(n)])
    # second derivative of exp(-u^2/2)/norm: (u^2 - 1)/sigma^2 * g
    u = (x[None, :] - np.asarray(basis.positions)[:, None]) / sigma
    g_xx = (u * u - 1.0) / (sigma * sigma) * g
    omega = np.empty((n, n))
    for i in range(n):
        for j in range(n):
            integrand = g[i] * (-g_xx[j] / (2.0 * basis.m_g) + basis.v_o * g[j])
            omega[i, j] = (
                basis.theta**2
                * basis.vgrav_values[i]
                * basis.vgrav_values[j]
                * np.trapezoid(integrand, x)
            )
    return 0.5 * (omega + omega.T)


def diagonalize_modes(omega) -> ModeSpectrum:
    """Eigenmodes of a symmetric coupling matrix, frequencies ascending."""
    omega = np.asarray(omega, dtype=float)
    if omega.ndim != 2 or omega.shape[0] != omega.shape[1]:
        raise ContractViolationError("mode matrix must be square")
    if not np.allclose(omega, omega.T, rtol=0.0, atol=1e-12 * max(1.0, np.max(np.abs(omega)))):
        raise ContractViolationError("mode matrix is not symmetric")
    frequencies, transform = np.linalg.eigh(0.5 * (omega + omega.T))
    gram = transform.T @ transform
    if np.max(np.abs(gram - np.eye(len(frequencies)))) > 1e-12:
        raise ContractViolationError("mode transform is not orthogonal to 1e-12")
    return ModeSpectrum(frequencies=frequencies, transform=transform)


def coupling_function(x, i, basis: SiteBasis, omega_i) -> np.ndarray:
    """Mode-i coupling profile sqrt(omega_i/2) * g_i(x) * V_i * theta.

    A negative frequency marks an unstable mode and is rejected rather than
    silently clamped.
    """
    if omega_i < 0:
        raise ValueError(f"negative mode frequency {omega_i}: unstable mode")
    return math.sqrt(omega_i / 2.0) * basis.envelope(i, x) * basis.vgrav_values[i] * basis.theta


def field_value(x, q, basis: SiteBasis, frequencies) -> np.ndarray:
    """Displacement-field value sum_i 2 q_i g(x - x_i) for displacements q."""
    q = np.asarray(q, dtype=float)
    if len(q) != basis.n_sites:
        raise ValueError("one displacement per site required")
    total = np.zeros_like(np.asarray(x, dtype=float))
    for i in range(basis.n_sites):
        total = total + 2.0 * q[i] * coupling_function(x, i, basis, frequencies[i])
    return total


def potential_term(x, q, basis: SiteBasis, frequencies) -> np.ndarray:
    """Quadratic field potential sum_ij q_i q_j g(x-x_i) g(x-x_j).

    Equals (sum_i q_i g(x-x_i))^2, i.e. the square of half the
    displacement-field value; manifestly non-negative.
    """
    q = np.asarray(q, dtype=float)
    if len(q) != basis.n_sites:
        raise ValueError("one displacement per site required")
    amplitude = np.zeros_like(np.asarray(x, dtype=float))
    for i in range(basis.n_sites):
        amplitude = amplitude + q[i] * coupling_function(x, i, basis, frequencies[i])
    return amplitude**2
