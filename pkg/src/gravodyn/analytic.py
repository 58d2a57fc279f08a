"""Closed-form reference results for the band-coupled level scheme.

These formulas are the weak-coupling solution of the chooser model: the
three-state eigenvalues and zero-eigenvector, the resonance Green
function, and the exponential decay laws that the exact numerical
propagation reproduces up to band-discreteness oscillations.

All functions take the decay width ``gamma`` explicitly instead of
recomputing it internally, so both free parameterizations and the
self-consistent choice delta = pi*gamma (which forces gamma = u) can be
exercised.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np


def gamma_from(u, delta):
    """Golden-rule width of the projected band state: pi*u^2/delta."""
    if delta <= 0:
        raise ValueError("delta must be positive")
    return math.pi * u * u / delta


def self_consistent_width(u):
    """Width and band width under the closure delta = pi*gamma.

    Substituting delta = pi*gamma into gamma = pi*u^2/delta gives
    gamma^2 = u^2, so gamma = |u| and delta = pi*|u|.
    """
    gamma = abs(u)
    return gamma, math.pi * gamma


@dataclass(frozen=True)
class ChooserAnalytics:
    """Bundle of the closed-form parameters (gamma, delta, u, v, w, alpha)."""

    gamma: float
    delta: float
    u: float
    v: float = 0.0
    w: float = 0.0
    alpha: float = 0.0

    @classmethod
    def from_couplings(cls, u, delta, v=0.0, w=0.0, alpha=0.0):
        """Construct with gamma = pi*u^2/delta."""
        return cls(gamma=gamma_from(u, delta), delta=delta, u=u, v=v, w=w, alpha=alpha)

    @classmethod
    def self_consistent(cls, u, v=0.0, w=0.0, alpha=0.0):
        """Construct under delta = pi*gamma, i.e. gamma = |u|, delta = pi|u|."""
        gamma, delta = self_consistent_width(u)
        return cls(gamma=gamma, delta=delta, u=u, v=v, w=w, alpha=alpha)


def green(eps, alpha, gamma):
    """Resonance Green function 1/(eps - alpha + i*gamma)."""
    if gamma <= 0:
        raise ValueError("gamma must be positive")
    return 1.0 / complex(eps - alpha, gamma)


def chooser_eigenvalues(v, w):
    """Eigenvalues (0, +sqrt(v^2+w^2), -sqrt(v^2+w^2)) of the 3-state scheme."""
    r = math.hypot(v, w)
    return 0.0, r, -r


def zero_state_coeffs(v, w):
    """Coefficients (C_Q0, C_R0, C_K) of the zero-energy eigenstate.

    The zero eigenvector of the 3-state matrix with couplings (+v, +w) is
    (w, 0, -v)/sqrt(v^2+w^2): the screen state carries no weight, the
    source and projected-band components have magnitudes w/r and v/r, and
    their relative sign is negative (required by v*C_Q0 + w*C_K = 0).
    For w/v -> 0 all weight sits on the projected band state.
    """
    r = math.hypot(v, w)
    if r == 0.0:
        raise ValueError("v = w = 0 leaves the zero eigenvector undefined")
    return w / r, 0.0, -v / r


def kproj_amplitude(t, u, delta, gamma):
    """Weak-coupling projected-band-state amplitude i*pi*(u/delta)*e^{-gamma*t}."""
    return 1j * math.pi * (u / delta) * cmath.exp(-gamma * t)


def r0_amplitude(u, w, delta, gamma, alpha=0.0):
    """Long-time screen-state amplitude pi*u*w/(delta*(gamma - i*alpha))."""
    if gamma <= 0:
        raise ValueError("gamma must be positive")
    return math.pi * u * w / (delta * complex(gamma, -alpha))


def band_weight(t, u, w, gamma):
    """Summed band weight 1 - e^{-2*gamma*t} - w^2/u^2.

    Valid for t of order 1/gamma and beyond; at t = 0 the formula is
    negative (equal to -w^2/u^2), an artifact of the weak-coupling
    derivation, so comparisons against exact propagation start at
    t = 1/gamma.
    """
    if u == 0:
        raise ValueError("u must be nonzero")
    return 1.0 - np.exp(-2.0 * gamma * np.asarray(t)) - (w / u) ** 2
