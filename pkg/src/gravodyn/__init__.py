"""Deterministic quantum-dynamics workbench.

Truncated Fock-space configuration-interaction models, exact spectral
propagation, closed-form resonance formulas, localized-mode assembly,
coupled mean-field grid fields, and order-of-magnitude estimators.
"""

__version__ = "0.1.0"
