from __future__ import annotations

import numpy as np

from shared.errors import DomainError
from utils.logging import log

from .poly import FractionalPoly

# Residual contract: |p(r)| <= RESIDUAL_TOLERANCE * max|coeff| * max(1, |r|)^deg
RESIDUAL_TOLERANCE = 1e-8


def wplane_roots(p: FractionalPoly) -> np.ndarray:
    """All complex roots of a polynomial in w, with multiplicity.

    Roots are the eigenvalues of the companion matrix (numpy.roots). Zero
    low-order coefficients yield exact roots at w = 0.

    Args:
        p (FractionalPoly): Polynomial in w = s^(1/p.base_v)

    Returns:
        np.ndarray: deg(p) complex roots, empty for a non-zero constant

    Raises:
        DomainError: If p is the zero polynomial
    """
    if p.is_zero:
        raise DomainError("the zero polynomial has no finite root set")
    if p.degree == 0:
        return np.zeros(0, dtype=complex)

    # numpy.roots wants descending coefficients
    roots = np.roots(p.coeffs[::-1]).astype(complex)

    log.debug(
        "Computed w-plane roots",
        base_v=p.base_v,
        degree=p.degree,
        max_residual=float(np.max(root_residuals(p, roots))),
    )
    return roots


def root_residuals(p: FractionalPoly, roots: np.ndarray) -> np.ndarray:
    """Scaled residuals |p(r)| / (max|coeff| * max(1, |r|)^deg), one per root"""
    scale = np.max(np.abs(p.coeffs)) * np.maximum(1.0, np.abs(roots)) ** p.degree
    return np.abs(p(roots)) / scale
