"""Real-root extraction for the small univariate polynomials of the solvers."""
from typing import List, Optional

import numpy as np
from numpy.polynomial import polynomial as P

IMAG_TOL = 1e-8
MERGE_TOL = 1e-10
TRIM_TOL = 1e-13


def trim_leading(coeffs: np.ndarray, rel_tol: float = TRIM_TOL) -> np.ndarray:
    """Drop highest-order coefficients that are negligible against the largest one."""
    coeffs = np.asarray(coeffs, dtype=float)
    scale = np.max(np.abs(coeffs)) if coeffs.size else 0.0
    if scale == 0.0:
        return coeffs[:1] * 0.0
    n = coeffs.size
    while n > 1 and abs(coeffs[n - 1]) <= rel_tol * scale:
        n -= 1
    return coeffs[:n]


def _polish(coeffs: np.ndarray, root: float, steps: int = 2) -> float:
    """A few Newton steps on a real root; keeps the original if they do not help."""
    deriv = P.polyder(coeffs)
    best, best_val = root, abs(P.polyval(root, coeffs))
    x = root
    for _ in range(steps):
        d = P.polyval(x, deriv)
        if d == 0.0:
            break
        x = x - P.polyval(x, coeffs) / d
        val = abs(P.polyval(x, coeffs))
        if val < best_val:
            best, best_val = x, val
    return float(best)


def real_roots_by_magnitude(coeffs: np.ndarray) -> List[float]:
    """Real roots of a polynomial (lowest power first), sorted by |root|.

    Complex roots whose imaginary part is below 1e-8 (1 + |re|) count as
    real; roots closer than 1e-10 are merged. A constant polynomial has
    no roots.
    """
    trimmed = trim_leading(coeffs)
    if trimmed.size < 2:
        return []
    raw = P.polyroots(trimmed)
    reals = []
    for z in raw:
        if abs(z.imag) < IMAG_TOL * (1.0 + abs(z.real)):
            reals.append(_polish(trimmed, float(z.real)))
    reals.sort(key=lambda v: (abs(v), v))
    merged: List[float] = []
    for v in reals:
        if merged and abs(v - merged[-1]) <= MERGE_TOL * (1.0 + abs(v)):
            continue
        merged.append(v)
    return merged


def least_absolute_root(coeffs: np.ndarray) -> Optional[float]:
    """Real root of least absolute value, or None if there is none."""
    roots = real_roots_by_magnitude(coeffs)
    return roots[0] if roots else None
