"""Small dense numerical kernels used by the physics modules.

Real cubic roots (closed form plus one Newton polish), eigenvalues and
LU-based inversion of small complex matrices, and adaptive trapezoid
quadrature.
"""

from __future__ import annotations

import logging
import math
import warnings
from typing import Callable

import numpy as np
from scipy import linalg
from scipy.integrate import trapezoid

from .errors import DegenerateAllZero, NoConvergence, NumericsError, SingularMatrix
from .types import Cubic

logger = logging.getLogger(__name__)

MAX_DIMENSION = 16
PIVOT_RTOL = 1.0e-14


def _quadratic_roots(a: float, b: float, c: float) -> list[float]:
    disc = b * b - 4.0 * a * c
    if disc < 0:
        return []
    if disc == 0:
        root = -b / (2.0 * a)
        return [root, root]
    q = -0.5 * (b + math.copysign(math.sqrt(disc), b))
    roots = [q / a]
    roots.append(c / q if q != 0 else -roots[0])
    return sorted(roots)


def _depressed_cubic_roots(a: float, b: float, c: float) -> list[float]:
    """Real roots of x^3 + a x^2 + b x + c."""
    shift = a / 3.0
    p = b - a * a / 3.0
    q = 2.0 * a ** 3 / 27.0 - a * b / 3.0 + c
    if p == 0 and q == 0:
        return [-shift] * 3
    disc = (q / 2.0) ** 2 + (p / 3.0) ** 3
    if disc > 0:
        big = -math.copysign(np.cbrt(abs(q) / 2.0 + math.sqrt(disc)), q)
        small = -p / (3.0 * big) if big != 0 else 0.0
        return [big + small - shift]
    # three real roots (two coincide when disc == 0)
    r = math.sqrt(-p / 3.0)
    cos_arg = (3.0 * q / (2.0 * p)) * math.sqrt(-3.0 / p)
    phi = math.acos(min(1.0, max(-1.0, cos_arg)))
    return [2.0 * r * math.cos(phi / 3.0 - 2.0 * math.pi * k / 3.0) - shift for k in range(3)]


def _polish(c: Cubic, x: float) -> float:
    slope = c.derivative(x)
    if slope == 0 or not math.isfinite(slope):
        return x
    candidate = x - c(x) / slope
    if not math.isfinite(candidate):
        return x
    return candidate if abs(c(candidate)) <= abs(c(x)) else x


def real_roots(c: Cubic) -> list[float]:
    """All real roots of *c*, ascending, repeated according to multiplicity."""
    coeffs = (c.c3, c.c2, c.c1, c.c0)
    if not all(math.isfinite(v) for v in coeffs):
        raise NumericsError(f"non-finite cubic coefficients {coeffs!r}")
    if all(v == 0 for v in coeffs):
        raise DegenerateAllZero("all cubic coefficients are zero")
    if c.c3 == 0:
        if c.c2 == 0:
            if c.c1 == 0:
                return []
            return [-c.c0 / c.c1]
        roots = _quadratic_roots(c.c2, c.c1, c.c0)
    else:
        roots = _depressed_cubic_roots(c.c2 / c.c3, c.c1 / c.c3, c.c0 / c.c3)
    return sorted(_polish(c, r) for r in roots)


def _check_square(m: np.ndarray) -> np.ndarray:
    arr = np.asarray(m, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {arr.shape}")
    if arr.shape[0] > MAX_DIMENSION:
        raise ValueError(f"matrix dimension {arr.shape[0]} exceeds {MAX_DIMENSION}")
    if not np.all(np.isfinite(arr)):
        raise NumericsError("matrix has non-finite entries")
    return arr


def eigenvalues(m: np.ndarray) -> np.ndarray:
    """Eigenvalues of a small dense complex matrix (LAPACK Hessenberg + shifted QR)."""
    arr = _check_square(m)
    try:
        return linalg.eigvals(arr, check_finite=False)
    except linalg.LinAlgError as exc:
        raise NoConvergence(f"eigenvalue iteration failed for {arr.shape[0]}x{arr.shape[0]} matrix: {exc}") from exc


def lu_factor_checked(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Partial-pivot LU of *m*; raises :class:`SingularMatrix` on a negligible pivot."""
    arr = _check_square(m)
    scale = float(np.max(np.sum(np.abs(arr), axis=1))) if arr.size else 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", linalg.LinAlgWarning)
        lu, piv = linalg.lu_factor(arr, check_finite=False)
    pivots = np.abs(np.diag(lu))
    if scale == 0 or np.any(pivots < PIVOT_RTOL * scale):
        raise SingularMatrix(f"pivot {float(np.min(pivots)):.3e} below {PIVOT_RTOL:.0e} x row norm {scale:.3e}")
    return lu, piv


def invert(m: np.ndarray) -> np.ndarray:
    lu, piv = lu_factor_checked(m)
    return linalg.lu_solve((lu, piv), np.eye(lu.shape[0], dtype=complex), check_finite=False)


def integrate(
    f: Callable[[float], float],
    a: float,
    b: float,
    n_points: int,
    *,
    rtol: float = 1.0e-6,
    max_doublings: int = 12,
) -> float:
    """Composite trapezoid of *f* over [a, b], doubling the resolution until
    successive estimates agree to *rtol*."""
    if n_points < 2:
        raise ValueError("n_points must be >= 2")
    if b < a:
        raise ValueError("integration bounds must satisfy a <= b")
    if a == b:
        return 0.0
    xs = np.linspace(a, b, n_points)
    ys = np.array([f(float(x)) for x in xs], dtype=float)
    value = float(trapezoid(ys, xs))
    for doubling in range(max_doublings):
        mids = 0.5 * (xs[:-1] + xs[1:])
        mid_vals = np.array([f(float(x)) for x in mids], dtype=float)
        new_xs = np.empty(xs.size + mids.size)
        new_ys = np.empty_like(new_xs)
        new_xs[0::2], new_xs[1::2] = xs, mids
        new_ys[0::2], new_ys[1::2] = ys, mid_vals
        refined = float(trapezoid(new_ys, new_xs))
        change = abs(refined - value)
        xs, ys = new_xs, new_ys
        logger.debug("integrate: %d points, value %.12e, change %.3e", xs.size, refined, change)
        if change <= rtol * abs(refined) or (refined == 0 and value == 0):
            return refined
        value = refined
    logger.warning("integrate: no convergence to rtol=%g after %d doublings", rtol, max_doublings)
    return value
