"""Monodromy matrices of periodic Schrödinger operators.

The second-order equation psi'' = (u + lambda) psi is integrated along a
path connecting x0 to x0 + T, where T is a full period of the potential
(possibly complex).  The two initial-value columns (1,0) and (0,1) then
express the shifted solution basis in terms of the original one; that
2x2 matrix has determinant one, and its eigenvalues e^{+-i nu T} carry
the Floquet exponent nu.

Extracting nu from a multiplier needs a logarithm branch.  We resolve it
by continuation: the potential is switched on gradually from the free
particle, where nu = sqrt(-lambda) is unambiguous, and at each step the
(multiplier, winding) pair closest to the previous exponent is kept.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .efuncs import PotentialSpecNumeric, potential_value

__all__ = ["MonodromyError", "MonodromyResult", "default_period_path",
           "monodromy"]


class MonodromyError(Exception):
    """Integration self-check failed (determinant drift, bad path)."""


@dataclass(frozen=True)
class MonodromyResult:
    """One-period transfer data for psi'' = (u + lambda) psi.

    ``winding`` records the logarithm branch chosen for the exponent:
    i * floquet_exponent * period = log(multiplier) + 2 pi i winding.
    """

    matrix: np.ndarray
    period: complex
    floquet_exponent: complex
    winding: int

    @property
    def trace(self) -> complex:
        return complex(self.matrix[0, 0] + self.matrix[1, 1])

    @property
    def det(self) -> complex:
        return complex(self.matrix[0, 0] * self.matrix[1, 1]
                       - self.matrix[0, 1] * self.matrix[1, 0])

    def multipliers(self) -> tuple:
        """Eigenvalues of the matrix, product normalized to det."""
        half = self.trace / 2
        disc = cmath.sqrt(half * half - self.det)
        return half + disc, half - disc


def default_period_path(potential: PotentialSpecNumeric) -> list:
    """A real-period path staying clear of the potential's poles.

    Trigonometric and Jacobi-form potentials are regular on the real
    axis.  The Weierstrass-form families have poles at lattice points,
    so their path is displaced by a fifth of the second period.
    """
    if potential.family in ("trig", "ellipsoidal-j"):
        start = 0j
    else:
        start = 0.2 * potential.lattice()[1]
    return [start, start + potential.real_period()]


def _propagate(potential, lam: complex, path: list, scale: float,
               rtol: float, atol: float) -> np.ndarray:
    """Transfer matrix of psi'' = (scale*u + lambda) psi along the path."""
    mat = np.eye(2, dtype=complex)
    state = np.array([1, 0, 0, 1], dtype=complex)

    for a, b in zip(path, path[1:]):
        a, b = complex(a), complex(b)
        dz = b - a
        if dz == 0:
            continue

        def rhs(s, y):
            z = a + s * dz
            w = scale * potential_value(potential, z) + lam
            return np.array([dz * y[1], dz * w * y[0],
                             dz * y[3], dz * w * y[2]])

        sol = solve_ivp(rhs, (0.0, 1.0), state, method="DOP853",
                        rtol=rtol, atol=atol, dense_output=False)
        if not sol.success:
            raise MonodromyError(
                f"integration failed on segment {a} -> {b}: {sol.message}")
        state = sol.y[:, -1]

    mat[0, 0], mat[1, 0] = state[0], state[1]
    mat[0, 1], mat[1, 1] = state[2], state[3]
    return mat


def _multiplier_pairs(matrix: np.ndarray) -> list:
    """(eigenvalue, psi'/psi of its eigenvector) for both multipliers.

    The slope separates the two Floquet solutions e^{+-i nu x}(periodic)
    even when the multipliers nearly coincide near a band edge, where
    selecting by eigenvalue proximity alone is ambiguous.
    """
    a, b = matrix[0, 0], matrix[0, 1]
    c, d = matrix[1, 0], matrix[1, 1]
    half = (a + d) / 2
    disc = cmath.sqrt(half * half - (a * d - b * c))
    scale = max(abs(a), abs(b), abs(c), abs(d), 1.0)
    pairs = []
    for rho in (half + disc, half - disc):
        if rho == 0:
            continue
        if abs(b) > 1e-14 * scale:
            slope = (rho - a) / b
        elif abs(rho - d) > 1e-14 * scale:
            slope = c / (rho - d)
        else:
            slope = None
        pairs.append((rho, slope))
    if not pairs:
        raise MonodromyError("degenerate monodromy matrix")
    return pairs


def _continue_exponent(matrix: np.ndarray, period: complex, prev: complex,
                       prev_slope: complex) -> tuple:
    """Branch of the exponent continuing (prev, prev_slope).

    Returns (nu, winding, slope).  The multiplier is chosen by
    eigenvector-slope proximity and the logarithm winding by exponent
    proximity.
    """
    pairs = _multiplier_pairs(matrix)
    if all(s is not None for _, s in pairs):
        rho, slope = min(pairs, key=lambda p: abs(p[1] - prev_slope))
    else:
        rho, slope = pairs[0]
        slope = prev_slope if slope is None else slope
    log_rho = cmath.log(rho)
    m = round(((1j * prev * period - log_rho) / (2j * cmath.pi)).real)
    best = None
    for mm in (m - 1, m, m + 1):
        nu = -1j * (log_rho + 2j * cmath.pi * mm) / period
        if best is None or abs(nu - prev) < abs(best[0] - prev):
            best = (nu, mm)
    return best[0], best[1], slope


def monodromy(potential: PotentialSpecNumeric, lam: complex,
              period_path: list | None = None, rtol: float = 1e-12,
              atol: float = 1e-12, det_tol: float = 1e-9,
              homotopy_steps: int = 6) -> MonodromyResult:
    """Monodromy matrix and branch-resolved Floquet exponent.

    ``period_path`` is a polyline whose endpoints must differ by one
    period of the potential; by default the real period, displaced off
    the pole lattice for Weierstrass-form families.  The exponent's
    branch is fixed by switching the potential on in ``homotopy_steps``
    stages starting from the free particle.
    """
    path = list(period_path) if period_path is not None else \
        default_period_path(potential)
    if len(path) < 2:
        raise ValueError("period path needs at least two points")
    period = complex(path[-1]) - complex(path[0])
    if period == 0:
        raise ValueError("period path must have nonzero displacement")

    nu = cmath.sqrt(-complex(lam))
    slope = 1j * nu
    winding = 0
    matrix = None
    for step in range(1, homotopy_steps + 1):
        scale = step / homotopy_steps
        matrix = _propagate(potential, complex(lam), path, scale, rtol, atol)
        nu, winding, slope = _continue_exponent(matrix, period, nu, slope)

    det = matrix[0, 0] * matrix[1, 1] - matrix[0, 1] * matrix[1, 0]
    if abs(det - 1) > det_tol:
        raise MonodromyError(
            f"determinant drifted to {det}; integration not trustworthy")
    return MonodromyResult(matrix=matrix, period=period,
                           floquet_exponent=nu, winding=winding)
