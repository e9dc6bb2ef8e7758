"""Stationary points of doubly periodic potentials.

Small-energy expansions are anchored at points where u'(z) vanishes, so
enumerating them inside one period cell is the entry step of that
regime.  Newton iteration from a coarse grid suffices: the potentials
are meromorphic with a handful of critical points per cell, and seeds
that wander towards a pole are simply discarded.
"""

from __future__ import annotations

import math

from .efuncs import (PoleProximityError, PotentialSpecNumeric,
                     lattice_distance, potential_value, potential_z2deriv,
                     potential_zderiv)

__all__ = ["StationaryPointError", "stationary_points"]


class StationaryPointError(Exception):
    """Root search failed to settle on the expected critical set."""


def _cell_coordinates(z: complex, w1: complex, w2: complex) -> tuple:
    det = w1.real * w2.imag - w1.imag * w2.real
    a = (z.real * w2.imag - z.imag * w2.real) / det
    b = (w1.real * z.imag - w1.imag * z.real) / det
    return a, b


def _reduce_to_cell(z: complex, w1: complex, w2: complex) -> complex:
    a, b = _cell_coordinates(z, w1, w2)
    return (a - math.floor(a)) * w1 + (b - math.floor(b)) * w2


def stationary_points(potential: PotentialSpecNumeric, grid: int = 12,
                      tol: float = 1e-10, max_iter: int = 60) -> list:
    """Critical points of u in one period cell, as (z*, u(z*)) pairs.

    Newton's method on u' runs from a ``grid`` x ``grid`` mesh of seeds;
    converged roots are deduplicated modulo the period lattice and
    sorted by their cell coordinates.  Seeds that approach a pole or
    fail to converge are dropped.
    """
    if potential.family == "trig":
        raise ValueError("stationary point search expects an elliptic family")
    w1, w2 = potential.lattice()
    cell_size = min(abs(w1), abs(w2))
    scale = max(abs(w1), abs(w2))

    roots: list[complex] = []
    for p in range(grid):
        for q in range(grid):
            z = ((p + 0.5) / grid) * w1 + ((q + 0.5) / grid) * w2
            try:
                for _ in range(max_iter):
                    d1 = potential_zderiv(potential, z)
                    d2 = potential_z2deriv(potential, z)
                    if d2 == 0:
                        break
                    step = d1 / d2
                    z -= step
                    if abs(step) < 1e-14 * scale:
                        break
                else:
                    continue
                if abs(potential_zderiv(potential, z)) > tol * max(
                        1.0, abs(potential_value(potential, z))):
                    continue
            except (PoleProximityError, OverflowError, ZeroDivisionError):
                continue
            z = _reduce_to_cell(z, w1, w2)
            if any(lattice_distance(z - r, w1, w2) < 1e-6 * cell_size
                   for r in roots):
                continue
            roots.append(z)

    if not roots:
        raise StationaryPointError("no stationary points found on the grid")
    roots.sort(key=lambda r: (round(_cell_coordinates(r, w1, w2)[0], 9),
                              round(_cell_coordinates(r, w1, w2)[1], 9)))
    return [(r, potential_value(potential, r)) for r in roots]
