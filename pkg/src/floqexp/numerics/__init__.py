"""Floating-point side of the package.

Theta-function constants, elliptic special values, pole-aware potential
evaluation, contour quadrature for Floquet exponents, monodromy
matrices, and stationary-point location.  Everything here works with
concrete numbers; the symbolic expansions live one level up.
"""

from .theta import (
    ThetaDomainError,
    ThetaPrecisionError,
    ThetaConstants,
    EllipticConstants,
    theta_constants,
    theta_point,
    elliptic_constants,
    agm_complete_integrals,
    nome_from_k2,
)
from .kseries import k_expansion_constants
from .efuncs import (
    PoleProximityError,
    POLE_GUARD_FRACTION,
    JacobiContext,
    jacobi_elliptic_eval,
    weier_p_eval,
    PotentialSpecNumeric,
    potential_value,
    potential_zderiv,
    potential_z2deriv,
    jacobi_expr_value,
    weier_expr_value,
    lattice_distance,
)
from .quadrature import (
    QuadratureError,
    polyline_quadrature,
    circle_quadrature,
    standard_period_path,
    contour_quadrature,
    floquet_exponent_from_integral,
    EigenfunctionResult,
    eigenfunction_eval,
    miura_defect,
)
from .monodromy import MonodromyError, MonodromyResult, monodromy
from .stationary import StationaryPointError, stationary_points

__all__ = [
    "ThetaDomainError",
    "ThetaPrecisionError",
    "ThetaConstants",
    "EllipticConstants",
    "theta_constants",
    "theta_point",
    "elliptic_constants",
    "agm_complete_integrals",
    "nome_from_k2",
    "k_expansion_constants",
    "PoleProximityError",
    "POLE_GUARD_FRACTION",
    "JacobiContext",
    "jacobi_elliptic_eval",
    "weier_p_eval",
    "PotentialSpecNumeric",
    "potential_value",
    "potential_zderiv",
    "potential_z2deriv",
    "jacobi_expr_value",
    "weier_expr_value",
    "lattice_distance",
    "QuadratureError",
    "polyline_quadrature",
    "circle_quadrature",
    "standard_period_path",
    "contour_quadrature",
    "floquet_exponent_from_integral",
    "EigenfunctionResult",
    "eigenfunction_eval",
    "miura_defect",
    "MonodromyError",
    "MonodromyResult",
    "monodromy",
    "StationaryPointError",
    "stationary_points",
]
