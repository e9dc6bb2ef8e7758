"""Asymptotic spectra of one-dimensional periodic Schrodinger operators.

The package computes Floquet exponents and eigenvalue expansions for
the stationary equation psi'' = (u + lambda) psi with a periodic
potential u, in two complementary regimes:

* large energy, where lambda = -nu**2 + sum_l lambda_l nu**(-2l) is
  recovered from averaged KdV densities of the potential;
* small energy for elliptic potentials written in Jacobi form, where
  the spectrum sits near the bottom of a deep well and expands in
  inverse powers of sqrt(Delta).

Symbolic results live in an exact coefficient ring (rationals extended
by parameter symbols and the imaginary unit), and every expansion has a
numeric cross-check: contour quadrature of the momentum integral,
direct monodromy of the ODE, or both.
"""

from .coeffring import (
    CoeffRingError,
    DivisionByZeroError,
    UnknownSymbolError,
    Rational,
    Poly,
    ParamRat,
    sym,
    rat,
    iunit,
)
from .diffpoly import DiffPoly, kdv_densities, reduce_mod_exact, monomial_weight
from .series import (
    SeriesError,
    AsymSeries,
    revert_eigenvalue,
    solve_for_symbol,
    expand_coefficients,
)
from .trig import (
    FourierPoly,
    cos_potential,
    substitute_fourier,
    trig_epsilons,
    trig_v_table,
    trig_eigenvalue,
)
from .weier import (
    WeierExpr,
    IrreducibleTermError,
    weier_reduce,
    weier_mean,
    ellipsoidal_potential,
    dtv_potential,
    weier_epsilons,
    weier_eigenvalue,
    weier_to_jacobi_eigenvalue,
    expand_modular_invariants,
    canonical_e,
)
from .jacobi import (
    JacobiExpr,
    small_energy_v,
    period_integral_table,
    floquet_exponent_series,
    small_energy_eigenvalue,
    SMALL_ENERGY_PARAM,
)
from .potentials import PotentialSyntaxError, PotentialSpec, parse_potential
from . import numerics

__all__ = [
    "CoeffRingError",
    "DivisionByZeroError",
    "UnknownSymbolError",
    "Rational",
    "Poly",
    "ParamRat",
    "sym",
    "rat",
    "iunit",
    "DiffPoly",
    "kdv_densities",
    "reduce_mod_exact",
    "monomial_weight",
    "SeriesError",
    "AsymSeries",
    "revert_eigenvalue",
    "solve_for_symbol",
    "expand_coefficients",
    "FourierPoly",
    "cos_potential",
    "substitute_fourier",
    "trig_epsilons",
    "trig_v_table",
    "trig_eigenvalue",
    "WeierExpr",
    "IrreducibleTermError",
    "weier_reduce",
    "weier_mean",
    "ellipsoidal_potential",
    "dtv_potential",
    "weier_epsilons",
    "weier_eigenvalue",
    "weier_to_jacobi_eigenvalue",
    "expand_modular_invariants",
    "canonical_e",
    "JacobiExpr",
    "small_energy_v",
    "period_integral_table",
    "floquet_exponent_series",
    "small_energy_eigenvalue",
    "SMALL_ENERGY_PARAM",
    "PotentialSyntaxError",
    "PotentialSpec",
    "parse_potential",
    "numerics",
]

__version__ = "0.1.0"
