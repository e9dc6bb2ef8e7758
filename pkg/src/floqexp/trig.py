"""Trigonometric (Hill-type) potentials and their dispersion coefficients.

Potentials here are finite Fourier sums u(x) = sum_n 2 theta_n cos(2nx)
with period pi, handled exactly as Laurent polynomials in e^{2ix}.  The
period mean of any differential polynomial in u is then just the constant
Fourier coefficient, which gives the eps_l in closed form.
"""

from __future__ import annotations

from .coeffring import ParamRat, iunit, rat, sym
from .diffpoly import DiffPoly
from .series import AsymSeries, revert_eigenvalue

__all__ = ["FourierPoly", "cos_potential", "substitute_fourier",
           "trig_epsilons", "trig_eigenvalue", "trig_v_table"]


class FourierPoly:
    """Finite sum c_n e^{2inx} with exact coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: dict | None = None):
        clean: dict[int, ParamRat] = {}
        for n, c in (coeffs or {}).items():
            if not isinstance(c, ParamRat):
                c = rat(c)
            if not c.is_zero():
                clean[int(n)] = c
        self.coeffs = clean

    @classmethod
    def zero(cls) -> "FourierPoly":
        return cls({})

    @classmethod
    def one(cls) -> "FourierPoly":
        return cls({0: rat(1)})

    def coeff(self, n: int) -> ParamRat:
        return self.coeffs.get(n, rat(0))

    def mean(self) -> ParamRat:
        """Period average: the n = 0 coefficient."""
        return self.coeff(0)

    def derivative(self) -> "FourierPoly":
        i2 = iunit() * rat(2)
        return FourierPoly({n: c * (i2 * rat(n))
                            for n, c in self.coeffs.items() if n != 0})

    def __add__(self, other: "FourierPoly") -> "FourierPoly":
        out = dict(self.coeffs)
        for n, c in other.coeffs.items():
            out[n] = out.get(n, rat(0)) + c
        return FourierPoly(out)

    def __neg__(self) -> "FourierPoly":
        return FourierPoly({n: -c for n, c in self.coeffs.items()})

    def __sub__(self, other: "FourierPoly") -> "FourierPoly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, FourierPoly):
            out: dict[int, ParamRat] = {}
            for n1, c1 in self.coeffs.items():
                for n2, c2 in other.coeffs.items():
                    n = n1 + n2
                    prod = c1 * c2
                    out[n] = out.get(n, rat(0)) + prod
            return FourierPoly(out)
        c = other if isinstance(other, ParamRat) else rat(other)
        return FourierPoly({n: v * c for n, v in self.coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, FourierPoly):
            return NotImplemented
        keys = set(self.coeffs) | set(other.coeffs)
        return all(self.coeff(n) == other.coeff(n) for n in keys)

    __hash__ = None

    def eval_numeric(self, x: float, values: dict | None = None) -> complex:
        import cmath
        total = 0j
        for n, c in self.coeffs.items():
            total += c.eval_complex(values or {}) * cmath.exp(2j * n * x)
        return total

    def render(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for n in sorted(self.coeffs):
            c = self.coeffs[n].render()
            if n == 0:
                parts.append(c)
            else:
                parts.append(f"({c})*e^({2*n}ix)")
        return " + ".join(parts)


def cos_potential(thetas: list) -> FourierPoly:
    """u(x) = sum_{n>=1} 2*theta_n*cos(2nx) as a Fourier polynomial."""
    out: dict[int, ParamRat] = {}
    for n, th in enumerate(thetas, start=1):
        if not isinstance(th, ParamRat):
            th = rat(th)
        if not th.is_zero():
            out[n] = th
            out[-n] = th
    return FourierPoly(out)


def substitute_fourier(poly: DiffPoly, u: FourierPoly) -> FourierPoly:
    """Evaluate a differential polynomial at a Fourier-sum potential."""
    derivs = {0: u}

    def deriv(k: int) -> FourierPoly:
        if k not in derivs:
            derivs[k] = deriv(k - 1).derivative()
        return derivs[k]

    total = FourierPoly.zero()
    for mono, coeff in poly.terms.items():
        term = FourierPoly.one()
        for k in mono:
            term = term * deriv(k)
        total = total + term * coeff
    return total


def trig_epsilons(thetas: list, count: int) -> list:
    """eps_l = (1/pi) * integral of v_{2l-1} over a period, l = 1..count.

    The densities are the KdV ones; substituting the Fourier potential and
    reading off the constant coefficient performs the integral exactly.
    """
    from .diffpoly import kdv_densities

    u = cos_potential(thetas)
    vs = kdv_densities(2 * count - 1)
    return [substitute_fourier(vs[2 * l - 2], u).mean()
            for l in range(1, count + 1)]


def trig_v_table(thetas: list, count: int) -> dict:
    """Densities v_1..v_count evaluated at the cosine potential.

    Keys are the expansion index l, values Fourier polynomials ready for
    pointwise evaluation.
    """
    from .diffpoly import kdv_densities

    u = cos_potential(thetas)
    return {l: substitute_fourier(vl, u)
            for l, vl in enumerate(kdv_densities(count), start=1)}


def trig_eigenvalue(thetas: list, order: int) -> AsymSeries:
    """Eigenvalue expansion lam(nu) = -nu^2 + sum_l lam_l nu^(-2l) for the
    cosine potential, valid through nu^(-2*order)."""
    eps = trig_epsilons(thetas, order + 1)
    return revert_eigenvalue(eps)
