"""Adaptive contour quadrature and Floquet exponents from period integrals.

Integrals over open paths run along polylines with composite
Gauss-Legendre panels, doubling the panel count per segment until two
successive refinements agree.  Period integrals of odd elliptic-function
powers are branch-sensitive: a straight line spanning 2iK' reproduces
the negative-power values but not the vanishing of the positive powers,
which holds on a specific homotopy class of trajectories.  Substituting
xi = sn^2 z turns that class into a closed contour around a single point
(xi = 0 for the 2iK' family, xi = 1 for the 2K + 2iK' family) on which
the transformed integrand is single-valued, so those integrals are
computed as closed-circle quadratures in the xi plane.  The exact-
derivative pieces (prefactor terms of the densities) keep their plain
z-line quadrature, where they integrate to zero over a period.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .efuncs import JacobiContext, PotentialSpecNumeric, jacobi_expr_value

__all__ = [
    "QuadratureError",
    "polyline_quadrature",
    "circle_quadrature",
    "standard_period_path",
    "contour_quadrature",
    "floquet_exponent_from_integral",
    "EigenfunctionResult",
    "eigenfunction_eval",
    "miura_defect",
]

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(16)


class QuadratureError(Exception):
    """Contour integral failed to converge to the requested tolerance."""


def _segment_quad(f, a: complex, b: complex, panels: int) -> tuple:
    total = 0j
    l1 = 0.0
    step = (b - a) / panels
    for p in range(panels):
        lo = a + p * step
        mid = lo + step / 2
        half = step / 2
        for x, w in zip(_GL_NODES, _GL_WEIGHTS):
            val = f(mid + half * x)
            total += w * val
            l1 += w * abs(val)
    scale = step / 2
    return total * scale, l1 * abs(scale)


def polyline_quadrature(f, points: list, tol: float = 1e-10,
                        max_refine: int = 12) -> complex:
    """Integrate f along the polyline through ``points``.

    Each segment starts from a single 16-point Gauss-Legendre panel and
    doubles the panel count until two refinements agree to ``tol``.
    The tolerance is measured against the integral of |f|, so a large
    oscillatory integrand that cancels to near zero converges at its
    double-precision noise floor instead of refining forever.
    """
    if len(points) < 2:
        raise ValueError("polyline needs at least two points")
    total = 0j
    seg_tol = tol / (len(points) - 1)
    for a, b in zip(points, points[1:]):
        a, b = complex(a), complex(b)
        if a == b:
            continue
        panels = 1
        prev, _ = _segment_quad(f, a, b, panels)
        for _ in range(max_refine):
            panels *= 2
            cur, l1 = _segment_quad(f, a, b, panels)
            if abs(cur - prev) <= seg_tol * max(1.0, abs(cur), l1):
                break
            prev = cur
        else:
            raise QuadratureError(
                f"segment {a} -> {b} did not converge at {panels} panels")
        total += cur
    return total


def circle_quadrature(f, center: complex, radius: float, tol: float = 1e-10,
                      max_refine: int = 14) -> complex:
    """Closed contour integral of f over a circle, counterclockwise.

    Uses the trapezoid rule on the angle, which converges geometrically
    for integrands analytic in a neighbourhood of the circle; the node
    count doubles until two refinements agree.
    """
    def ring(n: int) -> complex:
        total = 0j
        for j in range(n):
            w = radius * cmath.exp(2j * math.pi * j / n)
            total += f(center + w) * w
        return total * (2j * math.pi / n)

    n = 16
    prev = ring(n)
    for _ in range(max_refine):
        n *= 2
        cur = ring(n)
        if abs(cur - prev) <= tol * max(1.0, abs(cur)):
            return cur
        prev = cur
    raise QuadratureError(f"circle integral did not converge at {n} nodes")


def standard_period_path(period_tag: str, ctx: JacobiContext) -> list:
    """Pole-avoiding polyline spanning the requested period.

    omega1: the real period [0, 2K]; omega2: vertical line at
    Re z = K/2 spanning 2iK'; omega3: the diagonal spanning 2K + 2iK',
    offset to 0.1*K so it clears the lattice singularities.
    """
    K, Kp = ctx.K, ctx.Kp
    if period_tag == "omega1":
        return [0j, 2 * K]
    if period_tag == "omega2":
        return [K / 2, K / 2 + 2j * Kp]
    if period_tag == "omega3":
        return [0.1 * K, 2.1 * K + 2j * Kp]
    raise ValueError(f"unknown period tag {period_tag!r}")


def _xi_power_integral(mode: str, m: int, k2: complex, tol: float) -> complex:
    """Period integral of sn^m (mode sn) or cn^m (mode cn) for odd m.

    In the variable xi = sn^2 z the period trajectory closes around
    xi = 0 (sn family) or xi = 1 (cn family), and w^m dz becomes
    single-valued there for odd m; the integral is then a plain closed-
    circle quadrature picking up the pole residue, if any.  The square
    roots stay on the principal branch, which is continuous on these
    circles because both factors keep positive real part.
    """
    if m % 2 == 0:
        raise ValueError("xi-plane route applies to odd powers only")
    k2 = complex(k2)
    half = (m - 1) // 2
    if mode == "sn":
        center = 0j
        radius = 0.5 * min(1.0, abs(1 / k2))

        def f(xi):
            return xi ** half / (2 * cmath.sqrt(1 - xi) * cmath.sqrt(1 - k2 * xi))
    else:
        center = 1 + 0j
        radius = 0.5 * min(1.0, abs(1 / k2 - 1))

        def f(xi):
            return ((1 - xi) ** half
                    / (2 * cmath.sqrt(xi) * cmath.sqrt(1 - k2 * xi)))
    return circle_quadrature(f, center, radius, tol)


def _tag_for_mode(mode: str) -> str:
    return "omega2" if mode == "sn" else "omega3"


def _numeric_bindings(ctx: JacobiContext, bindings: dict | None) -> dict:
    vals = dict(bindings or {})
    vals.setdefault("k", cmath.sqrt(ctx.k2))
    vals.setdefault("kp", cmath.sqrt(1 - ctx.k2))
    return vals


def contour_quadrature(integrand, period_tag: str, k2: complex,
                       tol: float = 1e-10, bindings: dict | None = None,
                       ctx: JacobiContext | None = None) -> complex:
    """Period integral of sn^m, cn^m, or a JacobiExpr density.

    ``integrand`` is either a pair ("sn"|"cn", m) or a JacobiExpr; in
    the latter case ``bindings`` supplies values for any symbols in its
    coefficients.  The omega1 tag integrates along the real period.
    The omega2 tag pairs with sn, omega3 with cn: odd powers of the
    paired function go through the closed xi-plane contour, while even
    powers and prefactor terms, which are single-valued over the
    straight period path, use plain z quadrature (the prefactor terms
    are exact derivatives and integrate to zero there).
    """
    if ctx is None:
        ctx = JacobiContext.from_k2(k2)
    from .efuncs import jacobi_elliptic_eval

    if isinstance(integrand, tuple):
        name, m = integrand
        if name not in ("sn", "cn"):
            raise ValueError(f"unknown integrand {name!r}")
        if period_tag != "omega1":
            if period_tag != _tag_for_mode(name):
                raise ValueError(
                    f"{name} period integrals pair with {_tag_for_mode(name)}")
            if m % 2:
                return _xi_power_integral(name, m, ctx.k2, tol)
        idx = 0 if name == "sn" else 1
        path = standard_period_path(period_tag, ctx)

        def f(z):
            return jacobi_elliptic_eval(z, ctx.k2, ctx)[idx] ** m
        return polyline_quadrature(f, path, tol)

    mode = integrand.mode
    if period_tag == "omega1":
        path = standard_period_path(period_tag, ctx)

        def g(z):
            return jacobi_expr_value(integrand, z, bindings or {}, ctx)
        return polyline_quadrature(g, path, tol)

    if period_tag != _tag_for_mode(mode):
        raise ValueError(
            f"{mode}-mode densities pair with {_tag_for_mode(mode)}")
    vals = _numeric_bindings(ctx, bindings)
    total = 0j
    rest_a = {}
    for m, c in integrand.a.items():
        if m % 2:
            total += c.eval_complex(vals) * _xi_power_integral(
                mode, m, ctx.k2, tol)
        else:
            rest_a[m] = c
    if rest_a or integrand.b:
        def h(z):
            s, c_, d = jacobi_elliptic_eval(z, ctx.k2, ctx)
            w = s if mode == "sn" else c_
            pre = c_ * d if mode == "sn" else s * d
            tot = 0j
            for m, co in rest_a.items():
                tot += co.eval_complex(vals) * w ** m
            for m, co in integrand.b.items():
                tot += co.eval_complex(vals) * w ** m * pre
            return tot
        path = standard_period_path(period_tag, ctx)
        total += polyline_quadrature(h, path, tol)
    return total


def _trig_v(potential: PotentialSpecNumeric, eigenvalue: complex,
            v_series: dict, truncation: int | None):
    """v(x) = sqrt(lam) + sum_l v_l(x) lam^(-l/2) for a cosine potential."""
    root = cmath.sqrt(eigenvalue)
    terms = sorted(l for l in v_series if truncation is None or l <= truncation)

    def v(x):
        total = root
        for l in terms:
            total += v_series[l].eval_numeric(x) * root ** (-l)
        return total
    return v


def _jacobi_v(potential: PotentialSpecNumeric, eigenvalue: complex,
              v_series: dict, truncation: int | None):
    """v(z) for a small-energy density table (sn or cn mode).

    ``eigenvalue`` is the value of the series' own eigenvalue symbol:
    Lambda for the sn mode, the offset-removed Lambdat for the cn mode
    (whose ansatz carries an overall factor i).
    """
    ctx = potential.jacobi()
    modes = {expr.mode for expr in v_series.values()}
    if len(modes) != 1:
        raise ValueError("mixed density modes in v_series")
    mode = modes.pop()
    t = 1 / cmath.sqrt(complex(potential.params["delta"]))
    front = 1j if mode == "cn" else 1
    bindings = {"Omega": complex(potential.params["omega"]),
                "Lambda": complex(eigenvalue),
                "Lambdat": complex(eigenvalue)}
    terms = sorted(l for l in v_series if truncation is None or l <= truncation)

    def v(z):
        total = 0j
        for l in terms:
            total += jacobi_expr_value(v_series[l], z, bindings, ctx) * t ** l
        return front * total
    return v, ctx


def _v_callable(potential, eigenvalue, v_series, truncation):
    values = list(v_series.values())
    if potential.family == "trig" or not hasattr(values[0], "mode"):
        return _trig_v(potential, eigenvalue, v_series, truncation), None
    return _jacobi_v(potential, eigenvalue, v_series, truncation)


def floquet_exponent_from_integral(potential: PotentialSpecNumeric,
                                   eigenvalue: complex, v_series: dict,
                                   period_tag: str,
                                   truncation: int | None = None,
                                   tol: float = 1e-10) -> complex:
    """Floquet exponent from the period integral of a truncated v-series.

    The normalization depends on the period: nu = integral/(i*T) for the
    real period, mu = integral/pi for 2iK', mu = (i*k'/pi)*integral for
    2K + 2iK'.  ``v_series`` maps expansion index to density (FourierPoly
    for the trig family, JacobiExpr for the small-energy modes); the
    densities are integrated term by term through contour_quadrature, so
    the branch-sensitive odd powers take the closed xi-plane route.
    ``eigenvalue`` is the value of the series' own eigenvalue symbol
    (Lambda for the sn mode, the offset-removed Lambdat for cn).
    """
    if period_tag == "omega1":
        v, ctx = _v_callable(potential, eigenvalue, v_series, truncation)
        T = potential.real_period()
        x0 = 0.25 * T if potential.family != "trig" else 0.0
        return polyline_quadrature(v, [x0, x0 + T], tol) / (1j * T)

    if potential.family != "ellipsoidal-j":
        raise ValueError("complex-period tags need a Jacobi-form potential")
    ctx = potential.jacobi()
    modes = {expr.mode for expr in v_series.values()}
    if len(modes) != 1:
        raise ValueError("mixed density modes in v_series")
    mode = modes.pop()
    if period_tag != _tag_for_mode(mode):
        raise ValueError(
            f"{mode}-mode densities pair with {_tag_for_mode(mode)}")
    t = 1 / cmath.sqrt(complex(potential.params["delta"]))
    bindings = {"Omega": complex(potential.params["omega"]),
                "Lambda": complex(eigenvalue),
                "Lambdat": complex(eigenvalue)}
    total = 0j
    for l in sorted(v_series):
        if truncation is not None and l > truncation:
            continue
        total += t ** l * contour_quadrature(v_series[l], period_tag,
                                             ctx.k2, tol, bindings, ctx)
    if mode == "sn":
        return total / cmath.pi
    # v = i * sum W_l t^l and mu = (i k'/pi) * integral of v
    kp = cmath.sqrt(1 - complex(potential.k2))
    return -kp * total / cmath.pi


@dataclass(frozen=True)
class EigenfunctionResult:
    """Exponential-form eigenfunction data over a path.

    ``integral`` is the accumulated exponent, so psi at the path end is
    psi(start) * exp(integral); ``period`` is the path displacement.
    """

    integral: complex
    period: complex

    @property
    def psi_end(self) -> complex:
        return cmath.exp(self.integral)

    @property
    def exponent_rate(self) -> complex:
        """nu implied by the integral itself, integral/(i*period)."""
        return self.integral / (1j * self.period)

    def periodic_defect(self, nu: complex) -> float:
        """Relative defect of phi = e^(-i nu x) psi over the path.

        Zero exactly when psi picks up the factor e^(i nu period), i.e.
        when the supplied exponent matches the integrated one.
        """
        return abs(cmath.exp(self.integral - 1j * nu * self.period) - 1)


def eigenfunction_eval(potential: PotentialSpecNumeric, v_series: dict,
                       x_path: list, eigenvalue: complex,
                       truncation: int | None = None,
                       tol: float = 1e-10) -> EigenfunctionResult:
    """Integrate the truncated v-series along a path: psi = exp(integral v)."""
    v, _ = _v_callable(potential, eigenvalue, v_series, truncation)
    integral = polyline_quadrature(v, x_path, tol)
    return EigenfunctionResult(integral=integral,
                               period=complex(x_path[-1]) - complex(x_path[0]))


def miura_defect(potential: PotentialSpecNumeric, eigenvalue: complex,
                 v_series: dict, x: complex,
                 truncation: int | None = None, h: float = 1e-4) -> float:
    """|v' + v^2 - u - lambda| at a point, the truncation-level ODE residual.

    v' uses a five-point stencil, accurate far beyond the truncation
    error this measures.  For the small-energy modes ``eigenvalue`` is
    the series symbol value and the potential term is adjusted to match
    the mode's form of the Miura relation.
    """
    from .efuncs import potential_value

    v, ctx = _v_callable(potential, eigenvalue, v_series, truncation)
    vp = (-v(x + 2 * h) + 8 * v(x + h) - 8 * v(x - h) + v(x - 2 * h)) / (12 * h)
    lam = complex(eigenvalue)
    modes = {getattr(expr, "mode", None) for expr in v_series.values()}
    if modes == {"cn"}:
        # the cn-mode eigenvalue symbol absorbs the potential minimum
        k2 = complex(potential.k2)
        lam -= (complex(potential.params["delta"]) * k2
                + complex(potential.params["omega"]) * k2 ** 2)
    rhs = potential_value(potential, x) + lam
    return abs(vp + v(x) ** 2 - rhs)
