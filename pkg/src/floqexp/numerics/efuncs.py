"""Numeric evaluation of elliptic functions and potential families.

Jacobi elliptic functions come from theta quotients, the Weierstrass
function and its derivative from logarithmic theta derivatives at the
four half-period sites.  ``PotentialSpecNumeric`` bundles a potential
family with numeric parameters so the oracle layer (quadrature,
monodromy, stationary points) can evaluate u(z) and its z-derivatives
anywhere in the complex plane, with a pole guard around the lattice
singularities.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from ..coeffring import ParamRat
from .theta import (EllipticConstants, ThetaConstants, agm_complete_integrals,
                    elliptic_constants, nome_from_k2, theta_constants,
                    theta_point)

__all__ = [
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
]

POLE_GUARD_FRACTION = 0.05

_FAMILIES = ("trig", "lame", "ellipsoidal-w", "ellipsoidal-j", "dtv")

# Shifting the argument by a half-period turns theta_1 into theta_2,
# theta_4, theta_3 for sites 1, 2, 3 (up to factors that cancel in
# logarithmic derivatives).
_SITE_THETA = {0: 1, 1: 2, 2: 4, 3: 3}


class PoleProximityError(Exception):
    """Evaluation point too close to a lattice pole."""


def lattice_distance(d: complex, w1: complex, w2: complex) -> float:
    """Distance from d to the lattice {a*w1 + b*w2 : a, b integers}."""
    det = w1.real * w2.imag - w1.imag * w2.real
    if det == 0:
        raise ValueError("degenerate lattice")
    a = (d.real * w2.imag - d.imag * w2.real) / det
    b = (w1.real * d.imag - w1.imag * d.real) / det
    best = math.inf
    for da in (math.floor(a), math.floor(a) + 1):
        for db in (math.floor(b), math.floor(b) + 1):
            best = min(best, abs(d - da * w1 - db * w2))
    return best


@dataclass(frozen=True)
class JacobiContext:
    """Precomputed constants for sn/cn/dn evaluation at a fixed modulus."""

    k2: complex
    q: complex
    K: complex
    Kp: complex
    theta: ThetaConstants

    @classmethod
    def from_k2(cls, k2: complex) -> "JacobiContext":
        k2 = complex(k2)
        if k2 == 0 or k2 == 1:
            raise ValueError("modulus k^2 must avoid 0 and 1")
        K, _ = agm_complete_integrals(k2)
        Kp, _ = agm_complete_integrals(1 - k2)
        q = nome_from_k2(k2)
        return cls(k2=k2, q=q, K=K, Kp=Kp, theta=theta_constants(q))

    @property
    def pole_guard(self) -> float:
        return POLE_GUARD_FRACTION * min(abs(2 * self.K), abs(2j * self.Kp))

    def check_not_pole(self, z: complex) -> None:
        dist = lattice_distance(z - 1j * self.Kp, 2 * self.K, 2j * self.Kp)
        if dist < self.pole_guard:
            raise PoleProximityError(
                f"z = {z} within {dist:.3g} of an sn/cn/dn pole")


def jacobi_elliptic_eval(z: complex, k2: complex,
                         ctx: JacobiContext | None = None) -> tuple:
    """(sn z, cn z, dn z) at modulus k2, via theta quotients.

    Passing a prebuilt ``JacobiContext`` skips the per-call constant
    setup; quadrature loops rely on that.
    """
    if ctx is None:
        ctx = JacobiContext.from_k2(k2)
    z = complex(z)
    ctx.check_not_pole(z)
    chi = cmath.pi * z / (2 * ctx.K)
    tp = theta_point(chi, ctx.q)
    th = ctx.theta
    t1, t2, t3, t4 = tp[1][0], tp[2][0], tp[3][0], tp[4][0]
    sn = th.theta3 * t1 / (th.theta2 * t4)
    cn = th.theta4 * t2 / (th.theta2 * t4)
    dn = th.theta4 * t3 / (th.theta3 * t4)
    return sn, cn, dn


def _log_derivs(f, fp, fpp, fppp):
    """Second and third logarithmic derivatives of a theta value tuple."""
    d2 = (fpp * f - fp * fp) / (f * f)
    d3 = (fppp * f * f - 3 * fpp * fp * f + 2 * fp ** 3) / (f ** 3)
    return d2, d3


def weier_p_eval(x: complex, ell: EllipticConstants, site: int = 0) -> tuple:
    """(P, P') at x + omega_site on the lattice of ``ell``.

    Sites 0..3 are the half-period shifts 0, omega1, omega2, and
    omega1 + omega2, where omega2 = omega1 * tau; the shift is absorbed
    into the theta index so the series are always evaluated near their
    own zero-free region.
    """
    if site not in _SITE_THETA:
        raise ValueError(f"site must be 0..3, got {site}")
    x = complex(x)
    w1 = 2 * ell.omega1
    w2 = 2 * ell.omega2
    shift = {0: 0, 1: w1 / 2, 2: w2 / 2, 3: (w1 + w2) / 2}[site]
    guard = POLE_GUARD_FRACTION * min(abs(w1), abs(w2))
    dist = lattice_distance(x + shift, w1, w2)
    if dist < guard:
        raise PoleProximityError(
            f"x = {x} within {dist:.3g} of a pole of P(x + omega_{site})")
    tp = theta_point(x, ell.q)
    d2, d3 = _log_derivs(*tp[_SITE_THETA[site]])
    return -d2 - ell.zeta1, -d3


@dataclass(frozen=True)
class PotentialSpecNumeric:
    """A potential family with numeric parameter values.

    Families and their parameters:
      trig           theta: tuple of Fourier couplings (u = sum 2 theta_n cos 2nx)
      lame           delta                       (u = delta * P(x))
      ellipsoidal-w  alpha1, alpha2              (u = alpha1 P + alpha2 P^2)
      ellipsoidal-j  delta, omega, with k2       (u = delta k^2 sn^2 + omega k^4 sn^4)
      dtv            b: tuple (b0, b1, b2, b3)   (u = sum b_s P(x + omega_s))

    Elliptic Weierstrass-side families carry the lattice through the
    nome q; the Jacobi-side family through k2.
    """

    family: str
    params: dict
    k2: complex | None = None
    q: complex | None = None

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise ValueError(f"unknown potential family {self.family!r}")
        for v in self.params.values():
            vals = v if isinstance(v, tuple) else (v,)
            if any(not cmath.isfinite(complex(x)) for x in vals):
                raise ValueError("potential parameters must be finite")
        if self.family == "ellipsoidal-j":
            if self.k2 is None:
                raise ValueError("ellipsoidal-j requires k2")
            if complex(self.k2) in (0j, 1 + 0j):
                raise ValueError("modulus k^2 must avoid 0 and 1")
        elif self.family != "trig":
            if self.q is None and self.k2 is None:
                raise ValueError(f"{self.family} requires q or k2")
            if self.k2 is not None and complex(self.k2) in (0j, 1 + 0j):
                raise ValueError("modulus k^2 must avoid 0 and 1")

    def nome(self) -> complex:
        if self.q is not None:
            return complex(self.q)
        return nome_from_k2(complex(self.k2))

    def elliptic(self) -> EllipticConstants:
        if self.family == "trig":
            raise ValueError("trig potentials carry no elliptic data")
        return elliptic_constants(self.nome())

    def jacobi(self) -> JacobiContext:
        if self.family != "ellipsoidal-j":
            raise ValueError("Jacobi context only for the ellipsoidal-j family")
        return JacobiContext.from_k2(complex(self.k2))

    def real_period(self) -> complex:
        """The period of u along the real direction (2omega1 or 2K)."""
        if self.family == "trig":
            return cmath.pi
        if self.family == "ellipsoidal-j":
            return 2 * self.jacobi().K
        return cmath.pi  # 2 omega1 under the normalization used throughout

    def lattice(self) -> tuple:
        """Full periods (w1, w2) of u, for dedup and pole guards."""
        if self.family == "trig":
            raise ValueError("trig potentials are singly periodic")
        if self.family == "ellipsoidal-j":
            ctx = self.jacobi()
            return 2 * ctx.K, 2j * ctx.Kp
        ell = self.elliptic()
        return 2 * ell.omega1, 2 * ell.omega2


class _Evaluator:
    """Caches the constants bundle for repeated potential evaluation."""

    def __init__(self, pot: PotentialSpecNumeric):
        self.pot = pot
        self.ctx = pot.jacobi() if pot.family == "ellipsoidal-j" else None
        self.ell = (pot.elliptic()
                    if pot.family in ("lame", "ellipsoidal-w", "dtv") else None)

    def value(self, z: complex) -> complex:
        return _potential_eval(self.pot, z, 0, self.ctx, self.ell)

    def zderiv(self, z: complex) -> complex:
        return _potential_eval(self.pot, z, 1, self.ctx, self.ell)

    def z2deriv(self, z: complex) -> complex:
        return _potential_eval(self.pot, z, 2, self.ctx, self.ell)


def _potential_eval(pot: PotentialSpecNumeric, z: complex, deriv: int,
                    ctx: JacobiContext | None,
                    ell: EllipticConstants | None) -> complex:
    z = complex(z)
    fam = pot.family
    if fam == "trig":
        total = 0j
        for n, th in enumerate(pot.params.get("theta", ()), start=1):
            th = complex(th)
            if deriv == 0:
                total += 2 * th * cmath.cos(2 * n * z)
            elif deriv == 1:
                total += -4 * n * th * cmath.sin(2 * n * z)
            else:
                total += -8 * n * n * th * cmath.cos(2 * n * z)
        return total

    if fam == "ellipsoidal-j":
        if ctx is None:
            ctx = pot.jacobi()
        k2 = complex(pot.k2)
        d = complex(pot.params["delta"])
        om = complex(pot.params["omega"])
        s, c, dn = jacobi_elliptic_eval(z, k2, ctx)
        if deriv == 0:
            return d * k2 * s ** 2 + om * k2 ** 2 * s ** 4
        g = (2 * d * k2 * s + 4 * om * k2 ** 2 * s ** 3) * c * dn
        if deriv == 1:
            return g
        # d/dz of g, using sn' = cn dn, cn' = -sn dn, dn' = -k^2 sn cn
        return ((2 * d * k2 + 12 * om * k2 ** 2 * s ** 2) * (c * dn) ** 2
                + (2 * d * k2 * s + 4 * om * k2 ** 2 * s ** 3)
                * (-s * dn ** 2 - k2 * s * c ** 2))

    if ell is None:
        ell = pot.elliptic()
    if fam == "lame":
        couplings = {0: complex(pot.params["delta"])}
    elif fam == "dtv":
        couplings = {s: complex(b) for s, b in enumerate(pot.params["b"])}
    else:  # ellipsoidal-w
        couplings = None

    if fam == "ellipsoidal-w":
        a1 = complex(pot.params["alpha1"])
        a2 = complex(pot.params["alpha2"])
        p, pp = weier_p_eval(z, ell, 0)
        if deriv == 0:
            return a1 * p + a2 * p * p
        if deriv == 1:
            return (a1 + 2 * a2 * p) * pp
        ppp = 6 * p * p - complex(ell.g2) / 2
        return 2 * a2 * pp * pp + (a1 + 2 * a2 * p) * ppp

    total = 0j
    for s, b in couplings.items():
        if b == 0:
            continue
        p, pp = weier_p_eval(z, ell, s)
        if deriv == 0:
            total += b * p
        elif deriv == 1:
            total += b * pp
        else:
            total += b * (6 * p * p - complex(ell.g2) / 2)
    return total


def potential_value(pot: PotentialSpecNumeric, z: complex) -> complex:
    """u(z)."""
    return _potential_eval(pot, z, 0, None, None)


def potential_zderiv(pot: PotentialSpecNumeric, z: complex) -> complex:
    """du/dz, used by the stationary-point search."""
    return _potential_eval(pot, z, 1, None, None)


def potential_z2deriv(pot: PotentialSpecNumeric, z: complex) -> complex:
    """d^2 u / dz^2, via the P'' identity on the Weierstrass side."""
    return _potential_eval(pot, z, 2, None, None)


def jacobi_expr_value(expr, z: complex, bindings: dict,
                      ctx: JacobiContext) -> complex:
    """Evaluate a JacobiExpr density at a point.

    ``bindings`` supplies numeric values for the symbols left in the
    coefficients (eigenvalue, Omega, k); k and kp are filled in from
    the context modulus when absent.
    """
    s, c, d = jacobi_elliptic_eval(z, ctx.k2, ctx)
    w = s if expr.mode == "sn" else c
    pre = c * d if expr.mode == "sn" else s * d
    vals = dict(bindings)
    vals.setdefault("k", cmath.sqrt(ctx.k2))
    vals.setdefault("kp", cmath.sqrt(1 - ctx.k2))
    total = 0j
    for m, coeff in expr.a.items():
        total += coeff.eval_complex(vals) * w ** m
    for m, coeff in expr.b.items():
        total += coeff.eval_complex(vals) * w ** m * pre
    return total


def weier_expr_value(expr, x: complex, ell: EllipticConstants,
                     bindings: dict | None = None) -> complex:
    """Evaluate a WeierExpr at a point on the lattice of ``ell``."""
    vals = {"g2": ell.g2, "g3": ell.g3, "zeta1": ell.zeta1,
            "e1": ell.e1, "e2": ell.e2, "e3": ell.e3}
    if bindings:
        vals.update(bindings)
    site_vals: dict[int, tuple] = {}

    def site(sidx: int) -> tuple:
        if sidx not in site_vals:
            site_vals[sidx] = weier_p_eval(x, ell, sidx)
        return site_vals[sidx]

    total = 0j
    for (pv, qv), coeff in expr.terms.items():
        term = coeff.eval_complex(vals)
        for sidx, e in enumerate(pv):
            if e:
                term *= site(sidx)[0] ** e
        for sidx, e in enumerate(qv):
            if e:
                term *= site(sidx)[1] ** e
        total += term
    return total
