"""Floating-point theta constants and lattice data.

Conventions match the symbolic layer: nome ``q`` with theta series in powers
of q^(1/2), normalization 2*omega1 = pi (so all (pi/2 omega1)^2 prefactors
are 1), and the rewrite-friendly labels e1, e2, e3, zeta1, g2, g3.

Two independent routes to the lattice values are computed and cross-checked:
the quartic theta-constant formulas and the second-logarithmic-derivative
formulas.  The complete integrals K, E are additionally available through an
AGM iteration, which shares no code with the theta series and therefore
serves as a genuine oracle for the K = (pi/2) theta3^2 and
E/K = k'^2 (1 + dlnK/dlnk) identities.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

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
]


class ThetaDomainError(ValueError):
    """Nome outside the unit disk, or another domain violation."""


class ThetaPrecisionError(RuntimeError):
    """Cross-checked quantities disagree beyond tolerance."""


@dataclass(frozen=True)
class ThetaConstants:
    """Theta constants and the chi-derivatives at chi = 0.

    theta1p / theta1ppp are the first and third derivatives of theta_1;
    theta2pp, theta3pp, theta4pp the second derivatives of the even ones
    (their odd derivatives vanish).
    """

    q: complex
    theta1p: complex
    theta1ppp: complex
    theta2: complex
    theta3: complex
    theta4: complex
    theta2pp: complex
    theta3pp: complex
    theta4pp: complex


def _check_nome(q: complex) -> complex:
    q = complex(q)
    if abs(q) >= 1.0:
        raise ThetaDomainError(f"nome must satisfy |q| < 1, got |q| = {abs(q)}")
    return q


def theta_constants(q: complex, precision_target: float = 1e-16) -> ThetaConstants:
    """Sum the theta-constant series with a tail bound below the target.

    All fractional powers of q use the principal branch, consistently, so
    quartic combinations like theta2^4 = 16 q^(1/2) (sum ...)^4 are
    branch-coherent.
    """
    q = _check_nome(q)
    if q == 0:
        return ThetaConstants(q, 2.0, -2.0, 0.0, 1.0, 1.0, 0.0, 0.0, 0.0)
    h = cmath.exp(cmath.log(q) / 2)       # q^(1/2)
    q8 = cmath.exp(cmath.log(q) / 8)      # q^(1/8)

    a = a1 = a2 = a3 = 0j                 # sums over h^(n(n+1))
    b = c = 1 + 0j                        # sums over h^(n^2)
    b2 = c2 = 0j
    n = 0
    while True:
        w = h ** (n * (n + 1))
        odd = 2 * n + 1
        sgn = -1 if n % 2 else 1
        a += w
        a1 += sgn * odd * w
        a2 += odd * odd * w
        a3 += sgn * odd ** 3 * w
        if n >= 1:
            v = h ** (n * n)
            b += 2 * v
            b2 += -8 * n * n * v
            c += 2 * sgn * v
            c2 += -8 * sgn * n * n * v
        # the slowest-decaying weighted tail term is (2n+1)^3 h^(n(n+1))
        if n >= 2 and abs(w) * odd ** 3 < precision_target:
            break
        n += 1
        if n > 64:
            raise ThetaPrecisionError(
                "theta series did not reach the precision target")
    return ThetaConstants(
        q=q,
        theta1p=2 * q8 * a1,
        theta1ppp=-2 * q8 * a3,
        theta2=2 * q8 * a,
        theta3=b,
        theta4=c,
        theta2pp=-2 * q8 * a2,
        theta3pp=b2,
        theta4pp=c2,
    )


def theta_point(chi: complex, q: complex, precision_target: float = 1e-14):
    """Evaluate theta_1..theta_4 and their first three chi-derivatives.

    Returns a dict r -> (f, f', f'', f''') for r in 1..4.  Works for complex
    chi; the series converge for any chi but need more terms as |Im chi|
    approaches pi |Im tau|.
    """
    q = _check_nome(q)
    chi = complex(chi)
    h = cmath.exp(cmath.log(q) / 2)
    q8 = cmath.exp(cmath.log(q) / 8)

    s1 = [0j] * 4
    s2 = [0j] * 4
    s3 = [complex(1), 0j, 0j, 0j]
    s4 = [complex(1), 0j, 0j, 0j]
    scale = 1.0
    small = 0
    n = 0
    while True:
        odd = 2 * n + 1
        w = h ** (n * (n + 1))
        sgn = -1 if n % 2 else 1
        so, co = cmath.sin(odd * chi), cmath.cos(odd * chi)
        # theta1 = 2 sum (-1)^n q^((2n+1)^2/8) sin((2n+1)chi)
        cyc1 = (so, co, -so, -co)
        cyc2 = (co, -so, -co, so)
        mag = 0.0
        for d in range(4):
            t1 = 2 * sgn * w * odd ** d * cyc1[d]
            t2 = 2 * w * odd ** d * cyc2[d]
            s1[d] += t1
            s2[d] += t2
            mag = max(mag, abs(t1), abs(t2))
        if n >= 1:
            v = h ** (n * n)
            se, ce = cmath.sin(2 * n * chi), cmath.cos(2 * n * chi)
            cyc3 = (ce, -se, -ce, se)
            for d in range(4):
                t3 = 2 * v * (2 * n) ** d * cyc3[d]
                s3[d] += t3
                s4[d] += sgn * t3
                mag = max(mag, abs(t3))
        scale = max(scale, mag)
        small = small + 1 if mag < precision_target * scale else 0
        if small >= 2:
            break
        n += 1
        if n > 512:
            raise ThetaPrecisionError("theta series at chi did not converge")
    out = {
        1: tuple(q8 * s for s in s1),
        2: tuple(q8 * s for s in s2),
        3: tuple(s3),
        4: tuple(s4),
    }
    return out


def agm_complete_integrals(k2: complex):
    """Complete elliptic integrals (K, E) of parameter m = k^2 by AGM.

    Independent of the theta routines; principal square roots throughout,
    adequate for the moduli this package sweeps (k^2 away from [1, inf)).
    """
    k2 = complex(k2)
    if k2 == 1:
        raise ThetaDomainError("k^2 = 1 has divergent K")
    a, b = 1 + 0j, cmath.sqrt(1 - k2)
    if b.real < 0:
        b = -b
    csum = 0.5 * k2          # sum 2^(n-1) c_n^2 starting from c_0^2 = k^2
    power = 0.5
    for _ in range(64):
        c = (a - b) / 2
        a, b = (a + b) / 2, cmath.sqrt(a * b)
        if b.real < 0:
            b = -b
        power *= 2
        csum += power * c * c
        if abs(c) < 1e-17 * abs(a):
            break
    K = math.pi / (2 * a)
    E = K * (1 - csum)
    return K, E


def nome_from_k2(k2: complex) -> complex:
    """The nome q = exp(-2 pi K'/K) for parameter m = k^2."""
    K, _ = agm_complete_integrals(k2)
    Kp, _ = agm_complete_integrals(1 - k2)
    return cmath.exp(-2 * math.pi * Kp / K)


@dataclass(frozen=True)
class EllipticConstants:
    """Lattice data at nome q, normalization 2*omega1 = pi."""

    q: complex
    theta: ThetaConstants
    e1: complex
    e2: complex
    e3: complex
    g2: complex
    g3: complex
    zeta1: complex
    k2: complex
    K: complex
    E: complex
    omega1: float = math.pi / 2

    @property
    def kp2(self) -> complex:
        return 1 - self.k2

    @property
    def tau(self) -> complex:
        return cmath.log(self.q) / (2j * math.pi)

    @property
    def omega2(self) -> complex:
        return self.omega1 * self.tau

    def identity_residuals(self) -> dict:
        """Residuals of the cross-route identities, all ideally zero.

        Uses the AGM integrals as an independent oracle, and a five-point
        numeric q-derivative for the heat-equation relations, so none of the
        rows is trivially zero by construction.
        """
        th = self.theta
        K_agm, E_agm = agm_complete_integrals(self.k2)
        res = {
            "e_sum": abs(self.e1 + self.e2 + self.e3),
            "K_theta_vs_agm": abs(K_agm - self.K) / abs(K_agm),
            "E_theta_vs_agm": abs(E_agm - self.E) / abs(E_agm),
            "zeta1_vs_EK": abs(self.zeta1
                               - ((self.e1 - self.e2) * E_agm / K_agm - self.e1)),
        }
        # k^2 from the derivative-route e_i against the quartic route
        e1b, e2b, e3b = _second_route_e(th)
        res["k2_relation"] = abs((e3b - e2b) / (e1b - e2b) - self.k2)
        # heat-equation identities D ln theta_r^4 = (zeta1 + e_s)/2
        for name, pick, es in (
            ("qderiv_theta2", lambda t: t.theta2 ** 4, self.e1),
            ("qderiv_theta4", lambda t: t.theta4 ** 4, self.e2),
            ("qderiv_theta3", lambda t: t.theta3 ** 4, self.e3),
        ):
            d = _q_log_derivative(pick, self.q)
            res[name] = abs(d - (self.zeta1 + es) / 2)
        return res


def _second_route_e(th: ThetaConstants):
    zeta1 = -th.theta1ppp / (3 * th.theta1p)
    e1 = -th.theta2pp / th.theta2 - zeta1
    e2 = -th.theta4pp / th.theta4 - zeta1
    e3 = -th.theta3pp / th.theta3 - zeta1
    return e1, e2, e3


def _q_log_derivative(f, q: complex, rel_step: float = 1e-3) -> complex:
    """q d/dq ln f(q) by a five-point central stencil in q."""
    hstep = rel_step * abs(q)

    def lf(qq: complex) -> complex:
        return cmath.log(f(theta_constants(qq)))

    num = (lf(q - 2 * hstep) - 8 * lf(q - hstep)
           + 8 * lf(q + hstep) - lf(q + 2 * hstep))
    return q * num / (12 * hstep)


def elliptic_constants(q: complex, precision_target: float = 1e-16,
                       check_tol: float = 1e-10) -> EllipticConstants:
    """Lattice constants with the two e_i routes cross-checked.

    Raises ThetaPrecisionError when the quartic-formula values and the
    logarithmic-derivative values disagree beyond check_tol, which signals
    that the theta series were not summed accurately enough.
    """
    q = _check_nome(q)
    if q == 0:
        raise ThetaDomainError("q = 0 is a degenerate lattice")
    th = theta_constants(q, precision_target)
    t24 = th.theta2 ** 4
    t34 = th.theta3 ** 4
    e1 = (2 * t34 - t24) / 3
    e2 = (-t24 - t34) / 3
    e3 = (2 * t24 - t34) / 3
    zeta1 = -th.theta1ppp / (3 * th.theta1p)
    scale = max(abs(e1), abs(e2), abs(e3), 1.0)
    for got, ref in zip(_second_route_e(th), (e1, e2, e3)):
        if abs(got - ref) > check_tol * scale:
            raise ThetaPrecisionError(
                f"e_i cross-check failed: |{got} - {ref}| > {check_tol}")
    g2 = -4 * (e1 * e2 + e1 * e3 + e2 * e3)
    g3 = 4 * e1 * e2 * e3
    k2 = t24 / t34
    K = (math.pi / 2) * th.theta3 ** 2
    dlnK_dlnk = (zeta1 + e3) / (e1 - e3)
    E = K * (1 - k2) * (1 + dlnK_dlnk)
    return EllipticConstants(q=q, theta=th, e1=e1, e2=e2, e3=e3,
                             g2=g2, g3=g3, zeta1=zeta1, k2=k2, K=K, E=E)
