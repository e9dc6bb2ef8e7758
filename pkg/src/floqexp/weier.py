"""Weierstrass-form potentials: substitution, rewriting, period means.

Expressions are polynomials in the eight quantities P_s = wp(x + w_s) and
Q_s = wp'(x + w_s), s = 0..3 (w_0 = 0), with coefficients in the parameter
field.  Every differential polynomial in a potential built from the P_s
lands in this ring, and a small set of rewrite rules brings any
even-Q-degree element to the integrable normal form

    c_0 + c_1 P_1 + ... (at most one power of each P_s, no Q),

possibly discarding exact x-derivatives on the way (which is harmless
under a period integral).  The period mean is then c_0 - zeta1 * sum c_s.
"""

from __future__ import annotations

from .coeffring import ParamRat, rat, sym
from .diffpoly import DiffPoly, kdv_densities
from .series import AsymSeries, expand_coefficients, revert_eigenvalue

__all__ = ["WeierExpr", "IrreducibleTermError", "weier_reduce", "weier_mean",
           "ellipsoidal_potential", "dtv_potential", "weier_epsilons",
           "weier_eigenvalue", "weier_to_jacobi_eigenvalue",
           "expand_modular_invariants", "canonical_e"]

# Klein four-group composition on half-period labels {0,1,2,3}
_KLEIN = [[0, 1, 2, 3],
          [1, 0, 3, 2],
          [2, 3, 0, 1],
          [3, 2, 1, 0]]


class IrreducibleTermError(Exception):
    """Raised when a monomial cannot be brought to integrable form
    (odd Q-degree across several lattice sites)."""


def _e(m: int) -> ParamRat:
    return sym(f"e{m}")


def _other_two(m: int) -> tuple:
    a, b = [j for j in (1, 2, 3) if j != m]
    return a, b


Mono = tuple  # ((p0,p1,p2,p3), (q0,q1,q2,q3))

_ZERO4 = (0, 0, 0, 0)


class WeierExpr:
    """Polynomial in P_s, Q_s with ParamRat coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        clean: dict[Mono, ParamRat] = {}
        for mono, c in (terms or {}).items():
            if not isinstance(c, ParamRat):
                c = rat(c)
            if not c.is_zero():
                p, q = mono
                clean[(tuple(p), tuple(q))] = c
        self.terms = clean

    @classmethod
    def zero(cls) -> "WeierExpr":
        return cls({})

    @classmethod
    def constant(cls, c) -> "WeierExpr":
        return cls({(_ZERO4, _ZERO4): c})

    @classmethod
    def p(cls, site: int, power: int = 1, coeff=1) -> "WeierExpr":
        pv = [0, 0, 0, 0]
        pv[site] = power
        return cls({(tuple(pv), _ZERO4): coeff})

    @classmethod
    def q(cls, site: int, power: int = 1, coeff=1) -> "WeierExpr":
        qv = [0, 0, 0, 0]
        qv[site] = power
        return cls({(_ZERO4, tuple(qv)): coeff})

    def coeff(self, mono: Mono) -> ParamRat:
        p, q = mono
        return self.terms.get((tuple(p), tuple(q)), rat(0))

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "WeierExpr") -> "WeierExpr":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, rat(0)) + c
        return WeierExpr(out)

    def __neg__(self) -> "WeierExpr":
        return WeierExpr({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "WeierExpr") -> "WeierExpr":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, WeierExpr):
            out: dict[Mono, ParamRat] = {}
            for (p1, q1), c1 in self.terms.items():
                for (p2, q2), c2 in other.terms.items():
                    m = (tuple(a + b for a, b in zip(p1, p2)),
                         tuple(a + b for a, b in zip(q1, q2)))
                    prod = c1 * c2
                    out[m] = out.get(m, rat(0)) + prod
            return WeierExpr(out)
        c = other if isinstance(other, ParamRat) else rat(other)
        return WeierExpr({m: v * c for m, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeierExpr):
            return NotImplemented
        keys = set(self.terms) | set(other.terms)
        return all(self.coeff(k) == other.coeff(k) for k in keys)

    __hash__ = None

    def x_derivative(self) -> "WeierExpr":
        """d/dx using dP_s = Q_s and dQ_s = 6 P_s^2 - g2/2."""
        g2 = sym("g2")
        out = WeierExpr.zero()
        for (p, q), c in self.terms.items():
            for s in range(4):
                if p[s]:
                    pv = list(p); qv = list(q)
                    pv[s] -= 1; qv[s] += 1
                    out = out + WeierExpr({(tuple(pv), tuple(qv)):
                                           c * rat(p[s])})
                if q[s]:
                    pv = list(p); qv = list(q)
                    qv[s] -= 1
                    base = WeierExpr({(tuple(pv), tuple(qv)): c * rat(q[s])})
                    dq = WeierExpr.p(s, 2, rat(6)) - WeierExpr.constant(g2 / 2)
                    out = out + base * dq
        return out

    def q_degree(self) -> int:
        return max((sum(q) for (_, q) in self.terms), default=0)

    def render(self) -> str:
        if not self.terms:
            return "0"
        def name(sym_, s, pw):
            base = f"{sym_}{s}" if s else sym_
            return base + (f"^{pw}" if pw > 1 else "")
        parts = []
        for (p, q) in sorted(self.terms, key=lambda m: (sum(m[1]), sum(m[0]), m)):
            c = self.terms[(p, q)].render()
            factors = [name("P", s, p[s]) for s in range(4) if p[s]]
            factors += [name("Q", s, q[s]) for s in range(4) if q[s]]
            parts.append(f"({c})*" + "*".join(factors) if factors else f"({c})")
        return " + ".join(parts)


def substitute_weier(poly: DiffPoly, potential: WeierExpr) -> WeierExpr:
    """Evaluate a differential polynomial in u at a Weierstrass potential."""
    derivs = {0: potential}

    def deriv(k: int) -> WeierExpr:
        if k not in derivs:
            derivs[k] = deriv(k - 1).x_derivative()
        return derivs[k]

    total = WeierExpr.zero()
    for mono, coeff in poly.terms.items():
        term = WeierExpr.constant(1)
        for k in mono:
            term = term * deriv(k)
        total = total + term * coeff
    return total


# ---------------------------------------------------------------------------
# Rewriting to integrable normal form
# ---------------------------------------------------------------------------

_norm_cache: dict[Mono, "WeierExpr"] = {}


def _reduce_monomial(mono: Mono) -> WeierExpr:
    p, q = mono
    key = (tuple(p), tuple(q))
    if key in _norm_cache:
        return _norm_cache[key]

    out = _reduce_step(p, q)
    _norm_cache[key] = out
    return out


def _finish(expr: WeierExpr) -> WeierExpr:
    out = WeierExpr.zero()
    for m, c in expr.terms.items():
        out = out + _reduce_monomial(m) * c
    return out


def _reduce_step(p: tuple, q: tuple) -> WeierExpr:
    g2, g3 = sym("g2"), sym("g3")

    # same-site Q^2 -> 4P^3 - g2 P - g3
    for s in range(4):
        if q[s] >= 2:
            qv = list(q); qv[s] -= 2
            rest = WeierExpr({(p, tuple(qv)): 1})
            cubic = (WeierExpr.p(s, 3, rat(4))
                     - WeierExpr.p(s, 1, g2) - WeierExpr.constant(g3))
            return _finish(rest * cubic)

    # cross-site Q_s Q_t
    active_q = [s for s in range(4) if q[s]]
    if len(active_q) >= 2:
        s, t = active_q[0], active_q[1]
        m = _KLEIN[s][t]
        a, b = _other_two(m)
        qv = list(q); qv[s] -= 1; qv[t] -= 1
        rest = WeierExpr({(p, tuple(qv)): 1})
        pref = (_e(m) - _e(a)) * (_e(m) - _e(b)) * rat(-4)
        bracket = (WeierExpr.p(s) + WeierExpr.p(t)
                   + WeierExpr.constant(_e(m))) * pref
        return _finish(rest * bracket)

    # a single leftover Q
    if len(active_q) == 1:
        s = active_q[0]
        if all(p[t] == 0 for t in range(4) if t != s):
            # P_s^a Q_s = (P_s^(a+1)/(a+1))' is an exact derivative
            return WeierExpr.zero()
        raise IrreducibleTermError(
            f"monomial with odd Q-degree across sites: P{p} Q{q}")

    # no Q from here on; couple distinct sites pairwise
    active_p = [s for s in range(4) if p[s]]
    if len(active_p) >= 2:
        s, t = active_p[0], active_p[1]
        m = _KLEIN[s][t]
        a, b = _other_two(m)
        pv = list(p); pv[s] -= 1; pv[t] -= 1
        rest = WeierExpr({(tuple(pv), q): 1})
        pair = (WeierExpr.p(s, 1, _e(m)) + WeierExpr.p(t, 1, _e(m))
                + WeierExpr.constant(_e(m) ** 2 + _e(a) * _e(b)))
        return _finish(rest * pair)

    # single-site P_s^n with n >= 2, reduced modulo an exact derivative:
    # (4n-2) P^n = (n - 3/2) g2 P^(n-2) + (n-2) g3 P^(n-3) + (P^(n-2) Q)'
    if active_p:
        s = active_p[0]
        n = p[s]
        if n >= 2:
            lead = WeierExpr.p(s, n - 2, g2 * rat(2 * n - 3, 2))
            tail = (WeierExpr.p(s, n - 3, g3 * rat(n - 2)) if n >= 3
                    else WeierExpr.constant(g3 * rat(n - 2)))
            return _finish((lead + tail) * rat(1, 4 * n - 2))

    return WeierExpr({(p, q): 1})


def weier_reduce(expr: WeierExpr) -> WeierExpr:
    """Normal form c_0 + sum_s c_s P_s, equal to ``expr`` modulo exact
    x-derivatives.  Raises IrreducibleTermError on odd Q-degree terms that
    span several sites."""
    out = WeierExpr.zero()
    for m, c in expr.terms.items():
        out = out + _reduce_monomial(m) * c
    return out


def weier_mean(expr: WeierExpr) -> ParamRat:
    """Period average over x in [x0, x0 + 2 w1]: the mean of each
    wp(x + w_s) is -zeta1, constants pass through."""
    reduced = weier_reduce(expr)
    zeta1 = sym("zeta1")
    total = rat(0)
    for (p, q), c in reduced.terms.items():
        if sum(q) or sum(p) > 1:
            raise IrreducibleTermError(
                f"not in integrable normal form: P{p} Q{q}")
        total = total + (c * (-zeta1) if sum(p) else c)
    return total


# ---------------------------------------------------------------------------
# Concrete potentials and their dispersion data
# ---------------------------------------------------------------------------

def ellipsoidal_potential(a1=None, a2=None) -> WeierExpr:
    """u(x) = a1 wp(x) + a2 wp(x)^2 (defaults to symbols alpha1, alpha2)."""
    a1 = sym("alpha1") if a1 is None else a1
    a2 = sym("alpha2") if a2 is None else a2
    return WeierExpr.p(0, 1, a1) + WeierExpr.p(0, 2, a2)


def dtv_potential(b=None) -> WeierExpr:
    """u(x) = sum_s b_s wp(x + w_s) (defaults to symbols b0..b3)."""
    if b is None:
        b = [sym(f"b{s}") for s in range(4)]
    out = WeierExpr.zero()
    for s, bs in enumerate(b):
        if not isinstance(bs, ParamRat):
            bs = rat(bs)
        if not bs.is_zero():
            out = out + WeierExpr.p(s, 1, bs)
    return out


def weier_epsilons(potential: WeierExpr, count: int) -> list:
    """eps_l = (1/(2 w1)) * integral of v_{2l-1}, l = 1..count."""
    vs = kdv_densities(2 * count - 1)
    return [weier_mean(substitute_weier(vs[2 * l - 2], potential))
            for l in range(1, count + 1)]


def weier_eigenvalue(potential: WeierExpr, order: int) -> AsymSeries:
    """lam(nu) = -nu^2 + sum_l lam_l nu^(-2l) through nu^(-2*order)."""
    return revert_eigenvalue(weier_epsilons(potential, order + 1))


def weier_to_jacobi_eigenvalue(lam_series: AsymSeries, delta=None, omega=None,
                               k_order: int = 8) -> AsymSeries:
    """Convert lam(nu) for alpha1 P + alpha2 P^2 into Lambda(mu), k-expanded.

    Applies the parameter map between the Weierstrass form and the Jacobi
    form of the same operator:

        alpha1 = Delta - 2 e2 Omega/(e1-e2),   alpha2 = Omega/(e1-e2),
        lam = (e1-e2) Lambda - e2 Delta + e2^2 Omega/(e1-e2),
        nu = (e1-e2)^(1/2) mu,

    then replaces e_i, zeta1, g2, g3 by their exact k^2-series.  The result
    is an AsymSeries in "k" (even exponents through k_order) whose
    coefficients are exact rationals in Delta, Omega and 1/mu.  Since the
    map keeps powers of mu separate, the mu^0 and mu^(-2) groups are
    complete whenever lam_series carries the nu^0 and nu^(-2) terms.
    """
    from .numerics.kseries import k_expansion_constants

    ks = k_expansion_constants(k_order)
    e1me2, e2, z1, g2, g3 = (ks["e1me2"], ks["e2"], ks["zeta1"],
                             ks["g2"], ks["g3"])
    inv = e1me2.inverse().truncate(k_order)
    if delta is None:
        delta = sym("Delta")
    if omega is None:
        omega = sym("Omega")
    bindings = {
        "alpha1": (AsymSeries.exact("k", {0: delta})
                   + (e2 * inv).scale(omega * rat(-2))).truncate(k_order),
        "alpha2": inv.scale(omega),
        "zeta1": z1,
        "g2": g2,
        "g3": g3,
    }
    acc = AsymSeries.zero("k", k_order)
    for e, c in lam_series.coeffs.items():
        body = expand_coefficients(c, bindings, "k", k_order)
        factor = inv ** (e // 2) if e >= 0 else e1me2 ** (-e // 2)
        term = (body * factor).scale(sym("mu", -e))
        acc = acc + term.truncate(k_order)
    shift = (e2.scale(delta) - (e2 * e2 * inv).scale(omega)).truncate(k_order)
    out = ((acc + shift) * inv).truncate(k_order)
    return AsymSeries("k", out.coeffs, min(out.order, k_order))


# ---------------------------------------------------------------------------
# Canonicalization helpers (the e_i, g_2, g_3 are not independent)
# ---------------------------------------------------------------------------

def expand_modular_invariants(value: ParamRat) -> ParamRat:
    """Rewrite g2, g3 in terms of e1, e2, e3."""
    e1, e2, e3 = _e(1), _e(2), _e(3)
    return value.substitute({
        "g2": (e1 * e2 + e1 * e3 + e2 * e3) * rat(-4),
        "g3": e1 * e2 * e3 * rat(4),
    })


def canonical_e(value: ParamRat) -> ParamRat:
    """Normal form with g2, g3 expanded and e3 eliminated by
    e1 + e2 + e3 = 0; makes semantically equal expressions compare equal."""
    out = expand_modular_invariants(value)
    return out.substitute({"e3": -(_e(1) + _e(2))})
