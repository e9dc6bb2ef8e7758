"""Small-energy expansions for the ellipsoidal wave equation in Jacobian form.

Two perturbative regimes are covered, one around z* = 0 (sn mode, monodromy
along 2iK') and one around z* = K (cn mode, monodromy along 2K + 2iK').
In both, the natural expansion parameter is t = Delta^(-1/2) and the
logarithmic derivative of the wave function lives in a small function
space: Laurent polynomials in w = sn z (resp. cn z), plus such a Laurent
polynomial times the prefactor cn z dn z (resp. sn z dn z).

The period integrals of w^m reduce by a two-term downward recursion to the
residue values at m = -1, so the Floquet exponent series has exact
coefficients, polynomial in the eigenvalue.  Solving that series for the
eigenvalue gives the asymptotic spectral expansions.
"""

from __future__ import annotations

from .coeffring import ParamRat, iunit, rat, sym
from .series import AsymSeries, solve_for_symbol

__all__ = ["JacobiExpr", "small_energy_v", "period_integral_table",
           "floquet_exponent_series", "small_energy_eigenvalue",
           "SMALL_ENERGY_PARAM"]

SMALL_ENERGY_PARAM = "Delta^-1/2"

_MODES = ("sn", "cn")


def _k() -> ParamRat:
    return sym("k")


def _dict_add(d1: dict, d2: dict) -> dict:
    out = dict(d1)
    for n, c in d2.items():
        out[n] = out.get(n, rat(0)) + c
    return out


def _dict_mul(d1: dict, d2: dict) -> dict:
    out: dict[int, ParamRat] = {}
    for n1, c1 in d1.items():
        for n2, c2 in d2.items():
            n = n1 + n2
            prod = c1 * c2
            out[n] = out.get(n, rat(0)) + prod
    return out


def _dict_scale(d: dict, c) -> dict:
    return {n: v * c for n, v in d.items()}


def _clean(d: dict) -> dict:
    return {n: c for n, c in d.items() if not c.is_zero()}


def _prefactor_sq(mode: str) -> dict:
    """(cn z dn z)^2 or (sn z dn z)^2 as a polynomial in sn z / cn z."""
    k2 = _k() ** 2
    if mode == "sn":
        # (1 - s^2)(1 - k^2 s^2)
        return {0: rat(1), 2: -(rat(1) + k2), 4: k2}
    # (1 - c^2)(k'^2 + k^2 c^2)
    kp2 = rat(1) - k2
    return {0: kp2, 2: k2 - kp2, 4: -k2}


class JacobiExpr:
    """a(w) + b(w) * prefactor, with w = sn z (mode "sn") or cn z ("cn");
    the prefactor is cn z dn z resp. sn z dn z."""

    __slots__ = ("mode", "a", "b")

    def __init__(self, mode: str, a: dict | None = None, b: dict | None = None):
        if mode not in _MODES:
            raise ValueError(f"unknown mode {mode!r}")
        self.mode = mode
        self.a = _clean({int(n): c if isinstance(c, ParamRat) else rat(c)
                         for n, c in (a or {}).items()})
        self.b = _clean({int(n): c if isinstance(c, ParamRat) else rat(c)
                         for n, c in (b or {}).items()})

    def is_zero(self) -> bool:
        return not self.a and not self.b

    def is_pure_a(self) -> bool:
        return not self.b

    def is_pure_b(self) -> bool:
        return not self.a

    def _check_mode(self, other: "JacobiExpr"):
        if self.mode != other.mode:
            raise ValueError("mixed sn/cn expressions")

    def __add__(self, other: "JacobiExpr") -> "JacobiExpr":
        self._check_mode(other)
        return JacobiExpr(self.mode, _dict_add(self.a, other.a),
                          _dict_add(self.b, other.b))

    def __neg__(self) -> "JacobiExpr":
        return JacobiExpr(self.mode, _dict_scale(self.a, rat(-1)),
                          _dict_scale(self.b, rat(-1)))

    def __sub__(self, other: "JacobiExpr") -> "JacobiExpr":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, JacobiExpr):
            self._check_mode(other)
            a = _dict_add(_dict_mul(self.a, other.a),
                          _dict_mul(_dict_mul(self.b, other.b),
                                    _prefactor_sq(self.mode)))
            b = _dict_add(_dict_mul(self.a, other.b),
                          _dict_mul(self.b, other.a))
            return JacobiExpr(self.mode, a, b)
        c = other if isinstance(other, ParamRat) else rat(other)
        return JacobiExpr(self.mode, _dict_scale(self.a, c),
                          _dict_scale(self.b, c))

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, JacobiExpr):
            return NotImplemented
        if self.mode != other.mode:
            return False
        for n in set(self.a) | set(other.a):
            if self.a.get(n, rat(0)) != other.a.get(n, rat(0)):
                return False
        for n in set(self.b) | set(other.b):
            if self.b.get(n, rat(0)) != other.b.get(n, rat(0)):
                return False
        return True

    __hash__ = None

    def shift_down(self) -> "JacobiExpr":
        """Divide by w (exact on Laurent polynomials)."""
        return JacobiExpr(self.mode,
                          {n - 1: c for n, c in self.a.items()},
                          {n - 1: c for n, c in self.b.items()})

    def z_derivative(self) -> "JacobiExpr":
        k2 = _k() ** 2
        new_a: dict[int, ParamRat] = {}
        new_b: dict[int, ParamRat] = {}
        if self.mode == "sn":
            # (s^n)' = n s^(n-1) cn dn
            for n, c in self.a.items():
                if n:
                    new_b[n - 1] = new_b.get(n - 1, rat(0)) + c * rat(n)
            # (f(s) cn dn)' = f'(s)(1-s^2)(1-k^2 s^2) - f(s) s [(1+k^2) - 2k^2 s^2]
            pre2 = _prefactor_sq("sn")
            for n, c in self.b.items():
                if n:
                    for m, p in pre2.items():
                        e = n - 1 + m
                        new_a[e] = new_a.get(e, rat(0)) + c * rat(n) * p
                e = n + 1
                new_a[e] = new_a.get(e, rat(0)) - c * (rat(1) + k2)
                e = n + 3
                new_a[e] = new_a.get(e, rat(0)) + c * rat(2) * k2
        else:
            # (c^n)' = -n c^(n-1) sn dn
            for n, c in self.a.items():
                if n:
                    new_b[n - 1] = new_b.get(n - 1, rat(0)) - c * rat(n)
            # (f(c) sn dn)' = -f'(c)(1-c^2)(k'^2+k^2 c^2)
            #                 + f(c) c [(1-2k^2) + 2k^2 c^2]
            pre2 = _prefactor_sq("cn")
            for n, c in self.b.items():
                if n:
                    for m, p in pre2.items():
                        e = n - 1 + m
                        new_a[e] = new_a.get(e, rat(0)) - c * rat(n) * p
                e = n + 1
                new_a[e] = new_a.get(e, rat(0)) + c * (rat(1) - k2 * 2)
                e = n + 3
                new_a[e] = new_a.get(e, rat(0)) + c * rat(2) * k2
        return JacobiExpr(self.mode, new_a, new_b)

    def render(self) -> str:
        w = self.mode
        pre = "cn*dn" if self.mode == "sn" else "sn*dn"
        parts = []
        for n in sorted(self.a, reverse=True):
            parts.append(f"({self.a[n].render()})*{w}^{n}" if n else
                         f"({self.a[n].render()})")
        for n in sorted(self.b, reverse=True):
            body = f"{w}^{n}*{pre}" if n else pre
            parts.append(f"({self.b[n].render()})*{body}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"JacobiExpr[{self.mode}]({self.render()})"


def _rhs(mode: str) -> dict:
    """Nonzero t-orders of u + eigenvalue, as pure-a JacobiExpr dicts."""
    k = _k()
    om = sym("Omega")
    if mode == "sn":
        return {-2: JacobiExpr("sn", {2: k ** 2}),
                0: JacobiExpr("sn", {4: om * k ** 4, 0: sym("Lambda")})}
    # around z* = K the potential flips sign:
    # W^2 - i W_z = Delta k^2 cn^2 + Omega k^4 cn^2 (2 - cn^2) - Lambdat
    return {-2: JacobiExpr("cn", {2: -(k ** 2)}),
            0: JacobiExpr("cn", {2: om * k ** 4 * (-2), 4: om * k ** 4,
                                 0: sym("Lambdat")})}


def small_energy_v(mode: str, max_ell: int) -> dict:
    """Expansion densities V_l, l = -1..max_ell, of the logarithmic
    derivative in powers of t = Delta^(-1/2).

    For the sn mode these solve  V_z + V^2 = u + Lambda  order by order;
    for the cn mode the ansatz v = i * sum V_l t^l turns the relation into
    i V_z - V^2 = u + Lambdat  with real densities.  Odd-l densities are
    Laurent in w alone; even-l ones are exact derivatives.
    """
    if mode not in _MODES:
        raise ValueError(f"unknown mode {mode!r}")
    k = _k()
    rhs = _rhs(mode)
    half_inv = rat(1) / (k * 2)  # divide by 2 V_{-1} = 2k w

    vs: dict[int, JacobiExpr] = {-1: JacobiExpr(mode, {1: k})}
    iu = iunit()
    for m in range(-1, max_ell):
        if mode == "sn":
            num = rhs.get(m, JacobiExpr(mode)) - vs[m].z_derivative()
        else:
            num = vs[m].z_derivative() * iu - rhs.get(m, JacobiExpr(mode))
        for i in range(0, m + 1):
            j = m - i
            if 0 <= j <= m:
                num = num - vs[i] * vs[j]
        vs[m + 1] = (num * half_inv).shift_down()
    return vs


def period_integral_table(mode: str, min_m: int) -> dict:
    """Period integrals of w^m divided by pi, for odd m in [min_m, 1].

    sn mode: integral of sn^m z over z0 .. z0+2iK'; the only residue sits
    at the m = -1 term, so the list starts from I_{-1}/pi = i, I_1 = 0 and
    runs downward by the recursion
        (m+1) I_m = (m+2)(1+k^2) I_{m+2} - (m+3) k^2 I_{m+4}.
    cn mode: integral of cn^m z over z0 .. z0+2K+2iK', J_{-1}/pi = -i/k',
    J_1 = 0, with
        (m+1) k'^2 J_m = (m+2)(1-2k^2) J_{m+2} + (m+3) k^2 J_{m+4}.
    Even m is rejected: those integrals never arise here and the residue
    bookkeeping does not apply to them.
    """
    if mode not in _MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if min_m % 2 == 0:
        raise ValueError("period integrals are tabulated for odd m only")
    k2 = _k() ** 2
    iu = iunit()
    if mode == "sn":
        table = {1: rat(0), -1: iu}
        for m in range(-3, min_m - 1, -2):
            table[m] = (table[m + 2] * (rat(1) + k2) * rat(m + 2)
                        - table[m + 4] * k2 * rat(m + 3)) / rat(m + 1)
    else:
        kp = sym("kp")
        table = {1: rat(0), -1: -iu / kp}
        for m in range(-3, min_m - 1, -2):
            table[m] = (table[m + 2] * (rat(1) - k2 * 2) * rat(m + 2)
                        + table[m + 4] * k2 * rat(m + 3)) / (rat(m + 1) * kp ** 2)
    for m in range(3, max(3, 2 - min_m), 2):
        table[m] = rat(0)
    return table


def _integrate_density(v: JacobiExpr, table: dict) -> ParamRat:
    total = rat(0)
    for m, c in v.a.items():
        if m % 2 == 0:
            raise ValueError(f"unexpected even power w^{m} in density")
        total = total + c * table[m]
    return total


def floquet_exponent_series(mode: str, order: int) -> AsymSeries:
    """Floquet exponent mu as a series in t = Delta^(-1/2) through t^order,
    with coefficients polynomial in the eigenvalue (Lambda or Lambdat).

    sn mode: mu = (1/pi) * integral of v over the 2iK' period;
    cn mode: mu = (i k'/pi) * integral over the 2K+2iK' period.
    """
    vs = small_energy_v(mode, order)
    min_m = min((min(v.a) for v in vs.values() if v.a), default=-1)
    table = period_integral_table(mode, min_m if min_m % 2 else min_m - 1)
    iu = iunit()
    coeffs = {}
    for ell, v in vs.items():
        if ell % 2 == 0:
            if not v.is_pure_b():
                raise AssertionError(f"even density V_{ell} not an exact derivative")
            continue
        if not v.is_pure_a():
            raise AssertionError(f"odd density V_{ell} has a prefactor part")
        val = _integrate_density(v, table)
        if mode == "cn":
            # v = i * W and the exponent carries an extra i k'
            val = val * iu * iu * sym("kp")
        coeffs[ell] = val
    return AsymSeries(SMALL_ENERGY_PARAM, coeffs, order)


def small_energy_eigenvalue(mode: str, order: int = 3) -> AsymSeries:
    """Eigenvalue Lambda as a series in t = Delta^(-1/2) through t^order,
    with coefficients polynomial in mu (and Omega, k).

    The sn-mode series starts at t^(-1); the cn-mode result includes the
    potential-minimum offset, Lambda = -Delta k^2 - Omega k^4 + Lambdat(mu),
    so it starts at t^(-2).
    """
    forward = floquet_exponent_series(mode, 2 * order + 3)
    if mode == "sn":
        return solve_for_symbol(forward, "Lambda", sym("mu"), order)
    sol = solve_for_symbol(forward, "Lambdat", sym("mu"), order)
    k = _k()
    offset = AsymSeries.exact(SMALL_ENERGY_PARAM,
                              {-2: -(k ** 2), 0: -sym("Omega") * k ** 4})
    return (sol + offset).truncate(order)
