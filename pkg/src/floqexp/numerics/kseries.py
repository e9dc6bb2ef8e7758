"""Exact k^2-expansions of the lattice constants at 2*omega1 = pi.

Everything here is rational arithmetic: the theta quartics are q-series with
integer coefficients, k^2 = theta2^4/theta3^4 is inverted as a formal series,
and the lattice constants are composed through that inverse.  The results
feed the Weierstrass-to-Jacobi parameter map, whose printed coefficients are
exact rationals in the couplings.
"""

from __future__ import annotations

from ..coeffring import rat
from ..series import AsymSeries, SeriesError

__all__ = ["k_expansion_constants"]


def _retag(series: AsymSeries, param: str) -> AsymSeries:
    return AsymSeries(param, series.coeffs, series.order)


def _p_series(weights, depth: int) -> AsymSeries:
    """sum_n weights(n) * p^(n(n+1)) through p^depth, as a series in "p"."""
    coeffs = {}
    n = 0
    while n * (n + 1) <= depth:
        coeffs[n * (n + 1)] = coeffs.get(n * (n + 1), rat(0)) + rat(weights(n))
        n += 1
    return AsymSeries("p", coeffs, depth)


def _square_series(signed: bool, depth: int) -> AsymSeries:
    """1 + 2 sum_n (+-1)^n p^(n^2) through p^depth."""
    coeffs = {0: rat(1)}
    n = 1
    while n * n <= depth:
        coeffs[n * n] = rat(-2 if (signed and n % 2) else 2)
        n += 1
    return AsymSeries("p", coeffs, depth)


def k_expansion_constants(order: int) -> dict:
    """Exact series in k (even powers, through k^order) for the lattice data.

    Returns a dict with keys "e1", "e2", "e3", "zeta1", "g2", "g3", "e1me2"
    mapping to AsymSeries in parameter "k" with rational coefficients.  The
    nome inversion is certified by resubstitution; a failure there is an
    internal error, not a user input problem.
    """
    if order < 1:
        raise SeriesError("expansion order must be >= 1")
    if order > 200:
        raise SeriesError("k-expansion order beyond internal q-series bounds")
    depth = order // 2 + 1

    # theta building blocks as p-series (p = q^(1/2))
    s2h = _p_series(lambda n: 1, depth)                       # theta2/(2 q^(1/8))
    s3 = _square_series(False, depth)                         # theta3
    a1 = _p_series(lambda n: (-1) ** n * (2 * n + 1), depth)
    a3 = _p_series(lambda n: (-1) ** n * (2 * n + 1) ** 3, depth)

    # k^2 = 16 p (s2h/s3)^4; invert for p(k) by fixed-point iteration
    ratio4 = ((s3 ** 4) * (s2h ** 4).inverse()).truncate(depth)
    k2 = AsymSeries.exact("k", {2: rat(1)})
    p = k2.scale(rat(1, 16)).truncate(order)
    for _ in range(order // 2 + 2):
        p = (k2.scale(rat(1, 16)) * _retag(ratio4, "k").compose(p)).truncate(order)
    # certify: 16 p (s2h(p)/s3(p))^4 == k^2 through the requested order
    check = (p.scale(rat(16)) * _retag((s2h ** 4) * (s3 ** 4).inverse(), "k").compose(p))
    if not (check - k2).truncate(order).is_zero():
        raise SeriesError("nome inversion failed to certify (internal error)")

    def at_k(series_p: AsymSeries) -> AsymSeries:
        return _retag(series_p.truncate(depth), "k").compose(p).truncate(order)

    t34 = at_k(s3 ** 4)                                       # = e1 - e2
    t24 = (p.scale(rat(16)) * at_k(s2h ** 4)).truncate(order)
    third = rat(1, 3)
    e1 = (t34.scale(rat(2)) - t24).scale(third)
    e2 = -(t24 + t34).scale(third)
    e3 = (t24.scale(rat(2)) - t34).scale(third)
    zeta1 = (at_k(a3) * at_k(a1).inverse()).scale(third).truncate(order)
    g2 = (e1 * e2 + e1 * e3 + e2 * e3).scale(rat(-4)).truncate(order)
    g3 = (e1 * e2 * e3).scale(rat(4)).truncate(order)
    return {"e1": e1, "e2": e2, "e3": e3, "zeta1": zeta1,
            "g2": g2, "g3": g3, "e1me2": t34}
