"""Shared helpers for the test suite.

The symbolic layers treat k and kp as independent symbols and only keep
results in a kp-reduced normal form where it matters for printing, so
equality of two expressions that are equal on the curve kp^2 = 1 - k^2
is checked through :func:`same_mod_kp`.
"""

from fractions import Fraction

import pytest

from floqexp import ParamRat, Poly


def kp_reduce(poly: Poly) -> Poly:
    """Rewrite every kp^(2n) factor as (1 - k^2)^n."""
    rep = Poly.const(Fraction(1)) - Poly.symbol("k", 2)
    total = Poly()
    for mono, coeff in poly.terms.items():
        term = Poly.const(coeff)
        for s, e in mono:
            if s == "kp":
                term = term * rep ** (e // 2)
                if e % 2:
                    term = term * Poly.symbol("kp")
            else:
                term = term * Poly.symbol(s, e)
        total = total + term
    return total


def same_mod_kp(a: ParamRat, b: ParamRat) -> bool:
    """Equality of rational expressions modulo kp^2 = 1 - k^2.

    Denominators are monomials, so the difference vanishes on the curve
    exactly when its reduced numerator is the zero polynomial.
    """
    return kp_reduce((a - b).num).is_zero()


@pytest.fixture(scope="session")
def mathieu_pot():
    from floqexp.numerics import PotentialSpecNumeric

    return PotentialSpecNumeric("trig", {"theta": (1.0,)})


@pytest.fixture(scope="session")
def lame_pot():
    from floqexp.numerics import PotentialSpecNumeric

    return PotentialSpecNumeric("lame", {"delta": 2.0}, q=0.05)
