"""Differential polynomials in a single potential u(x).

A monomial is a multiset of derivative orders: ``(0, 0, 1)`` stands for
``u^2 * u_x``.  Coefficients live in the parameter field (:class:`ParamRat`),
so densities for potentials with free constants stay exact.

The two workhorse operations are the KdV density recursion and reduction
modulo exact x-derivatives, which is what turns a density into something
whose period mean can be read off term by term.
"""

from __future__ import annotations

from .coeffring import ParamRat, rat

__all__ = ["DiffPoly", "kdv_densities", "reduce_mod_exact", "monomial_weight"]

Monomial = tuple  # sorted tuple of derivative orders


def monomial_weight(mono: Monomial) -> int:
    """Scaling weight: each factor u^(k) counts k + 2."""
    return sum(k + 2 for k in mono)


def _factor_name(order: int) -> str:
    if order == 0:
        return "u"
    if order <= 4:
        return "u_" + "x" * order
    return f"u_({order}x)"


class DiffPoly:
    """Finite sum of monomials in u and its x-derivatives."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        clean: dict[Monomial, ParamRat] = {}
        for mono, coeff in (terms or {}).items():
            if not isinstance(coeff, ParamRat):
                coeff = rat(coeff)
            if not coeff.is_zero():
                clean[tuple(sorted(mono))] = coeff
        self.terms = clean

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls) -> "DiffPoly":
        return cls({})

    @classmethod
    def u(cls, order: int = 0, coeff=1) -> "DiffPoly":
        return cls({(order,): coeff})

    @classmethod
    def constant(cls, coeff) -> "DiffPoly":
        return cls({(): coeff})

    # -- inspection ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, mono) -> ParamRat:
        return self.terms.get(tuple(sorted(mono)), rat(0))

    def weights(self) -> set:
        return {monomial_weight(m) for m in self.terms}

    def is_homogeneous(self, weight: int) -> bool:
        return all(monomial_weight(m) == weight for m in self.terms)

    def max_order(self) -> int:
        return max((max(m) for m in self.terms if m), default=-1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DiffPoly):
            return NotImplemented
        keys = set(self.terms) | set(other.terms)
        return all(self.coeff(k) == other.coeff(k) for k in keys)

    __hash__ = None

    def render(self) -> str:
        if not self.terms:
            return "0"
        def key(mono):
            return (monomial_weight(mono), mono)
        parts = []
        for mono in sorted(self.terms, key=key):
            c = self.terms[mono].render()
            if not mono:
                parts.append(c)
                continue
            factors = []
            seen = sorted(set(mono))
            for k in seen:
                mult = mono.count(k)
                factors.append(_factor_name(k) + (f"^{mult}" if mult > 1 else ""))
            body = "*".join(factors)
            parts.append(body if c == "1" else f"({c})*{body}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"DiffPoly({self.render()})"

    # -- ring operations -----------------------------------------------------

    def __add__(self, other: "DiffPoly") -> "DiffPoly":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, rat(0)) + c
        return DiffPoly(out)

    def __neg__(self) -> "DiffPoly":
        return DiffPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "DiffPoly") -> "DiffPoly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, DiffPoly):
            out: dict[Monomial, ParamRat] = {}
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    m = tuple(sorted(m1 + m2))
                    prod = c1 * c2
                    out[m] = out.get(m, rat(0)) + prod
            return DiffPoly(out)
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, c) -> "DiffPoly":
        if not isinstance(c, ParamRat):
            c = rat(c)
        return DiffPoly({m: v * c for m, v in self.terms.items()})

    def total_x_derivative(self) -> "DiffPoly":
        """d/dx by the Leibniz rule: bump each factor's order in turn."""
        out: dict[Monomial, ParamRat] = {}
        for mono, c in self.terms.items():
            for idx in range(len(mono)):
                bumped = mono[:idx] + (mono[idx] + 1,) + mono[idx + 1:]
                m = tuple(sorted(bumped))
                out[m] = out.get(m, rat(0)) + c
        return DiffPoly(out)


def kdv_densities(count: int) -> list:
    """First ``count`` densities of the Riccati/KdV hierarchy.

    v_1 = u/2 and
    v_{l+1} = -(1/2) * (d/dx v_l + sum_{i+j=l, i,j>=1} v_i v_j).
    Returned as ``[v_1, ..., v_count]``; v_l is homogeneous of weight l + 1.
    """
    if count < 1:
        return []
    vs = [DiffPoly.u(0, rat(1, 2))]
    for l in range(1, count):
        acc = vs[l - 1].total_x_derivative()
        for i in range(1, l):
            acc = acc + vs[i - 1] * vs[l - i - 1]
        vs.append(acc.scale(rat(-1, 2)))
    return vs


# ---------------------------------------------------------------------------
# Reduction modulo exact derivatives
# ---------------------------------------------------------------------------

_reduce_cache: dict[Monomial, DiffPoly] = {}


def _reduce_monomial(mono: Monomial) -> DiffPoly:
    """Normal form of a single monomial modulo total x-derivatives.

    A monomial is already normal when its top derivative order is 0 or
    occurs at least twice.  Otherwise write it as B * (u^(m-1))^mu * u^(m)
    and use

        B (u^(m-1))^mu u^(m) = d/dx [B (u^(m-1))^(mu+1) / (mu+1)]
                               - (d/dx B) (u^(m-1))^(mu+1) / (mu+1),

    which strictly lowers the multiset of orders, so the recursion ends.
    """
    if not mono:
        return DiffPoly({(): 1})
    m = mono[-1]  # tuples are kept sorted
    if m == 0 or (len(mono) >= 2 and mono[-2] == m):
        return DiffPoly({mono: 1})
    if mono in _reduce_cache:
        return _reduce_cache[mono]
    rest = mono[:-1]
    mu = sum(1 for k in rest if k == m - 1)
    b = tuple(k for k in rest if k != m - 1)
    db = DiffPoly({b: 1}).total_x_derivative()
    tail = tuple([m - 1] * (mu + 1))
    replaced = DiffPoly({tuple(sorted(bm + tail)): c * rat(-1, mu + 1)
                         for bm, c in db.terms.items()})
    out = DiffPoly.zero()
    for sub, c in replaced.terms.items():
        out = out + _reduce_monomial(sub).scale(c)
    _reduce_cache[mono] = out
    return out


def reduce_mod_exact(poly: DiffPoly) -> DiffPoly:
    """Rewrite ``poly`` modulo exact x-derivatives into normal form.

    The result has the same period mean as the input for any periodic u.
    """
    out = DiffPoly.zero()
    for mono, c in poly.terms.items():
        out = out + _reduce_monomial(mono).scale(c)
    return out
