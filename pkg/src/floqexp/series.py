"""Truncated asymptotic series and the two reversion shapes.

An ``AsymSeries`` is a finite Laurent expansion in one small parameter with
``ParamRat`` coefficients.  The ``order`` field records how far the
coefficients are actually trusted; arithmetic propagates it conservatively
and never claims accuracy past the weakest operand.

Two inversions are provided:

* :func:`revert_eigenvalue` turns a dispersion relation
  ``i*nu = sqrt(lam) + sum_l eps_l * lam^(-(2l-1)/2)`` into the eigenvalue
  series ``lam = -nu^2 + sum_l lam_l / nu^(2l)`` (Newton iteration on the
  fixed-point form, with an exact residual check at the end).
* :func:`solve_for_symbol` solves ``F(t; X) = rhs`` for an unknown symbol
  ``X`` carried inside the coefficients, as a Laurent series ``X(t)``.  This
  is the shape needed when a Floquet exponent is known as a series whose
  coefficients are polynomial in the eigenvalue.
"""

from __future__ import annotations

from .coeffring import ParamRat, Poly, rat, sym

__all__ = ["SeriesError", "AsymSeries", "revert_eigenvalue", "solve_for_symbol",
           "expand_coefficients"]

# order value meaning "all absent coefficients are exactly zero"
EXACT_ORDER = 10 ** 9


class SeriesError(Exception):
    pass


def _zero() -> ParamRat:
    return rat(0)


class AsymSeries:
    """Truncated Laurent series sum_e c_e * param^e, trusted through
    exponent ``order``."""

    __slots__ = ("param", "coeffs", "order")

    def __init__(self, param: str, coeffs: dict, order: int):
        clean: dict[int, ParamRat] = {}
        for e, c in coeffs.items():
            if not isinstance(c, ParamRat):
                c = rat(c)
            if e <= order and not c.is_zero():
                clean[int(e)] = c
        self.param = param
        self.coeffs = clean
        self.order = order

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, param: str, order: int = EXACT_ORDER) -> "AsymSeries":
        return cls(param, {}, order)

    @classmethod
    def monomial(cls, param: str, exponent: int, coeff=1,
                 order: int = EXACT_ORDER) -> "AsymSeries":
        return cls(param, {exponent: rat(coeff) if not isinstance(coeff, ParamRat) else coeff}, order)

    @classmethod
    def exact(cls, param: str, coeffs: dict) -> "AsymSeries":
        """A series whose unwritten coefficients are exactly zero."""
        return cls(param, coeffs, EXACT_ORDER)

    # -- inspection ---------------------------------------------------------

    def coeff(self, exponent: int) -> ParamRat:
        return self.coeffs.get(exponent, _zero())

    def lead_exponent(self) -> int:
        """Lowest present exponent; for an (apparently) zero series, the
        first exponent that could still be nonzero."""
        if self.coeffs:
            return min(self.coeffs)
        return self.order + 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def exponents(self) -> list:
        return sorted(self.coeffs)

    def lines(self) -> list:
        """(exponent, coefficient) pairs in ascending exponent order."""
        return [(e, self.coeffs[e]) for e in sorted(self.coeffs)]

    def render(self) -> str:
        if not self.coeffs:
            return "0"
        chunks = []
        for e, c in self.lines():
            if e == 0:
                chunks.append(f"[1] {c.render()}")
            else:
                chunks.append(f"[{self.param}^{e}] {c.render()}")
        return "\n".join(chunks)

    def __repr__(self) -> str:
        body = " + ".join(f"({c.render()})*{self.param}^{e}"
                          for e, c in self.lines()) or "0"
        return f"AsymSeries({body}; O({self.param}^{self.order + 1}))"

    def __eq__(self, other) -> bool:
        if not isinstance(other, AsymSeries):
            return NotImplemented
        if self.param != other.param:
            return False
        for e in set(self.coeffs) | set(other.coeffs):
            if self.coeff(e) != other.coeff(e):
                return False
        return True

    __hash__ = None

    # -- arithmetic ---------------------------------------------------------

    def _check_param(self, other: "AsymSeries"):
        if self.param != other.param:
            raise SeriesError(
                f"incompatible parameters: {self.param} vs {other.param}")

    def __add__(self, other):
        if isinstance(other, AsymSeries):
            self._check_param(other)
            order = min(self.order, other.order)
            out = dict(self.coeffs)
            for e, c in other.coeffs.items():
                out[e] = out.get(e, _zero()) + c
            return AsymSeries(self.param, out, order)
        return self + AsymSeries.exact(self.param, {0: _as_coeff(other)})

    __radd__ = __add__

    def __neg__(self):
        return AsymSeries(self.param, {e: -c for e, c in self.coeffs.items()},
                          self.order)

    def __sub__(self, other):
        return self + (-other if isinstance(other, AsymSeries)
                       else AsymSeries.exact(self.param, {0: -_as_coeff(other)}))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, AsymSeries):
            return self.scale(_as_coeff(other))
        self._check_param(other)
        order = min(self.order + other.lead_exponent(),
                    other.order + self.lead_exponent())
        out: dict[int, ParamRat] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                if e > order:
                    continue
                prod = c1 * c2
                out[e] = out.get(e, _zero()) + prod
        return AsymSeries(self.param, out, order)

    __rmul__ = __mul__

    def scale(self, c: ParamRat) -> "AsymSeries":
        return AsymSeries(self.param,
                          {e: v * c for e, v in self.coeffs.items()},
                          self.order)

    def shift(self, delta: int) -> "AsymSeries":
        """Multiply by param^delta."""
        order = self.order + delta if self.order < EXACT_ORDER else self.order
        return AsymSeries(self.param,
                          {e + delta: c for e, c in self.coeffs.items()},
                          order)

    def truncate(self, order: int) -> "AsymSeries":
        return AsymSeries(self.param,
                          {e: c for e, c in self.coeffs.items() if e <= order},
                          min(order, self.order))

    def __pow__(self, n: int) -> "AsymSeries":
        if not isinstance(n, int) or n < 0:
            raise SeriesError("series powers must be nonnegative integers")
        result = AsymSeries.exact(self.param, {0: rat(1)})
        for _ in range(n):
            result = result * self
        return result

    def inverse(self) -> "AsymSeries":
        """Multiplicative inverse (leading coefficient must be invertible)."""
        if self.is_zero():
            raise SeriesError("cannot invert a zero series")
        lead = self.lead_exponent()
        c0 = self.coeff(lead)
        # unit part u = self/ (c0 x^lead): invert order by order
        depth = self.order - lead if self.order < EXACT_ORDER else (
            max(self.coeffs) - lead)
        u = {e - lead: c / c0 for e, c in self.coeffs.items()}
        inv: dict[int, ParamRat] = {0: rat(1)}
        for m in range(1, depth + 1):
            acc = _zero()
            for j in range(1, m + 1):
                if j in u and (m - j) in inv:
                    acc = acc + u[j] * inv[m - j]
            if not acc.is_zero():
                inv[m] = -acc
        order = (self.order - 2 * lead) if self.order < EXACT_ORDER else (
            depth - lead)
        return AsymSeries(self.param,
                          {e - lead: c / c0 for e, c in inv.items()},
                          order)

    def compose(self, inner: "AsymSeries") -> "AsymSeries":
        """self(inner), for inner with positive leading exponent.

        Negative exponents of self are fed through ``inner.inverse()``.
        """
        self._check_param(inner)
        ell = inner.lead_exponent()
        if ell < 1:
            raise SeriesError("composition needs an inner series of order >= 1")
        if self.order >= EXACT_ORDER and inner.order >= EXACT_ORDER:
            order = EXACT_ORDER
        else:
            f_ord = min(self.order, EXACT_ORDER // 2)
            order = min(ell * (f_ord + 1) - 1, inner.order)
        out = AsymSeries.zero(self.param, order)
        inv = None
        for e, c in self.coeffs.items():
            if e >= 0:
                term = (inner ** e).scale(c)
            else:
                if inv is None:
                    inv = inner.inverse()
                term = (inv ** (-e)).scale(c)
            out = out + term.truncate(order)
        return AsymSeries(self.param, out.coeffs, order)

    def substitute_symbol(self, name: str, replacement: "AsymSeries",
                          through: int | None = None) -> "AsymSeries":
        """Replace a coefficient symbol by a series in the same parameter.

        Coefficients must be polynomial in ``name``.  When ``through`` is
        given, the result is only needed up to that exponent and all
        intermediate products are capped accordingly, which matters a lot
        once the replacement has negative leading exponent.
        """
        self._check_param(replacement)
        out = AsymSeries.zero(self.param, min(self.order, replacement.order)
                              if self.order < EXACT_ORDER or replacement.order < EXACT_ORDER
                              else EXACT_ORDER)
        cap = None
        if through is not None and self.coeffs:
            cap = through - min(self.coeffs)
        powers: dict[int, AsymSeries] = {0: AsymSeries.exact(self.param, {0: rat(1)})}

        def power(d: int) -> AsymSeries:
            if d not in powers:
                p = power(d - 1) * replacement
                powers[d] = p if cap is None else AsymSeries(
                    self.param, {e: c for e, c in p.coeffs.items() if e <= cap},
                    p.order)
            return powers[d]

        order = out.order if through is None else min(out.order, through)
        for e, c in self.coeffs.items():
            for d, cd in c.as_poly_in(name).items():
                term = power(d).scale(cd).shift(e)
                out = out + term.truncate(order)
        return out.truncate(order)

    def substitute_coeffs(self, bindings: dict) -> "AsymSeries":
        """Apply a ParamRat substitution to every coefficient."""
        return AsymSeries(self.param,
                          {e: c.substitute(bindings) for e, c in self.coeffs.items()},
                          self.order)

    def eval_numeric(self, t: complex, coeff_values: dict | None = None) -> complex:
        """Sum the series at a numeric parameter value.

        ``coeff_values`` binds the remaining symbols; complex values are
        accepted.  Symbol-free coefficients need no bindings.
        """
        total = 0j
        for e, c in self.coeffs.items():
            total += c.eval_complex(coeff_values or {}) * t ** e
        return total


def _as_coeff(value) -> ParamRat:
    if isinstance(value, ParamRat):
        return value
    return rat(value)


def expand_coefficients(value: ParamRat, bindings: dict, param: str,
                        order: int) -> AsymSeries:
    """Expand a coefficient into a series by replacing symbols with series.

    ``bindings`` maps symbol names to AsymSeries in ``param``; symbols not
    bound stay symbolic inside the output coefficients.  Bound symbols must
    not appear in the denominator of ``value`` (the callers bind lattice
    constants, which only ever occur upstairs).
    """
    for s, _ in value.den:
        if s in bindings:
            raise SeriesError(
                f"bound symbol {s} appears in a denominator; cannot expand")
    one = AsymSeries.exact(param, {0: rat(1)})
    powers: dict[tuple, AsymSeries] = {}

    def power(name: str, e: int) -> AsymSeries:
        key = (name, e)
        if key not in powers:
            powers[key] = (bindings[name] ** e).truncate(order)
        return powers[key]

    total = AsymSeries.zero(param, order)
    for mono, coeff in value.num.terms.items():
        passive: dict = {}
        ser = one
        for s, e in mono:
            if s in bindings:
                ser = (ser * power(s, e)).truncate(order)
            else:
                passive[s] = e
        mono_rest = tuple(sorted(passive.items()))
        factor = ParamRat(Poly({mono_rest: coeff}), value.den)
        total = total + ser.scale(factor)
    return total.truncate(order)


# ---------------------------------------------------------------------------
# Reversion, large-energy shape
# ---------------------------------------------------------------------------

def revert_eigenvalue(epsilons: list, param: str = "1/nu") -> AsymSeries:
    """Invert i*nu = sqrt(lam)*(1 + sum_l eps_l lam^-l) for lam(nu).

    Returns lam = -nu^2 + lam_0 + lam_1/nu^2 + ... as an AsymSeries in
    ``param`` with exponents -2, 0, 2, ...; with N epsilons the result is
    valid through 1/nu^(2N-2).

    Works in the variable x = -1/nu^2, where w = 1/lam satisfies the
    fixed-point equation w = x*f(w)^2 with f(w) = 1 + sum eps_l w^l.  That
    equation is solved by Newton iteration (order of accuracy doubles per
    step) and the result is certified by an exact residual check, which is
    conclusive because the coefficient of x^m in x*f(w)^2 only involves
    w-coefficients below m.
    """
    n = len(epsilons)
    if n < 1:
        raise SeriesError("need at least one epsilon")
    target = n + 1  # w through x^(N+1) determines lam_0..lam_(N-1)
    x = "x"
    f = AsymSeries.exact(x, {0: rat(1), **{l: _as_coeff(epsilons[l - 1])
                                           for l in range(1, n + 1)}})
    fp = AsymSeries.exact(x, {l - 1: _as_coeff(epsilons[l - 1]) * rat(l)
                              for l in range(1, n + 1)})
    xs = AsymSeries.exact(x, {1: rat(1)})

    w = AsymSeries.exact(x, {1: rat(1)})  # first Newton iterate of w = x f(w)^2
    for _ in range(target.bit_length() + 1):
        g = (w - xs * f.compose(w) ** 2).truncate(target)
        if g.is_zero():
            break
        gp = (AsymSeries.exact(x, {0: rat(1)})
              - (2 * xs * f.compose(w) * fp.compose(w))).truncate(target)
        w = (w - g * gp.inverse()).truncate(target)
        w = AsymSeries.exact(x, w.coeffs)
    residual = (w - xs * f.compose(w) ** 2).truncate(target)
    if not residual.is_zero():
        raise SeriesError("reversion failed to converge (internal error)")

    lam_x = w.inverse().truncate(n - 1)  # 1/w = lam as a Laurent series in x
    # map x^j -> (-1)^j / nu^(2j)
    coeffs = {}
    for j, c in lam_x.coeffs.items():
        coeffs[2 * j] = c if j % 2 == 0 else -c
    return AsymSeries(param, coeffs, 2 * (n - 1))


# ---------------------------------------------------------------------------
# Reversion, eigenvalue-inside-coefficients shape
# ---------------------------------------------------------------------------

def solve_for_symbol(forward: AsymSeries, unknown: str, rhs: ParamRat,
                     target_order: int) -> AsymSeries:
    """Solve forward(t; X) = rhs for X as a Laurent series in t.

    ``forward`` is a series in t whose coefficients are polynomial in the
    symbol ``unknown``; ``rhs`` is t-independent.  The unknown enters
    linearly at some lowest order s0 with coefficient A, so the solution
    starts at t^(-s0) and each coefficient is fixed in turn by cancelling
    the lowest surviving residual order.  The final residual is checked
    through t^(target_order + s0).
    """
    s0 = None
    lin = None
    for e in sorted(forward.coeffs):
        parts = forward.coeffs[e].as_poly_in(unknown)
        if 1 in parts and not parts[1].is_zero():
            s0, lin = e, parts[1]
            break
    if s0 is None:
        raise SeriesError(f"forward series is not linear in {unknown} at any order")
    if forward.order < target_order + s0:
        raise SeriesError(
            f"forward series only valid through order {forward.order}, "
            f"need {target_order + s0}")

    param = forward.param
    # the candidate solution is a concrete Laurent polynomial at every stage,
    # so it is carried as exact; honesty comes from the residual check below
    work = target_order + s0
    solution = AsymSeries.exact(param, {})
    for r in range(-s0, target_order + 1):
        value = forward.substitute_symbol(unknown, solution, through=r + s0)
        residual = value - AsymSeries.exact(param, {0: rhs})
        rho = residual.coeff(r + s0)
        if rho.is_zero():
            continue
        solution = AsymSeries.exact(param,
                                    {**solution.coeffs,
                                     r: solution.coeff(r) - rho / lin})
    final = (forward.substitute_symbol(unknown, solution, through=work)
             - AsymSeries.exact(param, {0: rhs})).truncate(work)
    if not final.is_zero():
        raise SeriesError("symbol solve failed to converge (internal error)")
    return AsymSeries(param, solution.coeffs, target_order)
