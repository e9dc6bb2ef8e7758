"""Exact coefficient arithmetic for the expansion pipelines.

Everything symbolic in this package ultimately reduces to a ``ParamRat``: a
polynomial in named parameter symbols divided by a single monomial.  Two
rewrite rules are baked into the polynomial ring so that printed results come
out in the conventional mixed form:

* ``i^2 -> -1`` (the imaginary unit is an honest ring symbol), and
* ``kp^2 -> 1 - k^2`` (``kp`` is the complementary elliptic modulus k').

Denominators are deliberately restricted to monomials (where ``kp`` is kept
unfolded, to any power).  Every division the expansion recursions perform is
by a monomial times a power of ``kp^2``, so this shape is closed under the
ring operations, and it keeps fractions reduced by plain exponent bookkeeping
instead of multivariate gcd computations.

Values are immutable after construction and safe to share between threads.
"""

from __future__ import annotations

import re
from fractions import Fraction

# The exact rational scalar type.  Coefficients of every polynomial are these.
Rational = Fraction

__all__ = [
    "Rational",
    "CoeffRingError",
    "DivisionByZeroError",
    "UnknownSymbolError",
    "Poly",
    "ParamRat",
    "sym",
    "rat",
    "iunit",
]


class CoeffRingError(Exception):
    """Base class for errors raised by the coefficient ring."""


class DivisionByZeroError(CoeffRingError, ZeroDivisionError):
    """Division by an exactly-zero polynomial or rational function."""


class UnknownSymbolError(CoeffRingError):
    """A symbol name that is not a valid identifier for this ring."""


# Symbols the expansions are written in, in the order they should print.
# Anything not listed here (user-declared names) sorts alphabetically after.
_BUILTIN_ORDER = (
    "i",
    "Delta", "Omega", "Lambda", "Lambdat",
    "alpha1", "alpha2",
    "b0", "b1", "b2", "b3",
    "theta1", "theta2", "theta3", "theta4", "theta5",
    "theta6", "theta7", "theta8", "theta9",
    "e1", "e2", "e3",
    "g2", "g3", "zeta1",
    "k", "kp",
    "nu", "mu",
)

_BUILTIN_KEY = {name: n for n, name in enumerate(_BUILTIN_ORDER)}

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def _symbol_key(name: str) -> tuple:
    try:
        return (0, _BUILTIN_KEY[name], "")
    except KeyError:
        return (1, 0, name)


def check_symbol(name: str) -> str:
    """Validate a symbol name, returning it unchanged."""
    if not isinstance(name, str) or not _NAME_RE.match(name):
        raise UnknownSymbolError(f"not a usable symbol name: {name!r}")
    return name


# A monomial is a tuple of (symbol, exponent) pairs sorted by symbol order,
# with strictly positive integer exponents.  The empty tuple is 1.
_ONE_MONO: tuple = ()


def _mono_sort_key(mono: tuple) -> tuple:
    # Graded lexicographic, packaged so that ascending sort puts the leading
    # monomial first: higher total degree wins, then a higher exponent on an
    # earlier symbol.
    deg = sum(e for _, e in mono)
    return (-deg, tuple((_symbol_key(s), -e) for s, e in mono))


def _mono_mul(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    exps: dict[str, int] = dict(a)
    for s, e in b:
        exps[s] = exps.get(s, 0) + e
    items = [(s, e) for s, e in exps.items() if e != 0]
    items.sort(key=lambda it: _symbol_key(it[0]))
    return tuple(items)


def _mono_divides(a: tuple, b: tuple) -> bool:
    """True when monomial a divides monomial b."""
    need = dict(a)
    for s, e in b:
        if s in need:
            need[s] -= min(need[s], e)
    return all(v == 0 for v in need.values())


def _mono_div(b: tuple, a: tuple) -> tuple:
    """b / a, assuming a divides b."""
    exps = dict(b)
    for s, e in a:
        exps[s] = exps.get(s, 0) - e
    items = [(s, e) for s, e in exps.items() if e != 0]
    items.sort(key=lambda it: _symbol_key(it[0]))
    return tuple(items)


class Poly:
    """Multivariate polynomial over ``Rational`` in canonical form.

    Internal representation is a map monomial -> coefficient with no zero
    entries.  Construction normalizes: ``i`` exponents are folded with
    ``i^2 = -1`` and ``kp`` exponents with ``kp^2 = 1 - k^2``, so canonical
    monomials carry ``i`` and ``kp`` only to the first power.
    """

    __slots__ = ("terms", "_key_cache")

    def __init__(self, terms: dict | None = None, _normalized: bool = False):
        if terms is None:
            terms = {}
        if _normalized:
            self.terms = terms
        else:
            self.terms = _normalize_terms(terms)
        self._key_cache = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def const(cls, value) -> "Poly":
        c = Fraction(value)
        if c == 0:
            return cls({}, _normalized=True)
        return cls({_ONE_MONO: c}, _normalized=True)

    @classmethod
    def symbol(cls, name: str, exponent: int = 1) -> "Poly":
        check_symbol(name)
        if exponent < 0:
            raise CoeffRingError(
                "negative exponents belong in a ParamRat denominator")
        if exponent == 0:
            return cls.const(1)
        return cls({((name, exponent),): Fraction(1)})

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == {_ONE_MONO: Fraction(1)}

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and _ONE_MONO in self.terms)

    def constant_value(self) -> Fraction:
        """The value of a constant polynomial (raises otherwise)."""
        if not self.terms:
            return Fraction(0)
        if self.is_constant():
            return self.terms[_ONE_MONO]
        raise CoeffRingError(f"not a constant: {self}")

    def symbols(self) -> set:
        out = set()
        for mono in self.terms:
            for s, _ in mono:
                out.add(s)
        return out

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- ordering helpers --------------------------------------------------

    def sorted_terms(self) -> list:
        if self._key_cache is None:
            self._key_cache = sorted(
                self.terms.items(), key=lambda kv: _mono_sort_key(kv[0]))
        return self._key_cache

    def leading(self) -> tuple:
        """(monomial, coefficient) of the leading term under graded lex."""
        if not self.terms:
            raise CoeffRingError("zero polynomial has no leading term")
        return self.sorted_terms()[0]

    def degree(self, symbol: str | None = None) -> int:
        if not self.terms:
            return 0
        if symbol is None:
            return max(sum(e for _, e in m) for m in self.terms)
        return max((dict(m).get(symbol, 0) for m in self.terms), default=0)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        if not isinstance(other, Poly):
            return NotImplemented
        if not self.terms:
            return other
        if not other.terms:
            return self
        out = dict(self.terms)
        for mono, c in other.terms.items():
            acc = out.get(mono, 0) + c
            if acc:
                out[mono] = acc
            else:
                out.pop(mono, None)
        return Poly(out, _normalized=True)

    def __neg__(self) -> "Poly":
        return Poly({m: -c for m, c in self.terms.items()}, _normalized=True)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        if not isinstance(other, Poly):
            return NotImplemented
        if not self.terms or not other.terms:
            return Poly({}, _normalized=True)
        raw: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                raw[m] = raw.get(m, 0) + c1 * c2
        # products can recreate i^2 / kp^2, so renormalize
        return Poly(raw)

    def scale(self, c) -> "Poly":
        c = Fraction(c)
        if c == 0:
            return Poly({}, _normalized=True)
        return Poly({m: v * c for m, v in self.terms.items()}, _normalized=True)

    def __pow__(self, n: int) -> "Poly":
        if not isinstance(n, int) or n < 0:
            raise CoeffRingError("polynomial powers must be nonnegative ints")
        result = Poly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- division ----------------------------------------------------------

    def try_exact_div(self, divisor: "Poly") -> "Poly | None":
        """Exact quotient self/divisor, or None when it does not divide.

        Single-divisor reduction by leading terms; for an exact quotient under
        the graded-lex order the leading term of the remainder stays divisible
        at every step, so failure of that test certifies inexactness.
        """
        if divisor.is_zero():
            raise DivisionByZeroError("division by zero polynomial")
        if self.is_zero():
            return Poly({}, _normalized=True)
        dm, dc = divisor.leading()
        rem = self
        q: dict = {}
        while rem.terms:
            rm, rc = rem.leading()
            if not _mono_divides(dm, rm):
                return None
            qm = _mono_div(rm, dm)
            qc = rc / dc
            q[qm] = q.get(qm, 0) + qc
            rem = rem - Poly({qm: qc}) * divisor
        return Poly(q)

    # -- content -----------------------------------------------------------

    def monomial_content(self) -> dict:
        """Per-symbol minimum exponent over all monomials (the common factor)."""
        if not self.terms:
            return {}
        mins: dict[str, int] | None = None
        for mono in self.terms:
            d = dict(mono)
            if mins is None:
                mins = d
            else:
                mins = {s: min(e, d.get(s, 0)) for s, e in mins.items() if s in d}
            if not mins:
                return {}
        return {s: e for s, e in (mins or {}).items() if e > 0}

    def divide_monomial(self, factor: dict) -> "Poly":
        """Divide out a monomial factor known to be common to all terms."""
        if not factor:
            return self
        fm = tuple(sorted(factor.items(), key=lambda it: _symbol_key(it[0])))
        return Poly({_mono_div(m, fm): c for m, c in self.terms.items()},
                    _normalized=True)

    def rational_content(self) -> Fraction:
        """Positive rational c with self/c integer-primitive; sign based on
        the leading coefficient, so (self / content) always leads positive."""
        if not self.terms:
            return Fraction(1)
        from math import gcd
        num_gcd = 0
        den_lcm = 1
        for c in self.terms.values():
            num_gcd = gcd(num_gcd, c.numerator)
            den_lcm = den_lcm * c.denominator // gcd(den_lcm, c.denominator)
        content = Fraction(num_gcd, den_lcm)
        if self.leading()[1] < 0:
            content = -content
        return content

    # -- rendering ---------------------------------------------------------

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono, coeff in self.sorted_terms():
            factors = []
            for s, e in mono:
                factors.append(s if e == 1 else f"{s}^{e}")
            mag = abs(coeff)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            parts.append(("-" if coeff < 0 else "+", body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"Poly({self.render()})"


def _normalize_terms(raw: dict) -> dict:
    """Merge terms, drop zeros, apply the i^2 and kp^2 rewrites."""
    out: dict = {}
    pending = list(raw.items())
    while pending:
        mono, coeff = pending.pop()
        coeff = Fraction(coeff)
        if coeff == 0:
            continue
        exps = dict(mono)
        i_e = exps.get("i", 0)
        if i_e >= 2:
            if (i_e // 2) % 2:
                coeff = -coeff
            i_e %= 2
            if i_e:
                exps["i"] = i_e
            else:
                exps.pop("i", None)
        kp_e = exps.get("kp", 0)
        if kp_e >= 2:
            half, rem = divmod(kp_e, 2)
            if rem:
                exps["kp"] = 1
            else:
                exps.pop("kp", None)
            base = tuple(sorted(exps.items(), key=lambda it: _symbol_key(it[0])))
            # kp^2 -> 1 - k^2, expanded binomially
            one_minus_k2 = Poly({(): Fraction(1), (("k", 2),): Fraction(-1)},
                                _normalized=True) ** half
            for m2, c2 in one_minus_k2.terms.items():
                pending.append((_mono_mul(base, m2), coeff * c2))
            continue
        mono = tuple(sorted(exps.items(), key=lambda it: _symbol_key(it[0])))
        acc = out.get(mono, 0) + coeff
        if acc:
            out[mono] = acc
        else:
            out.pop(mono, None)
    return out


_POLY_ONE = Poly.const(1)
_POLY_ZERO = Poly.const(0)


# 1 - k^2, the image of kp^2 under the fold.
_ONE_MINUS_K2 = Poly({(): Fraction(1), (("k", 2),): Fraction(-1)},
                     _normalized=True)

# Powers of 1/i = -i, indexed by exponent mod 4.
_I_INV_POW = (
    Poly.const(1),
    Poly({(("i", 1),): Fraction(-1)}, _normalized=True),
    Poly.const(-1),
    Poly({(("i", 1),): Fraction(1)}, _normalized=True),
)


def _mono_as_poly(mono: tuple) -> Poly:
    """A denominator monomial as a Poly (kp powers fold on the way in)."""
    if not mono:
        return _POLY_ONE
    return Poly({mono: Fraction(1)})


def _extract_monomial(p: Poly):
    """Write p as coef * monomial * (1 - k^2)^j, or raise.

    Returns ``(coef, exponents, extra_kp)`` where ``extra_kp = 2 j``.  This
    is the shape every divisor in the expansion recursions has; anything
    else is a usage error, reported as such.
    """
    extra_kp = 0
    while len(p.terms) > 1:
        q = p.try_exact_div(_ONE_MINUS_K2)
        if q is None:
            raise CoeffRingError(
                f"division by a non-monomial polynomial: {p.render()}")
        p = q
        extra_kp += 2
    (mono, coef), = p.terms.items()
    exps = dict(mono)
    if extra_kp:
        exps["kp"] = exps.get("kp", 0) + extra_kp
    return coef, exps


class ParamRat:
    """Exact rational function: polynomial numerator over a monomial.

    The denominator is a plain monomial in the parameter symbols with
    ``kp`` kept unfolded (so ``1/(1-k^2)`` is stored as ``1/kp^2``) and the
    imaginary unit cleared into the numerator.  Rational content lives in
    the numerator coefficients.  Common symbol powers are cancelled on
    construction, as are ``1 - k^2`` numerator factors against ``kp^2``
    denominator pairs.  Equality is semantic (cross-multiplication modulo
    the rewrite rules), so instances are unhashable by design.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if not isinstance(num, Poly):
            num = Poly.const(num)
        if den is None or (isinstance(den, tuple) and not den):
            self.num = num
            self.den = ()
            return
        coef = Fraction(1)
        if isinstance(den, tuple):
            exps = dict(den)
        elif isinstance(den, dict):
            exps = dict(den)
        elif isinstance(den, Poly):
            if den.is_zero():
                raise DivisionByZeroError("zero denominator")
            coef, exps = _extract_monomial(den)
        else:
            coef = Fraction(den)
            if coef == 0:
                raise DivisionByZeroError("zero denominator")
            exps = {}
        if coef != 1:
            num = num.scale(1 / coef)
        self.num, self.den = _normalize_fraction(num, exps)

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_symbol(cls, name: str, exponent: int = 1) -> "ParamRat":
        if exponent >= 0:
            return cls(Poly.symbol(name, exponent))
        return cls(_POLY_ONE, {check_symbol(name): -exponent})

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return not self.den and self.num.is_constant()

    def constant_value(self) -> Fraction:
        if self.den:
            raise CoeffRingError(f"not a constant: {self.render()}")
        return self.num.constant_value()

    def symbols(self) -> set:
        out = self.num.symbols()
        for s, _ in self.den:
            out.add(s)
        return out

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other) -> "ParamRat":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return ParamRat(self.num + other.num, self.den)
        lcm, q1, q2 = _mono_lcm(self.den, other.den)
        num = self.num * _mono_as_poly(q1) + other.num * _mono_as_poly(q2)
        return ParamRat(num, lcm)

    __radd__ = __add__

    def __neg__(self) -> "ParamRat":
        out = object.__new__(ParamRat)
        out.num = -self.num
        out.den = self.den
        return out

    def __sub__(self, other) -> "ParamRat":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "ParamRat":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "ParamRat":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return ParamRat(self.num * other.num, _mono_prod(self.den, other.den))

    __rmul__ = __mul__

    def _inverted(self) -> "ParamRat":
        if self.num.is_zero():
            raise DivisionByZeroError("division by zero rational function")
        coef, exps = _extract_monomial(self.num)
        return ParamRat(_mono_as_poly(self.den).scale(1 / coef), exps)

    def __truediv__(self, other) -> "ParamRat":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other._inverted()

    def __rtruediv__(self, other) -> "ParamRat":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, n: int) -> "ParamRat":
        if not isinstance(n, int):
            raise CoeffRingError("powers must be integers")
        if n < 0:
            return self._inverted() ** (-n)
        return ParamRat(self.num ** n,
                        tuple((s, e * n) for s, e in self.den) if n else ())

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return self.num == other.num
        return (self.num * _mono_as_poly(other.den)
                == other.num * _mono_as_poly(self.den))

    __hash__ = None  # semantic equality is not hash-compatible

    # -- substitution ------------------------------------------------------

    def substitute(self, bindings: dict) -> "ParamRat":
        """Replace symbols by values (ParamRat, Poly, or rational).

        Unknown binding names raise; a substitution that zeroes the
        denominator raises DivisionByZeroError.
        """
        resolved: dict[str, ParamRat] = {}
        for name, value in bindings.items():
            check_symbol(name)
            resolved[name] = _coerce_strict(value)
        relevant = self.symbols() & set(resolved)
        if not relevant:
            return self
        num = _poly_substitute(self.num, resolved)
        den = ParamRat(_POLY_ONE)
        for s, e in self.den:
            if s in resolved:
                den = den * resolved[s] ** e
            else:
                den = den * ParamRat(Poly.symbol(s, e))
        if den.is_zero():
            raise DivisionByZeroError("substitution produced a zero denominator")
        return num / den

    def eval_complex(self, values: dict) -> complex:
        """Evaluate at numeric symbol values (complex allowed).

        The imaginary unit defaults to 1j; every other symbol present must
        be bound.  ``kp`` is derived from ``k`` when only ``k`` is given.
        """
        vals = dict(values)
        vals.setdefault("i", 1j)
        if "kp" not in vals and "k" in vals and "kp" in self.symbols():
            vals["kp"] = (1 - complex(vals["k"]) ** 2) ** 0.5
        total = 0j
        for mono, coeff in self.num.terms.items():
            term = complex(coeff)
            for s, e in mono:
                try:
                    term *= complex(vals[s]) ** e
                except KeyError:
                    raise CoeffRingError(f"no numeric value bound for {s}")
            total += term
        for s, e in self.den:
            try:
                total /= complex(vals[s]) ** e
            except KeyError:
                raise CoeffRingError(f"no numeric value bound for {s}")
        return total

    def as_poly_in(self, symbol: str) -> dict:
        """Decompose as a polynomial in one symbol: exponent -> ParamRat.

        The symbol must not occur in the denominator.
        """
        check_symbol(symbol)
        if any(s == symbol for s, _ in self.den):
            raise CoeffRingError(
                f"{symbol} occurs in the denominator; not polynomial in it")
        buckets: dict[int, dict] = {}
        for mono, coeff in self.num.terms.items():
            exps = dict(mono)
            e = exps.pop(symbol, 0)
            rest = tuple(sorted(exps.items(), key=lambda it: _symbol_key(it[0])))
            buckets.setdefault(e, {})[rest] = coeff
        return {e: ParamRat(Poly(t, _normalized=True), self.den)
                for e, t in buckets.items()}

    # -- rendering ---------------------------------------------------------

    def render(self) -> str:
        if not self.den:
            return self.num.render()
        # For display, pull the coefficient denominators out front so the
        # printed denominator is an integer times the monomial.
        scale = 1
        for c in self.num.terms.values():
            d = c.denominator
            scale = scale * d // _int_gcd(scale, d)
        num = self.num.scale(scale) if scale > 1 else self.num
        factors = ([str(scale)] if scale > 1 else [])
        factors += [s if e == 1 else f"{s}^{e}" for s, e in self.den]
        return f"({num.render()})/({'*'.join(factors)})"

    def __repr__(self) -> str:
        return f"ParamRat({self.render()})"


def _int_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _mono_lcm(a: tuple, b: tuple):
    """lcm of two denominator monomials, plus the cofactor of each side."""
    da, db = dict(a), dict(b)
    lcm: dict[str, int] = dict(da)
    for s, e in db.items():
        if lcm.get(s, 0) < e:
            lcm[s] = e
    q1 = tuple((s, e - da.get(s, 0)) for s, e in lcm.items()
               if e > da.get(s, 0))
    q2 = tuple((s, e - db.get(s, 0)) for s, e in lcm.items()
               if e > db.get(s, 0))
    return lcm, q1, q2


def _mono_prod(a: tuple, b: tuple) -> dict:
    if not a:
        return dict(b)
    out = dict(a)
    for s, e in b:
        out[s] = out.get(s, 0) + e
    return out


def _normalize_fraction(num: Poly, exps: dict):
    """Reduce num / monomial: clear i, cancel common powers, fold kp pairs."""
    exps = {s: e for s, e in exps.items() if e}
    if any(e < 0 for e in exps.values()):
        raise CoeffRingError("denominator exponents must be positive")
    if num.is_zero():
        return _POLY_ZERO, ()
    i_e = exps.pop("i", 0)
    if i_e % 4:
        num = num * _I_INV_POW[i_e % 4]
    if exps:
        # cancel each denominator symbol against the numerator content
        common: dict[str, int] = {}
        for s, e in exps.items():
            low = min(dict(m).get(s, 0) for m in num.terms)
            if low:
                common[s] = min(low, e)
        if common:
            num = num.divide_monomial(common)
            for s, g in common.items():
                exps[s] -= g
        # trade numerator (1 - k^2) factors against kp^2 pairs
        while exps.get("kp", 0) >= 2:
            q = num.try_exact_div(_ONE_MINUS_K2)
            if q is None:
                break
            num = q
            exps["kp"] -= 2
    den = tuple(sorted(((s, e) for s, e in exps.items() if e),
                       key=lambda it: _symbol_key(it[0])))
    return num, den


def _coerce(value):
    if isinstance(value, ParamRat):
        return value
    if isinstance(value, Poly):
        return ParamRat(value)
    if isinstance(value, (int, Fraction)):
        return ParamRat(Poly.const(value))
    return NotImplemented


def _coerce_strict(value) -> ParamRat:
    out = _coerce(value)
    if out is NotImplemented:
        raise CoeffRingError(f"cannot use {value!r} as a ring element")
    return out


def _poly_substitute(p: Poly, resolved: dict) -> "ParamRat":
    acc = ParamRat(_POLY_ZERO)
    for mono, coeff in p.terms.items():
        term = ParamRat(Poly.const(coeff))
        for s, e in mono:
            if s in resolved:
                term = term * resolved[s] ** e
            else:
                term = term * ParamRat(Poly.symbol(s, e))
        acc = acc + term
    return acc


# -- convenience constructors ----------------------------------------------

def sym(name: str, exponent: int = 1) -> ParamRat:
    """The parameter symbol ``name`` (to an integer power) as a ParamRat."""
    return ParamRat.from_symbol(name, exponent)


def rat(numerator, denominator=1) -> ParamRat:
    """An exact rational constant as a ParamRat.

    Floats convert through their exact binary value.
    """
    if denominator == 1:
        return ParamRat(Poly.const(Fraction(numerator)))
    return ParamRat(Poly.const(Fraction(numerator, denominator)))


def iunit() -> ParamRat:
    """The imaginary unit as a ring element (i^2 folds to -1)."""
    return sym("i")
