"""Parsing of potential specifications.

A specification is one line of text, family tag first:

    trig: theta=[t1, t2]
    lame: delta=2, q=0.05
    ellipsoidal-w: alpha1=a, alpha2=b
    ellipsoidal-j: delta=400, omega=1, k2=0.3
    dtv: b=[2.1, 0.4, 1.3, 0.7], q=0.0001

Values are either numbers (parsed exactly, decimals included) or bare
names, which become symbolic coefficients.  The Weierstrass-side
families take an optional q= or k2= so that numeric verification can
fix the lattice; purely symbolic work never needs it.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .coeffring import ParamRat, rat, sym
from .numerics.efuncs import PotentialSpecNumeric

__all__ = ["PotentialSyntaxError", "PotentialSpec", "parse_potential"]


class PotentialSyntaxError(ValueError):
    """Malformed potential specification text."""


# family -> (required keys, optional keys); list-valued keys and the
# number of entries they require (None = any)
_FAMILY_KEYS = {
    "trig": (("theta",), ()),
    "lame": (("delta",), ("q", "k2")),
    "ellipsoidal-w": (("alpha1", "alpha2"), ("q", "k2")),
    "ellipsoidal-j": (("delta", "omega", "k2"), ()),
    "dtv": (("b",), ("q", "k2")),
}
_LIST_KEYS = {"theta": None, "b": 4}
_NAME = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")
_RESERVED = {"i", "nu", "mu", "k", "kp"}


def _parse_scalar(tok: str, where: str):
    tok = tok.strip()
    if not tok:
        raise PotentialSyntaxError(f"empty value in {where}")
    try:
        return Fraction(tok)
    except ValueError:
        pass
    if _NAME.match(tok):
        if tok in _RESERVED:
            raise PotentialSyntaxError(
                f"{tok!r} is reserved; pick another symbol name")
        return tok
    raise PotentialSyntaxError(f"cannot parse value {tok!r} in {where}")


def _split_top_level(text: str) -> list:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
            if depth < 0:
                raise PotentialSyntaxError("unbalanced ']'")
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth != 0:
        raise PotentialSyntaxError("unbalanced '['")
    parts.append("".join(cur))
    return parts


@dataclass(frozen=True)
class PotentialSpec:
    """A parsed potential: family tag plus named parameter values.

    Scalar values are Fractions (numeric) or strings (symbol names);
    list-valued parameters are tuples of scalars.
    """

    family: str
    params: dict

    def _scalars(self):
        for v in self.params.values():
            yield from (v if isinstance(v, tuple) else (v,))

    def is_numeric(self) -> bool:
        return all(not isinstance(v, str) for v in self._scalars())

    def coeff(self, key: str) -> ParamRat:
        """The parameter as a ring element (symbol or exact constant)."""
        v = self.params[key]
        if isinstance(v, tuple):
            raise ValueError(f"{key} is list-valued")
        return sym(v) if isinstance(v, str) else rat(v)

    def coeff_list(self, key: str) -> list:
        return [sym(v) if isinstance(v, str) else rat(v)
                for v in self.params[key]]

    def to_numeric(self) -> PotentialSpecNumeric:
        if not self.is_numeric():
            names = sorted(v for v in self._scalars() if isinstance(v, str))
            raise PotentialSyntaxError(
                "numeric evaluation needs numbers for: " + ", ".join(names))
        vals = {k: (tuple(float(x) for x in v) if isinstance(v, tuple)
                    else float(v))
                for k, v in self.params.items()}
        k2 = vals.pop("k2", None)
        q = vals.pop("q", None)
        return PotentialSpecNumeric(self.family, vals, k2=k2, q=q)

    def render(self) -> str:
        """Canonical one-line form (stable across equivalent inputs)."""
        required, optional = _FAMILY_KEYS[self.family]
        chunks = []
        for key in (*required, *optional):
            if key not in self.params:
                continue
            v = self.params[key]
            if isinstance(v, tuple):
                body = ",".join(str(x) for x in v)
                chunks.append(f"{key}=[{body}]")
            else:
                chunks.append(f"{key}={v}")
        return f"{self.family}: " + ", ".join(chunks)


def parse_potential(text: str) -> PotentialSpec:
    """Parse a one-line potential specification."""
    if ":" not in text:
        raise PotentialSyntaxError(
            "expected '<family>: key=value, ...'; no ':' found")
    family, _, body = text.partition(":")
    family = family.strip()
    if family not in _FAMILY_KEYS:
        known = ", ".join(sorted(_FAMILY_KEYS))
        raise PotentialSyntaxError(
            f"unknown family {family!r}; expected one of {known}")
    required, optional = _FAMILY_KEYS[family]
    params: dict = {}
    for item in _split_top_level(body):
        item = item.strip()
        if not item:
            continue
        if "=" not in item:
            raise PotentialSyntaxError(f"expected key=value, got {item!r}")
        key, _, val = item.partition("=")
        key = key.strip()
        val = val.strip()
        if key not in required and key not in optional:
            raise PotentialSyntaxError(
                f"{family} does not take a parameter {key!r}")
        if key in params:
            raise PotentialSyntaxError(f"duplicate parameter {key!r}")
        if key in _LIST_KEYS:
            if not (val.startswith("[") and val.endswith("]")):
                raise PotentialSyntaxError(f"{key} expects [..]")
            inner = val[1:-1].strip()
            entries = [] if not inner else [
                _parse_scalar(tok, key) for tok in inner.split(",")]
            want = _LIST_KEYS[key]
            if want is not None and len(entries) != want:
                raise PotentialSyntaxError(
                    f"{key} expects exactly {want} entries")
            params[key] = tuple(entries)
        else:
            params[key] = _parse_scalar(val, key)
    missing = [k for k in required if k not in params]
    if missing:
        raise PotentialSyntaxError(
            f"{family} is missing: " + ", ".join(missing))
    if "q" in params and "k2" in params:
        raise PotentialSyntaxError("give q or k2, not both")
    return PotentialSpec(family=family, params=params)
