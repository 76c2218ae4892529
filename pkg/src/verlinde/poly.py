"""Sparse exact polynomials in at most two variables.

One class covers both ordinary and Laurent polynomials: exponent vectors
are tuples of ints, possibly negative; coefficients are ints or Fractions
(never floats).  Everything downstream (character polynomials, Groebner
bases, localized ring elements) builds on this.

Monomial orders are exposed as key functions usable with max()/sorted():
`grevlex_key` (the default order for Groebner work, first variable
largest) and `lex_key`.
"""

from __future__ import annotations

import json
import math
import re
from fractions import Fraction

Exponent = tuple[int, ...]


def grevlex_key(e: Exponent):
    """Graded reverse lexicographic: compare total degree, then the last
    nonzero difference with reversed sign."""
    return (sum(e), tuple(-x for x in reversed(e)))


def lex_key(e: Exponent):
    return tuple(e)


MONOMIAL_ORDERS = {"grevlex": grevlex_key, "lex": lex_key}


class Poly:
    """Immutable sparse polynomial: {exponent tuple: nonzero coefficient}."""

    __slots__ = ("terms", "nvars")

    def __init__(self, terms: dict, nvars: int):
        clean = {}
        for e, c in terms.items():
            if isinstance(c, Fraction) and c.denominator == 1:
                c = int(c)
            if c != 0:
                clean[tuple(e)] = c
        self.terms = clean
        self.nvars = nvars

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls({}, nvars)

    @classmethod
    def constant(cls, c, nvars: int) -> "Poly":
        return cls({(0,) * nvars: c}, nvars)

    @classmethod
    def variable(cls, i: int, nvars: int) -> "Poly":
        e = tuple(1 if j == i else 0 for j in range(nvars))
        return cls({e: 1}, nvars)

    @classmethod
    def monomial(cls, e: Exponent, c=1) -> "Poly":
        return cls({tuple(e): c}, len(e))

    # -- queries -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_laurent_only(self) -> bool:
        """True if some exponent is negative."""
        return any(x < 0 for e in self.terms for x in e)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def leading(self, key=grevlex_key) -> tuple[Exponent, object]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=key)
        return e, self.terms[e]

    def coeff(self, e: Exponent):
        return self.terms.get(tuple(e), 0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- arithmetic ----------------------------------------------------

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise ValueError("variable-count mismatch")
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.constant(other, self.nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Poly(out, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return Poly({e: -c for e, c in self.terms.items()}, self.nvars)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly({e: c * other for e, c in self.terms.items()}, self.nvars)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[Exponent, object] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Poly(out, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers: multiply by a Laurent monomial instead")
        result = Poly.constant(1, self.nvars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, e: Exponent) -> "Poly":
        """Multiply by the (Laurent) monomial with exponent vector e."""
        e = tuple(e)
        return Poly(
            {tuple(a + b for a, b in zip(t, e)): c for t, c in self.terms.items()},
            self.nvars,
        )

    def map_exponents(self, fn) -> "Poly":
        """Reindex every exponent vector through fn (must be injective)."""
        out: dict[Exponent, object] = {}
        for e, c in self.terms.items():
            ne = tuple(fn(e))
            if ne in out:
                raise ValueError("exponent map is not injective on this support")
            out[ne] = c
        return Poly(out, len(ne) if out else self.nvars)

    # -- rational helpers ----------------------------------------------

    def content(self) -> Fraction:
        """gcd of numerators over lcm of denominators (positive), 0 for 0."""
        if not self.terms:
            return Fraction(0)
        nums = 0
        dens = 1
        for c in self.terms.values():
            f = Fraction(c)
            nums = math.gcd(nums, abs(f.numerator))
            dens = dens * f.denominator // math.gcd(dens, f.denominator)
        return Fraction(nums, dens)

    def primitive(self) -> "Poly":
        """Divide out the content; integer coefficients with gcd 1."""
        c = self.content()
        if c in (0, 1):
            return self
        return Poly({e: Fraction(v) / c for e, v in self.terms.items()}, self.nvars)

    def monic(self, key=grevlex_key) -> "Poly":
        _, lc = self.leading(key)
        if lc == 1:
            return self
        inv = Fraction(1, 1) / Fraction(lc)
        return Poly({e: Fraction(c) * inv for e, c in self.terms.items()}, self.nvars)

    # -- evaluation ----------------------------------------------------

    def evaluate(self, values):
        """Evaluate at a point; works for Fraction, float, complex, mpmath.

        Negative exponents require the corresponding coordinate to be
        invertible (nonzero).
        """
        if len(values) != self.nvars:
            raise ValueError("wrong number of values")
        acc = 0
        for e, c in self.terms.items():
            term = c
            for x, p in zip(values, e):
                if p:
                    term = term * x ** p
            acc = acc + term
        return acc

    # -- rendering -------------------------------------------------------

    def render(self, names, ascending: bool = False) -> str:
        """Human text like 'x^2 - y' or '1 - 2s - 2t + 3st'.

        Terms are ordered by total degree (descending by default, ascending
        suits the substituted polynomials whose tables start at 1), ties
        broken lexicographically with the first variable first.
        """
        if not self.terms:
            return "0"
        if len(names) != self.nvars:
            raise ValueError("wrong number of names")
        if ascending:
            keys = sorted(self.terms, key=lambda e: (sum(e), tuple(-x for x in e)))
        else:
            keys = sorted(self.terms, key=lambda e: (-sum(e), tuple(-x for x in e)))
        parts = []
        for e in keys:
            c = self.terms[e]
            mono = "".join(
                f"{n}^{p}" if p not in (0, 1) else (n if p == 1 else "")
                for n, p in zip(names, e)
            )
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = (first_sign if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def to_json_obj(self) -> dict:
        terms = []
        for e in sorted(self.terms):
            c = self.terms[e]
            coeff = str(c) if isinstance(c, Fraction) else c
            terms.append([list(e), coeff])
        return {"nvars": self.nvars, "terms": terms}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj) -> "Poly":
        terms = {}
        for e, c in obj["terms"]:
            coeff = Fraction(c) if isinstance(c, str) else c
            terms[tuple(e)] = coeff
        return cls(terms, obj["nvars"])

    def __repr__(self) -> str:
        names = ("x", "y", "z")[: self.nvars]
        return f"Poly({self.render(names)})"


def parse_poly(text: str, names: tuple[str, ...]) -> "Poly":
    """Parse text like 'x^3y^3 - 2x^4y + 1' or '1 - 2t + st^2'.

    Variable names must be single characters; juxtaposition means product
    and '^' (or '**') takes an optional integer, possibly negative.
    Coefficients may be integers or fractions 'p/q'.
    """
    if any(len(n) != 1 for n in names):
        raise ValueError("parse_poly needs single-character variable names")
    index = {n: i for i, n in enumerate(names)}
    compact = text.replace("**", "^").replace("*", "").replace(" ", "")
    if compact in ("", "0"):
        return Poly.zero(len(names))
    # keep '^-2' style exponents inside one token when splitting on signs
    tokens = re.findall(r"[+-]?(?:\^[+-]?|[^+-])+", compact)
    terms: dict[Exponent, object] = {}
    for tok in tokens:
        sign = 1
        if tok[0] in "+-":
            sign = -1 if tok[0] == "-" else 1
            tok = tok[1:]
        m = re.match(r"(\d+(?:/\d+)?)?", tok)
        coeff_text, rest = m.group(0), tok[m.end():]
        coeff = Fraction(coeff_text) if coeff_text else Fraction(1)
        exps = [0] * len(names)
        pos = 0
        var = re.compile(r"([A-Za-z])(?:\^(-?\d+))?")
        while pos < len(rest):
            vm = var.match(rest, pos)
            if vm is None or vm.group(1) not in index:
                raise ValueError(f"cannot parse term {tok!r} in {text!r}")
            exps[index[vm.group(1)]] += int(vm.group(2) or 1)
            pos = vm.end()
        e = tuple(exps)
        terms[e] = terms.get(e, 0) + sign * coeff
    return Poly(terms, len(names))
