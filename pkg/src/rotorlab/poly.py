"""Exact Laurent-polynomial arithmetic over the integers.

Every invariant in this package lives in Z[v^{\\pm 1}, ...] for a small fixed set
of variable names, so the ring is deliberately minimal: immutable polynomials,
a closed variable registry, arbitrary-precision integer coefficients (plain
Python ints), and a canonical term order so that equal polynomials always
render and serialize to identical bytes.

Canonical term order: descending lexicographic on exponent vectors.  The
single-variable rendering therefore reads highest power first, e.g.::

    -A^5 - A^-3 + A^-7
"""

from __future__ import annotations

import json
import re
from typing import Iterable, Mapping

__all__ = [
    "VARIABLES",
    "PolyError",
    "LaurentPoly",
    "zero",
    "one",
    "constant",
    "monomial",
    "radical",
    "monomial_ratio",
    "evaluate",
    "parse_poly",
    "poly_to_json",
    "poly_from_json",
]

#: Closed registry of admissible variable names.  A is the bracket variable,
#: (x, y, z) the skein-relation triple, a the framing variable, t the Jones
#: substitution variable.  Anything else is a hard error.
VARIABLES = ("A", "x", "y", "z", "a", "t")


class PolyError(ValueError):
    """Raised for unknown variables, mixed-ring arithmetic, or bad input."""


def _check_vars(vars: tuple[str, ...]) -> tuple[str, ...]:
    if not isinstance(vars, tuple) or len(set(vars)) != len(vars):
        raise PolyError("variables must be a tuple of distinct names")
    for v in vars:
        if v not in VARIABLES:
            raise PolyError(f"unknown variable {v!r}; registry is {VARIABLES}")
    return vars


class LaurentPoly:
    """An immutable Laurent polynomial with integer coefficients.

    Internally a sorted tuple of ``(exponent_vector, coefficient)`` pairs with
    all zero coefficients removed; the exponent vector is aligned with the
    ``vars`` tuple.  Construct via :func:`zero`, :func:`one`,
    :func:`constant`, :func:`monomial`, or ``LaurentPoly(vars, mapping)``.
    """

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars: tuple[str, ...], terms: Mapping[tuple[int, ...], int]):
        self.vars = _check_vars(tuple(vars))
        n = len(self.vars)
        cleaned = {}
        for exps, c in terms.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != n:
                raise PolyError(f"exponent vector {exps} does not match vars {self.vars}")
            if not isinstance(c, int):
                raise PolyError("coefficients must be ints")
            if c:
                cleaned[exps] = cleaned.get(exps, 0) + c
        object.__setattr__(self, "terms",
                           tuple(sorted(((e, c) for e, c in cleaned.items() if c),
                                        key=lambda t: t[0], reverse=True)))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):  # immutability
        if name in self.__slots__ and getattr(self, name, None) is not None:
            raise AttributeError("LaurentPoly is immutable")
        object.__setattr__(self, name, value)

    # -- ring structure ----------------------------------------------------

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            return constant(other, self.vars)
        if isinstance(other, LaurentPoly):
            if other.vars != self.vars:
                raise PolyError(f"variable mismatch: {self.vars} vs {other.vars}")
            return other
        raise PolyError(f"cannot combine LaurentPoly with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        acc = dict(self.terms)
        for e, c in other.terms:
            acc[e] = acc.get(e, 0) + c
        return LaurentPoly(self.vars, acc)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.vars, {e: -c for e, c in self.terms})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + self._coerce(other)

    def __mul__(self, other):
        other = self._coerce(other)
        acc: dict[tuple[int, ...], int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                key = tuple(a + b for a, b in zip(e1, e2))
                acc[key] = acc.get(key, 0) + c1 * c2
        return LaurentPoly(self.vars, acc)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise PolyError("only non-negative integer powers are defined")
        out = one(self.vars)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def mul_monomial(self, coeff: int, exps: Mapping[str, int]) -> "LaurentPoly":
        """Fast multiply by ``coeff * prod(var**e)``."""
        vec = tuple(int(exps.get(v, 0)) for v in self.vars)
        return LaurentPoly(self.vars,
                           {tuple(a + b for a, b in zip(e, vec)): c * coeff
                            for e, c in self.terms})

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def coefficient(self, exps: Mapping[str, int] | tuple[int, ...]) -> int:
        if not isinstance(exps, tuple):
            exps = tuple(int(exps.get(v, 0)) for v in self.vars)
        for e, c in self.terms:
            if e == exps:
                return c
        return 0

    def exponent_span(self, var: str) -> int:
        """max - min exponent of ``var`` over the support (0 for the zero poly)."""
        i = self.vars.index(var)
        if not self.terms:
            return 0
        es = [e[i] for e, _ in self.terms]
        return max(es) - min(es)

    def __eq__(self, other):
        if isinstance(other, int):
            other = constant(other, self.vars)
        return (isinstance(other, LaurentPoly)
                and self.vars == other.vars and self.terms == other.terms)

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.vars, self.terms)))
        return self._hash

    # -- maps --------------------------------------------------------------

    def substitute(self, var: str, by: "LaurentPoly") -> "LaurentPoly":
        """Replace ``var`` by a signed monomial ``by`` (same ring).

        ``by`` must consist of exactly one term with coefficient +1 or -1 and
        no occurrence of ``var`` itself with a fractional consequence — i.e.
        the image of a monomial stays a monomial, so substitution is exact.
        ``by`` may mention ``var`` (e.g. z -> -z); the exponent of ``var`` in
        the image is scaled accordingly.
        """
        if var not in self.vars:
            raise PolyError(f"{var!r} is not a variable of this polynomial")
        if by.vars != self.vars or len(by.terms) != 1 or by.terms[0][1] not in (1, -1):
            raise PolyError("substitution image must be a +/-1 monomial over the same ring")
        i = self.vars.index(var)
        img_exps, img_coeff = by.terms[0]
        acc: dict[tuple[int, ...], int] = {}
        for e, c in self.terms:
            k = e[i]
            vec = list(e)
            vec[i] = 0
            vec = tuple(v + k * w for v, w in zip(vec, img_exps))
            coeff = c * (img_coeff ** (k & 1) if img_coeff == -1 else 1)
            acc[vec] = acc.get(vec, 0) + coeff
        return LaurentPoly(self.vars, acc)

    def reduce_mod(self, modulus: int) -> "LaurentPoly":
        """Coefficient-wise reduction to least non-negative residues mod ``modulus``."""
        if not isinstance(modulus, int) or modulus < 2:
            raise PolyError("modulus must be an integer >= 2")
        return LaurentPoly(self.vars, {e: c % modulus for e, c in self.terms})

    # -- rendering ---------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        chunks = []
        for e, c in self.terms:
            factors = []
            for v, k in zip(self.vars, e):
                if k == 0:
                    continue
                factors.append(v if k == 1 else f"{v}^{k}")
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            chunks.append(("- " if c < 0 else "+ ") + body)
        out = " ".join(chunks)
        return ("-" + out[2:]) if out.startswith("- ") else out[2:]

    def __repr__(self):
        return f"LaurentPoly({'+'.join(self.vars)}: {self})"


# -- constructors ------------------------------------------------------------

def zero(vars: tuple[str, ...]) -> LaurentPoly:
    return LaurentPoly(vars, {})


def one(vars: tuple[str, ...]) -> LaurentPoly:
    return constant(1, vars)


def constant(c: int, vars: tuple[str, ...]) -> LaurentPoly:
    return LaurentPoly(vars, {(0,) * len(vars): c})


def monomial(coeff: int, exps: Mapping[str, int], vars: tuple[str, ...]) -> LaurentPoly:
    for v in exps:
        if v not in vars:
            raise PolyError(f"exponent names {v!r} outside vars {vars}")
    return LaurentPoly(vars, {tuple(int(exps.get(v, 0)) for v in vars): coeff})


# -- number-theoretic helper --------------------------------------------------

def radical(n: int) -> int:
    """Product of the distinct primes dividing ``n`` (n >= 2)."""
    if not isinstance(n, int) or n < 2:
        raise PolyError("radical is defined for integers >= 2")
    rad, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            rad *= p
            while m % p == 0:
                m //= p
        p += 1 if p == 2 else 2
    if m > 1:
        rad *= m
    return rad


def monomial_ratio(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly | None:
    """The unique ±1 monomial u with p == u*q, or None if there is none.

    Both zero yields the unit monomial 1; exactly one zero yields None.
    """
    if p.vars != q.vars:
        raise PolyError(f"variable mismatch: {p.vars} vs {q.vars}")
    if p.is_zero() and q.is_zero():
        return one(p.vars)
    if p.is_zero() or q.is_zero():
        return None
    if len(p.terms) != len(q.terms):
        return None
    (pe, pc), (qe, qc) = p.terms[0], q.terms[0]
    if abs(pc) != abs(qc):
        return None
    sign = 1 if (pc > 0) == (qc > 0) else -1
    shift = tuple(a - b for a, b in zip(pe, qe))
    u = LaurentPoly(p.vars, {shift: sign})
    return u if p == u * q else None


def evaluate(p: LaurentPoly, assignment: Mapping[str, "Fraction | int"]):
    """Exact value of ``p`` at a rational point, as a Fraction.

    Every variable of the ring must be assigned; a zero value under a
    negative exponent is an error.  Complements ``substitute`` for images
    that are not monomials (spot-checking polynomial identities at points).
    """
    from fractions import Fraction

    vals = []
    for v in p.vars:
        if v not in assignment:
            raise PolyError(f"no value assigned to {v!r}")
        vals.append(Fraction(assignment[v]))
    total = Fraction(0)
    for e, c in p.terms:
        term = Fraction(c)
        for val, k in zip(vals, e):
            if k == 0:
                continue
            if val == 0 and k < 0:
                raise PolyError("zero assigned to a negatively-exponentiated variable")
            term *= val ** k
        total += term
    return total


# -- text format ---------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<sign>[+-])|(?P<int>\d+)|(?P<var>[A-Za-z])"
                    r"|(?P<caret>\^)|(?P<star>\*))")


def parse_poly(text: str, vars: tuple[str, ...]) -> LaurentPoly:
    """Parse the rendering produced by ``str()`` (and reasonable variants).

    Grammar: terms joined by + / -, each term an optional integer coefficient
    and factors ``v`` or ``v^k`` (k a possibly negative integer), with ``*``
    or juxtaposition between factors.
    """
    vars = _check_vars(tuple(vars))
    text = text.strip()
    if text in ("", "0"):
        return zero(vars)
    acc: dict[tuple[int, ...], int] = {}
    pos, n = 0, len(text)
    sign, coeff, exps, started = 1, None, None, False

    def flush():
        nonlocal sign, coeff, exps, started
        if not started:
            raise PolyError(f"dangling sign in {text!r}")
        c = sign * (1 if coeff is None else coeff)
        key = tuple(exps)
        acc[key] = acc.get(key, 0) + c
        sign, coeff, exps, started = 1, None, None, False

    exps = None
    while pos < n:
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise PolyError(f"cannot parse polynomial text at {text[pos:pos+10]!r}")
        pos = m.end()
        if m.group("sign"):
            if started:
                flush()
            if m.group("sign") == "-":
                sign = -sign
            continue
        if exps is None:
            exps = [0] * len(vars)
        if m.group("int"):
            if coeff is not None:
                raise PolyError(f"two coefficients in one term in {text!r}")
            coeff = int(m.group("int"))
            started = True
        elif m.group("var"):
            v = m.group("var")
            if v not in vars:
                raise PolyError(f"unknown variable {v!r} in {text!r}")
            k = 1
            m2 = _TOKEN.match(text, pos)
            if m2 and m2.group("caret"):
                pos = m2.end()
                neg = False
                m3 = _TOKEN.match(text, pos)
                if m3 and m3.group("sign") == "-":
                    neg, pos = True, m3.end()
                m4 = _TOKEN.match(text, pos)
                if not (m4 and m4.group("int")):
                    raise PolyError(f"missing exponent after ^ in {text!r}")
                pos = m4.end()
                k = -int(m4.group("int")) if neg else int(m4.group("int"))
            exps[vars.index(v)] += k
            started = True
        # stars are separators; nothing to do
        if exps is not None and not started:
            exps = None
    if started:
        flush()
    return LaurentPoly(vars, acc)


# -- JSON format ----------------------------------------------------------------

def poly_to_json(p: LaurentPoly) -> dict:
    """JSON-ready dict: variables plus terms with decimal-string coefficients."""
    return {
        "vars": list(p.vars),
        "terms": [{"exponents": list(e), "coeff": str(c)} for e, c in p.terms],
    }


def poly_from_json(obj: dict | str) -> LaurentPoly:
    if isinstance(obj, str):
        obj = json.loads(obj)
    vars = tuple(obj["vars"])
    acc: dict[tuple[int, ...], int] = {}
    for t in obj["terms"]:
        acc[tuple(int(e) for e in t["exponents"])] = int(t["coeff"])
    return LaurentPoly(vars, acc)
