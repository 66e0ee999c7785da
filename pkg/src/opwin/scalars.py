"""Exact arithmetic for the coefficient field of the basis construction.

Every scalar is a finite sum of terms ``q * 2^e`` where ``q`` is a nonzero
rational and ``e`` is a rational plus a rational combination of symbols
``1/sqrt(s)`` with ``s`` square-free.  The canonical form is unique:

* radicands are reduced to square-free form (``sqrt(8) -> 2*sqrt(2)``),
* the integer part of the rational exponent is folded into the coefficient
  (``3 * 2^(5/2)`` is stored as ``12 * 2^(1/2)``), so the stored rational
  exponent always lies in ``[0, 1)``,
* zero coefficients are dropped and like exponents merged,
* terms are sorted by a fixed total order on exponents.

Folding matters: without it ``2 * 2^0`` and ``1 * 2^1`` would be distinct
forms of the same real number and exact identity checks (matrix inverses,
commutators) would report spurious nonzero entries.  With it, equality of
canonical forms is sound on the purely rational sector and is backed by an
interval-arithmetic guard (`evaluate`) for the radical sector.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import floor
from typing import Iterable, Optional, Tuple, Union

import mpmath
from mpmath.libmp import to_rational

RationalLike = Union[int, Fraction]

__all__ = [
    "DyadicExponent",
    "ExactScalar",
    "Enclosure",
    "ZERO",
    "ONE",
    "as_scalar",
    "from_power_of_two",
    "evaluate",
    "format_scalar",
    "parse_scalar",
    "square_free_split",
]


def square_free_split(n: int) -> Tuple[int, int]:
    """Write n = k*k*s with s square-free; return (k, s)."""
    if n <= 0:
        raise ValueError("radicand must be positive")
    k, s, m, d = 1, 1, n, 2
    while d * d <= m:
        if m % d == 0:
            e = 0
            while m % d == 0:
                m //= d
                e += 1
            k *= d ** (e // 2)
            if e % 2:
                s *= d
        d += 1 if d == 2 else 2
    return k, s * m


class DyadicExponent:
    """Exponent of 2: a rational in [0, 1) plus sum of c/sqrt(s) terms.

    ``irr`` is a tuple of (s, c) pairs with s square-free > 1, c a nonzero
    rational, sorted by s.  Instances are immutable and hashable; the sort
    key is lexicographic on (rat, irr).
    """

    __slots__ = ("rat", "irr", "is_zero", "_hash")

    def __init__(self, rat: Fraction, irr: Tuple[Tuple[int, Fraction], ...]):
        if not (0 <= rat < 1):
            raise ValueError("rational part must lie in [0, 1) after folding")
        self.rat = rat
        self.irr = irr
        self.is_zero = not irr and not rat
        self._hash = hash((rat, irr))

    @property
    def key(self):
        return (self.rat, self.irr)

    def __eq__(self, other):
        return (
            isinstance(other, DyadicExponent)
            and self.rat == other.rat
            and self.irr == other.irr
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"DyadicExponent({self.rat!r}, {self.irr!r})"


_ZERO_EXP = DyadicExponent(Fraction(0), ())


def _fold(coef: Fraction, rat: Fraction) -> Tuple[Fraction, Fraction]:
    """Split off the integer part of an exponent into the coefficient."""
    k = floor(rat)
    if k:
        coef = coef * Fraction(2) ** k
        rat = rat - k
    return coef, rat


def _merge_irr(
    x: Tuple[Tuple[int, Fraction], ...], y: Tuple[Tuple[int, Fraction], ...]
) -> Tuple[Tuple[int, Fraction], ...]:
    if not x:
        return y
    if not y:
        return x
    acc = dict(x)
    for s, c in y:
        c2 = acc.get(s, 0) + c
        if c2:
            acc[s] = c2
        else:
            del acc[s]
    return tuple(sorted(acc.items()))


class ExactScalar:
    """Canonical finite sum of terms q * 2^e; see the module docstring."""

    __slots__ = ("_terms",)

    def __init__(self, value: Union["ExactScalar", RationalLike] = 0):
        if isinstance(value, ExactScalar):
            self._terms = value._terms
        elif isinstance(value, (int, Fraction)):
            q = Fraction(value)
            self._terms = ((_ZERO_EXP, q),) if q else ()
        else:
            raise TypeError(f"cannot build ExactScalar from {type(value).__name__}")

    @staticmethod
    def _make(terms: Iterable[Tuple[DyadicExponent, Fraction]]) -> "ExactScalar":
        out = ExactScalar.__new__(ExactScalar)
        out._terms = tuple(sorted(terms, key=lambda t: t[0].key))
        return out

    @staticmethod
    def _sorted(terms: Tuple[Tuple[DyadicExponent, Fraction], ...]) -> "ExactScalar":
        """Wrap terms already in canonical order (e.g. after scaling)."""
        out = ExactScalar.__new__(ExactScalar)
        out._terms = terms
        return out

    @property
    def terms(self) -> Tuple[Tuple[DyadicExponent, Fraction], ...]:
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def as_rational(self) -> Optional[Fraction]:
        """The exact rational value, or None if any term is irrational."""
        if not self._terms:
            return Fraction(0)
        if len(self._terms) == 1 and self._terms[0][0].is_zero:
            return self._terms[0][1]
        return None

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, ExactScalar):
            other = ExactScalar(other)
        ta, tb = self._terms, other._terms
        if not tb:
            return self
        if not ta:
            return other
        if len(ta) == 1 and len(tb) == 1 and ta[0][0] == tb[0][0]:
            c = ta[0][1] + tb[0][1]
            return ExactScalar._sorted(((ta[0][0], c),)) if c else ZERO
        acc = dict(ta)
        for exp, coef in tb:
            c2 = acc.get(exp, 0) + coef
            if c2:
                acc[exp] = c2
            else:
                del acc[exp]
        return ExactScalar._make(acc.items())

    __radd__ = __add__

    def __neg__(self):
        return ExactScalar._sorted(tuple((exp, -coef) for exp, coef in self._terms))

    def __sub__(self, other):
        return self + (-as_scalar(other))

    def __rsub__(self, other):
        return as_scalar(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, ExactScalar):
            other = ExactScalar(other)
        ta, tb = self._terms, other._terms
        if not ta or not tb:
            return ZERO
        # scaling by a nonzero rational keeps the term order
        if len(tb) == 1 and tb[0][0].is_zero:
            q = tb[0][1]
            return ExactScalar._sorted(tuple((e, c * q) for e, c in ta))
        if len(ta) == 1 and ta[0][0].is_zero:
            q = ta[0][1]
            return ExactScalar._sorted(tuple((e, c * q) for e, c in tb))
        acc: dict = {}
        for ex, cx in ta:
            for ey, cy in tb:
                coef, rat = _fold(cx * cy, ex.rat + ey.rat)
                exp = DyadicExponent(rat, _merge_irr(ex.irr, ey.irr))
                c2 = acc.get(exp, 0) + coef
                if c2:
                    acc[exp] = c2
                else:
                    del acc[exp]
        return ExactScalar._make(acc.items())

    __rmul__ = __mul__

    def __truediv__(self, other):
        """Division by a nonzero rational (all the construction needs)."""
        if isinstance(other, ExactScalar):
            q = other.as_rational()
            if q is None:
                raise TypeError("division only by rational scalars")
            other = q
        q = Fraction(other)
        if not q:
            raise ZeroDivisionError("scalar division by zero")
        return self * (1 / q)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ExactScalar(other)
        return isinstance(other, ExactScalar) and self._terms == other._terms

    def __hash__(self):
        return hash(self._terms)

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"ExactScalar({format_scalar(self)!r})"


ZERO = ExactScalar(0)
ONE = ExactScalar(1)


def as_scalar(value: Union[ExactScalar, RationalLike]) -> ExactScalar:
    return value if isinstance(value, ExactScalar) else ExactScalar(value)


def from_power_of_two(numer_halves: int, radicand: int) -> ExactScalar:
    """The scalar 2^((numer_halves/2) / sqrt(radicand)).

    The radicand is reduced to square-free form; a perfect-square radicand
    yields a purely rational exponent whose integer part folds into the
    coefficient.
    """
    if radicand <= 0:
        raise ValueError("radicand must be positive")
    k, s = square_free_split(radicand)
    c = Fraction(numer_halves, 2 * k)
    if s == 1:
        coef, rat = _fold(Fraction(1), c)
        return ExactScalar._make([(DyadicExponent(rat, ()), coef)])
    if not c:
        return ONE
    return ExactScalar._make([(DyadicExponent(Fraction(0), ((s, c),)), Fraction(1))])


# -- serialization ----------------------------------------------------------
#
# Grammar (deterministic, bit-exact round-trip):
#   scalar := "0" | term (" + " term)*
#   term   := RAT " * 2^(" RAT irr* ")"
#   irr    := " + " RAT "/sqrt(" INT ")"
#   RAT    := "-"? digits ("/" digits)?

_RAT = r"-?\d+(?:/\d+)?"
_TERM_RE = re.compile(
    rf"({_RAT}) \* 2\^\(({_RAT})((?: \+ {_RAT}/sqrt\(\d+\))*)\)"
)
_IRR_RE = re.compile(rf" \+ ({_RAT})/sqrt\((\d+)\)")


def format_scalar(x: ExactScalar) -> str:
    if not x._terms:
        return "0"
    parts = []
    for exp, coef in x._terms:
        irr = "".join(f" + {c}/sqrt({s})" for s, c in exp.irr)
        parts.append(f"{coef} * 2^({exp.rat}{irr})")
    return " + ".join(parts)


def parse_scalar(text: str) -> ExactScalar:
    s = text.strip()
    if s == "0":
        return ZERO
    total = ZERO
    pos = 0
    while True:
        m = _TERM_RE.match(s, pos)
        if not m:
            raise ValueError(f"malformed scalar text at offset {pos}: {text!r}")
        coef = Fraction(m.group(1))
        coef, rat = _fold(coef, Fraction(m.group(2)))
        irr: dict = {}
        for im in _IRR_RE.finditer(m.group(3)):
            c = Fraction(im.group(1))
            k, sf = square_free_split(int(im.group(2)))
            if sf == 1:
                coef2, rat = _fold(Fraction(1), rat + c / k)
                coef *= coef2
                continue
            c2 = irr.get(sf, 0) + c / k
            if c2:
                irr[sf] = c2
            else:
                del irr[sf]
        term = ExactScalar._make(
            [(DyadicExponent(rat, tuple(sorted(irr.items()))), coef)] if coef else []
        )
        total = total + term
        pos = m.end()
        if pos == len(s):
            return total
        if s[pos : pos + 3] != " + ":
            raise ValueError(f"malformed scalar text at offset {pos}: {text!r}")
        pos += 3


# -- interval evaluation ----------------------------------------------------


class Enclosure:
    """Closed interval [lo, hi] with exact rational endpoints."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo: Fraction, hi: Fraction):
        if lo > hi:
            raise ValueError("empty enclosure")
        self.lo = lo
        self.hi = hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __contains__(self, value) -> bool:
        return self.lo <= value <= self.hi

    def __add__(self, other: "Enclosure") -> "Enclosure":
        return Enclosure(self.lo + other.lo, self.hi + other.hi)

    def __abs__(self) -> "Enclosure":
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return Enclosure(-self.hi, -self.lo)
        return Enclosure(Fraction(0), max(-self.lo, self.hi))

    def intersects(self, other: "Enclosure") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def excludes_zero(self) -> bool:
        return self.lo > 0 or self.hi < 0

    def __eq__(self, other):
        return (
            isinstance(other, Enclosure)
            and self.lo == other.lo
            and self.hi == other.hi
        )

    def __repr__(self):
        return f"Enclosure({self.lo!r}, {self.hi!r})"

    def __str__(self):
        return f"[{float(self.lo)!r}, {float(self.hi)!r}]"


@lru_cache(maxsize=None)
def _interval_context(bits: int):
    ctx = mpmath.ctx_iv.MPIntervalContext()
    ctx.prec = bits
    return ctx


def _iv_fraction(ctx, q: Fraction):
    if q.denominator == 1:
        return ctx.mpf(q.numerator)
    return ctx.mpf(q.numerator) / ctx.mpf(q.denominator)


def _iv_to_enclosure(x) -> Enclosure:
    lo, hi = x._mpi_
    return Enclosure(Fraction(*to_rational(lo)), Fraction(*to_rational(hi)))


def evaluate(x: ExactScalar, precision_bits: int = 128) -> Enclosure:
    """A rigorous interval enclosure of the real value of x.

    Purely rational terms contribute exact point endpoints; radical and
    fractional-exponent terms are enclosed with outward rounding at the
    requested working precision.
    """
    if precision_bits < 16:
        raise ValueError("precision_bits must be >= 16")
    lo = hi = Fraction(0)
    ctx = None
    for exp, coef in x.terms:
        if exp.is_zero:
            lo += coef
            hi += coef
            continue
        if ctx is None:
            ctx = _interval_context(precision_bits)
            ln2 = ctx.log(2)
        e = _iv_fraction(ctx, exp.rat)
        for s, c in exp.irr:
            e += _iv_fraction(ctx, c) / ctx.sqrt(s)
        v = ctx.exp(e * ln2) * _iv_fraction(ctx, coef)
        enc = _iv_to_enclosure(v)
        lo += enc.lo
        hi += enc.hi
    return Enclosure(lo, hi)
