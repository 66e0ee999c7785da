"""Growth sequences and the five-way classification of indices.

A growth sequence d = (a_1, b_1, ..., a_M, b_M) of strictly increasing
positive integers, together with a_0 = 1, v_0 = 0 and v_n = n(a_n + b_n),
splits the index range [0, v_M] into five families of integer intervals:

  zero : {0}
  A    : [r*a_n, r*a_n + v_{n-r}]            for 1 <= r <= n
  B    : (r*a_n + v_{n-r}, (r+1)*a_n)        for 1 <= r < n, midpoint
         h = (r + 1/2)*a_n; the leading range (v_{n-1}, a_n) is encoded
         as r = 0 with h = a_n/2
  C    : [r*(a_n+b_n), n*a_n + r*b_n]        for 1 <= r <= n
  D    : (n*a_n + r*b_n, (r+1)*(a_n+b_n))    for 0 <= r < n, midpoint
         h = (r + 1/2)*b_n

These ranges partition [0, v_M] exactly when a_n > v_{n-1} and
b_n > (n-1)*a_n for every block, which is what `validate` enforces
(the weakest structural conditions; the far stronger growth conditions
needed for operator-norm bounds are not modeled here).
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Optional, Sequence, Tuple

__all__ = [
    "ConfigError",
    "WindowError",
    "DivisibilityError",
    "GrowthSequence",
    "IndexCase",
    "Violation",
    "ValidationReport",
    "validate",
    "v_of",
    "case_ranges",
    "classify",
]


class ConfigError(ValueError):
    """Bad sequence or run configuration."""


class WindowError(ValueError):
    """An index or window size exceeds the configured sequence."""


class DivisibilityError(ValueError):
    """A modulus was requested that does not divide every a_n, b_n."""


@dataclass(frozen=True)
class GrowthSequence:
    """The sequence d truncated to M blocks, with the derived v_n."""

    a: Tuple[int, ...]
    b: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(self.a))
        object.__setattr__(self, "b", tuple(self.b))
        if len(self.a) != len(self.b):
            raise ConfigError("a and b must have the same number of blocks")
        if not self.a:
            raise ConfigError("sequence required: at least one block (a_1, b_1)")
        for x in self.a + self.b:
            if not isinstance(x, int) or x <= 0:
                raise ConfigError(f"sequence entries must be positive integers, got {x!r}")

    @classmethod
    def from_d(cls, d: Sequence[int]) -> "GrowthSequence":
        """Build from the flat interleaved form (a_1, b_1, a_2, b_2, ...)."""
        d = list(d)
        if not d:
            raise ConfigError("sequence required")
        if len(d) % 2:
            raise ConfigError("sequence must interleave a_n, b_n (even length)")
        return cls(tuple(d[0::2]), tuple(d[1::2]))

    @property
    def d(self) -> Tuple[int, ...]:
        out = []
        for an, bn in zip(self.a, self.b):
            out += [an, bn]
        return tuple(out)

    @property
    def blocks(self) -> int:
        return len(self.a)

    def a_of(self, n: int) -> int:
        """a_n with the convention a_0 = 1."""
        if n == 0:
            return 1
        return self.a[n - 1]

    @cached_property
    def v(self) -> Tuple[int, ...]:
        """v_0 = 0 and v_n = n*(a_n + b_n)."""
        return (0,) + tuple(
            n * (self.a[n - 1] + self.b[n - 1]) for n in range(1, self.blocks + 1)
        )

    @property
    def v_max(self) -> int:
        return self.v[self.blocks]

    @property
    def even_ok(self) -> bool:
        return all(x % 2 == 0 for x in self.a + self.b)

    def div_m(self, m: int) -> bool:
        if m <= 0:
            raise ConfigError("modulus must be a positive integer")
        return all(x % m == 0 for x in self.a + self.b)

    @cached_property
    def structural_violations(self) -> Tuple["Violation", ...]:
        out = []
        d = self.d
        for k in range(1, len(d)):
            if d[k] <= d[k - 1]:
                out.append(
                    Violation((k // 2) + 1, f"not strictly increasing at position {k}: "
                                            f"{d[k]} <= {d[k - 1]}")
                )
        for n in range(1, self.blocks + 1):
            if self.a[n - 1] <= self.v[n - 1]:
                out.append(
                    Violation(n, f"a_{n}={self.a[n - 1]} <= v_{n - 1}={self.v[n - 1]}: "
                                 f"blocks overlap")
                )
            if self.b[n - 1] <= (n - 1) * self.a[n - 1]:
                out.append(
                    Violation(n, f"b_{n}={self.b[n - 1]} <= (n-1)*a_{n}="
                                 f"{(n - 1) * self.a[n - 1]}: case-D ranges collapse")
                )
        return tuple(out)

    @property
    def is_structurally_valid(self) -> bool:
        return not self.structural_violations

    def check_valid(self) -> None:
        if self.structural_violations:
            msgs = "; ".join(v.message for v in self.structural_violations)
            raise ConfigError(f"invalid growth sequence: {msgs}")

    def check_window(self, n: int, limit: Optional[int] = None) -> None:
        top = self.v_max if limit is None else limit
        if n > top:
            raise WindowError(
                f"window exceeds configured sequence: {n} > {top} (v_M={self.v_max})"
            )

    def __str__(self):
        return "d=(" + ",".join(str(x) for x in self.d) + ")"


@dataclass(frozen=True)
class Violation:
    n: int
    message: str


@dataclass(frozen=True)
class ValidationReport:
    violations: Tuple[Violation, ...]
    even_ok: bool
    divisible: bool
    require_even: bool
    modulus: int

    @property
    def ok(self) -> bool:
        if self.violations:
            return False
        if self.require_even and not self.even_ok:
            return False
        if self.modulus > 1 and not self.divisible:
            return False
        return True

    def messages(self) -> Tuple[str, ...]:
        out = [v.message for v in self.violations]
        if self.require_even and not self.even_ok:
            out.append("evenness required but some a_n or b_n is odd")
        if self.modulus > 1 and not self.divisible:
            out.append(f"m={self.modulus} does not divide every a_n and b_n")
        return tuple(out)


def validate(seq: GrowthSequence, require_even: bool = False, m: int = 1) -> ValidationReport:
    """Check the structural invariants plus opt-in evenness/divisibility."""
    if m <= 0:
        raise ConfigError("modulus must be a positive integer")
    return ValidationReport(
        violations=seq.structural_violations,
        even_ok=seq.even_ok,
        divisible=seq.div_m(m),
        require_even=require_even,
        modulus=m,
    )


def v_of(seq: GrowthSequence, n: int) -> int:
    if not 0 <= n <= seq.blocks:
        raise WindowError(f"block index {n} out of range [0, {seq.blocks}]")
    return seq.v[n]


@dataclass(frozen=True)
class IndexCase:
    """Which construction case an index i falls in, with its parameters.

    kind is one of "zero", "A", "B", "C", "D".  For B and D, h is the
    exact midpoint (a half-integer in general, an integer when the
    relevant a_n or b_n is even); r = 0 encodes case B's leading range
    (v_{n-1}, a_n).
    """

    kind: str
    n: int = 0
    r: int = 0
    h: Optional[Fraction] = None

    def __str__(self):
        if self.kind == "zero":
            return "zero"
        if self.h is None:
            return f"{self.kind}(n={self.n}, r={self.r})"
        return f"{self.kind}(n={self.n}, r={self.r}, h={self.h})"


def case_ranges(seq: GrowthSequence):
    """Yield (IndexCase, lo, hi) closed integer ranges of every case family,
    block by block.  For a structurally valid sequence these tile [0, v_M];
    empty ranges (lo > hi) are skipped."""
    seq.check_valid()
    yield IndexCase("zero"), 0, 0
    for n in range(1, seq.blocks + 1):
        an, bn = seq.a[n - 1], seq.b[n - 1]
        v = seq.v
        ranges = [(IndexCase("B", n, 0, Fraction(an, 2)), v[n - 1] + 1, an - 1)]
        for r in range(1, n + 1):
            ranges.append((IndexCase("A", n, r), r * an, r * an + v[n - r]))
        for r in range(1, n):
            ranges.append(
                (IndexCase("B", n, r, Fraction((2 * r + 1) * an, 2)),
                 r * an + v[n - r] + 1, (r + 1) * an - 1)
            )
        for r in range(1, n + 1):
            ranges.append((IndexCase("C", n, r), r * (an + bn), n * an + r * bn))
        for r in range(n):
            ranges.append(
                (IndexCase("D", n, r, Fraction((2 * r + 1) * bn, 2)),
                 n * an + r * bn + 1, (r + 1) * (an + bn) - 1)
            )
        for case, lo, hi in ranges:
            if lo <= hi:
                yield case, lo, hi


def classify(seq: GrowthSequence, i: int) -> IndexCase:
    """The unique case whose range contains i; the ranges partition [0, v_M]."""
    seq.check_valid()
    if i < 0:
        raise WindowError(f"negative index {i}")
    seq.check_window(i)
    if i == 0:
        return IndexCase("zero")
    n = bisect_left(seq.v, i)  # v_{n-1} < i <= v_n
    an, bn = seq.a[n - 1], seq.b[n - 1]
    if i < an:
        return IndexCase("B", n, 0, Fraction(an, 2))
    if i <= n * an:
        r, rem = divmod(i, an)
        if rem <= seq.v[n - r]:
            return IndexCase("A", n, r)
        return IndexCase("B", n, r, Fraction((2 * r + 1) * an, 2))
    r = i // (an + bn)
    if r >= 1 and i <= n * an + r * bn:
        return IndexCase("C", n, r)
    return IndexCase("D", n, r, Fraction((2 * r + 1) * bn, 2))
