"""The two basis expansions and the change-of-basis windows Q, Q^-1.

Each constructed basis vector e_i is a finite combination of the unit
vectors f_j and vice versa.  f_in_e is a direct two-term read-off from the
index case; e_in_f inverts the case relation by memoized recursion on the
chain i -> i - r*a_n (case A) or i -> i - b_n (case C), so a column costs
time linear in its support and the chain depth is observable.

q_window's column j holds e_j in f coordinates (support within [0, j],
nonzero at j), qinv_window's column j holds f_j in e coordinates (at most
two entries); on any window the two are exact two-sided inverses.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Tuple

from .growth import GrowthSequence, classify
from .linalg import SparseVector, Window
from .scalars import ExactScalar, from_power_of_two

__all__ = [
    "f_in_e",
    "e_in_f",
    "q_window",
    "qinv_window",
    "SupportProfile",
    "support_profile",
]


def _halves(h: Fraction, i: int) -> int:
    """2*(h - i) as an exact integer (h is a half-integer)."""
    num = 2 * (h - i)
    assert num.denominator == 1
    return num.numerator


def f_in_e(seq: GrowthSequence, i: int) -> SparseVector:
    """Coordinates of f_i in the constructed basis (at most two entries)."""
    case = classify(seq, i)
    out = SparseVector()
    if case.kind == "zero":
        out[0] = 1
    elif case.kind == "A":
        coef = seq.a_of(case.n - case.r)
        out[i] = coef
        out[i - case.r * seq.a[case.n - 1]] = -coef
    elif case.kind == "B":
        out[i] = from_power_of_two(_halves(case.h, i), seq.a[case.n - 1])
    elif case.kind == "C":
        bn = seq.b[case.n - 1]
        out[i] = 1
        out[i - bn] = -bn
    else:  # D
        out[i] = from_power_of_two(_halves(case.h, i), seq.b[case.n - 1])
    return out


@lru_cache(maxsize=None)
def _e_in_f_terms(seq: GrowthSequence, i: int) -> Tuple[Tuple[int, ExactScalar], ...]:
    case = classify(seq, i)
    if case.kind == "zero":
        return ((0, ExactScalar(1)),)
    if case.kind == "A":
        # e_i = (1/a_{n-r}) f_i + e_{i - r*a_n}
        head = (i, ExactScalar(Fraction(1, seq.a_of(case.n - case.r))))
        return (head,) + _e_in_f_terms(seq, i - case.r * seq.a[case.n - 1])
    if case.kind == "B":
        return ((i, from_power_of_two(-_halves(case.h, i), seq.a[case.n - 1])),)
    if case.kind == "C":
        # e_i = f_i + b_n * e_{i - b_n}
        bn = seq.b[case.n - 1]
        tail = tuple(
            (j, v * bn) for j, v in _e_in_f_terms(seq, i - bn)
        )
        return ((i, ExactScalar(1)),) + tail
    return ((i, from_power_of_two(-_halves(case.h, i), seq.b[case.n - 1])),)


def e_in_f(seq: GrowthSequence, i: int) -> SparseVector:
    """Coordinates of e_i in the unit basis; support within [0, i]."""
    out = SparseVector()
    for j, v in _e_in_f_terms(seq, i):
        dict.__setitem__(out, j, v)
    return out


@lru_cache(maxsize=None)
def _chain_length(seq: GrowthSequence, i: int) -> int:
    case = classify(seq, i)
    if case.kind == "A":
        return 1 + _chain_length(seq, i - case.r * seq.a[case.n - 1])
    if case.kind == "C":
        return 1 + _chain_length(seq, i - seq.b[case.n - 1])
    return 1


def q_window(seq: GrowthSequence, size: int) -> Window:
    """Window of Q (column j = e_j in f coordinates); needs size <= v_M + 1."""
    seq.check_valid()
    seq.check_window(size, seq.v_max + 1)
    w = Window(size, None, "f")
    for j in range(size):
        for i, v in _e_in_f_terms(seq, j):
            w.entries[(i, j)] = v
    return w


def qinv_window(seq: GrowthSequence, size: int) -> Window:
    """Window of Q^-1 (column j = f_j in e coordinates)."""
    seq.check_valid()
    seq.check_window(size, seq.v_max + 1)
    w = Window(size, None, "f")
    for j in range(size):
        for i, v in f_in_e(seq, j).items():
            w.entries[(i, j)] = v
    return w


@lru_cache(maxsize=64)
def _q_pair(seq: GrowthSequence, size: int) -> Tuple[Window, Window]:
    """Shared (Q, Q^-1) windows for internal conjugation; callers must
    treat them as read-only (products never mutate their factors)."""
    return q_window(seq, size), qinv_window(seq, size)


@dataclass(frozen=True)
class SupportProfile:
    q_row_counts: Tuple[int, ...]
    q_col_counts: Tuple[int, ...]
    qinv_row_counts: Tuple[int, ...]
    qinv_col_counts: Tuple[int, ...]
    max_chain: int

    @property
    def max_q_col(self) -> int:
        return max(self.q_col_counts)

    @property
    def max_qinv_col(self) -> int:
        return max(self.qinv_col_counts)


def support_profile(seq: GrowthSequence, size: int) -> SupportProfile:
    """Row/column nonzero counts of Q and Q^-1 windows plus the deepest
    recursion chain met while building them (window evidence that the
    change of basis is row- and column-finite)."""
    q = q_window(seq, size)
    qinv = qinv_window(seq, size)

    def counts(w: Window) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        rows = [0] * size
        cols = [0] * size
        for (i, j) in w.entries:
            rows[i] += 1
            cols[j] += 1
        return tuple(rows), tuple(cols)

    qr, qc = counts(q)
    ir, ic = counts(qinv)
    chain = max(_chain_length(seq, j) for j in range(size))
    return SupportProfile(qr, qc, ir, ic, chain)
