"""Exact windows of the operator chain: shift S, T, T^m, S_2, K.

T is the unique linear map sending e_i to e_{i+1}.  Its window here is
the exact finite product q_window * shift_window * qinv_window, built
column-by-column by the equivalent chase

    f_j --(f_in_e)--> sum over k --(k -> k+1, dropping k+1 = N)--> e_in_f,

so the window algebra is exactly self-consistent (conjugating back gives
the shift window, polynomial identities hold with zero tolerance).  The
drop at the window edge means the last column differs from the infinite
matrix whenever e_N reaches below index N; norm_scan therefore chases
columns without the drop, reporting the true column norms.

S_2 selects the constructed basis vectors with index divisible by m
(m = 2 in the main construction); its window is Q * D * Q^-1 for the 0/1
diagonal D, and the case-by-case claim that S_2 is the same selector in
the unit basis is verified entry-exactly by s2_closed_form_check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from .basis import _e_in_f_terms, _q_pair, f_in_e
from .growth import DivisibilityError, GrowthSequence
from .linalg import SparseVector, Window, window_product
from .scalars import Enclosure, evaluate

__all__ = [
    "shift_window",
    "t_window",
    "s2_window",
    "k_window",
    "s2_closed_form_check",
    "t_column_norm",
    "NormReport",
    "ColumnNorm",
    "norm_scan",
    "non_scalarity_witness",
]


def shift_window(size: int, basis: str = "f") -> Window:
    """The right shift: entries (j+1, j) = 1; nilpotent on the window."""
    return Window(size, {(j + 1, j): 1 for j in range(size - 1)}, basis)


def k_window(size: int, basis: str = "f") -> Window:
    """The rank-one operator fixing f_0 and killing every other unit."""
    return Window(size, {(0, 0): 1}, basis)


def t_window(seq: GrowthSequence, size: int) -> Window:
    """Window of T in the unit basis; needs size <= v_M."""
    seq.check_valid()
    seq.check_window(size)
    w = Window(size, None, "f")
    for j in range(size):
        col = SparseVector()
        for k, lam in f_in_e(seq, j).items():
            if k + 1 >= size:
                continue  # the shift leaves the window
            for i, v in _e_in_f_terms(seq, k + 1):
                col.add_scaled(i, v * lam)
        for i, v in col.items():
            w.entries[(i, j)] = v
    return w


def _mod_diagonal(size: int, m: int, basis: str = "f") -> Window:
    return Window(size, {(i, i): 1 for i in range(size) if i % m == 0}, basis)


def s2_window(seq: GrowthSequence, size: int, m: int = 2) -> Window:
    """Window of the index-selector S_2 (general modulus m) in the unit basis."""
    seq.check_valid()
    if not seq.div_m(m):
        raise DivisibilityError(
            f"m={m} must divide every a_n and b_n of {seq} for the selector to "
            f"respect the construction"
        )
    seq.check_window(size, seq.v_max + 1)
    q, qinv = _q_pair(seq, size)
    return window_product(window_product(q, _mod_diagonal(size, m)), qinv)


def s2_closed_form_check(
    seq: GrowthSequence, size: int, m: int = 2
) -> Tuple[bool, Optional[int]]:
    """Verify entry-exactly that S_2 acts on unit vectors as the same 0/1
    selector: S_2 f_i = f_i when m | i and 0 otherwise.

    Returns (True, None) or (False, first counterexample index).
    """
    s2 = s2_window(seq, size, m)
    for i in range(size):
        got = s2.apply(SparseVector({i: 1}))
        want = SparseVector({i: 1}) if i % m == 0 else SparseVector()
        if got != want:
            return False, i
    return True, None


def t_column_norm(seq: GrowthSequence, j: int, precision_bits: int) -> Enclosure:
    """Enclosure of the l1 norm of the image of unit j under T (untruncated)."""
    acc = Enclosure(Fraction(0), Fraction(0))
    col = SparseVector()
    for k, lam in f_in_e(seq, j).items():
        for i, v in _e_in_f_terms(seq, k + 1):
            col.add_scaled(i, v * lam)
    for v in col.values():
        acc = acc + abs(evaluate(v, precision_bits))
    return acc


@dataclass(frozen=True)
class ColumnNorm:
    col: int
    block: int
    enclosure: Enclosure
    flag: str  # "le_one" | "gt_one" | "straddles_one"
    bits: int


@dataclass(frozen=True)
class NormReport:
    """Per-column enclosures of the l1 norms of T's columns.

    Exploratory only: whether the norms stay at or below 1 depends on
    growth conditions this package does not model, so nothing here is
    asserted, just reported.
    """

    columns: Tuple[ColumnNorm, ...]
    precision_bits: int
    precision_cap: int

    @property
    def overall(self) -> Enclosure:
        lo = max(c.enclosure.lo for c in self.columns)
        hi = max(c.enclosure.hi for c in self.columns)
        return Enclosure(lo, hi)

    def block_maxima(self) -> dict:
        out: dict = {}
        for c in self.columns:
            prev = out.get(c.block)
            if prev is None:
                out[c.block] = c.enclosure
            else:
                out[c.block] = Enclosure(
                    max(prev.lo, c.enclosure.lo), max(prev.hi, c.enclosure.hi)
                )
        return out

    def flagged(self, flag: str) -> Tuple[int, ...]:
        return tuple(c.col for c in self.columns if c.flag == flag)


def _norm_flag(enc: Enclosure) -> str:
    if enc.hi <= 1:
        return "le_one"
    if enc.lo > 1:
        return "gt_one"
    return "straddles_one"


def norm_scan(
    seq: GrowthSequence,
    size: int,
    precision_bits: int = 128,
    precision_cap: int = 4096,
) -> NormReport:
    """Scan the first `size` column norms of T, escalating precision
    (doubling up to the cap) for any column whose enclosure straddles 1."""
    from bisect import bisect_left

    seq.check_valid()
    seq.check_window(size)
    cols: List[ColumnNorm] = []
    for j in range(size):
        bits = precision_bits
        enc = t_column_norm(seq, j, bits)
        while _norm_flag(enc) == "straddles_one" and enc.width > 0 and bits < precision_cap:
            bits = min(2 * bits, precision_cap)
            enc = t_column_norm(seq, j, bits)
        block = 0 if j == 0 else bisect_left(seq.v, j)
        cols.append(ColumnNorm(j, block, enc, _norm_flag(enc), bits))
    return NormReport(tuple(cols), precision_bits, precision_cap)


def non_scalarity_witness(w: Window) -> Optional[dict]:
    """Evidence that a window is not a multiple of the identity: a nonzero
    off-diagonal entry, or two unequal diagonal entries."""
    offdiag = [(i, j) for (i, j) in w.entries if i != j]
    if offdiag:
        i, j = min(offdiag)
        return {"kind": "offdiag", "row": i, "col": j,
                "scalar_text": str(w.entry(i, j))}
    diag = w.diagonal_entries()
    for i in range(1, w.size):
        if diag[i] != diag[0]:
            return {"kind": "diag_pair", "rows": [0, i],
                    "values": [str(diag[0]), str(diag[i])]}
    return None
