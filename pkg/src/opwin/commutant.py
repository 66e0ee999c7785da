"""Shift-commutant structure and recovery of series representations.

A window commutes with the shift S exactly when it is lower-triangular
Toeplitz on the window, in which case it is p(S) for the series p read
off its first column.  Conjugating by the change of basis Q turns T into
S, so a window commuting with T is p(T) with the same extraction applied
to Q^-1 R Q.  Everything here is exact; failures come back as data (the
first offending entry), never as tolerances.

The commutation check with S uses only the index pairs whose defining
identities stay inside the window ((AS)_ij = a_{i,j+1} needs j+1 < N),
which avoids spurious boundary failures on general windows.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple, Union

from .basis import _q_pair
from .growth import GrowthSequence
from .linalg import Window, Witness, commutator, window_product
from .scalars import ExactScalar, ZERO, as_scalar
from .windows import shift_window, t_window

__all__ = [
    "SeriesWindow",
    "CommutantSolution",
    "toeplitz_from_series",
    "shift_commutant_extract",
    "conjugate_to_e_basis",
    "conjugate_to_f_basis",
    "verify_ttilde_is_shift",
    "series_apply",
    "solve_commutant",
]


class SeriesWindow:
    """Truncated power series coefficients p_0 ... p_{N-1}.

    Trailing zero coefficients are irrelevant: equality and hashing use
    the trimmed tuple.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[Union[ExactScalar, int]] = ()):
        self.coeffs: Tuple[ExactScalar, ...] = tuple(as_scalar(c) for c in coeffs)

    def coeff(self, n: int) -> ExactScalar:
        return self.coeffs[n] if n < len(self.coeffs) else ZERO

    def trimmed(self) -> Tuple[ExactScalar, ...]:
        last = len(self.coeffs)
        while last > 0 and self.coeffs[last - 1].is_zero():
            last -= 1
        return self.coeffs[:last]

    @property
    def degree(self) -> int:
        return len(self.trimmed()) - 1

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, SeriesWindow) and self.trimmed() == other.trimmed()

    def __hash__(self):
        return hash(self.trimmed())

    def __repr__(self):
        return f"SeriesWindow({[str(c) for c in self.coeffs]})"


@dataclass(frozen=True)
class CommutantSolution:
    """Result of a structure check or solve.

    residual_zero means the reconstruction from `series` matches the
    input exactly on the whole window; on failure `series` is None and
    failure_witness locates the first entry where the structure breaks.
    """

    series: Optional[SeriesWindow]
    residual_zero: bool
    failure_witness: Optional[Witness]

    @property
    def ok(self) -> bool:
        return self.residual_zero and self.failure_witness is None


def toeplitz_from_series(p: SeriesWindow, size: int, basis: str = "f") -> Window:
    """The window of p(S): entry (i, j) = p_{i-j} for i >= j."""
    w = Window(size, None, basis)
    for j in range(size):
        for i in range(j, size):
            c = p.coeff(i - j)
            if not c.is_zero():
                w.entries[(i, j)] = c
    return w


def shift_commutant_extract(a: Window) -> CommutantSolution:
    """If a window commutes with S (on the in-window index pairs), recover
    the series p with a = p(S); otherwise report the first violation.

    The two product identities are (AS)_ij = a_{i,j+1} and
    (SA)_ij = a_{i-1,j} (zero for i = 0); they are compared for all
    0 <= i < N, 0 <= j < N-1, in row-major order.
    """
    n = a.size
    for i in range(n):
        for j in range(n - 1):
            lhs = a.entry(i, j + 1)
            rhs = a.entry(i - 1, j) if i >= 1 else ZERO
            diff = lhs - rhs
            if not diff.is_zero():
                return CommutantSolution(None, False, Witness(i, j, diff))
    p = SeriesWindow([a.entry(i, 0) for i in range(n)])
    residual = toeplitz_from_series(p, n, a.basis) == a
    return CommutantSolution(p, residual, None)


def conjugate_to_e_basis(a: Window, seq: GrowthSequence) -> Window:
    """Q^-1 A Q: the action of a unit-basis window on the constructed basis."""
    if a.basis != "f":
        raise ValueError("conjugate_to_e_basis expects a unit-basis (f) window")
    q, qinv = _q_pair(seq, a.size)
    return window_product(window_product(qinv, a), q).retag("e")


def conjugate_to_f_basis(a: Window, seq: GrowthSequence) -> Window:
    """Q A Q^-1: exact inverse of conjugate_to_e_basis."""
    if a.basis != "e":
        raise ValueError("conjugate_to_f_basis expects a constructed-basis (e) window")
    q, qinv = _q_pair(seq, a.size)
    return window_product(window_product(q, a.retag("f")), qinv).retag("f")


def verify_ttilde_is_shift(seq: GrowthSequence, size: int) -> bool:
    """T expressed on the constructed basis is exactly the right shift."""
    return conjugate_to_e_basis(t_window(seq, size), seq) == shift_window(size, "e")


_POWER_CACHE: dict = {}


def _t_powers(seq: GrowthSequence, size: int, upto: int) -> list:
    """Windows of T^0 .. T^upto, cached per (seq, size); read-only."""
    key = (seq, size)
    powers = _POWER_CACHE.get(key)
    if powers is None:
        powers = _POWER_CACHE[key] = [Window.identity(size, "f")]
    if upto >= 1 and len(powers) == 1:
        powers.append(t_window(seq, size))
    while len(powers) <= upto:
        powers.append(window_product(powers[-1], powers[1]))
    return powers


def series_apply(p: SeriesWindow, seq: GrowthSequence, size: int) -> Window:
    """The window of p(T) = sum p_n T^n (a finite sum: T^size = 0)."""
    top = min(len(p.coeffs), size) - 1
    powers = _t_powers(seq, size, max(top, 0))
    out = Window(size, None, "f")
    for n, c in enumerate(p.coeffs):
        if n >= size:
            break
        if not c.is_zero():
            out = out + powers[n].scaled(c)
    return out


def solve_commutant(r: Window, seq: GrowthSequence) -> CommutantSolution:
    """Given a unit-basis window commuting with T, recover the unique p
    with r = p(T) exactly; otherwise fail with the first nonzero entry of
    the commutator [r, T]."""
    t = _t_powers(seq, r.size, 1)[1]
    c = commutator(r, t)
    if not c.is_zero():
        return CommutantSolution(None, False, c.first_nonzero())
    r_tilde = conjugate_to_e_basis(r, seq)
    sol = shift_commutant_extract(r_tilde)
    if not sol.ok:
        return sol
    residual = series_apply(sol.series, seq, r.size) == r
    return CommutantSolution(sol.series, residual, None)
