"""Sparse vectors and N-by-N matrix windows over ExactScalar.

Windows use the standard column convention: entry (i, j) is the
coefficient of the i-th unit vector in the image of the j-th, so column j
is the image of basis vector j.  Only nonzero entries are stored.  A
window carries a basis tag ("f" or "e") that products must agree on;
equality compares size, tag and entries exactly.
"""

from __future__ import annotations

from typing import Dict, Iterable, Iterator, NamedTuple, Optional, Tuple, Union

from .scalars import ExactScalar, ZERO, as_scalar, format_scalar, parse_scalar

__all__ = [
    "SparseVector",
    "Window",
    "Witness",
    "window_product",
    "commutator",
    "apply",
    "format_window",
    "parse_window",
]


class SparseVector(dict):
    """index -> nonzero ExactScalar; missing indices read as zero."""

    def __init__(self, data=()):
        super().__init__()
        items = data.items() if isinstance(data, dict) else data
        for k, v in items:
            self.add_scaled(k, v)

    def __getitem__(self, i):
        return self.get(i, ZERO)

    def add_scaled(self, i, value, coef=None):
        value = as_scalar(value)
        if coef is not None:
            value = value * coef
        total = self.get(i, ZERO) + value
        if total.is_zero():
            self.pop(i, None)
        else:
            dict.__setitem__(self, i, total)

    def __setitem__(self, i, value):
        value = as_scalar(value)
        if value.is_zero():
            self.pop(i, None)
        else:
            dict.__setitem__(self, i, value)

    def scaled(self, coef) -> "SparseVector":
        out = SparseVector()
        for i, v in self.items():
            out[i] = v * coef
        return out

    @property
    def degree(self) -> int:
        return max(self, default=-1)


class Witness(NamedTuple):
    """Location and value of an offending matrix entry."""

    row: int
    col: int
    value: ExactScalar

    def as_dict(self) -> dict:
        return {"row": self.row, "col": self.col, "scalar_text": format_scalar(self.value)}


EntryMap = Dict[Tuple[int, int], ExactScalar]


class Window(object):
    """Sparse N-by-N matrix window; see module docstring."""

    __slots__ = ("size", "basis", "entries")

    def __init__(self, size: int, entries=None, basis: str = "f"):
        if size < 1:
            raise ValueError("window size must be >= 1")
        if basis not in ("f", "e"):
            raise ValueError(f"basis tag must be 'f' or 'e', got {basis!r}")
        self.size = size
        self.basis = basis
        self.entries: EntryMap = {}
        if entries:
            items = entries.items() if isinstance(entries, dict) else entries
            for (i, j), v in items:
                self[i, j] = v

    @classmethod
    def identity(cls, size: int, basis: str = "f") -> "Window":
        return cls(size, {(i, i): 1 for i in range(size)}, basis)

    @classmethod
    def diagonal(cls, size: int, values, basis: str = "f") -> "Window":
        """Diagonal window from a per-index value function or sequence."""
        get = values if callable(values) else values.__getitem__
        return cls(size, {(i, i): get(i) for i in range(size)}, basis)

    def __setitem__(self, key, value):
        i, j = key
        if not (0 <= i < self.size and 0 <= j < self.size):
            raise IndexError(f"entry {key} outside {self.size}x{self.size} window")
        value = as_scalar(value)
        if value.is_zero():
            self.entries.pop((i, j), None)
        else:
            self.entries[(i, j)] = value

    def entry(self, i: int, j: int) -> ExactScalar:
        return self.entries.get((i, j), ZERO)

    def __getitem__(self, key):
        return self.entries.get(key, ZERO)

    def column(self, j: int) -> SparseVector:
        out = SparseVector()
        for (i, jj), v in self.entries.items():
            if jj == j:
                dict.__setitem__(out, i, v)
        return out

    def retag(self, basis: str) -> "Window":
        out = Window(self.size, None, basis)
        out.entries = dict(self.entries)
        return out

    def copy(self) -> "Window":
        return self.retag(self.basis)

    def principal(self, n: int) -> "Window":
        """Leading n-by-n principal submatrix."""
        if n > self.size:
            raise ValueError("principal submatrix larger than window")
        return Window(
            n,
            {(i, j): v for (i, j), v in self.entries.items() if i < n and j < n},
            self.basis,
        )

    # -- structure predicates ------------------------------------------------

    def is_zero(self) -> bool:
        return not self.entries

    def is_lower_triangular(self, strict: bool = False) -> bool:
        if strict:
            return all(i > j for (i, j) in self.entries)
        return all(i >= j for (i, j) in self.entries)

    def is_upper_triangular(self, strict: bool = False) -> bool:
        if strict:
            return all(i < j for (i, j) in self.entries)
        return all(i <= j for (i, j) in self.entries)

    def diagonal_entries(self) -> Tuple[ExactScalar, ...]:
        return tuple(self.entry(i, i) for i in range(self.size))

    def first_nonzero(self) -> Optional[Witness]:
        """First nonzero entry in row-major order, if any."""
        if not self.entries:
            return None
        i, j = min(self.entries)
        return Witness(i, j, self.entries[(i, j)])

    # -- algebra ---------------------------------------------------------------

    def _check_compatible(self, other: "Window") -> None:
        if self.size != other.size:
            raise ValueError(f"window size mismatch: {self.size} vs {other.size}")
        if self.basis != other.basis:
            raise ValueError(f"basis mismatch: {self.basis!r} vs {other.basis!r}")

    def __add__(self, other: "Window") -> "Window":
        self._check_compatible(other)
        out = self.copy()
        for (i, j), v in other.entries.items():
            out[i, j] = out.entry(i, j) + v
        return out

    def __sub__(self, other: "Window") -> "Window":
        self._check_compatible(other)
        out = self.copy()
        for (i, j), v in other.entries.items():
            out[i, j] = out.entry(i, j) - v
        return out

    def __neg__(self) -> "Window":
        out = Window(self.size, None, self.basis)
        out.entries = {k: -v for k, v in self.entries.items()}
        return out

    def scaled(self, coef) -> "Window":
        coef = as_scalar(coef)
        out = Window(self.size, None, self.basis)
        if not coef.is_zero():
            for k, v in self.entries.items():
                out.entries[k] = v * coef
        return out

    def __mul__(self, other):
        if isinstance(other, Window):
            return window_product(self, other)
        return self.scaled(other)

    def __rmul__(self, other):
        return self.scaled(other)

    def __pow__(self, k: int) -> "Window":
        if k < 0:
            raise ValueError("negative window powers are not defined")
        out = Window.identity(self.size, self.basis)
        for _ in range(k):
            out = window_product(out, self)
        return out

    def apply(self, x: SparseVector) -> SparseVector:
        return apply(self, x)

    def __eq__(self, other):
        return (
            isinstance(other, Window)
            and self.size == other.size
            and self.basis == other.basis
            and self.entries == other.entries
        )

    def __repr__(self):
        return (f"Window(size={self.size}, basis={self.basis!r}, "
                f"nnz={len(self.entries)})")


def window_product(a: Window, b: Window) -> Window:
    """Exact product with c_ij = sum_k a_ik * b_kj."""
    a._check_compatible(b)
    cols_a: Dict[int, list] = {}
    for (i, k), v in a.entries.items():
        cols_a.setdefault(k, []).append((i, v))
    acc: Dict[Tuple[int, int], ExactScalar] = {}
    for (k, j), bv in b.entries.items():
        for i, av in cols_a.get(k, ()):
            key = (i, j)
            prev = acc.get(key)
            term = av * bv
            acc[key] = term if prev is None else prev + term
    out = Window(a.size, None, a.basis)
    out.entries = {k: v for k, v in acc.items() if not v.is_zero()}
    return out


def commutator(a: Window, b: Window) -> Window:
    """AB - BA, exact."""
    return window_product(a, b) - window_product(b, a)


def apply(a: Window, x: SparseVector) -> SparseVector:
    """Exact matrix-vector product y_i = sum_j a_ij * x_j."""
    out = SparseVector()
    for j, xj in x.items():
        if not (0 <= j < a.size):
            raise ValueError(f"vector support index {j} outside window of size {a.size}")
    for (i, j), v in a.entries.items():
        xj = x.get(j)
        if xj is not None:
            out.add_scaled(i, v * xj)
    return out


# -- window file format ------------------------------------------------------
#
#   N <size> basis <f|e>
#   <row> <col> <scalar-text>
#
# Triplets in row-major order; round-trips bit-exactly.


def format_window(w: Window) -> str:
    lines = [f"N {w.size} basis {w.basis}"]
    for (i, j) in sorted(w.entries):
        lines.append(f"{i} {j} {format_scalar(w.entries[(i, j)])}")
    return "\n".join(lines) + "\n"


def parse_window(text: str) -> Window:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty window text")
    head = lines[0].split()
    if len(head) != 4 or head[0] != "N" or head[2] != "basis":
        raise ValueError(f"malformed window header: {lines[0]!r}")
    w = Window(int(head[1]), None, head[3])
    for ln in lines[1:]:
        parts = ln.split(maxsplit=2)
        if len(parts) != 3:
            raise ValueError(f"malformed window triplet: {ln!r}")
        w[int(parts[0]), int(parts[1])] = parse_scalar(parts[2])
    return w
