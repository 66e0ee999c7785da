import random

import pytest

from helpers import random_lower_window, random_scalar
from opwin import (
    ExactScalar,
    SparseVector,
    Window,
    apply,
    commutator,
    format_window,
    parse_window,
    window_product,
)


class TestSparseVector:
    def test_zero_values_dropped(self):
        v = SparseVector({0: 1, 1: 0})
        assert 1 not in v
        assert v[1].is_zero()
        v[0] = 0
        assert 0 not in v

    def test_add_scaled_cancels(self):
        v = SparseVector({2: 3})
        v.add_scaled(2, -3)
        assert v == SparseVector()

    def test_degree(self):
        assert SparseVector({0: 1, 5: 2}).degree == 5
        assert SparseVector().degree == -1


class TestWindowBasics:
    def test_constructor_validation(self):
        with pytest.raises(ValueError):
            Window(0)
        with pytest.raises(ValueError):
            Window(3, basis="g")
        with pytest.raises(IndexError):
            Window(3, {(3, 0): 1})

    def test_zero_entries_dropped(self):
        w = Window(3, {(1, 0): 1, (2, 0): 0})
        assert (2, 0) not in w.entries
        w[1, 0] = 0
        assert w.is_zero()

    def test_identity_and_diagonal(self):
        ident = Window.identity(3)
        assert ident.entries == {(0, 0): ExactScalar(1), (1, 1): ExactScalar(1),
                                 (2, 2): ExactScalar(1)}
        d = Window.diagonal(4, lambda i: i % 2)
        assert sorted(d.entries) == [(1, 1), (3, 3)]

    def test_equality_includes_basis(self):
        a = Window(2, {(1, 0): 1}, "f")
        b = Window(2, {(1, 0): 1}, "e")
        assert a != b
        assert a == b.retag("f")

    def test_first_nonzero_row_major(self):
        w = Window(4, {(2, 1): 5, (1, 3): 7, (2, 0): 1})
        wit = w.first_nonzero()
        assert (wit.row, wit.col) == (1, 3)

    def test_principal(self):
        w = Window(4, {(0, 0): 1, (3, 2): 4})
        assert w.principal(3) == Window(3, {(0, 0): 1})


class TestProduct:
    def test_identity_neutral(self):
        rng = random.Random(5)
        a = random_lower_window(rng, 8)
        ident = Window.identity(8)
        assert window_product(a, ident) == a
        assert window_product(ident, a) == a

    def test_size_mismatch(self):
        with pytest.raises(ValueError):
            window_product(Window.identity(3), Window.identity(4))

    def test_basis_mismatch(self):
        with pytest.raises(ValueError):
            window_product(Window.identity(3, "f"), Window.identity(3, "e"))

    def test_leading_window_exactness_lower_triangular(self):
        # for lower-triangular factors the window of the product equals the
        # product of the windows
        rng = random.Random(6)
        big_a = random_lower_window(rng, 12)
        big_b = random_lower_window(rng, 12)
        big = window_product(big_a, big_b)
        for n in (1, 4, 7, 12):
            assert big.principal(n) == window_product(big_a.principal(n),
                                                      big_b.principal(n))

    def test_product_matches_dense_reference(self):
        rng = random.Random(7)
        n = 6
        a = random_lower_window(rng, n)
        b = random_lower_window(rng, n)
        got = window_product(a, b)
        for i in range(n):
            for j in range(n):
                want = ExactScalar(0)
                for k in range(n):
                    want = want + a.entry(i, k) * b.entry(k, j)
                assert got.entry(i, j) == want

    def test_lower_triangularity_preserved(self):
        rng = random.Random(8)
        a = random_lower_window(rng, 9)
        b = random_lower_window(rng, 9)
        assert window_product(a, b).is_lower_triangular()

    def test_scaling_and_sum(self):
        rng = random.Random(9)
        a = random_lower_window(rng, 5)
        c = random_scalar(rng)
        assert a.scaled(c) - a.scaled(c) == Window(5)
        assert (a + a) == a.scaled(2)

    def test_commutator_antisymmetry(self):
        rng = random.Random(10)
        a = random_lower_window(rng, 6)
        b = random_lower_window(rng, 6)
        assert commutator(a, b) == -commutator(b, a)


class TestApply:
    def test_identity(self):
        x = SparseVector({0: 2, 3: -1})
        assert apply(Window.identity(4), x) == x

    def test_unit_vector_reads_column(self):
        rng = random.Random(11)
        a = random_lower_window(rng, 7)
        for j in range(7):
            assert apply(a, SparseVector({j: 1})) == a.column(j)

    def test_support_out_of_window(self):
        with pytest.raises(ValueError):
            apply(Window.identity(3), SparseVector({3: 1}))


class TestWindowIO:
    def test_round_trip(self):
        rng = random.Random(12)
        w = random_lower_window(rng, 9)
        text = format_window(w)
        back = parse_window(text)
        assert back == w
        assert format_window(back) == text

    def test_header(self):
        text = format_window(Window.identity(2, "e"))
        assert text.splitlines()[0] == "N 2 basis e"

    def test_malformed(self):
        for bad in ("", "X 3 basis f", "N 3 basis f\n0 0", "N 3 basis f\n0 0 junk"):
            with pytest.raises(ValueError):
                parse_window(bad)

    def test_row_major_order(self):
        w = Window(3, {(2, 0): 1, (0, 0): 1, (1, 2): 3})
        lines = format_window(w).splitlines()[1:]
        coords = [tuple(map(int, ln.split()[:2])) for ln in lines]
        assert coords == sorted(coords)
