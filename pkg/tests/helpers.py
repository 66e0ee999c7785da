"""Shared test utilities: independent oracles and seeded generators.

The case-range oracle below is a deliberate re-transcription of the five
range families (explicit loops over r, materialized as Python ranges);
it shares no code with the classifier it checks.
"""

from __future__ import annotations

import random
from collections import defaultdict
from fractions import Fraction

from opwin import ExactScalar, GrowthSequence, SeriesWindow, Window, from_power_of_two

TOY_D = [2, 4, 8, 10]


def toy_sequence() -> GrowthSequence:
    return GrowthSequence.from_d(TOY_D)


def oracle_case_ranges(seq: GrowthSequence):
    """(label, range) pairs with label = (kind, n, r, h); brute-force form."""
    m_blocks = len(seq.a)
    v = [0]
    for n in range(1, m_blocks + 1):
        v.append(n * (seq.a[n - 1] + seq.b[n - 1]))
    out = [(("zero", 0, 0, None), range(0, 1))]
    for n in range(1, m_blocks + 1):
        an, bn = seq.a[n - 1], seq.b[n - 1]
        out.append((("B", n, 0, Fraction(an, 2)), range(v[n - 1] + 1, an)))
        for r in range(1, n + 1):
            out.append((("A", n, r, None), range(r * an, r * an + v[n - r] + 1)))
        for r in range(1, n):
            out.append(
                (("B", n, r, Fraction((2 * r + 1) * an, 2)),
                 range(r * an + v[n - r] + 1, (r + 1) * an))
            )
        for r in range(1, n + 1):
            out.append((("C", n, r, None), range(r * (an + bn), n * an + r * bn + 1)))
        for r in range(0, n):
            out.append(
                (("D", n, r, Fraction((2 * r + 1) * bn, 2)),
                 range(n * an + r * bn + 1, (r + 1) * (an + bn)))
            )
    return out


def oracle_hits(seq: GrowthSequence) -> dict:
    """index -> list of labels of every range containing it."""
    hits = defaultdict(list)
    for label, rng in oracle_case_ranges(seq):
        for i in rng:
            hits[i].append(label)
    return hits


def case_label(case) -> tuple:
    return (case.kind, case.n, case.r, case.h)


def random_valid_sequence(rng: random.Random, max_blocks: int = 4) -> GrowthSequence:
    """Small random sequence satisfying the structural invariants."""
    blocks = rng.randint(1, max_blocks)
    a, b = [], []
    v_prev, last = 0, 0
    for n in range(1, blocks + 1):
        an = max(v_prev, last) + rng.randint(1, 3)
        bn = max((n - 1) * an, an) + rng.randint(1, 3)
        a.append(an)
        b.append(bn)
        last = bn
        v_prev = n * (an + bn)
    return GrowthSequence(tuple(a), tuple(b))


def random_rational(rng: random.Random, zero_ok: bool = True) -> Fraction:
    num = rng.randint(-9, 9)
    if not zero_ok and num == 0:
        num = 1
    return Fraction(num, rng.randint(1, 9))


def random_scalar(rng: random.Random, radicals: bool = True) -> ExactScalar:
    total = ExactScalar(random_rational(rng))
    if radicals and rng.random() < 0.6:
        extra = ExactScalar(random_rational(rng, zero_ok=False))
        for _ in range(rng.randint(1, 2)):
            extra = extra * from_power_of_two(
                rng.choice([-4, -3, -2, -1, 1, 2, 3, 4]),
                rng.choice([1, 2, 3, 5, 8, 10, 12]),
            )
        total = total + extra
    return total


def random_series(rng: random.Random, max_degree: int,
                  rationals_only: bool = False) -> SeriesWindow:
    coeffs = []
    for _ in range(rng.randint(0, max_degree) + 1):
        if rationals_only:
            coeffs.append(ExactScalar(random_rational(rng)))
        else:
            coeffs.append(random_scalar(rng))
    return SeriesWindow(coeffs)


def random_lower_window(rng: random.Random, size: int, basis: str = "f") -> Window:
    """Random lower-triangular window with a sprinkling of radical entries."""
    w = Window(size, None, basis)
    for i in range(size):
        for j in range(i + 1):
            if rng.random() < 0.4:
                w[i, j] = random_scalar(rng)
    return w
