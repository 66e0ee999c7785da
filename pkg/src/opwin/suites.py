"""Check suites and report assembly for the verifier CLI.

Every check is exact: a pass means the identity holds with zero tolerance
on the configured window, a fail carries the first offending entry.
Suites a configuration cannot support (a modulus that does not divide the
sequence) come back as "refused", and the norm scan is always
"exploratory" because the norm bound depends on growth conditions outside
this package's scope.  Reports are deterministic for a fixed (config,
seed): checks are sorted by name and JSON durations are zeroed unless
timing was requested.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Tuple

from .basis import q_window, qinv_window
from .commutant import (
    SeriesWindow,
    shift_commutant_extract,
    solve_commutant,
    toeplitz_from_series,
    verify_ttilde_is_shift,
    series_apply,
)
from .config import RunConfig
from .growth import case_ranges, classify
from .linalg import Window, commutator, window_product
from .scalars import ExactScalar, from_power_of_two
from .windows import (
    k_window,
    non_scalarity_witness,
    norm_scan,
    s2_closed_form_check,
    s2_window,
    shift_window,
    t_window,
)

__all__ = ["CheckResult", "Report", "run_suite", "random_series", "random_scalar"]

PASS, FAIL, REFUSED, EXPLORATORY = "pass", "fail", "refused", "exploratory"

TOEPLITZ_CASES = 100
TOEPLITZ_SIZE = 16
ROUNDTRIP_CASES = 100
ROUNDTRIP_MAX_DEGREE = 10
PARTITION_SCAN_LIMIT = 20000


@dataclass
class CheckResult:
    check: str
    status: str
    witness: Any
    duration_ms: int

    def as_dict(self, timing: bool, config_digest: str) -> dict:
        # frozen record schema: check, status, witness, duration_ms,
        # config_digest; durations are zeroed unless timing was requested
        # so identical (config, seed) runs emit byte-identical JSON
        return {
            "check": self.check,
            "status": self.status,
            "witness": self.witness,
            "duration_ms": self.duration_ms if timing else 0,
            "config_digest": config_digest,
        }


@dataclass
class Report:
    config: dict
    config_digest: str
    checks: List[CheckResult]
    timing: bool = False

    @property
    def exit_code(self) -> int:
        return 1 if any(c.status == FAIL for c in self.checks) else 0

    def to_json(self) -> str:
        payload = {
            "config": self.config,
            "config_digest": self.config_digest,
            "checks": [c.as_dict(self.timing, self.config_digest) for c in self.checks],
        }
        return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"

    def to_text(self) -> str:
        lines = [f"config digest {self.config_digest}"]
        width = max(len(c.check) for c in self.checks) if self.checks else 0
        for c in self.checks:
            line = f"{c.check:<{width}}  {c.status}"
            if self.timing:
                line += f"  ({c.duration_ms} ms)"
            if c.status in (FAIL, REFUSED) and c.witness:
                line += f"  {json.dumps(c.witness, sort_keys=True)}"
            lines.append(line)
        return "\n".join(lines) + "\n"


# -- deterministic generators -------------------------------------------------


def random_rational(rng: random.Random, zero_ok: bool = True) -> Fraction:
    num = rng.randint(-9, 9)
    if not zero_ok and num == 0:
        num = 1
    return Fraction(num, rng.randint(1, 9))


def random_scalar(rng: random.Random, radicals: bool = True) -> ExactScalar:
    """A small random scalar; with radicals, mixes in 2^(k/2 / sqrt(s)) factors."""
    total = ExactScalar(random_rational(rng))
    if radicals and rng.random() < 0.5:
        extra = ExactScalar(random_rational(rng, zero_ok=False))
        for _ in range(rng.randint(1, 2)):
            extra = extra * from_power_of_two(
                rng.choice([-3, -2, -1, 1, 2, 3]), rng.choice([2, 3, 5, 8, 10])
            )
        total = total + extra
    return total


def random_series(
    rng: random.Random, max_degree: int, rationals_only: bool = False
) -> SeriesWindow:
    degree = rng.randint(0, max_degree)
    coeffs = []
    for _ in range(degree + 1):
        if rationals_only:
            coeffs.append(ExactScalar(random_rational(rng)))
        else:
            coeffs.append(random_scalar(rng))
    return SeriesWindow(coeffs)


# -- individual suites ---------------------------------------------------------


def _suite_classify_partition(config: RunConfig):
    seq = config.sequence
    ranges = sorted(case_ranges(seq), key=lambda t: t[1])
    cursor = 0
    for case, lo, hi in ranges:
        if lo != cursor:
            kind = "overlap" if lo < cursor else "gap"
            return FAIL, {kind: True, "at": min(lo, cursor), "range": str(case)}
        cursor = hi + 1
    if cursor != seq.v_max + 1:
        return FAIL, {"gap": True, "at": cursor}
    if seq.v_max <= PARTITION_SCAN_LIMIT:
        sample = range(seq.v_max + 1)
    else:
        pts = set()
        for _, lo, hi in ranges:
            pts.update((lo, hi, (lo + hi) // 2))
        sample = sorted(pts)
    checked = 0
    for i in sample:
        got = classify(seq, i)
        want = next(c for c, lo, hi in ranges if lo <= i <= hi)
        if got != want:
            return FAIL, {"index": i, "classified": str(got), "range": str(want)}
        checked += 1
    return PASS, {"ranges": len(ranges), "indices_checked": checked}


def _suite_basis_inverse(config: RunConfig):
    seq = config.sequence
    n = min(config.window + 1, seq.v_max + 1)
    q = q_window(seq, n)
    qinv = qinv_window(seq, n)
    ident = Window.identity(n)
    for name, w in (("q", q), ("qinv", qinv)):
        if not w.is_upper_triangular():
            wit = next((i, j) for (i, j) in sorted(w.entries) if i > j)
            return FAIL, {"window": name, "non_triangular_at": list(wit)}
        if any(w.entry(i, i).is_zero() for i in range(n)):
            bad = next(i for i in range(n) if w.entry(i, i).is_zero())
            return FAIL, {"window": name, "zero_diagonal_at": bad}
    left = window_product(q, qinv)
    right = window_product(qinv, q)
    for name, prod in (("q*qinv", left), ("qinv*q", right)):
        diff = prod - ident
        if not diff.is_zero():
            return FAIL, {"product": name, **diff.first_nonzero().as_dict()}
    return PASS, {"window": n}


def _suite_s2_closed_form(config: RunConfig):
    seq = config.sequence
    if not seq.div_m(config.modulus):
        return REFUSED, {"reason": f"m={config.modulus} does not divide every a_n, b_n"}
    ok, bad = s2_closed_form_check(seq, config.window, config.modulus)
    if not ok:
        return FAIL, {"first_counterexample_index": bad}
    return PASS, {"window": config.window, "m": config.modulus}


def _suite_chain_commutators(config: RunConfig):
    seq = config.sequence
    m = config.modulus
    if not seq.div_m(m):
        return REFUSED, {"reason": f"m={m} does not divide every a_n, b_n"}
    n = config.window
    t = t_window(seq, n)
    tm = t ** m
    s2 = s2_window(seq, n, m)
    k = k_window(n)
    pairs = (
        (f"[T, T^{m}]", t, tm),
        (f"[T^{m}, S2]", tm, s2),
        ("[S2, K]", s2, k),
    )
    for name, a, b in pairs:
        c = commutator(a, b)
        if not c.is_zero():
            return FAIL, {"pair": name, **c.first_nonzero().as_dict()}
    return PASS, {"window": n, "m": m}


def _suite_non_scalarity(config: RunConfig):
    seq = config.sequence
    m = config.modulus
    if not seq.div_m(m):
        return REFUSED, {"reason": f"m={m} does not divide every a_n, b_n"}
    n = config.window
    witnesses = {}
    for name, w in (
        (f"T^{m}", t_window(seq, n) ** m),
        ("S2", s2_window(seq, n, m)),
        ("K", k_window(n)),
    ):
        wit = non_scalarity_witness(w)
        if wit is None:
            return FAIL, {"operator": name, "reason": "window is a multiple of identity"}
        witnesses[name] = wit
    k = k_window(n)
    nonzero_cols = {j for (_, j) in k.entries}
    witnesses["K_rank"] = len(nonzero_cols)
    if len(nonzero_cols) != 1 or not (k * k == k):
        return FAIL, {"operator": "K", "reason": "not a rank-one idempotent"}
    return PASS, witnesses


def _suite_ttilde_shift(config: RunConfig):
    if verify_ttilde_is_shift(config.sequence, config.window):
        return PASS, {"window": config.window}
    return FAIL, {"window": config.window}


def _suite_toeplitz_lemma(config: RunConfig):
    rng = random.Random(f"{config.seed}:toeplitz-lemma")
    n = TOEPLITZ_SIZE
    s = shift_window(n)
    for case in range(TOEPLITZ_CASES):
        p = random_series(rng, n - 1)
        w = toeplitz_from_series(p, n)
        if not commutator(w, s).is_zero():
            return FAIL, {"case": case, "reason": "toeplitz window does not commute with S"}
        sol = shift_commutant_extract(w)
        if not sol.ok or sol.series != p:
            return FAIL, {"case": case, "reason": "series not recovered"}
        # one structural perturbation per case; (n-1, 0) only shifts the
        # series, every other entry is pinned by the commutation identities
        while True:
            i, j = rng.randrange(n), rng.randrange(n)
            if (i, j) != (n - 1, 0):
                break
        delta = random_scalar(rng)
        if delta.is_zero():
            delta = ExactScalar(1)
        bad = w.copy()
        bad[i, j] = bad.entry(i, j) + delta
        broken = shift_commutant_extract(bad)
        if broken.failure_witness is None:
            return FAIL, {"case": case, "perturbed": [i, j],
                          "reason": "perturbation not detected"}
    return PASS, {"cases": TOEPLITZ_CASES, "size": n}


def _suite_commutant_roundtrip(config: RunConfig):
    seq = config.sequence
    rng = random.Random(f"{config.seed}:commutant-roundtrip")
    n = min(config.window, 24)
    t = t_window(seq, n)
    for case in range(ROUNDTRIP_CASES):
        p = random_series(rng, ROUNDTRIP_MAX_DEGREE, rationals_only=True)
        r = series_apply(p, seq, n)
        if not commutator(r, t).is_zero():
            return FAIL, {"case": case, "reason": "p(T) does not commute with T"}
        sol = solve_commutant(r, seq)
        if not sol.ok or sol.series != p:
            return FAIL, {"case": case, "reason": "series not recovered"}
    k_sol = solve_commutant(k_window(n), seq)
    if k_sol.ok or k_sol.failure_witness is None:
        return FAIL, {"reason": "rank-one K unexpectedly solved as a series of T"}
    return PASS, {
        "cases": ROUNDTRIP_CASES,
        "size": n,
        "k_window_witness": k_sol.failure_witness.as_dict(),
    }


def _suite_norm_scan(config: RunConfig):
    report = norm_scan(
        config.sequence, config.window, config.precision_bits, config.precision_cap
    )
    table = [
        {
            "col": c.col,
            "block": c.block,
            "lo": str(c.enclosure.lo),
            "hi": str(c.enclosure.hi),
            "flag": c.flag,
            "bits": c.bits,
        }
        for c in report.columns
    ]
    overall = report.overall
    return EXPLORATORY, {
        "columns": table,
        "max_lo": str(overall.lo),
        "max_hi": str(overall.hi),
        "gt_one": list(report.flagged("gt_one")),
        "straddling": list(report.flagged("straddles_one")),
    }


_SUITES: Dict[str, Callable[[RunConfig], Tuple[str, Any]]] = {
    "basis-inverse": _suite_basis_inverse,
    "chain-commutators": _suite_chain_commutators,
    "classify-partition": _suite_classify_partition,
    "commutant-roundtrip": _suite_commutant_roundtrip,
    "non-scalarity": _suite_non_scalarity,
    "norm-scan": _suite_norm_scan,
    "s2-closed-form": _suite_s2_closed_form,
    "toeplitz-lemma": _suite_toeplitz_lemma,
    "ttilde-shift": _suite_ttilde_shift,
}


def run_suite(config: RunConfig) -> Report:
    """Execute the configured suites and aggregate a deterministic report."""
    checks = []
    for name in sorted(config.suites):
        start = time.perf_counter()
        status, witness = _SUITES[name](config)
        elapsed = int((time.perf_counter() - start) * 1000)
        checks.append(CheckResult(name, status, witness, elapsed))
    return Report(
        config=config.echo(),
        config_digest=config.digest,
        checks=checks,
        timing=config.timing,
    )
