"""Run configuration: key=value text or CLI flags resolved to one object.

Recognized keys (file and flags use the same names):

  d          explicit sequence "a1,b1,a2,b2,..."
  rule       "geometric:first_a=<int>,ratio=<int>,blocks=<int>"
  N          window size (default min(36, v_M); must stay within v_M)
  m          selector modulus (default 2)
  precision  evaluation precision in bits (default 128)
  precision_cap  escalation cap in bits (default 4096)
  suites     comma list of suite names (default: all)
  format     "text" or "json"
  seed       integer seed for the randomized suites
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

from .growth import ConfigError, GrowthSequence, validate

ALL_SUITES: Tuple[str, ...] = (
    "basis-inverse",
    "chain-commutators",
    "classify-partition",
    "commutant-roundtrip",
    "non-scalarity",
    "norm-scan",
    "s2-closed-form",
    "toeplitz-lemma",
    "ttilde-shift",
)

DEFAULT_PRECISION = 128
PRECISION_CAP = 4096

__all__ = ["ALL_SUITES", "RunConfig", "parse_config", "resolve_config", "expand_rule"]


@dataclass(frozen=True)
class RunConfig:
    sequence: GrowthSequence
    window: int
    modulus: int = 2
    precision_bits: int = DEFAULT_PRECISION
    precision_cap: int = PRECISION_CAP
    suites: Tuple[str, ...] = ALL_SUITES
    fmt: str = "text"
    seed: int = 0
    timing: bool = False

    def echo(self) -> dict:
        """Deterministic, JSON-ready description of the resolved config."""
        return {
            "d": list(self.sequence.d),
            "N": self.window,
            "m": self.modulus,
            "precision_bits": self.precision_bits,
            "precision_cap": self.precision_cap,
            "suites": list(self.suites),
            "seed": self.seed,
            "format": self.fmt,
        }

    @property
    def digest(self) -> str:
        blob = json.dumps(self.echo(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:16]


def expand_rule(spec: str) -> GrowthSequence:
    """Expand "geometric:first_a=2,ratio=5,blocks=2" into a sequence."""
    kind, _, rest = spec.partition(":")
    if kind != "geometric":
        raise ConfigError(f"unknown rule kind {kind!r} (only 'geometric')")
    params: Dict[str, int] = {}
    for part in filter(None, rest.split(",")):
        key, _, val = part.partition("=")
        try:
            params[key.strip()] = int(val)
        except ValueError:
            raise ConfigError(f"rule parameter {part!r} is not an integer") from None
    missing = {"first_a", "ratio", "blocks"} - set(params)
    if missing:
        raise ConfigError(f"rule is missing parameters: {sorted(missing)}")
    first_a, ratio, blocks = params["first_a"], params["ratio"], params["blocks"]
    if first_a < 1 or ratio < 2 or blocks < 1:
        raise ConfigError("rule needs first_a >= 1, ratio >= 2, blocks >= 1")
    d = [first_a]
    for _ in range(2 * blocks - 1):
        d.append(d[-1] * ratio)
    return GrowthSequence.from_d(d)


def _parse_int(key: str, value: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise ConfigError(f"{key} must be an integer, got {value!r}") from None


def resolve_config(raw: Dict[str, str]) -> RunConfig:
    """Apply defaults and validate a flat key->string mapping."""
    unknown = set(raw) - {
        "d", "rule", "N", "m", "precision", "precision_cap",
        "suites", "format", "seed", "timing",
    }
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    if "d" in raw and "rule" in raw:
        raise ConfigError("give either d or rule, not both")
    if "d" in raw:
        try:
            d = [int(x) for x in raw["d"].replace(" ", "").split(",") if x]
        except ValueError:
            raise ConfigError(f"d must be a comma list of integers: {raw['d']!r}") from None
        seq = GrowthSequence.from_d(d)
    elif "rule" in raw:
        seq = expand_rule(raw["rule"])
    else:
        raise ConfigError("sequence required")

    report = validate(seq)
    if not report.ok:
        raise ConfigError(
            "sequence fails validation: " + "; ".join(report.messages())
        )

    window = _parse_int("N", raw["N"]) if "N" in raw else min(36, seq.v_max)
    if window < 1:
        raise ConfigError("N must be >= 1")
    if window > seq.v_max:
        raise ConfigError(
            f"window exceeds configured sequence: N={window} > v_M={seq.v_max}"
        )
    modulus = _parse_int("m", raw.get("m", "2"))
    if modulus < 1:
        raise ConfigError("m must be >= 1")
    precision = _parse_int("precision", raw.get("precision", str(DEFAULT_PRECISION)))
    cap = _parse_int("precision_cap", raw.get("precision_cap", str(PRECISION_CAP)))
    if precision < 16:
        raise ConfigError("precision must be >= 16 bits")
    if cap < precision:
        raise ConfigError("precision_cap must be >= precision")
    suites = ALL_SUITES
    if "suites" in raw:
        suites = tuple(s.strip() for s in raw["suites"].split(",") if s.strip())
        bad = set(suites) - set(ALL_SUITES)
        if bad:
            raise ConfigError(f"unknown suites: {sorted(bad)}")
        suites = tuple(sorted(set(suites)))
    fmt = raw.get("format", "text")
    if fmt not in ("text", "json"):
        raise ConfigError(f"format must be text or json, got {fmt!r}")
    seed = _parse_int("seed", raw.get("seed", "0"))
    timing = raw.get("timing", "false").lower() in ("1", "true", "yes")
    return RunConfig(
        sequence=seq,
        window=window,
        modulus=modulus,
        precision_bits=precision,
        precision_cap=cap,
        suites=suites,
        fmt=fmt,
        seed=seed,
        timing=timing,
    )


def parse_config(source: str) -> RunConfig:
    """Parse key=value text (one pair per line, '#' comments) into a config."""
    raw: Dict[str, str] = {}
    for lineno, line in enumerate(source.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ConfigError(f"line {lineno}: expected key=value, got {line!r}")
        key, value = key.strip(), value.strip()
        if key in raw:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        raw[key] = value
    return resolve_config(raw)
