"""Size caps for the exact routines, overridable from a key=value file.

The caps bound state-space blowups: the oracle enumerates
(configuration, covered-set) pairs, exact packing enumerates subfamilies,
and the exact matching runs a subset DP.  Every exact routine refuses
(CapExceededError) instead of silently truncating.

File format (khwp.toml style, one `key = value` per line, `#` comments):

    oracle_max_n = 14
    oracle_max_k = 5
    packing_max_sets = 24
    csc_max_sets = 20
    matching_max_odd = 18
"""

from __future__ import annotations

from dataclasses import dataclass, fields, replace

from .errors import GraphFormatError


@dataclass(frozen=True)
class Caps:
    oracle_max_n: int = 12
    oracle_max_k: int = 4
    packing_max_sets: int = 24
    csc_max_sets: int = 20
    matching_max_odd: int = 18


DEFAULT_CAPS = Caps()


def load_caps(path: str, base: Caps = DEFAULT_CAPS) -> Caps:
    """Parse a key=value caps file and overlay it on ``base``."""
    known = {f.name for f in fields(Caps)}
    overrides: dict[str, int] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise GraphFormatError(f"{path}:{lineno}: expected 'key = value'")
            key, value = (part.strip() for part in line.split("=", 1))
            if key not in known:
                raise GraphFormatError(f"{path}:{lineno}: unknown cap '{key}'")
            try:
                overrides[key] = int(value)
            except ValueError as exc:
                raise GraphFormatError(f"{path}:{lineno}: '{value}' is not an integer") from exc
    return replace(base, **overrides)
