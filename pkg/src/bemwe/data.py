"""Dataset loading: CSV ingestion and the embedded 1986 NFL scoring-time table."""
from __future__ import annotations

import csv
import io
import math
import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .bivariate import BivariateSample
from .errors import InputError

__all__ = ["Dataset", "NFL_TABLE", "nfl_pairs", "load_nfl", "load_csv", "parse_csv_text"]

# Game time (minutes) to first field goal (x1) and first touchdown (x2), three
# consecutive weekends of 1986. Ties are converted touchdowns. Values are kept
# exactly as printed; "2.05" is read as the decimal 2.05, not 2 min 5 s.
NFL_TABLE = """\
2.05 3.98 8.53 14.57 2.90 2.90 1.38 1.38
9.05 9.05 31.13 49.88 7.02 7.02 10.53 10.53
0.85 0.85 14.58 20.57 6.42 6.42 12.13 12.13
3.43 3.43 5.78 25.98 8.98 8.98 14.58 14.58
7.78 7.78 13.80 49.75 10.15 10.15 11.82 11.82
10.57 14.28 7.25 7.25 8.87 8.87 5.52 11.27
7.05 7.05 4.25 4.25 10.40 10.25 19.65 10.70
2.58 2.58 1.65 1.65 2.98 2.98 17.83 17.83
7.23 9.68 6.42 15.08 3.88 6.43 10.85 38.07
6.85 34.58 4.22 9.48 0.75 0.75
32.45 42.35 15.53 15.53 11.63 17.37
"""


@dataclass(frozen=True)
class Dataset:
    pairs: np.ndarray  # (n, 2), already divided by ``scale``
    scale: float = 1.0
    source: str = ""
    tie_tol: float = 0.0

    def __post_init__(self):
        if not (self.scale > 0 and math.isfinite(self.scale)):
            raise InputError(f"scale must be a positive number, got {self.scale!r}")
        arr = np.asarray(self.pairs, dtype=float).reshape(-1, 2)
        if np.any(arr < 0):
            raise InputError("scaled values must be >= 0")
        object.__setattr__(self, "pairs", arr)

    def __len__(self) -> int:
        return self.pairs.shape[0]

    def sample(self) -> BivariateSample:
        return BivariateSample(self.pairs[:, 0], self.pairs[:, 1], self.tie_tol)


def nfl_pairs() -> np.ndarray:
    """The 42 raw (unscaled) pairs, read row by row, left to right."""
    values = []
    for line in NFL_TABLE.splitlines():
        nums = [float(t) for t in line.split()]
        values.extend(zip(nums[0::2], nums[1::2]))
    return np.array(values)


def load_nfl(scale: float = 100.0, tie_tol: float = 0.0) -> Dataset:
    return Dataset(nfl_pairs() / scale, scale, "embedded:nfl-1986", tie_tol)


_SPLIT = re.compile(r"[,\s]+")


def _is_number(tok: str) -> bool:
    try:
        float(tok)
    except ValueError:
        return False
    return True


def parse_csv_text(text: str, scale: float = 1.0, tie_tol: float = 0.0, source: str = "<text>") -> Dataset:
    """Parse two-column text (comma or whitespace separated, optional header)."""
    if not (scale > 0 and math.isfinite(scale)):
        raise InputError(f"scale must be a positive number, got {scale!r}")
    rows = []
    first = True
    for lineno, raw in enumerate(io.StringIO(text), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "," in line:
            toks = [t.strip() for t in next(csv.reader([line]))]
        else:
            toks = _SPLIT.split(line)
        if first and not all(_is_number(t) for t in toks):
            first = False
            continue  # header
        first = False
        if len(toks) != 2:
            raise InputError(f"{source}:{lineno}: expected 2 columns, found {len(toks)}")
        try:
            a, b = float(toks[0]), float(toks[1])
        except ValueError:
            raise InputError(f"{source}:{lineno}: non-numeric cell in {line!r}") from None
        if not (math.isfinite(a) and math.isfinite(b)) or a < 0 or b < 0:
            raise InputError(f"{source}:{lineno}: values must be finite and >= 0")
        rows.append((a, b))
    if not rows:
        raise InputError(f"{source}: no data rows")
    return Dataset(np.array(rows) / scale, scale, source, tie_tol)


def load_csv(path, scale: float = 1.0, tie_tol: float = 0.0) -> Dataset:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise InputError(f"{path}: no such file") from None
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(f"{path}: {exc}") from None
    return parse_csv_text(text, scale, tie_tol, source=str(path))
