"""Dataset ingestion, normalization, and subsequence extraction.

A dataset is an ordered collection of univariate real-valued series, each
with an optional integer class label. Series may have different lengths.
All containers are immutable after construction and safe to share across
threads.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import ConfigError, DataError

MIN_SERIES_LENGTH_FOR_GRID = 8
MIN_SUBSEQUENCE_LENGTH = 4
GRID_LOW_FRAC = 0.05
GRID_HIGH_FRAC = 0.40
ZERO_VARIANCE_EPS = 1e-8


def _freeze(values: np.ndarray) -> np.ndarray:
    out = np.ascontiguousarray(values, dtype=np.float64)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class TimeSeries:
    """One univariate series: an index in its dataset plus finite values."""

    id: int
    values: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", _freeze(self.values))
        if self.values.ndim != 1 or self.values.size < 1:
            raise DataError(f"series {self.id}: expected a non-empty 1-D sequence")
        if not np.all(np.isfinite(self.values)):
            raise DataError(f"series {self.id}: non-finite value")

    def __len__(self) -> int:
        return int(self.values.size)


@dataclass(frozen=True)
class Subsequence:
    """A length-``len(values)`` window of a parent series starting at ``start``."""

    series_id: int
    start: int
    values: np.ndarray


@dataclass(frozen=True)
class Dataset:
    """Ordered series with optional ground-truth labels and a target cluster count.

    ``true_labels``, when present, must align one-to-one with ``series``.
    ``k`` defaults to the number of distinct labels (1 when unlabeled).
    """

    series: tuple[TimeSeries, ...]
    true_labels: tuple[int, ...] | None = None
    k: int = field(default=0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "series", tuple(self.series))
        if len(self.series) == 0:
            raise DataError("empty dataset")
        for position, ts in enumerate(self.series):
            if ts.id != position:
                raise DataError(f"series id {ts.id} at position {position}")
        if self.true_labels is not None:
            object.__setattr__(self, "true_labels", tuple(int(c) for c in self.true_labels))
            if len(self.true_labels) != len(self.series):
                raise DataError(
                    f"{len(self.true_labels)} labels for {len(self.series)} series"
                )
        if self.k == 0:
            inferred = len(set(self.true_labels)) if self.true_labels else 1
            object.__setattr__(self, "k", inferred)
        if not 1 <= self.k <= len(self.series):
            raise ConfigError(f"k={self.k} outside [1, {len(self.series)}]")

    def __len__(self) -> int:
        return len(self.series)

    @property
    def min_length(self) -> int:
        return min(len(s) for s in self.series)


def _parse_float(token: str, where: str) -> float:
    try:
        value = float(token)
    except ValueError:
        raise DataError(f"non-numeric value {token!r} at {where}") from None
    if not math.isfinite(value):
        raise DataError(f"non-finite value {token!r} at {where}")
    return value


def _remap_labels(raw: list[int]) -> list[int]:
    # 0..k-1 in first-occurrence order
    seen: dict[int, int] = {}
    for lab in raw:
        if lab not in seen:
            seen[lab] = len(seen)
    return [seen[lab] for lab in raw]


def _rows_from_tsv(lines: list[str]) -> list[list[str]]:
    rows = []
    for line in lines:
        if not line.strip():
            continue
        cells = line.rstrip("\n").split("\t")
        while cells and cells[-1].strip() == "":
            cells.pop()
        rows.append(cells)
    return rows


def _rows_from_csv(lines: list[str]) -> tuple[list[list[str]], int]:
    """Return data rows plus the label column index (header optional)."""
    rows = [row for row in csv.reader(lines) if any(cell.strip() for cell in row)]
    if not rows:
        return [], 0
    header = rows[0]
    label_col = 0
    has_header = False
    for j, cell in enumerate(header):
        try:
            float(cell)
        except ValueError:
            has_header = True
            if cell.strip().lower() == "label":
                label_col = j
    if has_header:
        rows = rows[1:]
    cleaned = []
    for row in rows:
        cells = list(row)
        while cells and cells[-1].strip() == "":
            cells.pop()
        cleaned.append(cells)
    return cleaned, label_col


def load_dataset(path: str | Path, format: str = "ucr-tsv") -> Dataset:
    """Load a labeled dataset from disk.

    Parameters
    ----------
    path : str or Path
        File with one series per row.
    format : {"ucr-tsv", "csv"}
        ``ucr-tsv``: tab-separated, first field is an integer class label.
        ``csv``: comma-separated with an optional header; a column named
        ``label`` is used when present, otherwise the first column.

    Labels are remapped to ``0..k-1`` in first-occurrence order. Rows may
    have different lengths (trailing blank cells are dropped); every row
    needs a label plus at least one value.
    """
    if format not in ("ucr-tsv", "csv"):
        raise ConfigError(f"unknown dataset format {format!r}")
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc

    lines = text.splitlines()
    if format == "ucr-tsv":
        rows, label_col = _rows_from_tsv(lines), 0
    else:
        rows, label_col = _rows_from_csv(lines)

    series: list[TimeSeries] = []
    raw_labels: list[int] = []
    for i, cells in enumerate(rows):
        if len(cells) < 2 or label_col >= len(cells):
            raise DataError(f"row {i}: needs a label and at least one value")
        label_tok = cells[label_col]
        value_toks = [c for j, c in enumerate(cells) if j != label_col]
        raw_labels.append(int(_parse_float(label_tok, f"row {i}, label")))
        values = [_parse_float(tok, f"row {i}, col {j}") for j, tok in enumerate(value_toks)]
        series.append(TimeSeries(id=i, values=np.asarray(values)))

    if not series:
        raise DataError(f"{path}: empty dataset")
    return Dataset(series=tuple(series), true_labels=tuple(_remap_labels(raw_labels)))


def save_dataset(dataset: Dataset, path: str | Path) -> None:
    """Write ``dataset`` as UCR-style TSV; values round-trip exactly via repr."""
    labels = dataset.true_labels or tuple(0 for _ in dataset.series)
    with open(path, "w") as fh:
        for ts, lab in zip(dataset.series, labels):
            fh.write("\t".join([str(lab)] + [repr(float(v)) for v in ts.values]) + "\n")


def znormalize_rows(a: np.ndarray) -> np.ndarray:
    """Z-normalize each row of a 2-D array (or a single 1-D sequence).

    Rows with standard deviation below 1e-8 become all-zero: a flat window
    is a legitimate pattern, not an error.
    """
    a = np.asarray(a, dtype=np.float64)
    single = a.ndim == 1
    rows = a[None, :] if single else a
    mean = rows.mean(axis=1, keepdims=True)
    std = rows.std(axis=1, keepdims=True)
    flat = std < ZERO_VARIANCE_EPS
    out = np.where(flat, 0.0, (rows - mean) / np.where(flat, 1.0, std))
    return out[0] if single else out


def znormalize(series: TimeSeries) -> TimeSeries:
    """Return a copy of ``series`` with mean 0 and standard deviation 1."""
    return TimeSeries(id=series.id, values=znormalize_rows(series.values))


def sliding_windows(values: np.ndarray, length: int) -> np.ndarray:
    """All stride-1 windows of ``values`` as a read-only (n - length + 1, length) view."""
    n = values.shape[0]
    if length < 1:
        raise ConfigError(f"subsequence length must be >= 1, got {length}")
    if length > n:
        raise DataError(f"subsequence length {length} > series length {n}")
    return np.lib.stride_tricks.sliding_window_view(values, length)


def extract_subsequences(series: TimeSeries, length: int) -> list[Subsequence]:
    """All ``n - length + 1`` stride-1 subsequences, in increasing start order."""
    windows = sliding_windows(series.values, length)
    return [Subsequence(series.id, i, windows[i]) for i in range(windows.shape[0])]


def candidate_lengths(dataset: Dataset, m: int) -> list[int]:
    """Subsequence-length grid: ``m`` points spanning 5%-40% of the shortest series.

    Lengths are the ceilings of a linear grid between ceil(0.05 * n_min) and
    floor(0.40 * n_min), clamped to >= 4 and deduplicated, ascending. The
    result may hold fewer than ``m`` entries.
    """
    if m < 1:
        raise ConfigError(f"m must be >= 1, got {m}")
    n_min = dataset.min_length
    if n_min < MIN_SERIES_LENGTH_FOR_GRID:
        raise DataError(
            f"dataset too short: min series length {n_min} < {MIN_SERIES_LENGTH_FOR_GRID}"
        )
    lo = math.ceil(GRID_LOW_FRAC * n_min)
    hi = math.floor(GRID_HIGH_FRAC * n_min)
    grid = np.linspace(lo, hi, m)
    return sorted({max(MIN_SUBSEQUENCE_LENGTH, math.ceil(g)) for g in grid})
