"""Ingestion of comma-separated time series into model-ready arrays."""

# Authors: pwasvar contributors
# License: BSD 3-clause

import logging
from dataclasses import dataclass, field

import numpy as np
import pandas as pd

from pwasvar.exceptions import DataError, MissingColumn, NonNumericCell, NonPositiveForLog

TRANSFORMS = ("identity", "log", "ratio_log")


@dataclass(frozen=True)
class DataTable:
    """Ordered observations with their provenance.

    Attributes
    ----------
    periods : tuple[str, ...]
        Period labels, one per row.
    values : np.ndarray
        Observations of shape (T, p).
    columns : tuple[str, ...]
        Output variable names.
    sources : dict
        Output name to the source column (or pair of columns for ``ratio_log``).
    transforms : dict
        Output name to the transform applied.
    """

    periods: tuple
    values: np.ndarray
    columns: tuple
    sources: dict = field(default_factory=dict)
    transforms: dict = field(default_factory=dict)

    @property
    def n_obs(self) -> int:
        return self.values.shape[0]

    def to_frame(self, period_column: str = "period") -> pd.DataFrame:
        frame = pd.DataFrame(self.values, columns=list(self.columns))
        frame.insert(0, period_column, list(self.periods))
        return frame


def _numeric(frame: pd.DataFrame, col: str) -> np.ndarray:
    raw = frame[col].astype(str).str.strip()
    parsed = pd.to_numeric(raw, errors="coerce")
    bad = np.flatnonzero(parsed.isna().to_numpy())
    if bad.size:
        raise NonNumericCell(int(bad[0]) + 1, col)
    return parsed.to_numpy(dtype=float)


def _positive(values: np.ndarray, col: str) -> np.ndarray:
    bad = np.flatnonzero(~(values > 0))
    if bad.size:
        raise NonPositiveForLog(int(bad[0]) + 1, col)
    return values


def _check_periods(periods: pd.Series):
    parsed = pd.to_datetime(periods, errors="coerce")
    if len(parsed) > 1 and parsed.notna().all() and not (parsed.diff().iloc[1:] > pd.Timedelta(0)).all():
        raise DataError("Period labels parse as dates but are not strictly increasing")


def load_csv(
    path: str,
    columns: dict,
    transforms: dict = None,
    period_column: str = "date",
    start: int | str = None,
    end: int | str = None,
) -> DataTable:
    """Read a CSV file with a header row into a :class:`DataTable`.

    Parameters
    ----------
    path : str
        CSV file.
    columns : dict
        Output name to source column; for ``ratio_log`` a pair ``(numerator, denominator)``.
    transforms : dict, optional
        Output name to one of ``"identity"``, ``"log"``, ``"ratio_log"``; identity when omitted.
    period_column : str, default="date"
        Column of period labels; row numbers are used when it is absent.
    start, end : int | str, optional
        First and last row to keep (inclusive), as a period label or a zero-based row position.

    Returns
    -------
    DataTable

    Raises
    ------
    MissingColumn
        If a mapped column is absent.
    NonNumericCell
        If a mapped cell is not a number; rows are numbered from 1 after the header.
    NonPositiveForLog
        If a log transform meets a non-positive value.
    """
    transforms = dict(transforms or {})
    frame = pd.read_csv(path, dtype=str, keep_default_na=False)
    frame.columns = [c.strip() for c in frame.columns]

    periods = frame[period_column].astype(str) if period_column in frame.columns else pd.Series(np.arange(1, len(frame) + 1).astype(str))
    lo = 0 if start is None else _locate(periods, start, "start")
    hi = len(frame) - 1 if end is None else _locate(periods, end, "end")
    if hi < lo:
        raise DataError(f"Empty row range: start {start!r} is after end {end!r}")
    frame = frame.iloc[lo : hi + 1].reset_index(drop=True)
    periods = periods.iloc[lo : hi + 1].reset_index(drop=True)

    out = []
    sources = {}
    for name, source in columns.items():
        kind = transforms.get(name, "identity")
        if kind not in TRANSFORMS:
            raise ValueError(f"Unknown transform {kind!r} for {name!r}; expected one of {TRANSFORMS}")
        needed = list(source) if kind == "ratio_log" else [source]
        if kind == "ratio_log" and len(needed) != 2:
            raise ValueError(f"ratio_log for {name!r} needs a (numerator, denominator) pair")
        for col in needed:
            if col not in frame.columns:
                raise MissingColumn(f"Column '{col}' not found; header has {list(frame.columns)}")

        if kind == "identity":
            out.append(_numeric(frame, source))
        elif kind == "log":
            out.append(np.log(_positive(_numeric(frame, source), source)))
        else:
            num = _positive(_numeric(frame, needed[0]), needed[0])
            den = _positive(_numeric(frame, needed[1]), needed[1])
            out.append(np.log(num / den))
        sources[name] = tuple(needed) if kind == "ratio_log" else source
        transforms[name] = kind

    if period_column in frame.columns:
        _check_periods(periods)
    values = np.column_stack(out) if out else np.empty((len(frame), 0))
    logging.info(f"Loaded {values.shape[0]} rows x {values.shape[1]} columns from {path}")
    return DataTable(tuple(periods.tolist()), values, tuple(columns), sources, transforms)


def _locate(periods: pd.Series, key: int | str, which: str) -> int:
    if isinstance(key, (int, np.integer)) and not isinstance(key, bool):
        if not 0 <= key < len(periods):
            raise DataError(f"{which} row {key} is outside 0..{len(periods) - 1}")
        return int(key)
    hits = np.flatnonzero(periods.to_numpy() == str(key))
    if not hits.size:
        raise DataError(f"{which} period {key!r} not found")
    return int(hits[0])


def write_csv(table: DataTable, path: str, period_column: str = "date") -> None:
    """Write `table` with a period column; floats use shortest round-trip decimals."""
    table.to_frame(period_column).to_csv(path, index=False)
    logging.info(f"Saved: [{path}]")
