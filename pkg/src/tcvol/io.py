"""CSV ingestion and result writers."""
from __future__ import annotations

import csv
import json
import math

import numpy as np

from .errors import DataFormatError
from .simulate import ObservationSeries

SCHEMA_VERSION = 1
SPACING_RTOL = 1e-9


def fmt(x: float) -> str:
    """17 significant digits: parses back to the identical double."""
    return format(float(x), ".17g")


def ingest_csv(path) -> ObservationSeries:
    """Read ``index,log_price`` or ``t,log_price`` rows into a series.

    Rows are numbered from 1, header excluded.
    """
    try:
        fh = open(path, newline="", encoding="utf-8")
    except OSError as exc:
        raise DataFormatError(f"cannot open {path}: {exc}") from exc
    with fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise DataFormatError(f"{path}: empty file")
        header = [h.strip().lstrip("﻿") for h in header]
        if header not in (["index", "log_price"], ["t", "log_price"]):
            raise DataFormatError(
                f"{path}: header must be 'index,log_price' or 't,log_price', got {','.join(header)!r}")
        keys, values = [], []
        for row_no, row in enumerate(reader, start=1):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != 2:
                raise DataFormatError(f"{path}: row {row_no} (line {row_no + 1}) has {len(row)} fields, expected 2")
            try:
                k, v = float(row[0]), float(row[1])
            except ValueError:
                raise DataFormatError(f"{path}: row {row_no} (line {row_no + 1}) is not numeric: {row!r}") from None
            if not (math.isfinite(k) and math.isfinite(v)):
                raise DataFormatError(f"{path}: row {row_no} (line {row_no + 1}) has a missing or NaN value")
            keys.append(k)
            values.append(v)
    if len(values) < 2:
        raise DataFormatError(f"{path}: need at least two observations")
    _check_spacing(path, header[0], np.asarray(keys))
    return ObservationSeries(np.asarray(values))


def _check_spacing(path, kind, keys):
    steps = np.diff(keys)
    if np.any(steps <= 0):
        bad = int(np.argmax(steps <= 0)) + 2
        raise DataFormatError(f"{path}: {kind} column not strictly increasing at row {bad}")
    tol = 0.0 if kind == "index" else SPACING_RTOL * abs(steps[0])
    uneven = np.abs(steps - steps[0]) > tol
    if np.any(uneven):
        raise DataFormatError(f"{path}: unequal {kind} spacing at row {int(np.argmax(uneven)) + 2}")


def write_series_csv(path, series: ObservationSeries):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        fh.write("index,log_price\n")
        for j, v in enumerate(series.y):
            fh.write(f"{j},{fmt(v)}\n")


def write_truth_csv(path, series: ObservationSeries):
    truth = series.truth
    with open(path, "w", newline="", encoding="utf-8") as fh:
        fh.write("t,r,c,x\n")
        for row in zip(truth.t, truth.r, truth.c, truth.x):
            fh.write(",".join(fmt(v) for v in row) + "\n")


def write_curve_csv(path, grid, c_tilde, r_tilde, guard_fraction):
    cols = ["t", "c_tilde"] + (["r_tilde"] if r_tilde is not None else []) + ["guard_fraction"]
    with open(path, "w", newline="", encoding="utf-8") as fh:
        fh.write(",".join(cols) + "\n")
        for i in range(len(grid)):
            vals = [grid[i], c_tilde[i]] + ([r_tilde[i]] if r_tilde is not None else []) + [guard_fraction[i]]
            fh.write(",".join(fmt(v) for v in vals) + "\n")


def read_curve_csv(path) -> dict:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        cols = {h: [] for h in header}
        for row in reader:
            for h, v in zip(header, row):
                cols[h].append(float(v))
    return {h: np.asarray(v) for h, v in cols.items()}


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        return v if math.isfinite(v) else None
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def write_json(path, payload: dict):
    payload = {"schema_version": SCHEMA_VERSION, **payload}
    text = json.dumps(_jsonable(payload), indent=2, sort_keys=True) + "\n"
    if path is None or path == "-":
        print(text, end="")
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
