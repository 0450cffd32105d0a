"""Shared text formatting for files the tools emit."""

from __future__ import annotations

import numpy as np


def format_float(x: float) -> str:
    """17 significant digits; round-trips float64 exactly."""
    return f"{float(x):.17g}"


def pgm_text(values: np.ndarray) -> str:
    """Nonnegative matrix as plain (P2) PGM, peak-scaled to 16 bits.

    One matrix row per line; diffable and loader-friendly enough.
    """
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 2:
        raise ValueError("PGM needs a 2-D matrix")
    peak = float(arr.max())
    if peak > 0.0:
        levels = np.rint(arr / peak * 65535).astype(np.int64)
    else:
        levels = np.zeros_like(arr, dtype=np.int64)
    lines = ["P2", f"{arr.shape[1]} {arr.shape[0]}", "65535"]
    for row in levels:
        lines.append(" ".join(str(int(v)) for v in row))
    return "\n".join(lines) + "\n"
