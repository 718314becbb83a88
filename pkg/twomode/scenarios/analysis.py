"""
analysis.py — Scalar summaries of an evolved time series.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
import math
from typing import Any, Optional

import numpy as np

from twomode.physics.propagator import TimeSeries

DEFAULT_ENTROPY_LEVEL = 1e-2


def first_crossing(times: np.ndarray, values: np.ndarray, level: float) -> Optional[float]:
    """Time of the first sample at or above `level`, None if never reached."""
    hits = np.flatnonzero(np.asarray(values) >= level)
    if hits.size == 0:
        return None
    return float(np.asarray(times)[hits[0]])


def time_average(values: np.ndarray) -> float:
    # Samples are uniformly spaced, so the sample mean is the time average.
    data = np.asarray(values, dtype=float)
    return float(np.mean(data)) if data.size else math.nan


@dataclass(frozen=True)
class SeriesSummary:
    samples: int
    n_total_min: float
    n_total_max: float
    mean_n_a: float
    mean_n_b: float
    entropy_max: float
    entropy_peak_time: float
    entropy_crossing_time: Optional[float]
    entropy_min_after_crossing: float
    max_path_discrepancy: float
    warnings: tuple[str, ...] = ()

    def as_dict(self) -> dict[str, Any]:
        payload = asdict(self)
        payload["warnings"] = list(self.warnings)
        return payload

    def line(self, name: str) -> str:
        return (
            f"{name}: n_total min={self.n_total_min:.6f} max={self.n_total_max:.6f} "
            f"entropy_a max={self.entropy_max:.6f} at t={self.entropy_peak_time:g} "
            f"({self.samples} samples)"
        )


def summarize(series: TimeSeries, entropy_level: float = DEFAULT_ENTROPY_LEVEL) -> SeriesSummary:
    t = series.column("t")
    n_total = series.column("n_total")
    entropy = series.column("entropy_a")
    peak = int(np.argmax(entropy))
    crossing = first_crossing(t, entropy, entropy_level)
    if crossing is None:
        floor_after = math.nan
    else:
        floor_after = float(np.min(entropy[t >= crossing]))
    return SeriesSummary(
        samples=len(series),
        n_total_min=float(np.min(n_total)),
        n_total_max=float(np.max(n_total)),
        mean_n_a=time_average(series.column("n_a")),
        mean_n_b=time_average(series.column("n_b")),
        entropy_max=float(entropy[peak]),
        entropy_peak_time=float(t[peak]),
        entropy_crossing_time=crossing,
        entropy_min_after_crossing=floor_after,
        max_path_discrepancy=series.max_path_discrepancy,
        warnings=tuple(series.warnings),
    )
