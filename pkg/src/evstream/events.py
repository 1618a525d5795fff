"""Core event-stream primitives: DVS events, fixed time windows, synthetic sources.

Bulk event data lives in numpy structured arrays whose in-memory layout is the
same 16-byte little-endian record used on the wire and on disk, so bulk
encode/decode is a straight memory copy.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DataError, OrderingError, ParameterError

WINDOW_LENGTH_US = 50_000
EVENT_RECORD_BYTES = 16
EVENT_RECORD_BITS = EVENT_RECORD_BYTES * 8

# Little-endian record layout: t u64 | x u16 | y u16 | p u8 | 3 reserved bytes.
EVENT_DTYPE = np.dtype(
    {
        "names": ["t", "x", "y", "p"],
        "formats": ["<u8", "<u2", "<u2", "u1"],
        "offsets": [0, 8, 10, 12],
        "itemsize": EVENT_RECORD_BYTES,
    }
)


@dataclass(frozen=True)
class Event:
    """A single DVS change event: pixel coordinates, microsecond timestamp, polarity bit."""

    t: int
    x: int
    y: int
    p: int

    def __post_init__(self) -> None:
        if not 0 <= self.t < 2**64:
            raise DataError(f"timestamp out of u64 range: {self.t}")
        if not 0 <= self.x < 2**16 or not 0 <= self.y < 2**16:
            raise DataError(f"coordinates out of u16 range: ({self.x}, {self.y})")
        if self.p not in (0, 1):
            raise DataError(f"polarity must be 0 or 1, got {self.p}")


@dataclass(frozen=True)
class SensorGeometry:
    """Pixel dimensions of the event sensor (reference dataset is 1280x720)."""

    width: int
    height: int

    def __post_init__(self) -> None:
        if self.width < 1 or self.height < 1:
            raise ParameterError(f"geometry must be at least 1x1, got {self.width}x{self.height}")


def empty_events() -> np.ndarray:
    return np.zeros(0, dtype=EVENT_DTYPE)


def make_events(t, x, y, p) -> np.ndarray:
    """Build an event array from per-field sequences; reserved bytes are zeroed."""
    t = np.asarray(t, dtype=np.uint64)
    out = np.zeros(len(t), dtype=EVENT_DTYPE)
    out["t"] = t
    out["x"] = np.asarray(x, dtype=np.uint16)
    out["y"] = np.asarray(y, dtype=np.uint16)
    out["p"] = np.asarray(p, dtype=np.uint8)
    if np.any(out["p"] > 1):
        raise DataError("polarity values must be 0 or 1")
    return out


def validate_events(events: np.ndarray, geometry: SensorGeometry | None = None) -> None:
    """Check polarity, geometry bounds, and timestamp monotonicity."""
    if events.dtype != EVENT_DTYPE:
        raise DataError(f"expected event dtype, got {events.dtype}")
    if len(events) == 0:
        return
    if np.any(events["p"] > 1):
        raise DataError("polarity values must be 0 or 1")
    if geometry is not None:
        if int(events["x"].max()) >= geometry.width or int(events["y"].max()) >= geometry.height:
            raise DataError("event coordinates exceed sensor geometry")
    t = events["t"]
    if np.any(t[1:] < t[:-1]):
        raise OrderingError("event timestamps are not non-decreasing")


@dataclass(eq=False)
class EventWindow:
    """All events of one fixed-length time interval, the unit of partitioning."""

    index: int
    start_t: int
    events: np.ndarray
    window_length: int = WINDOW_LENGTH_US

    def __post_init__(self) -> None:
        if self.index < 0 or self.window_length <= 0:
            raise ParameterError("window index must be >= 0 and length positive")
        if len(self.events):
            t = self.events["t"]
            if int(t[0]) < self.start_t or int(t[-1]) >= self.start_t + self.window_length:
                raise DataError(
                    f"window {self.index}: events outside [{self.start_t}, "
                    f"{self.start_t + self.window_length})"
                )
            if np.any(t[1:] < t[:-1]):
                raise OrderingError(f"window {self.index}: timestamps not non-decreasing")

    @property
    def end_t(self) -> int:
        return self.start_t + self.window_length

    @property
    def event_count(self) -> int:
        return len(self.events)


def window_split(events: np.ndarray, window_length: int = WINDOW_LENGTH_US) -> list[EventWindow]:
    """Partition a sorted event array into consecutive fixed-length windows.

    Windows are indexed 0 .. floor(max_t / window_length); windows with no
    events are materialized empty. Concatenating all windows reproduces the
    input exactly.
    """
    if window_length <= 0:
        raise ParameterError("window_length must be positive")
    t = events["t"]
    if len(t) and np.any(t[1:] < t[:-1]):
        raise OrderingError("event timestamps are not non-decreasing")
    if len(t) == 0:
        return []
    count = int(t[-1]) // window_length + 1
    edges = (np.arange(1, count + 1, dtype=np.uint64)) * np.uint64(window_length)
    ends = np.searchsorted(t, edges, side="left")
    starts = np.concatenate(([0], ends[:-1]))
    return [
        EventWindow(i, i * window_length, events[s:e], window_length)
        for i, (s, e) in enumerate(zip(starts, ends))
    ]


def window_concat(windows: list[EventWindow]) -> np.ndarray:
    """Inverse of window_split: concatenate window events into one array."""
    if not windows:
        return empty_events()
    return np.concatenate([w.events for w in windows])


def pad_windows(windows: list[EventWindow], total: int, window_length: int = WINDOW_LENGTH_US) -> list[EventWindow]:
    """Extend a window list with trailing empty windows up to `total` windows."""
    out = list(windows)
    for i in range(len(windows), total):
        out.append(EventWindow(i, i * window_length, empty_events(), window_length))
    return out


def replay_schedule(
    windows: list[EventWindow], session_start: int = 0
) -> list[tuple[int, EventWindow]]:
    """Send deadlines simulating a live camera: window i goes out at session_start + i*length."""
    for expect, w in enumerate(windows):
        if w.index != expect:
            raise ParameterError(f"windows must be consecutive from 0, got index {w.index} at position {expect}")
    return [(session_start + w.index * w.window_length, w) for w in windows]


def generate_synthetic(
    geometry: SensorGeometry,
    rate_profile,
    seed: int = 0,
    window_length: int = WINDOW_LENGTH_US,
    duration_us: int | None = None,
) -> np.ndarray:
    """Deterministic synthetic stream: per-window counts from rate_profile.

    Coordinates are uniform over the geometry, polarity is a fair bit, and
    timestamps are sorted within each window. If duration_us is given the
    profile is cycled to cover ceil(duration / window_length) windows.
    """
    profile = [int(c) for c in rate_profile]
    if any(c < 0 for c in profile):
        raise ParameterError("rate_profile counts must be non-negative")
    if duration_us is not None:
        if not profile:
            raise ParameterError("rate_profile must be non-empty when duration_us is given")
        n_windows = -(-duration_us // window_length)
        profile = [profile[i % len(profile)] for i in range(n_windows)]
    rng = np.random.default_rng(seed)
    chunks = []
    for i, count in enumerate(profile):
        if count == 0:
            continue
        ts = np.sort(rng.integers(0, window_length, count, dtype=np.uint64))
        ts += np.uint64(i * window_length)
        chunks.append(ts)
    if not chunks:
        return empty_events()
    t = np.concatenate(chunks)
    total = len(t)
    return make_events(
        t,
        rng.integers(0, geometry.width, total),
        rng.integers(0, geometry.height, total),
        rng.integers(0, 2, total),
    )


def constant_profile(n_windows: int, events_per_window: int) -> list[int]:
    return [events_per_window] * n_windows


def surge_profile(
    n_windows: int,
    base: int,
    spike_factor: int = 5,
    spike_start_frac: float = 1 / 3,
    spike_end_frac: float = 2 / 3,
) -> list[int]:
    """Low constant rate with a factor-N spike across the middle of the stream."""
    lo = int(n_windows * spike_start_frac)
    hi = int(n_windows * spike_end_frac)
    return [base * spike_factor if lo <= i < hi else base for i in range(n_windows)]
