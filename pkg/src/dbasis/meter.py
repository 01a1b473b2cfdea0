"""Logical retained-storage accounting.

Instrumented code calls :meth:`Meter.charge` when it starts holding data and
:meth:`Meter.release` when it lets go.  One unit is one index word.  The
counts are deterministic, unlike allocator-level heap profiles.
"""

from __future__ import annotations


class Meter:
    __slots__ = ("current", "peak", "labels", "label_peaks")

    def __init__(self) -> None:
        self.current = 0
        self.peak = 0
        self.labels: dict[str, int] = {}
        self.label_peaks: dict[str, int] = {}

    def charge(self, units: int, label: str | None = None) -> None:
        self.current += units
        if self.current > self.peak:
            self.peak = self.current
        if label is not None:
            now = self.labels.get(label, 0) + units
            self.labels[label] = now
            if now > self.label_peaks.get(label, 0):
                self.label_peaks[label] = now

    def release(self, units: int, label: str | None = None) -> None:
        self.current -= units
        if label is not None:
            self.labels[label] = self.labels.get(label, 0) - units

    def __repr__(self) -> str:
        return f"Meter(current={self.current}, peak={self.peak})"
