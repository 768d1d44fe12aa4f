"""Licensed-user activity model.

Treats the c-channel pool as a truncated birth/death (loss) system, giving
the probability p_b that a secondary user finds b channels idle, and a
per-hop return probability for the licensed user that owns a channel.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


def steady_state(channels: int, load: float) -> np.ndarray:
    """Stationary occupancy distribution of the c-channel loss system.

    Entry j is the long-run probability that exactly j channels carry
    licensed traffic under offered load `load` (erlangs).
    """
    if channels < 1:
        raise ValueError("channel count must be >= 1")
    if load < 0:
        raise ValueError("offered load must be nonnegative")
    if load == 0.0:
        pi = np.zeros(channels + 1)
        pi[0] = 1.0
        return pi
    j = np.arange(channels + 1)
    log_w = j * math.log(load) - np.array([math.lgamma(k + 1) for k in j])
    w = np.exp(log_w - log_w.max())
    return w / w.sum()


def p_available(occupancy: np.ndarray, requested: int) -> float:
    """Probability that at least `requested` channels are idle."""
    c = len(occupancy) - 1
    if not 1 <= requested <= c:
        raise ValueError(f"requested channels {requested} outside 1..{c}")
    return float(occupancy[: c - requested + 1].sum())


def return_probability(mode: str, value: float | None = None,
                       arrival_rate: float | None = None,
                       dwell: float | None = None) -> float:
    """Per-hop probability that a licensed user reclaims the channel.

    "fixed" passes `value` through; "exponential" models memoryless returns
    at `arrival_rate` over one hop of duration `dwell`.
    """
    if mode == "fixed":
        if value is None or not 0.0 <= value <= 1.0:
            raise ValueError("fixed mode needs a value in [0, 1]")
        return float(value)
    if mode == "exponential":
        if arrival_rate is None or arrival_rate < 0:
            raise ValueError("exponential mode needs arrival_rate >= 0")
        if dwell is None or dwell <= 0:
            raise ValueError("exponential mode needs dwell > 0")
        return 1.0 - math.exp(-arrival_rate * dwell)
    raise ValueError(f"unknown return probability mode: {mode!r}")


def backup_free_probabilities(p_return: float, max_request: int) -> np.ndarray:
    """Per-request-size survival table: a hop fails only if the licensed
    user returns on all b purchased channels."""
    if not 0.0 <= p_return <= 1.0:
        raise ValueError("p_return must lie in [0, 1]")
    b = np.arange(1, max_request + 1)
    return 1.0 - p_return ** b


@dataclass(frozen=True)
class ChannelStats:
    """Availability statistics consumed by routing and pricing.

    One scalar return probability describes every channel (all channels
    equally desirable); `free_table` optionally carries a per-b override.
    """
    total: int
    pu_occupied: int
    load: float
    p_return: float
    occupancy: np.ndarray
    availability: np.ndarray   # p_b for b = 1..total-pu_occupied
    free_table: np.ndarray     # p_free per b, same length

    @property
    def max_request(self) -> int:
        return self.total - self.pu_occupied

    @property
    def p_free(self) -> float:
        return 1.0 - self.p_return

    def p_channels(self, b: int) -> float:
        self._check_b(b)
        return float(self.availability[b - 1])

    def p_free_for(self, b: int) -> float:
        self._check_b(b)
        return float(self.free_table[b - 1])

    def _check_b(self, b: int) -> None:
        if not 1 <= b <= self.max_request:
            raise ValueError(f"requested channels {b} outside 1..{self.max_request}")


def build_channel_stats(total: int, pu_occupied: int, load: float,
                        p_return: float, free_table: np.ndarray | None = None) -> ChannelStats:
    if not 0 <= pu_occupied < total:
        raise ValueError("occupied channels must lie in 0..total-1")
    if not 0.0 <= p_return <= 1.0:
        raise ValueError("p_return must lie in [0, 1]")
    occupancy = steady_state(total, load)
    max_request = total - pu_occupied
    availability = np.array([p_available(occupancy, b) for b in range(1, max_request + 1)])
    if free_table is None:
        free_table = np.full(max_request, 1.0 - p_return)
    else:
        free_table = np.asarray(free_table, dtype=float)
        if free_table.shape != (max_request,):
            raise ValueError(f"free table must have length {max_request}")
        if np.any((free_table < 0) | (free_table > 1)):
            raise ValueError("free table entries must lie in [0, 1]")
    return ChannelStats(total=total, pu_occupied=pu_occupied, load=load,
                        p_return=p_return, occupancy=occupancy,
                        availability=availability, free_table=free_table)
