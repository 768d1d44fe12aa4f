"""Link SINR and route capacity.

Capacity uses base-2 logs throughout (bits/s/Hz).  Interference follows the
worst-case estimate every bidder shares: one co-slot transmitter per reuse
cluster, split evenly over the purchased channels, located at the true
co-slot subcell positions closest to the receiver.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .hexgrid import Grid

LOG_BASE = 2.0


@dataclass(frozen=True)
class RadioConfig:
    power: float            # transmit power, watts
    path_loss_exp: float    # gain model d^-alpha
    noise: float            # receiver noise power, watts

    def __post_init__(self):
        if self.power <= 0:
            raise ValueError("transmit power must be positive")
        if self.path_loss_exp < 2:
            raise ValueError("path loss exponent must be >= 2")
        if self.noise <= 0:
            raise ValueError("noise power must be positive")


def sinr(cfg: RadioConfig, distance: float, interferer_distances=()) -> float:
    """Signal to interference-plus-noise ratio for one link."""
    if distance <= 0 or any(d <= 0 for d in interferer_distances):
        raise ValueError("distances must be positive")
    signal = cfg.power * distance ** (-cfg.path_loss_exp)
    interference = sum(cfg.power * d ** (-cfg.path_loss_exp) for d in interferer_distances)
    return signal / (interference + cfg.noise)


def worst_case_interferers(grid: Grid, b: int) -> list[float]:
    """Distances of the co-channel interferers assumed by every bidder.

    ceil(N/K) co-slot users split over b channels leaves
    ceil(ceil(N/K) / b) same-channel transmitters; they sit at the co-slot
    subcells nearest the receiving end of the reference first-ring hop.
    """
    if b < 1:
        raise ValueError("channel count must be >= 1")
    co_slot_users = math.ceil(grid.n_subcells / grid.reuse)
    per_channel = math.ceil(co_slot_users / b)
    reference = grid.subcell(1)
    # Receiver of the reference hop is the cell center (base station).
    distances = sorted(
        math.hypot(c.x, c.y)
        for c in grid.subcells
        if c.color == reference.color and c.index != reference.index
    )
    return distances[:per_channel]


def route_capacity(link_sinrs, b: int) -> tuple[float, float]:
    """Bottleneck route capacity and its per-channel efficiency c_R / b."""
    link_sinrs = list(link_sinrs)
    if not link_sinrs:
        raise ValueError("route has no links")
    if b < 1:
        raise ValueError("channel count must be >= 1")
    c_route = min(math.log(1.0 + s, LOG_BASE) for s in link_sinrs)
    return c_route, c_route / b


def effective_capacity(p_destination: float, capacity_per_channel: float) -> float:
    """Capacity discounted by the probability of actually reaching the destination."""
    if not 0.0 <= p_destination <= 1.0:
        raise ValueError("destination probability must lie in [0, 1]")
    return p_destination * capacity_per_channel


def representative_efficiency(grid: Grid, cfg: RadioConfig, b: int) -> float:
    """Per-channel capacity of the symmetric representative hop.

    All sources estimate capacity identically (same hop length, same
    worst-case interferers), so one value per b serves every bidder.
    """
    hop_sinr = sinr(cfg, grid.relay_distance, worst_case_interferers(grid, b))
    _, per_channel = route_capacity([hop_sinr], b)
    return per_channel
