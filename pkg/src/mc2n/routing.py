"""Spectrum-aware route-discovery analysis.

Each subcell hosting a secondary user is a transient state of an absorbing
Markov chain.  A hop succeeds toward the w-th ranked neighbor with
probability p_b * p * (1-p)^(w-1) * p_free: the channel pool must offer the
b requested channels, relays are checked nearest-to-destination first, and
the licensed owner must stay away for the hop.  Residual mass is a
transition to the absorbing no-route state; destination subcells collapse
into the single absorbing destination state.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from . import linalg
from .channel import ChannelStats
from .hexgrid import Grid, relay_priority

DESTINATION = "D"
NO_ROUTE = "nr"


class RouteModelError(ValueError):
    pass


def _normalize_dests(grid: Grid, dests) -> frozenset[int]:
    if dests is None:
        dests = grid.destinations
    dests = frozenset(int(d) for d in (dests if not isinstance(dests, int) else {dests}))
    if not dests:
        raise RouteModelError("destination set must not be empty")
    for d in dests:
        grid._check_index(d)
    return dests


def _relay_candidates(grid: Grid, cell: int, dests: frozenset[int]) -> tuple[int, ...]:
    # The base-station cell hosts no secondary user, so unless it is itself a
    # destination it cannot relay; the skipped direction folds into p_0.
    return tuple(n for n in relay_priority(grid, cell, dests)
                 if n != 0 or 0 in dests)


def transition_probabilities(grid: Grid, cell: int, dests, p: float, b: int,
                             stats: ChannelStats):
    """Per-hop transition law for one subcell.

    Returns ([(target, probability), ...] in priority order, p_0) where p_0
    is the no-route mass.  p = 0 is rejected: the chain would degenerate to
    immediate absorption everywhere.
    """
    if not 0.0 < p <= 1.0:
        raise RouteModelError("relay availability p must lie in (0, 1]")
    dests = _normalize_dests(grid, dests)
    if cell in dests or cell == 0:
        raise RouteModelError(f"cell {cell} is not a relaying source")
    phi = stats.p_channels(b) * stats.p_free_for(b)
    hops = []
    total = 0.0
    for rank, target in enumerate(_relay_candidates(grid, cell, dests), start=1):
        prob = phi * p * (1.0 - p) ** (rank - 1)
        hops.append((target, prob))
        total += prob
    return hops, 1.0 - total


@dataclass(frozen=True)
class RouteModel:
    grid: Grid
    dests: frozenset[int]
    p: float
    b: int
    transient: tuple[int, ...]          # subcell index per transient state
    Q: np.ndarray                       # transient -> transient
    R_abs: np.ndarray                   # transient -> [D, nr]
    fundamental: np.ndarray             # (I - Q)^-1
    tau: np.ndarray                     # expected hops to absorption
    E: np.ndarray                       # absorption split per start state
    dwell: float = 1.0

    @property
    def p_destination(self) -> np.ndarray:
        return self.E[:, 0]

    @property
    def p_no_route(self) -> np.ndarray:
        return self.E[:, 1]

    def state_of(self, cell: int) -> int:
        return self.transient.index(cell)


def build_route_model(grid: Grid, dests=None, *, p: float, b: int,
                      stats: ChannelStats, dwell: float = 1.0) -> RouteModel:
    """Assemble the absorbing chain and its closed-form summaries."""
    dests = _normalize_dests(grid, dests)
    transient = tuple(m for m in range(1, grid.n_subcells + 1) if m not in dests)
    if not transient:
        raise RouteModelError("no transient subcells: everything is a destination")
    pos = {cell: i for i, cell in enumerate(transient)}
    n = len(transient)
    Q = np.zeros((n, n))
    R_abs = np.zeros((n, 2))
    for i, cell in enumerate(transient):
        hops, p0 = transition_probabilities(grid, cell, dests, p, b, stats)
        for target, prob in hops:
            if target in dests:
                R_abs[i, 0] += prob
            else:
                Q[i, pos[target]] += prob
        R_abs[i, 1] = p0
    try:
        fundamental = linalg.invert(np.eye(n) - Q)
    except linalg.SingularMatrixError as exc:
        raise RouteModelError("chain is not absorbing: (I - Q) is singular") from exc
    tau = fundamental @ np.full(n, dwell)
    E = linalg.matmul(fundamental, R_abs)
    return RouteModel(grid=grid, dests=dests, p=p, b=b, transient=transient,
                      Q=Q, R_abs=R_abs, fundamental=fundamental, tau=tau, E=E,
                      dwell=dwell)


def expected_hops(model: RouteModel, dwell=None) -> np.ndarray:
    """Expected slots to absorption per start state (unit dwell = hop count)."""
    if dwell is None:
        return model.tau
    dwell = np.asarray(dwell, dtype=float)
    if dwell.ndim == 0:
        dwell = np.full(len(model.transient), float(dwell))
    if dwell.shape != (len(model.transient),):
        raise ValueError("dwell vector length must match transient state count")
    return model.fundamental @ dwell


def absorption(model: RouteModel, start_probs=None):
    """Absorption split E plus its average over the start distribution.

    `start_probs` defaults to uniform over the source subcells.
    """
    n = len(model.transient)
    if start_probs is None:
        f = np.full(n, 1.0 / n)
    else:
        f = np.asarray(start_probs, dtype=float)
        if f.shape != (n,) or np.any(f < 0) or abs(f.sum() - 1.0) > 1e-9:
            raise ValueError("start probabilities must form a distribution over start states")
    averages = f @ model.E
    return model.E, (float(averages[0]), float(averages[1]))


def multisession_adjust(p: float, lengths, n_subcells: int, *, mode: str = "contention",
                        own_index: int = 0, n_routes: int | None = None,
                        b: int | None = None) -> float:
    """Relay availability corrected for routes competing for the same subcell.

    contention mode (one usable channel per subcell): scale p by the chance
    that no other active route wants the subcell.  backup mode (b channels
    per subcell): scale by the chance that fewer than b of the n_routes
    competing routes land on it.
    """
    lengths = [float(l) for l in np.atleast_1d(lengths)]
    if any(l < 1 or l > n_subcells for l in lengths):
        raise ValueError("route lengths must lie in 1..n_subcells")
    if mode == "contention":
        factor = 1.0
        for j, length in enumerate(lengths):
            if j == own_index:
                continue
            factor *= 1.0 - (length - 1.0) / n_subcells
        return p * factor
    if mode == "backup":
        if b is None or b < 1:
            raise ValueError("backup mode needs the channel count b")
        m = n_routes if n_routes is not None else len(lengths)
        q = (float(np.mean(lengths)) - 1.0) / n_subcells
        if q > 1.0:
            raise ValueError("per-route demand probability exceeds 1")
        p_collision = sum(comb(m, i) * q ** i * (1.0 - q) ** (m - i)
                          for i in range(b, m + 1))
        return p * (1.0 - p_collision)
    raise ValueError(f"unknown multi-session mode: {mode!r}")


def simulate_walk(model: RouteModel, start: int, rng: np.random.Generator):
    """One trajectory sampled from the chain; returns (absorbing state, hops)."""
    i = model.state_of(start) if start in model.transient else None
    if i is None:
        raise ValueError(f"start cell {start} is not a transient state")
    hops = 0
    while True:
        row = np.concatenate([model.Q[i], model.R_abs[i]])
        nxt = int(rng.choice(len(row), p=row / row.sum()))
        hops += 1
        if nxt >= len(model.transient):
            return (DESTINATION if nxt == len(model.transient) else NO_ROUTE), hops
        i = nxt


def simulate_walks(model: RouteModel, n_walks: int, rng: np.random.Generator,
                   start_probs=None):
    """Monte Carlo oracle: empirical (mean hops, destination fraction).

    Walks advance in lockstep via inverse-CDF sampling on the full
    transition rows, so large batches stay cheap.
    """
    n = len(model.transient)
    if start_probs is None:
        starts = rng.integers(0, n, size=n_walks)
    else:
        starts = rng.choice(n, size=n_walks, p=np.asarray(start_probs, dtype=float))
    cdf = np.cumsum(np.hstack([model.Q, model.R_abs]), axis=1)
    cdf[:, -1] = 1.0
    state = starts.copy()
    alive = np.ones(n_walks, dtype=bool)
    hops = np.zeros(n_walks, dtype=np.int64)
    reached = np.zeros(n_walks, dtype=bool)
    while alive.any():
        idx = np.flatnonzero(alive)
        draws = rng.random(idx.size)
        nxt = (cdf[state[idx]] < draws[:, None]).sum(axis=1)
        hops[idx] += 1
        absorbed = nxt >= n
        reached[idx[absorbed & (nxt == n)]] = True
        alive[idx[absorbed]] = False
        state[idx[~absorbed]] = nxt[~absorbed]
    return float(hops.mean()), float(reached.mean())


def build_route_table(grid: Grid, dests, stats: ChannelStats,
                      p_values, b_values, dwell: float = 1.0):
    """Closed-form tau and destination-access tables over a (b, p) grid.

    Returns (TAU, PD) shaped (len(b_values), len(p_values), n_transient) plus
    the transient subcell tuple.  Row structure is shared across the grid, so
    only the geometric weights and the channel factor vary per point.
    """
    dests = _normalize_dests(grid, dests)
    transient = tuple(m for m in range(1, grid.n_subcells + 1) if m not in dests)
    pos = {cell: i for i, cell in enumerate(transient)}
    n = len(transient)
    rows, q_cols, d_rows, exps_q, exps_d = [], [], [], [], []
    for i, cell in enumerate(transient):
        for rank, target in enumerate(_relay_candidates(grid, cell, dests)):
            if target in dests:
                d_rows.append(i)
                exps_d.append(rank)
            else:
                rows.append(i)
                q_cols.append(pos[target])
                exps_q.append(rank)
    rows, q_cols = np.array(rows, dtype=int), np.array(q_cols, dtype=int)
    d_rows = np.array(d_rows, dtype=int)
    exps_q, exps_d = np.array(exps_q, dtype=float), np.array(exps_d, dtype=float)

    p_values = np.asarray(p_values, dtype=float)
    b_values = np.asarray(b_values, dtype=int)
    TAU = np.empty((len(b_values), len(p_values), n))
    PD = np.empty_like(TAU)
    ones = np.full(n, dwell)
    eye = np.eye(n)
    for pi, p in enumerate(p_values):
        wq = p * (1.0 - p) ** exps_q
        wd = p * (1.0 - p) ** exps_d
        base_q = np.zeros((n, n))
        base_q[rows, q_cols] = wq
        base_d = np.zeros(n)
        np.add.at(base_d, d_rows, wd)
        for bi, b in enumerate(b_values):
            phi = stats.p_channels(int(b)) * stats.p_free_for(int(b))
            fundamental = linalg.invert(eye - phi * base_q)
            TAU[bi, pi] = fundamental @ ones
            PD[bi, pi] = fundamental @ (phi * base_d)
    return TAU, PD, transient
