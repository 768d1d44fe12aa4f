"""Hexagonal subcell tessellation of a macrocell.

The macrocell is tiled with hexagonal subcells arranged in rings around the
base station (ring 0).  Subcells carry a slot color from a K-reuse pattern so
that co-slot transmitters stay far apart, and every subcell knows a
destination-directed priority order over its neighbors, which drives the
relay-selection protocol.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

SQRT3 = math.sqrt(3.0)

# Axial direction cycle (flat-top orientation): E, NE, NW, W, SW, SE.
# The cycle position defines deterministic tie-breaking everywhere.
DIRECTIONS = ((1, 0), (1, -1), (0, -1), (-1, 0), (-1, 1), (0, 1))


@dataclass(frozen=True)
class Subcell:
    index: int
    q: int
    r_ax: int
    ring: int
    color: int
    x: float
    y: float


@dataclass(frozen=True)
class Grid:
    rings: int
    radius: float
    reuse: int
    subcells: tuple[Subcell, ...]
    destinations: frozenset[int] = frozenset({0})
    _coord_index: dict = field(repr=False, hash=False, compare=False, default_factory=dict)
    _adjacency: tuple = field(repr=False, hash=False, compare=False, default=())

    @property
    def n_subcells(self) -> int:
        """Non-center subcell count, 3*H*(H+1)."""
        return len(self.subcells) - 1

    @property
    def relay_distance(self) -> float:
        return SQRT3 * self.radius

    @property
    def macro_radius(self) -> float:
        # Documentary: distance covering the outermost subcell.
        return self.rings * self.relay_distance + self.radius

    def subcell(self, index: int) -> Subcell:
        self._check_index(index)
        return self.subcells[index]

    def neighbors(self, index: int) -> tuple[int, ...]:
        """Adjacent subcell indices in fixed direction-cycle order."""
        self._check_index(index)
        return self._adjacency[index]

    def distance(self, a: int, b: int) -> float:
        """Euclidean distance between two subcell centers, meters."""
        ca, cb = self.subcell(a), self.subcell(b)
        return math.hypot(ca.x - cb.x, ca.y - cb.y)

    def ring_members(self, ring: int) -> tuple[int, ...]:
        return tuple(c.index for c in self.subcells if c.ring == ring)

    def color_class(self, color: int) -> tuple[int, ...]:
        return tuple(c.index for c in self.subcells if c.color == color)

    def with_destinations(self, destinations) -> "Grid":
        dests = frozenset(int(d) for d in destinations)
        for d in dests:
            self._check_index(d)
        if not dests:
            raise ValueError("destination set must not be empty")
        return replace(self, destinations=dests)

    def _check_index(self, index: int) -> None:
        if not 0 <= index < len(self.subcells):
            raise IndexError(f"subcell index {index} out of range 0..{len(self.subcells) - 1}")


def axial_to_xy(q: int, r_ax: int, radius: float) -> tuple[float, float]:
    """Flat-top axial coordinates to cartesian center position."""
    x = 1.5 * radius * q
    y = SQRT3 * radius * (r_ax + 0.5 * q)
    return x, y


def hex_norm2(q: int, r_ax: int) -> int:
    # Squared center distance in units of sqrt(3)*radius.
    return q * q + q * r_ax + r_ax * r_ax


def ring_index(q: int, r_ax: int) -> int:
    return (abs(q) + abs(r_ax) + abs(q + r_ax)) // 2


def cluster_shift(reuse: int) -> tuple[int, int]:
    """Shift parameters (i, j), i^2 + i*j + j^2 = K, defining the reuse lattice.

    Only coprime shifts produce a proper coloring (every neighbor pair
    differs); K = 7 yields (2, 1).
    """
    for i in range(1, int(math.isqrt(reuse)) + 1):
        for j in range(1, i + 1):
            if i * i + i * j + j * j == reuse and math.gcd(i, j) == 1:
                return i, j
    raise ValueError(f"reuse factor {reuse} admits no valid hexagonal cluster shift")


def _reuse_lattice(reuse: int) -> tuple[tuple[int, int], tuple[int, int]]:
    i, j = cluster_shift(reuse)
    t1 = (i + j, -j)                      # i steps E then j steps NE
    t2 = (t1[0] + t1[1], -t1[0])          # t1 rotated 60 degrees
    return t1, t2


def _canonical_coset(q: int, r_ax: int, t1, t2, span: int) -> tuple[int, int]:
    # Smallest equivalent point modulo the reuse lattice; total order on
    # (norm, q, r) makes the representative unique.
    best = None
    for a in range(-span, span + 1):
        for b in range(-span, span + 1):
            cq = q - a * t1[0] - b * t2[0]
            cr = r_ax - a * t1[1] - b * t2[1]
            key = (hex_norm2(cq, cr), cq, cr)
            if best is None or key < best:
                best = key
    return best[1], best[2]


def reuse_coloring(cells: list[tuple[int, int]], reuse: int) -> list[int]:
    """Slot colors 1..K for axial cells under the K-reuse cluster pattern.

    Cells are equivalent (same color) exactly when they differ by a reuse
    lattice vector, so co-slot centers sit at distance sqrt(3*K)*radius.
    """
    t1, t2 = _reuse_lattice(reuse)
    span = max(ring_index(q, r) for q, r in cells) // 2 + 2 if cells else 2
    # Enumerate all K coset representatives from a patch around the origin.
    reps = set()
    probe = int(math.isqrt(reuse)) + 2
    for q in range(-probe, probe + 1):
        for r_ax in range(-probe, probe + 1):
            reps.add(_canonical_coset(q, r_ax, t1, t2, probe + 2))
    if len(reps) != reuse:
        raise ValueError(f"reuse factor {reuse} produced {len(reps)} cosets, expected {reuse}")
    order = {rep: k + 1 for k, rep in enumerate(sorted(reps, key=lambda p: (hex_norm2(*p), p)))}
    return [order[_canonical_coset(q, r_ax, t1, t2, span)] for q, r_ax in cells]


def _enumerate_rings(rings: int) -> list[tuple[int, int]]:
    cells = [(0, 0)]
    # Walk each ring from its east corner; legs follow the direction cycle
    # rotated so the walk closes on itself.
    legs = (2, 3, 4, 5, 0, 1)
    for h in range(1, rings + 1):
        q, r_ax = h, 0
        for leg in legs:
            dq, dr = DIRECTIONS[leg]
            for _ in range(h):
                cells.append((q, r_ax))
                q, r_ax = q + dq, r_ax + dr
    return cells


def build_grid(rings: int, radius: float, reuse: int = 7) -> Grid:
    """Construct the tessellation with ring-ordered indices and slot colors.

    Ring h contributes 6h subcells; index 0 is the base-station cell at the
    center and indices 1.. follow ring order.
    """
    if rings < 1:
        raise ValueError("ring count must be >= 1")
    if radius <= 0:
        raise ValueError("subcell radius must be positive")
    coords = _enumerate_rings(rings)
    colors = reuse_coloring(coords, reuse)
    subcells = tuple(
        Subcell(index=i, q=q, r_ax=r_ax, ring=ring_index(q, r_ax), color=colors[i],
                x=axial_to_xy(q, r_ax, radius)[0], y=axial_to_xy(q, r_ax, radius)[1])
        for i, (q, r_ax) in enumerate(coords)
    )
    coord_index = {(c.q, c.r_ax): c.index for c in subcells}
    adjacency = tuple(
        tuple(coord_index[(c.q + dq, c.r_ax + dr)]
              for dq, dr in DIRECTIONS if (c.q + dq, c.r_ax + dr) in coord_index)
        for c in subcells
    )
    return Grid(rings=rings, radius=radius, reuse=reuse, subcells=subcells,
                _coord_index=coord_index, _adjacency=adjacency)


def neighbors(grid: Grid, index: int) -> tuple[int, ...]:
    return grid.neighbors(index)


def relay_priority(grid: Grid, source: int, dest) -> tuple[int, ...]:
    """Existing neighbors of `source` ordered nearest-to-destination first.

    `dest` may be a subcell index or a set of indices (multiple destination
    users); for a set the distance to the closest destination decides.  Ties
    fall back on the direction-cycle position, so the permutation is
    deterministic.  Boundary cells simply return fewer entries.
    """
    dests = {dest} if isinstance(dest, int) else set(dest)
    if not dests:
        raise ValueError("destination set must not be empty")
    for d in dests:
        grid._check_index(d)
    if source in dests:
        raise ValueError("source coincides with a destination")
    ranked = sorted(
        enumerate(grid.neighbors(source)),
        key=lambda kv: (min(grid.distance(kv[1], d) for d in dests), kv[0]),
    )
    return tuple(idx for _, idx in ranked)
