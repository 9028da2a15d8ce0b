"""Particle systems on the grid.

A configuration is a set of particles, each occupying one node (contracted)
or two adjacent nodes (expanded), with no node shared between particles.
Particle ids are bookkeeping for the harness only: the movement rules never
read them. Configurations are immutable values; moves build new ones.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .grid import Node, are_adjacent, neighbors

NodeLike = Sequence[int]


class ConfigError(ValueError):
    """Raised for malformed or inconsistent configuration input."""


class Boundaries(NamedTuple):
    """Frozen extremes of an execution: lowest row and rightmost diagonal."""

    r_max: int
    q_max: int


@dataclass(frozen=True)
class Particle:
    pid: int
    nodes: tuple[Node, ...]

    @property
    def expanded(self) -> bool:
        return len(self.nodes) == 2

    @property
    def contracted(self) -> bool:
        return len(self.nodes) == 1


class Configuration:
    """Immutable global occupancy of a particle system."""

    __slots__ = ("particles", "occupancy")

    def __init__(self, particles: Iterable[Particle]):
        parts = tuple(particles)
        occupancy: dict[Node, int] = {}
        for p in parts:
            if len(p.nodes) not in (1, 2):
                raise ConfigError(f"particle {p.pid}: must occupy 1 or 2 nodes")
            if len(p.nodes) == 2 and not are_adjacent(p.nodes[0], p.nodes[1]):
                raise ConfigError(
                    f"particle {p.pid}: expanded nodes {tuple(p.nodes[0])} and "
                    f"{tuple(p.nodes[1])} are not adjacent"
                )
            for node in p.nodes:
                if node in occupancy:
                    raise ConfigError(
                        f"particle {p.pid}: node {tuple(node)} already occupied "
                        f"by particle {occupancy[node]}"
                    )
                occupancy[node] = p.pid
        object.__setattr__(self, "particles", parts)
        object.__setattr__(self, "occupancy", occupancy)

    def __setattr__(self, name, value):  # noqa: D105
        raise AttributeError("Configuration is immutable")

    def __len__(self) -> int:
        return len(self.particles)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Configuration):
            return NotImplemented
        return self.particles == other.particles

    def __hash__(self) -> int:
        return hash(self.particles)

    def __repr__(self) -> str:
        return f"Configuration({len(self.particles)} particles)"

    def particle(self, pid: int) -> Particle:
        for p in self.particles:
            if p.pid == pid:
                return p
        raise KeyError(f"unknown particle id {pid}")

    def pids(self) -> list[int]:
        return [p.pid for p in self.particles]

    def nodes(self) -> list[Node]:
        return list(self.occupancy)

    def with_nodes(self, pid: int, new_nodes: tuple[Node, ...]) -> "Configuration":
        """Copy of this configuration with one particle relocated."""
        return Configuration(
            Particle(p.pid, new_nodes) if p.pid == pid else p
            for p in self.particles
        )

    def translated(self, dq: int, dr: int) -> "Configuration":
        return Configuration(
            Particle(p.pid, tuple(Node(n.q + dq, n.r + dr) for n in p.nodes))
            for p in self.particles
        )


def from_node_lists(node_lists: Iterable[Sequence[NodeLike]]) -> Configuration:
    """Build a configuration from bare node lists, assigning pids in order."""
    particles = []
    for pid, nodes in enumerate(node_lists):
        particles.append(Particle(pid, tuple(Node(int(q), int(r)) for q, r in nodes)))
    return Configuration(particles)


def parse_config(text: str) -> Configuration:
    """Parse the JSON configuration format.

    Format: ``{"particles": [{"nodes": [[q, r]]}, {"nodes": [[q1, r1], [q2, r2]]}]}``
    with one node for a contracted particle and two adjacent nodes for an
    expanded one. Particle ids are assigned in file order.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict) or "particles" not in data:
        raise ConfigError('top-level object must contain a "particles" list')
    raw = data["particles"]
    if not isinstance(raw, list):
        raise ConfigError('"particles" must be a list')
    node_lists = []
    for i, entry in enumerate(raw):
        if not isinstance(entry, dict) or "nodes" not in entry:
            raise ConfigError(f'particle {i}: missing "nodes"')
        nodes = entry["nodes"]
        if (
            not isinstance(nodes, list)
            or not nodes
            or len(nodes) > 2
            or any(
                not isinstance(n, list) or len(n) != 2
                or not all(isinstance(c, int) and not isinstance(c, bool) for c in n)
                for n in nodes
            )
        ):
            raise ConfigError(
                f"particle {i}: nodes must be one or two [q, r] integer pairs"
            )
        node_lists.append(nodes)
    return from_node_lists(node_lists)


def _particle_sort_key(p: Particle):
    smallest = min((n.r, n.q) for n in p.nodes)
    return smallest, sorted((n.r, n.q) for n in p.nodes)


def serialize(config: Configuration) -> str:
    """Canonical JSON form: particles sorted by their smallest (r, q) node.

    Parsing the output reproduces the same occupancy up to pid relabeling,
    and configurations equal up to particle order serialize identically.
    """
    ordered = sorted(config.particles, key=_particle_sort_key)
    parts = []
    for p in ordered:
        nodes = sorted(p.nodes, key=lambda n: (n.r, n.q))
        parts.append({"nodes": [[n.q, n.r] for n in nodes]})
    return json.dumps({"particles": parts}, separators=(", ", ": "))


def is_connected(config: Configuration) -> bool:
    """True when the occupied nodes induce one connected grid component."""
    occupied = config.occupancy
    if not occupied:
        return True
    start = next(iter(occupied))
    seen = {start}
    stack = [start]
    while stack:
        node = stack.pop()
        for nb in neighbors(node):
            if nb in occupied and nb not in seen:
                seen.add(nb)
                stack.append(nb)
    return len(seen) == len(occupied)


def boundaries(config: Configuration) -> Boundaries:
    """Lowest occupied row and rightmost occupied diagonal.

    Computed once at execution start and then frozen: later moves never
    step past either extreme, so freezing keeps the progress measure
    monotone.
    """
    if not config.particles:
        raise ConfigError("boundaries of an empty configuration are undefined")
    occupied = config.occupancy
    return Boundaries(
        r_max=max(n.r for n in occupied),
        q_max=max(n.q for n in occupied),
    )


def find_holes(config: Configuration) -> set[Node]:
    """Empty nodes fully enclosed by the configuration.

    Flood-fills the empty nodes of a one-node margin around the bounding
    box from the outside; enclosed nodes are the empty ones never reached.
    """
    occupied = config.occupancy
    if not occupied:
        return set()
    q_lo = min(n.q for n in occupied) - 1
    q_hi = max(n.q for n in occupied) + 1
    r_lo = min(n.r for n in occupied) - 1
    r_hi = max(n.r for n in occupied) + 1

    def inside(n: Node) -> bool:
        return q_lo <= n.q <= q_hi and r_lo <= n.r <= r_hi

    start = Node(q_lo, r_lo)
    reached = {start}
    stack = [start]
    while stack:
        node = stack.pop()
        for nb in neighbors(node):
            if inside(nb) and nb not in occupied and nb not in reached:
                reached.add(nb)
                stack.append(nb)
    holes = set()
    for q in range(q_lo, q_hi + 1):
        for r in range(r_lo, r_hi + 1):
            n = Node(q, r)
            if n not in occupied and n not in reached:
                holes.add(n)
    return holes


def generate_random(
    n: int,
    expanded_fraction: float = 0.0,
    hole_bias: float = 0.0,
    seed: int = 0,
) -> Configuration:
    """Seeded generator of connected instances.

    Grows a connected blob of n nodes (one per particle), carves fully
    enclosed interior nodes out of it (each carved cell becomes a hole;
    removing a node whose six neighbours are all occupied can never
    disconnect the rest), then expands roughly ``expanded_fraction`` of the
    particles into free adjacent nodes, never into a node that would fill a
    hole. ``hole_bias`` scales how compact the blob grows and how many
    interior nodes are carved. Identical arguments give identical
    configurations.
    """
    if n < 1:
        raise ConfigError("need at least one particle")
    rng = random.Random(
        repr((seed, n, round(expanded_fraction * 1000), round(hole_bias * 1000)))
    )

    expanded_target = round(n * expanded_fraction)
    carve_target = 0
    if hole_bias > 0 and n >= 7:
        carve_target = max(1, round(hole_bias * n / 5))

    # Compact random growth: weighting frontier nodes by their occupied
    # neighbour count produces interior nodes for the carving step.
    blob: set[Node] = {Node(0, 0)}
    while len(blob) < n:
        frontier = sorted(
            {nb for node in blob for nb in neighbors(node) if nb not in blob}
        )
        weights = [
            (1.0 + 2.0 * hole_bias) ** sum(nb in blob for nb in neighbors(c))
            for c in frontier
        ]
        blob.add(rng.choices(frontier, weights)[0])

    # Carve a hole, regrow one node on the outside, repeat: the size stays
    # at n throughout. Regrowth candidates must have an empty neighbour of
    # their own, which rules out the freshly carved cells.
    for _ in range(carve_target):
        interior = sorted(
            node for node in blob if all(nb in blob for nb in neighbors(node))
        )
        if not interior:
            break
        blob.remove(rng.choice(interior))
        frontier = sorted(
            {
                nb
                for node in blob
                for nb in neighbors(node)
                if nb not in blob
                and any(other not in blob for other in neighbors(nb))
            }
        )
        blob.add(rng.choice(frontier))

    # One particle per node; expand a subset into free adjacent nodes. The
    # same no-enclosed-target rule keeps expansions from sealing a hole
    # back up, and falling short of the target is fine: the fraction is
    # approximate by contract.
    node_lists: list[tuple[Node, ...]] = [(node,) for node in sorted(blob)]
    rng.shuffle(node_lists)
    occupied = set(blob)
    expanded_done = 0
    for i, (anchor,) in enumerate(list(node_lists)):
        if expanded_done >= expanded_target:
            break
        targets = [
            nb
            for nb in sorted(neighbors(anchor))
            if nb not in occupied
            and any(other not in occupied for other in neighbors(nb))
        ]
        if not targets:
            continue
        mate = rng.choice(targets)
        occupied.add(mate)
        node_lists[i] = (anchor, mate)
        expanded_done += 1

    return from_node_lists(node_lists)
