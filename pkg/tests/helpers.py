"""Independent oracles shared by the test modules.

Everything here is deliberately written from scratch against the problem
statement (brute force, set intersection, flood fill) so that expected
values never come from the code paths under test.
"""

from __future__ import annotations

import random
from collections import deque

from trielect.configuration import Configuration, from_node_lists
from trielect.grid import Node

DIRS = ((1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1))


def neighbors6(node):
    q, r = node
    return [(q + dq, r + dr) for dq, dr in DIRS]


def brute_common_neighbors(a, b):
    """Intersection of the two six-neighbour sets."""
    return set(neighbors6(a)) & set(neighbors6(b))


def nodes_connected(nodes) -> bool:
    """BFS connectivity over a plain node set."""
    nodes = set(nodes)
    if not nodes:
        return True
    start = next(iter(nodes))
    seen = {start}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for nb in neighbors6(cur):
            if nb in nodes and nb not in seen:
                seen.add(nb)
                queue.append(nb)
    return len(seen) == len(nodes)


def enclosed_empty_nodes(occupied) -> set:
    """Flood fill from outside the bounding box; the enclosed leftovers."""
    occupied = set(occupied)
    if not occupied:
        return set()
    q_lo = min(q for q, _ in occupied) - 1
    q_hi = max(q for q, _ in occupied) + 1
    r_lo = min(r for _, r in occupied) - 1
    r_hi = max(r for _, r in occupied) + 1
    outside = {(q_lo, r_lo)}
    queue = deque(outside)
    while queue:
        cur = queue.popleft()
        for nb in neighbors6(cur):
            q, r = nb
            if q_lo <= q <= q_hi and r_lo <= r <= r_hi and nb not in occupied and nb not in outside:
                outside.add(nb)
                queue.append(nb)
    return {
        (q, r)
        for q in range(q_lo, q_hi + 1)
        for r in range(r_lo, r_hi + 1)
        if (q, r) not in occupied and (q, r) not in outside
    }


def config_of(*node_lists) -> Configuration:
    """Shorthand: config_of([(0,0)], [(1,0),(2,0)])."""
    return from_node_lists(node_lists)


def random_connected_config(seed: int, max_n: int = 12) -> Configuration:
    """Small random connected instance grown node by node (independent of
    the package's generator)."""
    rng = random.Random(seed)
    n = rng.randint(1, max_n)
    node_lists = []
    occupied = set()
    for i in range(n):
        if i == 0:
            anchor = (0, 0)
        else:
            frontier = sorted(
                {nb for node in occupied for nb in neighbors6(node)} - occupied
            )
            anchor = rng.choice(frontier)
        occupied.add(anchor)
        if rng.random() < 0.45:
            free = [nb for nb in sorted(neighbors6(anchor)) if nb not in occupied]
            if free:
                second = rng.choice(free)
                occupied.add(second)
                node_lists.append([anchor, second])
                continue
        node_lists.append([anchor])
    return from_node_lists(node_lists)


def translate_config(config: Configuration, dq: int, dr: int) -> Configuration:
    return config.translated(dq, dr)


def node(q, r) -> Node:
    return Node(q, r)
