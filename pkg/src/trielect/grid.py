"""Geometry of the infinite triangular grid.

Nodes are addressed by axial coordinates (q, r): q counts steps along
direction 0, r counts rows, and larger r lies lower on the canvas. The six
direction vectors are global, shared by every particle; there is no
per-particle frame. Directions 1 and 2 point into the row below, 4 and 5
into the row above, 0 and 3 stay in the row. The north-west to south-east
diagonals of the lattice are exactly the sets of constant q, which keeps
boundary arithmetic in whole numbers.
"""

from __future__ import annotations

import math
from enum import IntEnum
from typing import NamedTuple, Optional


class Node(NamedTuple):
    """A grid node in axial coordinates."""

    q: int
    r: int


#: Direction vectors indexed 0..5, one sixth of a turn apart.
DIRECTIONS: tuple[Node, ...] = (
    Node(1, 0),   # 0: right
    Node(0, 1),   # 1: down-right
    Node(-1, 1),  # 2: down-left
    Node(-1, 0),  # 3: left
    Node(0, -1),  # 4: up-left
    Node(1, -1),  # 5: up-right
)

N_DIRECTIONS = 6

LOWER_DIRS = (1, 2)
UPPER_DIRS = (4, 5)
HORIZONTAL_DIRS = (0, 3)


class Axis(IntEnum):
    """Orientation class of a pair of adjacent nodes.

    The value doubles as the direction from the normalized lower-or-rightmost
    endpoint's partner (the tail) to that endpoint (the head): horizontal
    pairs point along direction 0, the two diagonal classes along 1 and 2.
    """

    HORIZONTAL = 0
    DIAG_SE = 1
    DIAG_SW = 2


def neighbor(node: Node, direction: int) -> Node:
    """Node one step from ``node`` in ``direction`` (0..5)."""
    d = DIRECTIONS[direction]
    return Node(node.q + d.q, node.r + d.r)


def neighbors(node: Node) -> tuple[Node, ...]:
    """All six adjacent nodes, in direction order."""
    return tuple(Node(node.q + d.q, node.r + d.r) for d in DIRECTIONS)


def opposite(direction: int) -> int:
    return (direction + 3) % 6


def is_lower(direction: int) -> bool:
    return direction in LOWER_DIRS


def is_upper(direction: int) -> bool:
    return direction in UPPER_DIRS


def is_horizontal(direction: int) -> bool:
    return direction in HORIZONTAL_DIRS


def direction_between(a: Node, b: Node) -> Optional[int]:
    """Direction d with neighbor(a, d) == b, or None if not adjacent."""
    dq, dr = b.q - a.q, b.r - a.r
    for d, vec in enumerate(DIRECTIONS):
        if vec.q == dq and vec.r == dr:
            return d
    return None


def are_adjacent(a: Node, b: Node) -> bool:
    return direction_between(a, b) is not None


def axis_of(a: Node, b: Node) -> Axis:
    """Orientation class of the adjacent pair (a, b).

    Raises ValueError when the nodes are not adjacent.
    """
    d = direction_between(a, b)
    if d is None:
        raise ValueError(f"nodes {a} and {b} are not adjacent")
    return Axis(d % 3)


def common_neighbors(a: Node, b: Node) -> tuple[Node, Node]:
    """The two nodes adjacent to both endpoints of an adjacent pair.

    The result is ordered with the lower node (larger r) first; the two
    common neighbours of an adjacent pair never share a row, so "lower"
    and "higher" are always unambiguous.
    """
    d = direction_between(a, b)
    if d is None:
        raise ValueError(f"nodes {a} and {b} are not adjacent")
    first = neighbor(a, (d + 1) % 6)
    second = neighbor(a, (d - 1) % 6)
    if first.r == second.r:  # pragma: no cover - geometrically impossible
        raise AssertionError("common neighbours sharing a row")
    return (first, second) if first.r > second.r else (second, first)


def lower_common_neighbor(a: Node, b: Node) -> Node:
    return common_neighbors(a, b)[0]


def higher_common_neighbor(a: Node, b: Node) -> Node:
    return common_neighbors(a, b)[1]


def lattice_distance(a: Node, b: Node) -> int:
    """Length of a shortest grid path between two nodes."""
    dq, dr = b.q - a.q, b.r - a.r
    return (abs(dq) + abs(dr) + abs(dq + dr)) // 2


def to_cartesian(node: Node) -> tuple[float, float]:
    """Drawing position: x = q + r/2, y = r * sqrt(3)/2 (y grows downward)."""
    return node.q + node.r / 2.0, node.r * (math.sqrt(3) / 2.0)
