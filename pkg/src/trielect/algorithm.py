"""The movement rule set: local sensing and the six numbered conditions.

A particle senses only which nodes around it are occupied, plus — for
adjacent occupied node pairs fully inside its view — whether those two
nodes belong to one expanded particle. Decisions are a pure function of
that local view: identical views produce identical moves no matter where
the particle sits, which is what makes the particles oblivious.

Expanded particles are re-oriented on every activation: the head is the
lower endpoint, or the rightmost one when both endpoints share a row. In
normalized form the head always lies at direction ``axis`` from the tail,
so the tail is the natural anchor for relative offsets.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .configuration import Configuration, Particle
from .grid import (
    DIRECTIONS,
    Axis,
    Node,
    are_adjacent,
    neighbors,
)


class Cond(Enum):
    """Identifier of the condition that triggers a move."""

    E1 = "E1"
    E2 = "E2"
    E3 = "E3"
    E4 = "E4"
    C1 = "C1"
    C2 = "C2"


EXPANDED_CONDS = (Cond.E1, Cond.E2, Cond.E3, Cond.E4)
CONTRACTED_CONDS = (Cond.C1, Cond.C2)

ORIGIN = Node(0, 0)

#: Head offset from the tail for each orientation class.
HEAD_OFFSET: dict[Axis, Node] = {axis: DIRECTIONS[axis] for axis in Axis}

#: Lower and higher common neighbours of tail and head, tail-relative.
LOWER_COMMON: dict[Axis, Node] = {
    Axis.HORIZONTAL: DIRECTIONS[1],
    Axis.DIAG_SE: DIRECTIONS[2],
    Axis.DIAG_SW: DIRECTIONS[1],
}
HIGHER_COMMON: dict[Axis, Node] = {
    Axis.HORIZONTAL: DIRECTIONS[5],
    Axis.DIAG_SE: DIRECTIONS[0],
    Axis.DIAG_SW: DIRECTIONS[3],
}

#: The horizontal node pair directly above the tail, tail-relative.
PAIR_ABOVE_TAIL: tuple[Node, Node] = (DIRECTIONS[4], DIRECTIONS[5])


def _external_offsets(axis: Axis) -> tuple[Node, ...]:
    head = HEAD_OFFSET[axis]
    ext = (set(neighbors(ORIGIN)) | set(neighbors(head))) - {ORIGIN, head}
    return tuple(sorted(ext, key=lambda n: (n.r, n.q)))


#: The eight nodes surrounding an expanded particle, per orientation.
EXT_OFFSETS: dict[Axis, tuple[Node, ...]] = {a: _external_offsets(a) for a in Axis}

#: Adjacent pairs among a view's surrounding nodes (candidates for pairing).
ADJ_PAIRS: dict[Optional[Axis], tuple[tuple[Node, Node], ...]] = {}
for _axis in Axis:
    _offs = EXT_OFFSETS[_axis]
    ADJ_PAIRS[_axis] = tuple(
        (a, b) for i, a in enumerate(_offs) for b in _offs[i + 1:] if are_adjacent(a, b)
    )
ADJ_PAIRS[None] = tuple(
    (a, b)
    for i, a in enumerate(sorted(DIRECTIONS, key=lambda n: (n.r, n.q)))
    for b in sorted(DIRECTIONS, key=lambda n: (n.r, n.q))[i + 1:]
    if are_adjacent(a, b)
)


@dataclass(frozen=True)
class OrientedParticle:
    """A particle with its per-activation head/tail assignment."""

    head: Node
    tail: Node

    @property
    def expanded(self) -> bool:
        return self.head != self.tail

    @property
    def axis(self) -> Optional[Axis]:
        if not self.expanded:
            return None
        delta = Node(self.head.q - self.tail.q, self.head.r - self.tail.r)
        return Axis(DIRECTIONS.index(delta))


def normalize(particle: Particle) -> OrientedParticle:
    """Assign head and tail: head is the lower, or rightmost, endpoint."""
    if len(particle.nodes) == 1:
        return OrientedParticle(particle.nodes[0], particle.nodes[0])
    a, b = particle.nodes
    head, tail = (a, b) if (a.r, a.q) > (b.r, b.q) else (b, a)
    return OrientedParticle(head, tail)


@dataclass(frozen=True)
class LocalView:
    """Everything a particle may sense during one activation.

    Offsets are relative to the particle's tail (contracted: its node).
    ``occupied`` covers the six neighbours of a contracted particle, or the
    eight surrounding nodes plus both own nodes of an expanded one.
    ``pairs`` lists adjacent occupied surrounding offsets known to belong to
    one expanded particle; a pair is only known when both of its nodes are
    inside the view.
    """

    axis: Optional[Axis]
    occupied: frozenset[Node]
    pairs: frozenset[tuple[Node, Node]]

    @property
    def expanded(self) -> bool:
        return self.axis is not None

    def external_occupied(self) -> frozenset[Node]:
        if self.axis is None:
            return self.occupied
        return self.occupied - {ORIGIN, HEAD_OFFSET[self.axis]}


@dataclass(frozen=True)
class Decision:
    """A chosen move: the triggering condition and the nodes kept/taken.

    ``offsets_after`` are tail-relative; they always retain at least one
    currently occupied node, which is what keeps moves atomic.
    """

    condition: Cond
    offsets_after: tuple[Node, ...]


def sense(config: Configuration, pid: int) -> LocalView:
    """Collect the local view of one particle. Raises KeyError on bad pid."""
    oriented = normalize(config.particle(pid))
    tail = oriented.tail
    axis = oriented.axis
    occupancy = config.occupancy

    def rel(n: Node) -> Node:
        return Node(n.q - tail.q, n.r - tail.r)

    occupied: set[Node] = set()
    if axis is None:
        domain = neighbors(tail)
        for n in domain:
            if n in occupancy:
                occupied.add(rel(n))
    else:
        occupied.update((ORIGIN, HEAD_OFFSET[axis]))
        for off in EXT_OFFSETS[axis]:
            n = Node(tail.q + off.q, tail.r + off.r)
            if n in occupancy:
                occupied.add(off)

    pairs: set[tuple[Node, Node]] = set()
    for a, b in ADJ_PAIRS[axis]:
        if a in occupied and b in occupied:
            na = Node(tail.q + a.q, tail.r + a.r)
            nb = Node(tail.q + b.q, tail.r + b.r)
            if occupancy[na] == occupancy[nb]:
                pairs.add((a, b))

    return LocalView(axis=axis, occupied=frozenset(occupied), pairs=frozenset(pairs))


def _connected(nodes: frozenset[Node] | set[Node]) -> bool:
    """Connectivity of a small offset set under grid adjacency."""
    if not nodes:
        return True
    start = next(iter(nodes))
    seen = {start}
    stack = [start]
    while stack:
        cur = stack.pop()
        for d in DIRECTIONS:
            nb = Node(cur.q + d.q, cur.r + d.r)
            if nb in nodes and nb not in seen:
                seen.add(nb)
                stack.append(nb)
    return len(seen) == len(nodes)


def _expanded_rule(view: LocalView, cond: Cond) -> Optional[Decision]:
    axis = view.axis
    assert axis is not None
    head = HEAD_OFFSET[axis]
    ext = view.external_occupied()

    if cond is Cond.E1:
        # Contract to head once every sensed neighbour hangs together with it.
        if _connected(ext | {head}):
            return Decision(Cond.E1, (head,))
        return None

    if cond is Cond.E2:
        target = LOWER_COMMON[axis]
        if target not in view.occupied and _connected(ext | {head, target}):
            return Decision(Cond.E2, (head, target))
        return None

    if cond is Cond.E3:
        if axis is not Axis.HORIZONTAL:
            return None
        # Requires an occupied neighbour in the row below. Without this
        # guard a particle whose only neighbours sit beside or above its
        # tail could step downward out of the system forever; with it,
        # every downward move lands in a row that is already occupied.
        if not any(off.r == 1 for off in ext):
            return None
        for u in (DIRECTIONS[1], DIRECTIONS[2]):
            if u not in view.occupied and _connected(ext | {ORIGIN, u}):
                return Decision(Cond.E3, (ORIGIN, u))
        return None

    if cond is Cond.E4:
        if axis is Axis.HORIZONTAL:
            return None
        above = PAIR_ABOVE_TAIL
        sidestep = HIGHER_COMMON[axis]
        if (
            above[0] in view.occupied
            and above[1] in view.occupied
            and above in view.pairs
            and sidestep not in view.occupied
        ):
            return Decision(Cond.E4, (head, sidestep))
        return None

    raise ValueError(f"{cond} does not apply to an expanded particle")


def _contracted_rule(view: LocalView, cond: Cond) -> Optional[Decision]:
    occ = view.occupied
    d0, d1, d2, d5 = DIRECTIONS[0], DIRECTIONS[1], DIRECTIONS[2], DIRECTIONS[5]

    if cond is Cond.C1:
        low1, low2 = d1 in occ, d2 in occ
        if low1 != low2:
            return Decision(Cond.C1, (ORIGIN, d2 if low1 else d1))
        return None

    if cond is Cond.C2:
        if (d1 in occ) == (d2 in occ) and d5 in occ and d0 not in occ:
            return Decision(Cond.C2, (ORIGIN, d0))
        return None

    raise ValueError(f"{cond} does not apply to a contracted particle")


def condition_holds(view: LocalView, cond: Cond) -> Optional[Decision]:
    """Evaluate a single condition against a view.

    Raises ValueError when the condition does not match the view's shape.
    """
    if cond in EXPANDED_CONDS:
        if not view.expanded:
            raise ValueError(f"{cond.value} requires an expanded particle")
        return _expanded_rule(view, cond)
    if not view.expanded:
        return _contracted_rule(view, cond)
    raise ValueError(f"{cond.value} requires a contracted particle")


def evaluate(view: LocalView) -> Optional[Decision]:
    """First satisfied condition in fixed order, or None when inert."""
    conds = EXPANDED_CONDS if view.expanded else CONTRACTED_CONDS
    for cond in conds:
        decision = condition_holds(view, cond)
        if decision is not None:
            return decision
    return None


def decide(config: Configuration, pid: int) -> Optional[Decision]:
    return evaluate(sense(config, pid))


class StaleDecisionError(RuntimeError):
    """A decision was applied to a configuration it was not computed from."""


def resulting_nodes(config: Configuration, pid: int, decision: Decision) -> tuple[Node, ...]:
    """Absolute nodes the particle occupies after the move."""
    tail = normalize(config.particle(pid)).tail
    nodes = tuple(Node(tail.q + off.q, tail.r + off.r) for off in decision.offsets_after)
    return tuple(sorted(nodes, key=lambda n: (n.r, n.q)))


def apply_move(config: Configuration, pid: int, decision: Decision) -> Configuration:
    """Apply one atomic move, producing a new configuration.

    The target nodes must be empty (or the particle's own); anything else
    means the decision is stale, which the sequential scheduler rules out.
    """
    own = set(config.particle(pid).nodes)
    target = resulting_nodes(config, pid, decision)
    for node in target:
        owner = config.occupancy.get(node)
        if owner is not None and node not in own:
            raise StaleDecisionError(
                f"target node {tuple(node)} of particle {pid} is occupied by {owner}"
            )
    if not own.intersection(target):
        raise StaleDecisionError(f"move of particle {pid} keeps no occupied node")
    return config.with_nodes(pid, target)
