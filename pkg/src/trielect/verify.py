"""Runtime correctness checks for executions.

Everything the simulation promises is checked here at runtime: global
connectivity after every move, strict lexicographic decrease of the
five-part progress measure, containment within the frozen boundaries,
atomicity, the rule that contracted particles only descend when they saw a
lower neighbour, and — on terminal configurations — the local stability
cases and uniqueness of the leader. The checks deliberately go through the
reference rule implementation rather than the simulation kernel, so every
verified run exercises two independent code paths.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

from . import algorithm
from .algorithm import Cond, normalize
from .configuration import Boundaries, Configuration
from .grid import Axis, Node, neighbor


class ProgressVector(NamedTuple):
    """Lexicographic termination measure; strictly decreases on every move.

    p1/p2: summed head distances to the lowest row / rightmost diagonal,
    p3: diagonally expanded count, p4: blocking count, p5: horizontally
    expanded count.
    """

    p1: int
    p2: int
    p3: int
    p4: int
    p5: int


@dataclass(frozen=True)
class Violation:
    invariant: str
    subject: str
    detail: str


@dataclass
class CheckReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def add(self, invariant: str, subject, detail: str) -> None:
        self.violations.append(Violation(invariant, str(subject), detail))

    def format_block(self) -> str:
        if self.passed:
            return "checks: passed"
        lines = ["checks: FAILED"]
        for v in self.violations:
            lines.append(f"  - [{v.invariant}] {v.subject}: {v.detail}")
        return "\n".join(lines)


class BoundaryBreachError(ValueError):
    """A configuration exceeds the frozen execution boundaries."""


def _is_blocking(config: Configuration, tail: Node) -> bool:
    # The tail touches both endpoints of some horizontally expanded
    # particle exactly when that particle lies directly above or directly
    # below the tail.
    occ = config.occupancy
    for pa, pb in (
        (neighbor(tail, 4), neighbor(tail, 5)),
        (neighbor(tail, 2), neighbor(tail, 1)),
    ):
        pid_a = occ.get(pa)
        if pid_a is not None and pid_a == occ.get(pb):
            return True
    return False


def progress_vector(config: Configuration, bounds: Boundaries) -> ProgressVector:
    """Compute the five-part measure. Raises on boundary breaches."""
    for node in config.occupancy:
        if node.r > bounds.r_max or node.q > bounds.q_max:
            raise BoundaryBreachError(
                f"node {tuple(node)} lies outside the frozen boundaries {tuple(bounds)}"
            )
    p1 = p2 = p3 = p4 = p5 = 0
    for particle in config.particles:
        oriented = normalize(particle)
        p1 += bounds.r_max - oriented.head.r
        p2 += bounds.q_max - oriented.head.q
        axis = oriented.axis
        if axis is Axis.HORIZONTAL:
            p5 += 1
        elif axis is not None:
            p3 += 1
            if _is_blocking(config, oriented.tail):
                p4 += 1
    return ProgressVector(p1, p2, p3, p4, p5)


def is_final(config: Configuration) -> bool:
    """True when no particle would move."""
    return all(algorithm.decide(config, p.pid) is None for p in config.particles)


def leaders(config: Configuration) -> list[int]:
    """Particles whose position has no neighbour in directions 0, 1, 2, 5.

    A particle's position is its head (for a contracted particle, its only
    node), the same locus the progress measure uses; nodes occupied by the
    particle itself do not count as neighbours. Every terminal
    configuration contains exactly one leader under this predicate, which
    the exhaustive model check confirms on all small instances.
    """
    occ = config.occupancy
    result = []
    for particle in config.particles:
        own = set(particle.nodes)
        head = normalize(particle).head
        clear = True
        for d in (0, 1, 2, 5):
            nb = neighbor(head, d)
            if nb in occ and nb not in own:
                clear = False
                break
        if clear:
            result.append(particle.pid)
    return result


def _occupied_lower_neighbors(config: Configuration, node: Node) -> list[Node]:
    occ = config.occupancy
    return [nb for nb in (neighbor(node, 1), neighbor(node, 2)) if nb in occ]


def check_final_properties(config: Configuration) -> CheckReport:
    """Check the shape of a terminal configuration.

    Every particle must be contracted with zero or two occupied lower
    neighbours, or horizontally expanded with no way to contract safely and
    no occupied lower neighbour at either endpoint; and exactly one
    particle must be a leader. Raises ValueError when the configuration is
    not terminal.
    """
    if not is_final(config):
        raise ValueError("configuration still has activable particles")
    report = CheckReport()
    for particle in config.particles:
        oriented = normalize(particle)
        if not oriented.expanded:
            lower = _occupied_lower_neighbors(config, oriented.head)
            if len(lower) == 1:
                report.add(
                    "final-contracted",
                    f"pid {particle.pid}",
                    "contracted particle with exactly one occupied lower neighbour",
                )
            continue
        if oriented.axis is not Axis.HORIZONTAL:
            report.add(
                "final-expanded-axis",
                f"pid {particle.pid}",
                "diagonally expanded particle in a terminal configuration",
            )
            continue
        view = algorithm.sense(config, particle.pid)
        if algorithm.condition_holds(view, Cond.E1) is not None:
            report.add(
                "final-expanded-contractible",
                f"pid {particle.pid}",
                "horizontally expanded particle that could contract safely",
            )
        lower_any = [
            nb
            for endpoint in particle.nodes
            for nb in _occupied_lower_neighbors(config, endpoint)
        ]
        if lower_any:
            report.add(
                "final-expanded-lower",
                f"pid {particle.pid}",
                f"horizontally expanded particle with occupied lower neighbours {sorted(map(tuple, lower_any))}",
            )
    leader_set = leaders(config)
    if len(leader_set) != 1:
        report.add(
            "unique-leader",
            f"leaders {leader_set}",
            f"terminal configuration has {len(leader_set)} leaders, expected exactly 1",
        )
    return report


def check_transition(
    before: Configuration,
    after: Configuration,
    event,
    bounds: Boundaries,
) -> CheckReport:
    """Check one scheduler step.

    ``event`` needs ``pid``, ``condition``, ``nodes_before`` and
    ``nodes_after`` attributes, as produced by the engine.
    """
    report = CheckReport()
    pid = event.pid

    moved_before = tuple(before.particle(pid).nodes)
    moved_after = tuple(after.particle(pid).nodes)
    if set(moved_before) != set(event.nodes_before) or set(moved_after) != set(
        event.nodes_after
    ):
        report.add(
            "event-consistency",
            f"pid {pid}",
            "event node lists do not match the configurations",
        )

    if not set(moved_before) & set(moved_after):
        report.add(
            "atomicity",
            f"pid {pid}",
            "move kept no previously occupied node",
        )

    for particle in before.particles:
        if particle.pid != pid and set(particle.nodes) != set(
            after.particle(particle.pid).nodes
        ):
            report.add(
                "sequentiality",
                f"pid {particle.pid}",
                "non-activated particle changed position",
            )

    from .configuration import is_connected  # local import avoids cycles

    if not is_connected(after):
        report.add("connectivity", f"pid {pid}", "system disconnected after move")

    breach = [
        n
        for n in after.occupancy
        if n.r > bounds.r_max or n.q > bounds.q_max
    ]
    if breach:
        report.add(
            "boundary",
            f"pid {pid}",
            f"nodes {sorted(map(tuple, breach))} lie outside the frozen boundaries",
        )
    else:
        vec_before = progress_vector(before, bounds)
        vec_after = progress_vector(after, bounds)
        if not vec_after < vec_before:
            report.add(
                "progress",
                f"pid {pid}",
                f"measure did not strictly decrease: {vec_before} -> {vec_after}",
            )

    if len(moved_before) == 1:
        old = moved_before[0]
        if any(n.r > old.r for n in moved_after):
            if not _occupied_lower_neighbors(before, old):
                report.add(
                    "descend-needs-lower-neighbour",
                    f"pid {pid}",
                    "contracted particle descended without an occupied lower neighbour",
                )

    return report
