"""Sequential unfair scheduler and replayable traces.

One particle moves per step. A strategy is any rule that picks some
activable particle; the scheduler contract promises nothing beyond that,
so strategies here range from seeded-random to a one-step-lookahead
adversary, and a human driving the session service is just another
strategy. Runs are deterministic given the strategy and seed, and traces
replay to bit-identical configurations.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Iterable, Optional

from . import verify
from ._tables import COND_OF_CODE
from .algorithm import Cond
from .configuration import (
    Boundaries,
    ConfigError,
    Configuration,
    boundaries,
    from_node_lists,
    is_connected,
)
from .grid import Node
from .kernel import state_from_config
from .verify import CheckReport, ProgressVector

DEFAULT_MAX_STEPS = 1_000_000

TRACE_FORMAT = "trielect-trace-v1"


class ScheduleError(RuntimeError):
    """A scripted schedule named a particle that cannot move."""


class VerificationError(RuntimeError):
    """A per-step invariant check failed during a verified run."""

    def __init__(self, step_index: int, report: CheckReport):
        super().__init__(
            f"invariant violation at step {step_index}:\n{report.format_block()}"
        )
        self.step_index = step_index
        self.report = report


@dataclass(frozen=True)
class StepEvent:
    step_index: int
    pid: int
    condition: Cond
    nodes_before: tuple[Node, ...]
    nodes_after: tuple[Node, ...]
    progress_after: ProgressVector


@dataclass
class Trace:
    initial: Configuration
    bounds: Boundaries
    strategy: dict
    max_steps: int
    events: list[StepEvent] = field(default_factory=list)
    terminal: bool = False


class _SchedulerView:
    """What a strategy may look at when choosing the next particle."""

    def __init__(self, state, pids: list[int]):
        self._state = state
        self._pids = pids
        self._index = {pid: i for i, pid in enumerate(pids)}

    def activable_pids(self) -> list[int]:
        return [self._pids[i] for i, _ in self._state.activable()]

    def activable_count_after(self, pid: int) -> int:
        """One-step lookahead: how many particles could move next."""
        record = self._state.apply(self._index[pid])
        count = self._state.count_activable()
        self._state.revert(record)
        return count


class RandomStrategy:
    """Uniform choice among activable particles from a seeded generator."""

    kind = "random"

    def __init__(self, seed: int = 0):
        self.seed = seed
        self._rng = random.Random(seed)

    def select(self, view: _SchedulerView) -> int:
        return self._rng.choice(view.activable_pids())

    def describe(self) -> dict:
        return {"kind": self.kind, "seed": self.seed}


class RoundRobinStrategy:
    """Cycle particle ids in increasing order, skipping inert ones."""

    kind = "roundrobin"

    def __init__(self):
        self._last: Optional[int] = None

    def select(self, view: _SchedulerView) -> int:
        pids = view.activable_pids()
        if self._last is not None:
            after = [p for p in pids if p > self._last]
            choice = after[0] if after else pids[0]
        else:
            choice = pids[0]
        self._last = choice
        return choice

    def describe(self) -> dict:
        return {"kind": self.kind}


class GreedyAdversarialStrategy:
    """Pick the particle whose move maximizes how many can move next.

    Ties break toward the smallest id. One concrete adversary inside the
    unfair-scheduler class; exhaustive coverage of all schedules is the
    model checker's job.
    """

    kind = "greedy"

    def select(self, view: _SchedulerView) -> int:
        best_pid = -1
        best_count = -1
        for pid in view.activable_pids():
            count = view.activable_count_after(pid)
            if count > best_count:
                best_pid, best_count = pid, count
        return best_pid

    def describe(self) -> dict:
        return {"kind": self.kind}


class ScriptedStrategy:
    """Replay an explicit pid sequence; invalid picks are schedule errors."""

    kind = "scripted"

    def __init__(self, pids: Iterable[int]):
        self.script = list(pids)
        self._pos = 0

    def select(self, view: _SchedulerView) -> Optional[int]:
        if self._pos >= len(self.script):
            return None  # script consumed; the run stops here
        pid = self.script[self._pos]
        self._pos += 1
        if pid not in view.activable_pids():
            raise ScheduleError(f"scripted particle {pid} is not activable")
        return pid

    def describe(self) -> dict:
        return {"kind": self.kind, "script": self.script}


def make_strategy(kind: str, seed: int = 0, script: Optional[list[int]] = None):
    if kind == "random":
        return RandomStrategy(seed)
    if kind == "roundrobin":
        return RoundRobinStrategy()
    if kind == "greedy":
        return GreedyAdversarialStrategy()
    if kind == "scripted":
        return ScriptedStrategy(script or [])
    raise ValueError(f"unknown strategy {kind!r}")


def activable(config: Configuration) -> list[tuple[int, Cond]]:
    """(pid, condition) for every particle that would move if activated."""
    state = state_from_config(config)
    pids = config.pids()
    return [(pids[i], COND_OF_CODE[code]) for i, code in state.activable()]


def step(
    config: Configuration, strategy
) -> Optional[tuple[Configuration, StepEvent]]:
    """Run one scheduler step purely; None when the configuration is final."""
    trace = run(config, strategy, max_steps=1)
    if not trace.events:
        return None
    event = trace.events[0]
    after = config.with_nodes(event.pid, event.nodes_after)
    return after, event


def run(
    config: Configuration,
    strategy,
    max_steps: int = DEFAULT_MAX_STEPS,
    verify_steps: bool = False,
) -> Trace:
    """Drive the scheduler until no particle can move or the guard trips.

    With ``verify_steps`` every transition is checked (connectivity,
    atomicity, strict progress decrease, boundary containment, descent
    discipline) through the reference rule path; the first violation
    raises :class:`VerificationError`. A trace with ``terminal=False``
    means the step guard expired first, which would be a finding against
    the termination guarantee.
    """
    if not is_connected(config):
        raise ConfigError("initial configuration must be connected")
    bounds = boundaries(config)
    state = state_from_config(config)
    pids = config.pids()
    index = {pid: i for i, pid in enumerate(pids)}
    view = _SchedulerView(state, pids)

    trace = Trace(
        initial=config,
        bounds=bounds,
        strategy=strategy.describe(),
        max_steps=max_steps,
    )
    current = config
    for step_index in range(max_steps):
        if state.count_activable() == 0:
            trace.terminal = True
            return trace
        pid = strategy.select(view)
        if pid is None:
            break
        i = index[pid]
        code = state.move_code(i)
        if not code:
            raise ScheduleError(f"strategy selected inert particle {pid}")
        before_nodes = tuple(Node(q, r) for q, r in state.nodes_of(i))
        record = state.apply(i)
        after_nodes = tuple(Node(q, r) for q, r in state.nodes_of(i))
        event = StepEvent(
            step_index=step_index,
            pid=pid,
            condition=COND_OF_CODE[code],
            nodes_before=before_nodes,
            nodes_after=after_nodes,
            progress_after=ProgressVector(*state.progress(*bounds)),
        )
        trace.events.append(event)
        if verify_steps:
            after = current.with_nodes(pid, after_nodes)
            report = verify.check_transition(current, after, event, bounds)
            if ProgressVector(*state.progress(*bounds)) != verify.progress_vector(
                after, bounds
            ):
                report.add(
                    "progress-agreement",
                    f"pid {pid}",
                    "kernel and reference progress measures disagree",
                )
            if not report.passed:
                raise VerificationError(step_index, report)
            current = after
    trace.terminal = state.count_activable() == 0
    return trace


def final_configuration(trace: Trace) -> Configuration:
    """Configuration after the last event of a trace."""
    config = trace.initial
    for event in trace.events:
        config = config.with_nodes(event.pid, event.nodes_after)
    return config


# -- trace files --------------------------------------------------------------


def _config_payload(config: Configuration) -> dict:
    return {
        "particles": [
            {"pid": p.pid, "nodes": [[n.q, n.r] for n in p.nodes]}
            for p in sorted(config.particles, key=lambda p: p.pid)
        ]
    }


def _config_from_payload(payload: dict) -> Configuration:
    # pids in trace files are always 0..n-1 in order; rebuild positionally.
    ordered = sorted(payload["particles"], key=lambda p: p["pid"])
    return from_node_lists([p["nodes"] for p in ordered])


def trace_to_lines(trace: Trace) -> list[str]:
    """Line-delimited trace: header, one line per step, terminal footer."""
    lines = [
        json.dumps(
            {
                "format": TRACE_FORMAT,
                "initial": _config_payload(trace.initial),
                "boundaries": {"r_max": trace.bounds.r_max, "q_max": trace.bounds.q_max},
                "strategy": trace.strategy,
                "max_steps": trace.max_steps,
            },
            separators=(",", ":"),
        )
    ]
    for e in trace.events:
        lines.append(
            json.dumps(
                {
                    "step": e.step_index,
                    "pid": e.pid,
                    "condition": e.condition.value,
                    "nodes_before": [[n.q, n.r] for n in e.nodes_before],
                    "nodes_after": [[n.q, n.r] for n in e.nodes_after],
                    "progress_after": list(e.progress_after),
                },
                separators=(",", ":"),
            )
        )
    lines.append(
        json.dumps(
            {"terminal": trace.terminal, "steps": len(trace.events)},
            separators=(",", ":"),
        )
    )
    return lines


class TraceFormatError(ValueError):
    pass


def trace_from_lines(lines: Iterable[str]) -> Trace:
    rows = [json.loads(line) for line in lines if line.strip()]
    if not rows or rows[0].get("format") != TRACE_FORMAT:
        raise TraceFormatError("missing or unsupported trace header")
    head = rows[0]
    trace = Trace(
        initial=_config_from_payload(head["initial"]),
        bounds=Boundaries(head["boundaries"]["r_max"], head["boundaries"]["q_max"]),
        strategy=head["strategy"],
        max_steps=head["max_steps"],
    )
    if len(rows) < 2 or "terminal" not in rows[-1]:
        raise TraceFormatError("missing trace footer")
    for row in rows[1:-1]:
        trace.events.append(
            StepEvent(
                step_index=row["step"],
                pid=row["pid"],
                condition=Cond(row["condition"]),
                nodes_before=tuple(Node(q, r) for q, r in row["nodes_before"]),
                nodes_after=tuple(Node(q, r) for q, r in row["nodes_after"]),
                progress_after=ProgressVector(*row["progress_after"]),
            )
        )
    trace.terminal = rows[-1]["terminal"]
    if rows[-1]["steps"] != len(trace.events):
        raise TraceFormatError("footer step count does not match event lines")
    return trace


def verify_trace(trace: Trace) -> CheckReport:
    """Replay a trace through the reference rules and check every step.

    Each event's condition and node sets are recomputed independently; any
    mismatch, invariant violation, or wrong terminal flag lands in the
    report.
    """
    from . import algorithm

    report = CheckReport()
    config = trace.initial
    expected_bounds = boundaries(config)
    if expected_bounds != trace.bounds:
        report.add(
            "trace-boundaries",
            str(tuple(trace.bounds)),
            f"header boundaries do not match the initial configuration {tuple(expected_bounds)}",
        )
        return report
    for event in trace.events:
        decision = algorithm.decide(config, event.pid)
        if decision is None:
            report.add(
                "trace-replay",
                f"step {event.step_index}",
                f"particle {event.pid} is not activable here",
            )
            return report
        if decision.condition != event.condition:
            report.add(
                "trace-replay",
                f"step {event.step_index}",
                f"condition mismatch: recomputed {decision.condition.value}, "
                f"trace says {event.condition.value}",
            )
            return report
        after_nodes = algorithm.resulting_nodes(config, event.pid, decision)
        if set(after_nodes) != set(event.nodes_after):
            report.add(
                "trace-replay",
                f"step {event.step_index}",
                "resulting nodes do not match the trace",
            )
            return report
        after = algorithm.apply_move(config, event.pid, decision)
        step_report = verify.check_transition(config, after, event, trace.bounds)
        if verify.progress_vector(after, trace.bounds) != event.progress_after:
            step_report.add(
                "trace-progress",
                f"step {event.step_index}",
                "recorded progress vector does not match the replayed one",
            )
        report.violations.extend(step_report.violations)
        if not step_report.passed:
            return report
        config = after
    if trace.terminal != verify.is_final(config):
        report.add(
            "trace-terminal",
            "footer",
            "terminal flag does not match the replayed final configuration",
        )
    return report
