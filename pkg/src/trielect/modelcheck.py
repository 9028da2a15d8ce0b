"""Exhaustive verification on small instances.

Enumerates every connected configuration up to a particle count (unique up
to translation), then explores every sequential schedule by branching over
all activable particles at every state. Because a schedule is nothing but
a choice of activable particle per step, full branching quantifies over
every unfair scheduler at once. Moves preserve particle count and global
connectivity, so the state space reachable from any instance consists of
instances of the same size; explorations are memoized on canonical forms.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Iterator, Optional

from . import verify
from ._tables import COND_OF_CODE
from .configuration import Configuration, from_node_lists
from .grid import Node, neighbors
from .kernel import state_from_config

#: A canonical form: particles as node tuples, translated and sorted.
Form = tuple[tuple[tuple[int, int], ...], ...]

DEFAULT_STATE_BUDGET = 5_000_000


def canonical_form(config: Configuration) -> Form:
    """Translation-canonical, pid-free form of a configuration."""
    return state_from_config(config).canonical_key()


def config_from_form(form: Form) -> Configuration:
    return from_node_lists(form)


def form_digest(form: Form) -> str:
    """Short stable hash used in reports."""
    text = ";".join(",".join(f"{q}:{r}" for q, r in part) for part in form)
    return hashlib.sha256(text.encode()).hexdigest()[:12]


def _frontier(occupied: set[tuple[int, int]]) -> list[tuple[int, int]]:
    cand = set()
    for q, r in occupied:
        for nb in neighbors(Node(q, r)):
            if (nb.q, nb.r) not in occupied:
                cand.add((nb.q, nb.r))
    return sorted(cand)


def enumerate_forms(n: int, allow_expanded: bool = True) -> list[Form]:
    """Canonical forms of every connected configuration of exactly n particles.

    Grows configurations one particle at a time; every connected
    configuration contains a connected sub-configuration one particle
    smaller, so level-wise growth with canonical deduplication is complete.
    """
    if n < 1:
        raise ValueError("need at least one particle")
    seeds: list[Form] = [(((0, 0),),)]
    if allow_expanded:
        # One expanded seed per orientation class.
        seeds += [
            (((0, 0), (1, 0)),),
            (((0, 0), (0, 1)),),
            (((1, 0), (0, 1)),),
        ]
    level = {canonical_form(config_from_form(f)) for f in seeds}
    for _size in range(2, n + 1):
        nxt: set[Form] = set()
        for form in level:
            occupied = {node for part in form for node in part}
            frontier = _frontier(occupied)
            placements: list[tuple[tuple[int, int], ...]] = [
                (node,) for node in frontier
            ]
            if allow_expanded:
                for a in frontier:
                    for nb in neighbors(Node(*a)):
                        b = (nb.q, nb.r)
                        if b not in occupied:
                            placements.append(tuple(sorted((a, b))))
            seen_placements = set()
            for placement in placements:
                if placement in seen_placements:
                    continue
                seen_placements.add(placement)
                candidate = form + (placement,)
                nxt.add(canonical_form(config_from_form(candidate)))
        level = nxt
    return sorted(level)


def enumerate_connected(n: int, allow_expanded: bool = True) -> Iterator[Configuration]:
    """Stream the enumerated instances as configurations."""
    for form in enumerate_forms(n, allow_expanded):
        yield config_from_form(form)


def successors(form: Form) -> list[tuple[int, str, Form]]:
    """(pid, condition, successor form) for every activable particle."""
    state = state_from_config(config_from_form(form))
    result = []
    for pid, code in state.activable():
        record = state.apply(pid)
        result.append((pid, _COND_NAMES[code], state.canonical_key()))
        state.revert(record)
    return result


_COND_NAMES = {code: cond.value for code, cond in COND_OF_CODE.items()}


def _terminal_ok(form: Form) -> tuple[bool, bool]:
    """(unique leader, local stability cases hold) for a terminal form."""
    config = config_from_form(form)
    report = verify.check_final_properties(config)
    leader_ok = not any(v.invariant == "unique-leader" for v in report.violations)
    prop_ok = not any(v.invariant.startswith("final-") for v in report.violations)
    return leader_ok, prop_ok


@dataclass
class ExploreReport:
    root: Form
    states: int
    terminals: int
    terminal_forms: frozenset
    unique_leader_everywhere: bool
    prop1_everywhere: bool
    acyclic: bool
    max_depth: Optional[int]
    complete: bool

    @property
    def passed(self) -> bool:
        return (
            self.complete
            and self.acyclic
            and self.unique_leader_everywhere
            and self.prop1_everywhere
        )

    def summary_line(self) -> str:
        status = "pass" if self.passed else ("partial" if not self.complete else "FAIL")
        return (
            f"{form_digest(self.root)} states={self.states} "
            f"terminals={self.terminals} depth={self.max_depth} {status}"
        )


def explore(
    config: Configuration,
    budget: int = DEFAULT_STATE_BUDGET,
    successor_cache: Optional[dict] = None,
) -> ExploreReport:
    """Explore every schedule from one instance.

    Iterative depth-first search over canonical forms with cycle detection;
    ``successor_cache`` may be shared between calls to avoid recomputing
    moves for states reachable from several instances.
    """
    root = canonical_form(config)
    cache = successor_cache if successor_cache is not None else {}

    visited: set[Form] = set()
    on_stack: set[Form] = set()
    depth: dict[Form, int] = {}
    terminals: set[Form] = set()
    acyclic = True
    leader_ok = True
    prop_ok = True
    complete = True

    # (form, successor iterator position) stack; successors resolved lazily.
    stack: list[tuple[Form, list[Form], int]] = []

    def push(form: Form) -> None:
        nonlocal leader_ok, prop_ok
        visited.add(form)
        on_stack.add(form)
        if form not in cache:
            cache[form] = [succ for _, _, succ in successors(form)]
        succs = cache[form]
        if not succs:
            terminals.add(form)
            ok_leader, ok_prop = _terminal_ok(form)
            leader_ok &= ok_leader
            prop_ok &= ok_prop
            depth[form] = 0
        stack.append((form, succs, 0))

    push(root)
    while stack:
        form, succs, idx = stack.pop()
        if idx < len(succs):
            stack.append((form, succs, idx + 1))
            child = succs[idx]
            if child in on_stack:
                acyclic = False
                continue
            if child not in visited:
                if len(visited) >= budget:
                    complete = False
                    continue
                push(child)
        else:
            on_stack.discard(form)
            if succs:
                child_depths = [depth.get(c, 0) for c in succs]
                depth[form] = 1 + max(child_depths)

    return ExploreReport(
        root=root,
        states=len(visited),
        terminals=len(terminals),
        terminal_forms=frozenset(terminals),
        unique_leader_everywhere=leader_ok,
        prop1_everywhere=prop_ok,
        acyclic=acyclic,
        max_depth=depth.get(root) if acyclic and complete else None,
        complete=complete,
    )


@dataclass
class SweepReport:
    """Result of checking every instance up to a particle count."""

    max_n: int
    forms: int
    terminals: int
    acyclic: bool
    closed_under_moves: bool
    unique_leader_everywhere: bool
    prop1_everywhere: bool
    bad_terminals: list[Form]

    @property
    def passed(self) -> bool:
        return (
            self.acyclic
            and self.closed_under_moves
            and self.unique_leader_everywhere
            and self.prop1_everywhere
        )


def sweep(max_n: int, allow_expanded: bool = True) -> SweepReport:
    """Check every connected instance with up to ``max_n`` particles.

    Moves preserve particle count and connectivity, so the union of all
    state graphs over these instances is the transition graph on the
    enumerated forms themselves. Acyclicity of that graph means every
    schedule from every instance terminates; terminal forms are checked for
    a unique leader and the local stability cases. Closure (every successor
    being an enumerated form) is asserted rather than assumed.
    """
    total_forms = 0
    total_terminals = 0
    closed = True
    leader_ok = True
    prop_ok = True
    acyclic = True
    bad_terminals: list[Form] = []

    for n in range(1, max_n + 1):
        forms = enumerate_forms(n, allow_expanded)
        index = {form: i for i, form in enumerate(forms)}
        succ_ids: list[list[int]] = []
        for form in forms:
            ids = []
            for _, _, child in successors(form):
                child_id = index.get(child)
                if child_id is None:
                    closed = False
                else:
                    ids.append(child_id)
            succ_ids.append(ids)
            if not ids:
                total_terminals += 1
                ok_leader, ok_prop = _terminal_ok(form)
                leader_ok &= ok_leader
                prop_ok &= ok_prop
                if not (ok_leader and ok_prop):
                    bad_terminals.append(form)
        total_forms += len(forms)

        # Kahn's algorithm: the transition graph must be a DAG.
        indeg = [0] * len(forms)
        for ids in succ_ids:
            for j in ids:
                indeg[j] += 1
        queue = [i for i, d in enumerate(indeg) if d == 0]
        seen = 0
        while queue:
            i = queue.pop()
            seen += 1
            for j in succ_ids[i]:
                indeg[j] -= 1
                if indeg[j] == 0:
                    queue.append(j)
        if seen != len(forms):
            acyclic = False

    return SweepReport(
        max_n=max_n,
        forms=total_forms,
        terminals=total_terminals,
        acyclic=acyclic,
        closed_under_moves=closed,
        unique_leader_everywhere=leader_ok,
        prop1_everywhere=prop_ok,
        bad_terminals=bad_terminals,
    )
