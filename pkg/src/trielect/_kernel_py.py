"""Pure-Python simulation kernel.

The kernel keeps a mutable occupancy map plus per-particle move codes and
answers the hot queries of the engine and the model checker: which
particles can move, what each move does, apply/revert, connectivity, the
progress measure and a translation-canonical key. A compiled twin with the
same interface lives in ``_kernel_c``; both are driven by the shared
decision tables, and the test suite checks them against the reference
rule implementation and against each other.
"""

from __future__ import annotations

from ._tables import (
    ABOVE_PAIR_INDEX,
    C_ORDER,
    C_PAIR_INDEX,
    CONTRACTED_TABLE,
    EXPANDED_TABLE,
    EXT_ORDER,
    MOVES,
    PAIR_INDEX,
)

_NEIGHBOR_STEPS = ((1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1))


class SimState:
    """Mutable particle system driven by the decision tables."""

    __slots__ = ("parts", "occ", "codes", "active")

    def __init__(self, node_lists):
        self.parts: list[tuple[tuple[int, int], ...]] = [
            tuple((int(q), int(r)) for q, r in nodes) for nodes in node_lists
        ]
        self.occ: dict[tuple[int, int], int] = {}
        for i, nodes in enumerate(self.parts):
            for node in nodes:
                if node in self.occ:
                    raise ValueError(f"node {node} occupied twice")
                self.occ[node] = i
        self.codes = [0] * len(self.parts)
        self.active = 0
        for i in range(len(self.parts)):
            code = self._decide(i)
            self.codes[i] = code
            if code:
                self.active += 1

    # -- geometry helpers ---------------------------------------------------

    def _oriented(self, i):
        """(tail, head, axis) of particle i; axis -1 when contracted."""
        nodes = self.parts[i]
        if len(nodes) == 1:
            return nodes[0], nodes[0], -1
        a, b = nodes
        head, tail = (a, b) if (a[1], a[0]) > (b[1], b[0]) else (b, a)
        dq, dr = head[0] - tail[0], head[1] - tail[1]
        axis = 0 if dr == 0 else (1 if dq == 0 else 2)
        return tail, head, axis

    def _decide(self, i) -> int:
        occ = self.occ
        tail, head, axis = self._oriented(i)
        tq, tr = tail
        if axis < 0:
            bits = 0
            for d, (dq, dr) in enumerate(C_ORDER):
                if (tq + dq, tr + dr) in occ:
                    bits |= 1 << d
            return CONTRACTED_TABLE[bits]
        bits = 0
        order = EXT_ORDER[axis]
        for k, (dq, dr) in enumerate(order):
            if (tq + dq, tr + dr) in occ:
                bits |= 1 << k
        ai, bi = ABOVE_PAIR_INDEX[axis]
        pair = 0
        if bits >> ai & 1 and bits >> bi & 1:
            na = (tq + order[ai][0], tr + order[ai][1])
            nb = (tq + order[bi][0], tr + order[bi][1])
            if occ[na] == occ[nb]:
                pair = 1
        return EXPANDED_TABLE[axis][bits << 1 | pair]

    # -- queries ------------------------------------------------------------

    def __len__(self) -> int:
        return len(self.parts)

    def nodes_of(self, i):
        return self.parts[i]

    def snapshot(self):
        return [tuple(nodes) for nodes in self.parts]

    def move_code(self, i) -> int:
        return self.codes[i]

    def activable(self):
        """(pid, move code) for every particle that would move, pid order."""
        return [(i, c) for i, c in enumerate(self.codes) if c]

    def count_activable(self) -> int:
        return self.active

    def move_target(self, i):
        """Absolute nodes particle i occupies after its current move."""
        code = self.codes[i]
        if not code:
            return None
        tail, head, axis = self._oriented(i)
        offs = MOVES[(code, axis)]
        tq, tr = tail
        nodes = tuple(sorted(((tq + dq, tr + dr) for dq, dr in offs),
                             key=lambda n: (n[1], n[0])))
        return nodes

    def view_key(self, i) -> int:
        """Packed local view: shape tag, occupancy bits and pairing bits."""
        occ = self.occ
        tail, head, axis = self._oriented(i)
        tq, tr = tail
        if axis < 0:
            bits = 0
            for d, (dq, dr) in enumerate(C_ORDER):
                if (tq + dq, tr + dr) in occ:
                    bits |= 1 << d
            pairs = 0
            for k, (da, db) in enumerate(C_PAIR_INDEX):
                if bits >> da & 1 and bits >> db & 1:
                    na = (tq + C_ORDER[da][0], tr + C_ORDER[da][1])
                    nb = (tq + C_ORDER[db][0], tr + C_ORDER[db][1])
                    if occ[na] == occ[nb]:
                        pairs |= 1 << k
            return 3 << 16 | bits << 8 | pairs
        order = EXT_ORDER[axis]
        bits = 0
        for k, (dq, dr) in enumerate(order):
            if (tq + dq, tr + dr) in occ:
                bits |= 1 << k
        pairs = 0
        for k, (ia, ib) in enumerate(PAIR_INDEX[axis]):
            if bits >> ia & 1 and bits >> ib & 1:
                na = (tq + order[ia][0], tr + order[ia][1])
                nb = (tq + order[ib][0], tr + order[ib][1])
                if occ[na] == occ[nb]:
                    pairs |= 1 << k
        return axis << 16 | bits << 8 | pairs

    # -- mutation -----------------------------------------------------------

    def _affected(self, changed):
        occ = self.occ
        pids = set()
        for q, r in changed:
            pid = occ.get((q, r))
            if pid is not None:
                pids.add(pid)
            for dq, dr in _NEIGHBOR_STEPS:
                pid = occ.get((q + dq, r + dr))
                if pid is not None:
                    pids.add(pid)
        return pids

    def apply(self, i):
        """Apply particle i's current move.

        Returns an undo record; raises ValueError when i cannot move.
        """
        code = self.codes[i]
        if not code:
            raise ValueError(f"particle {i} is not activable")
        before = self.parts[i]
        after = self.move_target(i)
        occ = self.occ
        for node in after:
            if occ.get(node, i) != i:
                raise ValueError(f"target node {node} is occupied")
        for node in before:
            del occ[node]
        for node in after:
            occ[node] = i
        self.parts[i] = after

        changed = set(before).symmetric_difference(after)
        touched = self._affected(changed)
        touched.add(i)
        undo_codes = []
        for j in sorted(touched):
            old = self.codes[j]
            new = self._decide(j)
            if new != old:
                undo_codes.append((j, old))
                self.codes[j] = new
                self.active += (1 if new else 0) - (1 if old else 0)
        return (i, before, after, code, undo_codes)

    def revert(self, record):
        """Undo a move previously returned by :meth:`apply`."""
        i, before, after, code, undo_codes = record
        occ = self.occ
        for node in after:
            del occ[node]
        for node in before:
            occ[node] = i
        self.parts[i] = before
        for j, old in undo_codes:
            cur = self.codes[j]
            self.active += (1 if old else 0) - (1 if cur else 0)
            self.codes[j] = old

    # -- global measures ----------------------------------------------------

    def is_connected(self) -> bool:
        occ = self.occ
        if not occ:
            return True
        start = next(iter(occ))
        seen = {start}
        stack = [start]
        while stack:
            q, r = stack.pop()
            for dq, dr in _NEIGHBOR_STEPS:
                nb = (q + dq, r + dr)
                if nb in occ and nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        return len(seen) == len(occ)

    def progress(self, r_max: int, q_max: int):
        """Five-part progress measure against frozen boundaries."""
        p1 = p2 = p3 = p4 = p5 = 0
        occ = self.occ
        for i in range(len(self.parts)):
            tail, head, axis = self._oriented(i)
            p1 += r_max - head[1]
            p2 += q_max - head[0]
            if axis == 0:
                p5 += 1
            elif axis > 0:
                p3 += 1
                if self._is_blocking(tail):
                    p4 += 1
        return (p1, p2, p3, p4, p5)

    def _is_blocking(self, tail):
        # A diagonal particle blocks when its tail touches both endpoints of
        # a horizontally expanded particle: that particle sits either right
        # above or right below the tail.
        occ = self.occ
        tq, tr = tail
        for pa, pb in (((tq, tr - 1), (tq + 1, tr - 1)),
                       ((tq - 1, tr + 1), (tq, tr + 1))):
            pid_a = occ.get(pa)
            if pid_a is not None and pid_a == occ.get(pb):
                return True
        return False

    def canonical_key(self):
        """Translation-invariant, pid-free form of the configuration."""
        min_r = min(r for _, r in self.occ)
        min_q = min(q for q, r in self.occ if r == min_r)
        forms = sorted(
            tuple(sorted(((q - min_q, r - min_r) for q, r in nodes),
                         key=lambda n: (n[1], n[0])))
            for nodes in self.parts
        )
        return tuple(forms)
