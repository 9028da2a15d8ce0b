# distutils: language = c++
# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of the pure-Python simulation kernel.

Same interface and observable behaviour as ``_kernel_py.SimState``; the
occupancy map lives in a C++ hash map keyed on packed coordinates and the
decision tables are copied into C arrays at import. The test suite
fuzz-compares the two kernels move for move.
"""

from libcpp.unordered_map cimport unordered_map
from libcpp.unordered_set cimport unordered_set
from libcpp.vector cimport vector

from . import _tables

ctypedef long long i64

cdef extern from *:
    """
    static inline long long trielect_pack(long long q, long long r) {
        return (q << 32) ^ (r & 0xffffffffLL);
    }
    """
    i64 trielect_pack(i64 q, i64 r) nogil

# ---- tables copied into C storage -------------------------------------------

cdef int EXP_TABLE[3][512]
cdef int C_TABLE[64]
cdef i64 EXT_DQ[3][8]
cdef i64 EXT_DR[3][8]
cdef int ABOVE_A[3]
cdef int ABOVE_B[3]
cdef int PAIR_A[3][8]
cdef int PAIR_B[3][8]
cdef int NPAIRS[3]
cdef i64 CDQ[6]
cdef i64 CDR[6]
cdef int CPAIR_A[6]
cdef int CPAIR_B[6]
# MOVE_* indexed by [code][axis+1]; axis -1 encodes "contracted".
cdef int MOVE_N[9][4]
cdef i64 MOVE_DQ[9][4][2]
cdef i64 MOVE_DR[9][4][2]

def _init_tables():
    cdef int a, k, code
    for a in range(3):
        table = _tables.EXPANDED_TABLE[a]
        for k in range(512):
            EXP_TABLE[a][k] = table[k]
        order = _tables.EXT_ORDER[a]
        for k in range(8):
            EXT_DQ[a][k] = order[k][0]
            EXT_DR[a][k] = order[k][1]
        ABOVE_A[a] = _tables.ABOVE_PAIR_INDEX[a][0]
        ABOVE_B[a] = _tables.ABOVE_PAIR_INDEX[a][1]
        pairs = _tables.PAIR_INDEX[a]
        NPAIRS[a] = len(pairs)
        for k in range(len(pairs)):
            PAIR_A[a][k] = pairs[k][0]
            PAIR_B[a][k] = pairs[k][1]
    for k in range(64):
        C_TABLE[k] = _tables.CONTRACTED_TABLE[k]
    for k in range(6):
        CDQ[k] = _tables.C_ORDER[k][0]
        CDR[k] = _tables.C_ORDER[k][1]
        CPAIR_A[k] = _tables.C_PAIR_INDEX[k][0]
        CPAIR_B[k] = _tables.C_PAIR_INDEX[k][1]
    for code in range(9):
        for a in range(-1, 3):
            offs = _tables.MOVES.get((code, a))
            MOVE_N[code][a + 1] = 0 if offs is None else len(offs)
            if offs is not None:
                for k in range(len(offs)):
                    MOVE_DQ[code][a + 1][k] = offs[k][0]
                    MOVE_DR[code][a + 1][k] = offs[k][1]

_init_tables()


def _rq_key(node):
    return (node[1], node[0])


cdef class SimState:
    """Mutable particle system; see the pure-Python twin for semantics."""

    cdef vector[i64] nq
    cdef vector[i64] nr
    cdef vector[int] nlen
    cdef unordered_map[i64, int] occ
    cdef vector[int] codes
    cdef public int active

    def __init__(self, node_lists):
        cdef int i = 0, j
        cdef i64 q, r, key
        for nodes in node_lists:
            if len(nodes) not in (1, 2):
                raise ValueError("a particle occupies one or two nodes")
            self.nlen.push_back(len(nodes))
            for node in nodes:
                q = node[0]
                r = node[1]
                key = trielect_pack(q, r)
                if self.occ.count(key):
                    raise ValueError(f"node {(q, r)} occupied twice")
                self.occ[key] = i
            self.nq.push_back(nodes[0][0]); self.nr.push_back(nodes[0][1])
            if len(nodes) == 1:
                self.nq.push_back(0); self.nr.push_back(0)
            else:
                self.nq.push_back(nodes[1][0]); self.nr.push_back(nodes[1][1])
            i += 1
        self.codes.resize(i)
        self.active = 0
        for j in range(i):
            self.codes[j] = self._decide(j)
            if self.codes[j]:
                self.active += 1

    cdef inline void _orient(self, int i, i64 *tq, i64 *tr, int *axis) nogil:
        cdef i64 aq = self.nq[2 * i], ar = self.nr[2 * i]
        cdef i64 bq, br, hq, hr
        if self.nlen[i] == 1:
            tq[0] = aq; tr[0] = ar; axis[0] = -1
            return
        bq = self.nq[2 * i + 1]; br = self.nr[2 * i + 1]
        if (ar > br) or (ar == br and aq > bq):
            hq = aq; hr = ar; tq[0] = bq; tr[0] = br
        else:
            hq = bq; hr = br; tq[0] = aq; tr[0] = ar
        if hr == tr[0]:
            axis[0] = 0
        elif hq == tq[0]:
            axis[0] = 1
        else:
            axis[0] = 2

    cdef int _decide(self, int i):
        cdef i64 tq, tr, na, nb
        cdef int axis, d, bits = 0, pair = 0
        self._orient(i, &tq, &tr, &axis)
        if axis < 0:
            for d in range(6):
                if self.occ.count(trielect_pack(tq + CDQ[d], tr + CDR[d])):
                    bits |= 1 << d
            return C_TABLE[bits]
        for d in range(8):
            if self.occ.count(trielect_pack(tq + EXT_DQ[axis][d], tr + EXT_DR[axis][d])):
                bits |= 1 << d
        if (bits >> ABOVE_A[axis] & 1) and (bits >> ABOVE_B[axis] & 1):
            na = trielect_pack(tq + EXT_DQ[axis][ABOVE_A[axis]], tr + EXT_DR[axis][ABOVE_A[axis]])
            nb = trielect_pack(tq + EXT_DQ[axis][ABOVE_B[axis]], tr + EXT_DR[axis][ABOVE_B[axis]])
            if self.occ[na] == self.occ[nb]:
                pair = 1
        return EXP_TABLE[axis][bits << 1 | pair]

    # -- queries --------------------------------------------------------------

    def __len__(self):
        return self.nlen.size()

    def nodes_of(self, int i):
        if self.nlen[i] == 1:
            return ((self.nq[2 * i], self.nr[2 * i]),)
        return (
            (self.nq[2 * i], self.nr[2 * i]),
            (self.nq[2 * i + 1], self.nr[2 * i + 1]),
        )

    def snapshot(self):
        return [self.nodes_of(i) for i in range(<int>self.nlen.size())]

    def move_code(self, int i):
        return self.codes[i]

    def activable(self):
        cdef int i
        out = []
        for i in range(<int>self.codes.size()):
            if self.codes[i]:
                out.append((i, self.codes[i]))
        return out

    def count_activable(self):
        return self.active

    def move_target(self, int i):
        cdef i64 tq, tr
        cdef int axis, code = self.codes[i], k, n
        if not code:
            return None
        self._orient(i, &tq, &tr, &axis)
        n = MOVE_N[code][axis + 1]
        nodes = []
        for k in range(n):
            nodes.append((tq + MOVE_DQ[code][axis + 1][k], tr + MOVE_DR[code][axis + 1][k]))
        nodes.sort(key=_rq_key)
        return tuple(nodes)

    def view_key(self, int i):
        cdef i64 tq, tr, na, nb
        cdef int axis, d, bits = 0, pairs = 0
        self._orient(i, &tq, &tr, &axis)
        if axis < 0:
            for d in range(6):
                if self.occ.count(trielect_pack(tq + CDQ[d], tr + CDR[d])):
                    bits |= 1 << d
            for d in range(6):
                if (bits >> CPAIR_A[d] & 1) and (bits >> CPAIR_B[d] & 1):
                    na = trielect_pack(tq + CDQ[CPAIR_A[d]], tr + CDR[CPAIR_A[d]])
                    nb = trielect_pack(tq + CDQ[CPAIR_B[d]], tr + CDR[CPAIR_B[d]])
                    if self.occ[na] == self.occ[nb]:
                        pairs |= 1 << d
            return 3 << 16 | bits << 8 | pairs
        for d in range(8):
            if self.occ.count(trielect_pack(tq + EXT_DQ[axis][d], tr + EXT_DR[axis][d])):
                bits |= 1 << d
        for d in range(NPAIRS[axis]):
            if (bits >> PAIR_A[axis][d] & 1) and (bits >> PAIR_B[axis][d] & 1):
                na = trielect_pack(tq + EXT_DQ[axis][PAIR_A[axis][d]], tr + EXT_DR[axis][PAIR_A[axis][d]])
                nb = trielect_pack(tq + EXT_DQ[axis][PAIR_B[axis][d]], tr + EXT_DR[axis][PAIR_B[axis][d]])
                if self.occ[na] == self.occ[nb]:
                    pairs |= 1 << d
        return axis << 16 | bits << 8 | pairs

    # -- mutation -------------------------------------------------------------

    def apply(self, int i):
        cdef int code = self.codes[i]
        if not code:
            raise ValueError(f"particle {i} is not activable")
        before = self.nodes_of(i)
        after = self.move_target(i)
        cdef i64 key, q, r
        cdef int d, pid, old, fresh
        for node in after:
            key = trielect_pack(node[0], node[1])
            if self.occ.count(key) and self.occ[key] != i:
                raise ValueError(f"target node {node} is occupied")
        for node in before:
            self.occ.erase(trielect_pack(node[0], node[1]))
        for node in after:
            self.occ[trielect_pack(node[0], node[1])] = i
        self.nlen[i] = len(after)
        self.nq[2 * i] = after[0][0]; self.nr[2 * i] = after[0][1]
        if len(after) == 2:
            self.nq[2 * i + 1] = after[1][0]; self.nr[2 * i + 1] = after[1][1]

        changed = set(before).symmetric_difference(after)
        cdef unordered_set[int] touched
        touched.insert(i)
        for node in changed:
            q = node[0]; r = node[1]
            key = trielect_pack(q, r)
            if self.occ.count(key):
                touched.insert(self.occ[key])
            for d in range(6):
                key = trielect_pack(q + CDQ[d], r + CDR[d])
                if self.occ.count(key):
                    touched.insert(self.occ[key])
        undo_codes = []
        for pid in sorted(touched):
            old = self.codes[pid]
            fresh = self._decide(pid)
            if fresh != old:
                undo_codes.append((pid, old))
                self.codes[pid] = fresh
                self.active += (1 if fresh else 0) - (1 if old else 0)
        return (i, before, after, code, undo_codes)

    def revert(self, record):
        cdef int i = record[0], cur, old, pid
        before = record[1]
        after = record[2]
        for node in after:
            self.occ.erase(trielect_pack(node[0], node[1]))
        for node in before:
            self.occ[trielect_pack(node[0], node[1])] = i
        self.nlen[i] = len(before)
        self.nq[2 * i] = before[0][0]; self.nr[2 * i] = before[0][1]
        if len(before) == 2:
            self.nq[2 * i + 1] = before[1][0]; self.nr[2 * i + 1] = before[1][1]
        for pid, old in record[4]:
            cur = self.codes[pid]
            self.active += (1 if old else 0) - (1 if cur else 0)
            self.codes[pid] = old

    # -- global measures --------------------------------------------------------

    def is_connected(self):
        if self.occ.size() == 0:
            return True
        cdef vector[i64] stack
        cdef unordered_set[i64] seen
        cdef i64 cur, q, r, nb
        cdef int d
        cdef i64 start = trielect_pack(self.nq[0], self.nr[0])
        stack.push_back(start)
        seen.insert(start)
        while stack.size() > 0:
            cur = stack.back(); stack.pop_back()
            q = cur >> 32
            r = <i64>(<int>(cur & 0xffffffffLL))
            for d in range(6):
                nb = trielect_pack(q + CDQ[d], r + CDR[d])
                if self.occ.count(nb) and not seen.count(nb):
                    seen.insert(nb)
                    stack.push_back(nb)
        return seen.size() == self.occ.size()

    def progress(self, i64 r_max, i64 q_max):
        cdef i64 p1 = 0, p2 = 0
        cdef int p3 = 0, p4 = 0, p5 = 0
        cdef i64 tq, tr, hq, hr
        cdef int i, axis
        for i in range(<int>self.nlen.size()):
            self._orient(i, &tq, &tr, &axis)
            if axis < 0:
                hq = tq; hr = tr
            elif axis == 0:
                hq = tq + 1; hr = tr
            elif axis == 1:
                hq = tq; hr = tr + 1
            else:
                hq = tq - 1; hr = tr + 1
            p1 += r_max - hr
            p2 += q_max - hq
            if axis == 0:
                p5 += 1
            elif axis > 0:
                p3 += 1
                if self._blocking(tq, tr):
                    p4 += 1
        return (p1, p2, p3, p4, p5)

    cdef bint _blocking(self, i64 tq, i64 tr):
        cdef i64 ka, kb
        ka = trielect_pack(tq, tr - 1)
        kb = trielect_pack(tq + 1, tr - 1)
        if self.occ.count(ka) and self.occ.count(kb) and self.occ[ka] == self.occ[kb]:
            return True
        ka = trielect_pack(tq - 1, tr + 1)
        kb = trielect_pack(tq, tr + 1)
        if self.occ.count(ka) and self.occ.count(kb) and self.occ[ka] == self.occ[kb]:
            return True
        return False

    def canonical_key(self):
        cdef int i
        nodes = []
        for i in range(<int>self.nlen.size()):
            nodes.extend(self.nodes_of(i))
        min_r = min(r for _, r in nodes)
        min_q = min(q for q, r in nodes if r == min_r)
        forms = sorted(
            tuple(sorted(((q - min_q, r - min_r) for q, r in self.nodes_of(i)),
                         key=_rq_key))
            for i in range(<int>self.nlen.size())
        )
        return tuple(forms)
