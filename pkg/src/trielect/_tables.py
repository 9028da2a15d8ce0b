"""Precomputed decision tables for the simulation kernels.

A particle's decision depends only on its shape, the occupancy of the
surrounding nodes and, for one specific rule, whether the two nodes right
above the tail belong to one expanded particle. That input space is tiny
(3 orientations x 256 occupancy patterns x 2 pairing bits, plus 64
contracted patterns), so the full decision function of
:mod:`trielect.algorithm` is tabulated once at import and the kernels
reduce a decision to bit gathering plus one table lookup.
"""

from __future__ import annotations

from .algorithm import (
    ADJ_PAIRS,
    EXT_OFFSETS,
    HEAD_OFFSET,
    HIGHER_COMMON,
    LOWER_COMMON,
    ORIGIN,
    PAIR_ABOVE_TAIL,
    Cond,
    LocalView,
    evaluate,
)
from .grid import DIRECTIONS, Axis, Node

# Move codes: 0 = inert, everything else names a condition plus, where the
# condition has two possible targets, which target was chosen.
NONE_CODE = 0
E1_CODE = 1
E2_CODE = 2
E3_D1_CODE = 3
E3_D2_CODE = 4
E4_CODE = 5
C1_D1_CODE = 6
C1_D2_CODE = 7
C2_CODE = 8

COND_OF_CODE: dict[int, Cond] = {
    E1_CODE: Cond.E1,
    E2_CODE: Cond.E2,
    E3_D1_CODE: Cond.E3,
    E3_D2_CODE: Cond.E3,
    E4_CODE: Cond.E4,
    C1_D1_CODE: Cond.C1,
    C1_D2_CODE: Cond.C1,
    C2_CODE: Cond.C2,
}

#: Tail-relative offsets occupied after a move, keyed by (code, axis).
MOVE_OFFSETS: dict[tuple[int, Axis | None], tuple[Node, ...]] = {}
for _axis in Axis:
    MOVE_OFFSETS[(E1_CODE, _axis)] = (HEAD_OFFSET[_axis],)
    MOVE_OFFSETS[(E2_CODE, _axis)] = (HEAD_OFFSET[_axis], LOWER_COMMON[_axis])
    MOVE_OFFSETS[(E3_D1_CODE, _axis)] = (ORIGIN, DIRECTIONS[1])
    MOVE_OFFSETS[(E3_D2_CODE, _axis)] = (ORIGIN, DIRECTIONS[2])
    MOVE_OFFSETS[(E4_CODE, _axis)] = (HEAD_OFFSET[_axis], HIGHER_COMMON[_axis])
for _code, _target in ((C1_D1_CODE, DIRECTIONS[1]), (C1_D2_CODE, DIRECTIONS[2]), (C2_CODE, DIRECTIONS[0])):
    MOVE_OFFSETS[(_code, None)] = (ORIGIN, _target)


def _code_of(decision) -> int:
    if decision is None:
        return NONE_CODE
    cond, offs = decision.condition, decision.offsets_after
    if cond is Cond.E1:
        return E1_CODE
    if cond is Cond.E2:
        return E2_CODE
    if cond is Cond.E3:
        return E3_D1_CODE if offs[1] == DIRECTIONS[1] else E3_D2_CODE
    if cond is Cond.E4:
        return E4_CODE
    if cond is Cond.C1:
        return C1_D1_CODE if offs[1] == DIRECTIONS[1] else C1_D2_CODE
    return C2_CODE


def _build_expanded_table() -> list[list[int]]:
    tables = []
    for axis in Axis:
        ext = EXT_OFFSETS[axis]
        own = frozenset((ORIGIN, HEAD_OFFSET[axis]))
        above = PAIR_ABOVE_TAIL
        table = [NONE_CODE] * 512
        for occ_bits in range(256):
            occupied = frozenset(
                off for i, off in enumerate(ext) if occ_bits >> i & 1
            )
            for pair_bit in (0, 1):
                if pair_bit and not (above[0] in occupied and above[1] in occupied):
                    # Unreachable key: pairing needs both nodes occupied.
                    table[occ_bits << 1 | 1] = table[occ_bits << 1]
                    continue
                view = LocalView(
                    axis=axis,
                    occupied=occupied | own,
                    pairs=frozenset({above}) if pair_bit else frozenset(),
                )
                table[occ_bits << 1 | pair_bit] = _code_of(evaluate(view))
        tables.append(table)
    return tables


def _build_contracted_table() -> list[int]:
    table = [NONE_CODE] * 64
    for occ_bits in range(64):
        occupied = frozenset(
            DIRECTIONS[d] for d in range(6) if occ_bits >> d & 1
        )
        view = LocalView(axis=None, occupied=occupied, pairs=frozenset())
        table[occ_bits] = _code_of(evaluate(view))
    return table


#: EXPANDED_TABLE[axis][occ_bits << 1 | pair_bit] -> move code.
EXPANDED_TABLE: list[list[int]] = _build_expanded_table()

#: CONTRACTED_TABLE[occ_bits] -> move code (bit d = neighbour in direction d).
CONTRACTED_TABLE: list[int] = _build_contracted_table()

# Plain-int geometry the kernels iterate over.
EXT_ORDER: dict[int, tuple[tuple[int, int], ...]] = {
    int(a): tuple((n.q, n.r) for n in EXT_OFFSETS[a]) for a in Axis
}
ABOVE_PAIR_INDEX: dict[int, tuple[int, int]] = {
    int(a): (
        EXT_OFFSETS[a].index(PAIR_ABOVE_TAIL[0]),
        EXT_OFFSETS[a].index(PAIR_ABOVE_TAIL[1]),
    )
    for a in Axis
}
PAIR_INDEX: dict[int, tuple[tuple[int, int], ...]] = {
    int(a): tuple(
        (EXT_OFFSETS[a].index(p[0]), EXT_OFFSETS[a].index(p[1]))
        for p in ADJ_PAIRS[a]
    )
    for a in Axis
}
C_ORDER: tuple[tuple[int, int], ...] = tuple((d.q, d.r) for d in DIRECTIONS)
C_PAIR_INDEX: tuple[tuple[int, int], ...] = tuple(
    (d, (d + 1) % 6) for d in range(6)
)
MOVES: dict[tuple[int, int], tuple[tuple[int, int], ...]] = {
    (code, -1 if axis is None else int(axis)): tuple((n.q, n.r) for n in offs)
    for (code, axis), offs in MOVE_OFFSETS.items()
}
