"""Hand-worked rule scenarios.

Each case pins down which condition fires for a focus particle in a small
hand-built configuration, and the exact nodes it occupies afterwards.
Expected values were derived on paper from the rule definitions (view
graphs drawn by hand), not from running the implementation; the inert
cases double as shape witnesses for the terminal-configuration checker.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional


@dataclass(frozen=True)
class RuleCase:
    name: str
    particles: tuple
    expect: Optional[str]  # condition value, or None when the focus is inert
    after: Optional[tuple]  # focus nodes after the move, sorted by (r, q)
    focus: int = 0


HORIZONTAL = ((0, 0), (1, 0))  # tail (0,0), head (1,0)
DIAG = ((0, 0), (0, 1))  # tail (0,0), head (0,1)

RULE_CASES = [
    # --- horizontally expanded focus -------------------------------------
    RuleCase(
        "horizontal/head-side-neighbour-contracts",
        (HORIZONTAL, ((2, 0),)),
        "E1",
        ((1, 0),),
    ),
    RuleCase(
        "horizontal/lower-left-neighbour-slides-head-down",
        (HORIZONTAL, ((-1, 1),)),
        "E2",
        ((1, 0), (0, 1)),
    ),
    RuleCase(
        "horizontal/lower-chain-reaches-head-contracts",
        (HORIZONTAL, ((-1, 1),), ((0, 1),)),
        "E1",
        ((1, 0),),
    ),
    RuleCase(
        "horizontal/full-left-arc-contracts",
        (HORIZONTAL, ((-1, 0),), ((-1, 1),), ((0, 1),)),
        "E1",
        ((1, 0),),
    ),
    RuleCase(
        "horizontal/left-and-lower-left-slide-head-down",
        (HORIZONTAL, ((-1, 0),), ((-1, 1),)),
        "E2",
        ((1, 0), (0, 1)),
    ),
    RuleCase(
        "horizontal/left-plus-below-tail-occupied-slides-tail-left-down",
        (HORIZONTAL, ((-1, 0),), ((0, 1),)),
        "E3",
        ((0, 0), (-1, 1)),
    ),
    RuleCase(
        "horizontal/left-plus-below-head-occupied-slides-head-down",
        (HORIZONTAL, ((-1, 0),), ((1, 1),)),
        "E3",
        ((0, 0), (0, 1)),
    ),
    RuleCase(
        "horizontal/upper-arc-rejoins-head-contracts",
        (HORIZONTAL, ((-1, 0),), ((1, 1),), ((0, -1),), ((1, -1),)),
        "E1",
        ((1, 0),),
    ),
    RuleCase(
        "horizontal/only-left-neighbour-is-stuck",
        (HORIZONTAL, ((-1, 0),)),
        None,
        None,
    ),
    RuleCase(
        "horizontal/only-upper-neighbour-is-stuck",
        (HORIZONTAL, ((0, -1),)),
        None,
        None,
    ),
    # --- diagonally expanded focus ----------------------------------------
    RuleCase(
        "diagonal/right-neighbour-contracts",
        (DIAG, ((1, 0),)),
        "E1",
        ((0, 1),),
    ),
    RuleCase(
        "diagonal/left-pair-reaches-head-contracts",
        (DIAG, ((-1, 0),), ((-1, 1),)),
        "E1",
        ((0, 1),),
    ),
    RuleCase(
        "diagonal/left-neighbour-slides-tail-down",
        (DIAG, ((-1, 0),)),
        "E2",
        ((-1, 1), (0, 1)),
    ),
    RuleCase(
        "diagonal/blocked-by-expanded-pair-above-sidesteps",
        (((0, 1), (0, 2)), ((0, 0), (1, 0))),
        "E4",
        ((1, 1), (0, 2)),
    ),
    RuleCase(
        "diagonal/pair-above-but-sidestep-target-occupied-contracts",
        (DIAG, ((0, -1), (1, -1)), ((1, 0),)),
        "E1",
        ((0, 1),),
    ),
    RuleCase(
        "diagonal/two-separate-upper-neighbours-do-not-pair",
        (DIAG, ((0, -1),), ((1, -1),)),
        None,
        None,
    ),
    # --- contracted focus ---------------------------------------------------
    RuleCase(
        "contracted/one-lower-right-occupied-expands-lower-left",
        (((0, 0),), ((0, 1),)),
        "C1",
        ((0, 0), (-1, 1)),
    ),
    RuleCase(
        "contracted/one-lower-left-occupied-expands-lower-right",
        (((0, 0),), ((-1, 1),)),
        "C1",
        ((0, 0), (0, 1)),
    ),
    RuleCase(
        "contracted/upper-right-occupied-expands-right",
        (((0, 0),), ((1, -1),)),
        "C2",
        ((0, 0), (1, 0)),
    ),
    RuleCase(
        "contracted/both-lower-occupied-still-expands-right",
        (((0, 0),), ((0, 1),), ((-1, 1),), ((1, -1),)),
        "C2",
        ((0, 0), (1, 0)),
    ),
    RuleCase(
        "contracted/right-occupied-blocks-sideways-move",
        (((0, 0),), ((1, -1),), ((1, 0),)),
        None,
        None,
    ),
    RuleCase(
        "contracted/isolated-is-stuck",
        (((0, 0),),),
        None,
        None,
    ),
    RuleCase(
        "contracted/two-lower-neighbours-without-upper-right-is-stuck",
        (((0, 0),), ((0, 1),), ((-1, 1),)),
        None,
        None,
    ),
]

# Companion activations in the same configurations: when the focus particle
# above is stuck or blocked, some neighbour is the one that must move.
COMPANION_CASES = [
    RuleCase(
        "companion/contracted-above-head-expands-right-past-the-pair",
        (HORIZONTAL, ((-1, 0),), ((0, 1),)),
        "C2",
        ((0, 1), (1, 1)),
        focus=2,
    ),
    RuleCase(
        "companion/contracted-above-tail-expands-down",
        (HORIZONTAL, ((0, -1),)),
        "C1",
        ((0, -1), (-1, 0)),
        focus=1,
    ),
    RuleCase(
        "companion/diagonal-on-lower-common-node-sidesteps",
        (HORIZONTAL, ((-1, 0),), ((0, 1), (0, 2))),
        "E4",
        ((1, 1), (0, 2)),
        focus=2,
    ),
]

# One connected configuration in which every condition fires somewhere
# (found by search, then every line re-derived by hand from the rules).
ALL_CONDITIONS_CONFIG = (
    ((0, -2),),
    ((0, -1), (1, -1)),
    ((0, 0), (-1, 1)),
    ((0, 1), (-1, 2)),
    ((1, 1),),
    ((2, 1), (1, 2)),
    ((-3, 3), (-2, 3)),
    ((0, 3),),
)

ALL_CONDITIONS_EXPECTED = {
    0: "C1",  # lower-right neighbour only
    1: "E3",  # lower common node taken, tail slides down-left
    2: "E4",  # expanded pair right above the tail, sidestep node free
    3: "E2",  # stranded right neighbour rejoins through the lower common node
    4: "C1",  # lower-right neighbour only
    5: "E1",  # both neighbours already touch the head
    6: "E1",  # single neighbour touches the head
    7: "C2",  # upper-right neighbour, right node free
}
