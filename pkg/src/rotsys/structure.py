"""Separated decomposition and per-element monotonicity classification.

A rotation at element j is *separated* when the labels smaller than j occupy
one contiguous cyclic arc, so the rotation can be written as a block of
smaller labels followed by a block of larger labels.  On a separated
rotation the smaller block can be ascending or descending (backward
increasing / decreasing) and likewise the larger block (forward increasing /
decreasing).

Blocks of length <= 1 are treated as both increasing and decreasing (the
wildcard convention); for the extreme elements, whose opposite block is
empty, monotonicity is decided by comparing the whole rotation against the
ascending and descending cycles directly, since a cyclic order has no
canonical starting point.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .core import RotationSystem, canonical_cycle


class Direction(Enum):
    INC = "inc"
    DEC = "dec"

    def __repr__(self) -> str:  # pragma: no cover
        return self.name


BOTH_DIRECTIONS = frozenset({Direction.INC, Direction.DEC})
NO_DIRECTION: frozenset[Direction] = frozenset()


@dataclass(frozen=True, slots=True)
class SeparatedSplit:
    """The (smaller block, larger block) decomposition of one rotation.

    ``sigma`` holds the labels below ``owner`` and ``tau`` those above, both
    read in rotation direction; their concatenation, read cyclically, equals
    the owner's rotation.  When one block is empty the other is linearized
    starting at its minimum entry (the canonical cut).
    """

    owner: int
    sigma: tuple[int, ...]
    tau: tuple[int, ...]


@dataclass(frozen=True, slots=True)
class ElementClass:
    """Structural flags of one element: separated plus direction sets.

    ``backward`` / ``forward`` hold every direction the smaller / larger
    block satisfies; they are nonempty only for separated elements and
    contain both directions for blocks of length <= 1.
    """

    separated: bool
    backward: frozenset[Direction]
    forward: frozenset[Direction]


def separated_split(system: RotationSystem, label: int) -> SeparatedSplit | None:
    """Split the rotation at ``label`` into its smaller and larger blocks.

    Returns None when the smaller labels are not cyclically contiguous.
    When both blocks are nonempty the split is unique: the smaller-labels
    arc determines the cut.
    """
    rot = system.rotation(label)
    length = len(rot)
    flags = [x < label for x in rot]
    k = sum(flags)
    if k == 0:
        return SeparatedSplit(label, (), rot)
    if k == length:
        return SeparatedSplit(label, rot, ())
    starts = [i for i in range(length) if flags[i] and not flags[i - 1]]
    if len(starts) != 1:
        return None
    p = starts[0]
    sigma = tuple(rot[(p + i) % length] for i in range(k))
    tau = tuple(rot[(p + k + i) % length] for i in range(length - k))
    return SeparatedSplit(label, sigma, tau)


def _linear_directions(seq: tuple[int, ...]) -> frozenset[Direction]:
    if len(seq) <= 1:
        return BOTH_DIRECTIONS
    if all(a < b for a, b in zip(seq, seq[1:])):
        return frozenset({Direction.INC})
    if all(a > b for a, b in zip(seq, seq[1:])):
        return frozenset({Direction.DEC})
    return NO_DIRECTION


def _cyclic_directions(cycle: tuple[int, ...]) -> frozenset[Direction]:
    # Used when the opposite block is empty and the cut is arbitrary: the
    # block is monotone iff the cycle itself equals the ascending or the
    # descending cycle of its entries.
    asc = tuple(sorted(cycle))
    out = set()
    if canonical_cycle(cycle) == asc:
        out.add(Direction.INC)
    if canonical_cycle(cycle) == canonical_cycle(tuple(reversed(asc))):
        out.add(Direction.DEC)
    return frozenset(out)


def classify_element(system: RotationSystem, label: int) -> ElementClass:
    """Separatedness plus backward/forward direction sets for one element."""
    split = separated_split(system, label)
    if split is None:
        return ElementClass(False, NO_DIRECTION, NO_DIRECTION)
    if not split.sigma:
        backward = BOTH_DIRECTIONS
        forward = _cyclic_directions(split.tau) if split.tau else BOTH_DIRECTIONS
    elif not split.tau:
        forward = BOTH_DIRECTIONS
        backward = _cyclic_directions(split.sigma)
    else:
        backward = _linear_directions(split.sigma)
        forward = _linear_directions(split.tau)
    return ElementClass(True, backward, forward)


def classify(system: RotationSystem) -> dict[int, ElementClass]:
    """Per-element classification for the whole system."""
    return {lab: classify_element(system, lab) for lab in system.labels}


def row_separated(row: tuple[int, ...], position: int) -> bool:
    """Dense-index separated test: entries below ``position`` form one arc.

    Fast path used by the sieves; equivalent to
    ``separated_split(system, labels[position]) is not None``.
    """
    if not row:
        return True
    boundaries = 0
    prev = row[-1] < position
    for q in row:
        cur = q < position
        if cur and not prev:
            boundaries += 1
            if boundaries > 1:
                return False
        prev = cur
    return True


def is_separated(system: RotationSystem) -> bool:
    return all(row_separated(row, p) for p, row in enumerate(system.rows))


def is_forward_monotone(system: RotationSystem) -> bool:
    """Every larger block individually ascending or descending."""
    return all(classify_element(system, lab).forward for lab in system.labels)


def is_backward_monotone(system: RotationSystem) -> bool:
    return all(classify_element(system, lab).backward for lab in system.labels)


def is_forward_increasing(system: RotationSystem) -> bool:
    return all(
        Direction.INC in classify_element(system, lab).forward
        for lab in system.labels
    )


def is_forward_decreasing(system: RotationSystem) -> bool:
    return all(
        Direction.DEC in classify_element(system, lab).forward
        for lab in system.labels
    )


def is_backward_increasing(system: RotationSystem) -> bool:
    return all(
        Direction.INC in classify_element(system, lab).backward
        for lab in system.labels
    )


def is_backward_decreasing(system: RotationSystem) -> bool:
    return all(
        Direction.DEC in classify_element(system, lab).backward
        for lab in system.labels
    )
