"""The four canonical families and the direction-pair to family mapping.

The convex system on {1..m} gives every element the ascending cyclic order
of the other labels.  The twisted system lists the larger labels descending
followed by the smaller labels ascending.  Together with their inverses
these are the four targets of the extraction pipeline.

A separated system in which every larger block runs in direction X and
every smaller block in direction Y is uniquely determined, and the family
it equals is fixed by the (X, Y) cell:

    (INC, INC) -> convex        (DEC, INC) -> twisted
    (DEC, DEC) -> convex inv    (INC, DEC) -> twisted inv

This table is locked in by golden tests that classify the four families
directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .core import RotationSystem, canonical_cycle, invert
from .structure import Direction


class FamilyTag(Enum):
    C = "C"
    T = "T"
    C_INV = "Cinv"
    T_INV = "Tinv"

    def __repr__(self) -> str:  # pragma: no cover
        return self.name


#: Deterministic preference order used by every tie-break in this package.
FAMILY_ORDER: tuple[FamilyTag, ...] = (
    FamilyTag.C,
    FamilyTag.T,
    FamilyTag.C_INV,
    FamilyTag.T_INV,
)


@dataclass(frozen=True, slots=True)
class MonotoneClass:
    """One cell of the direction pigeonhole: a (forward, backward) pair."""

    forward: Direction
    backward: Direction


_CLASS_TO_FAMILY = {
    MonotoneClass(Direction.INC, Direction.INC): FamilyTag.C,
    MonotoneClass(Direction.DEC, Direction.INC): FamilyTag.T,
    MonotoneClass(Direction.DEC, Direction.DEC): FamilyTag.C_INV,
    MonotoneClass(Direction.INC, Direction.DEC): FamilyTag.T_INV,
}
_FAMILY_TO_CLASS = {tag: cls for cls, tag in _CLASS_TO_FAMILY.items()}

#: Cells listed in family preference order.
CLASS_ORDER: tuple[MonotoneClass, ...] = tuple(
    _FAMILY_TO_CLASS[tag] for tag in FAMILY_ORDER
)


def _check_size(m: int) -> None:
    if not isinstance(m, int) or isinstance(m, bool) or m < 1:
        raise ValueError(f"family size must be a positive integer, got {m!r}")


def canonical_c(m: int) -> RotationSystem:
    """Convex system on {1..m}: every rotation ascending.

    Sizes 1 and 2 are accepted and produce degenerate systems (empty or
    single-entry rotations); downstream predicates treat those blocks as
    vacuously monotone.
    """
    _check_size(m)
    labels = tuple(range(1, m + 1))
    rows = tuple(
        tuple(q for q in range(m) if q != p) for p in range(m)
    )
    return RotationSystem(labels, rows)


def canonical_t(m: int) -> RotationSystem:
    """Twisted system on {1..m}: larger labels descending, then smaller ascending."""
    _check_size(m)
    labels = tuple(range(1, m + 1))
    rows = []
    for i in range(1, m + 1):
        seq = list(range(m, i, -1)) + list(range(1, i))
        rows.append(canonical_cycle(tuple(x - 1 for x in seq)))
    return RotationSystem(labels, tuple(rows))


def canonical_of(tag: FamilyTag, m: int) -> RotationSystem:
    """Dispatch over the four families."""
    if tag is FamilyTag.C:
        return canonical_c(m)
    if tag is FamilyTag.T:
        return canonical_t(m)
    if tag is FamilyTag.C_INV:
        return invert(canonical_c(m))
    if tag is FamilyTag.T_INV:
        return invert(canonical_t(m))
    raise ValueError(f"unknown family tag {tag!r}")


def family_of_class(cell: MonotoneClass) -> FamilyTag:
    """Family a separated, uniformly (forward, backward)-directed system equals."""
    return _CLASS_TO_FAMILY[cell]


def class_of_family(tag: FamilyTag) -> MonotoneClass:
    """Inverse of :func:`family_of_class`."""
    return _FAMILY_TO_CLASS[tag]
