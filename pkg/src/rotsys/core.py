"""Immutable rotation-system data model.

A rotation system assigns to every element of a finite ordered ground set a
cyclic order of the remaining elements.  Ground elements are arbitrary
distinct positive integers (not necessarily 1..n); induced subsystems keep
their original labels.

Cyclic orders are plain tuples held in canonical linearization (rotated so
the smallest entry comes first), which makes equality, hashing and file
output deterministic.  Internally a system stores its rotations as rows of
dense indices 0..n-1 so that enumeration and search code can work on packed
integers; every public interface speaks labels.

Everything in this module is a pure function over immutable values.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence


class RotationError(Exception):
    """Base class for all domain errors raised by this package."""


class DuplicateLabelError(RotationError):
    """A label occurs twice where labels must be distinct."""


class SelfReferenceError(RotationError):
    """A rotation mentions the element it is attached to."""


class LabelSetError(RotationError):
    """A rotation is not a permutation of the other ground labels."""


class InvalidLabelError(RotationError):
    """A ground label is not a positive integer."""


class UnknownLabelError(RotationError):
    """A label is not part of the ground set."""


class EmptySubsetError(RotationError):
    """An induced subsystem needs at least one ground element."""


class PreconditionError(RotationError):
    """A documented operation precondition does not hold."""


class SizeOutOfRangeError(RotationError):
    """A size argument falls outside the supported range."""


def canonical_cycle(entries: Sequence[int]) -> tuple[int, ...]:
    """Rotate a cyclic sequence so that its smallest entry comes first.

    Two tuples represent the same cyclic order iff their canonical forms are
    identical.  Applying this twice equals applying it once.
    """
    t = tuple(entries)
    if len(t) <= 1:
        return t
    k = t.index(min(t))
    return t[k:] + t[:k]


def cycles_equal(a: Sequence[int], b: Sequence[int]) -> bool:
    """Whether two sequences denote the same cyclic order."""
    return canonical_cycle(a) == canonical_cycle(b)


@dataclass(frozen=True, slots=True)
class RotationSystem:
    """A rotation system in canonical form.

    ``labels`` is the ground set in strictly ascending order.  ``rows[p]``
    is the cyclic order attached to ``labels[p]``, stored over dense indices
    (entry ``q`` stands for ``labels[q]``) in canonical linearization.
    Because ``labels`` is ascending, the dense order agrees with the label
    order, so canonicalizing over indices and over labels coincide.

    Instances are produced by :func:`validate` and by the constructors in
    this package; ``RotationSystem(...)`` itself trusts its arguments.
    """

    labels: tuple[int, ...]
    rows: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def degenerate(self) -> bool:
        """True when rotations have fewer than two entries (size < 3)."""
        return len(self.labels) < 3

    def position(self, label: int) -> int:
        """Dense index of ``label``; raises UnknownLabelError if absent."""
        i = bisect_left(self.labels, label)
        if i == len(self.labels) or self.labels[i] != label:
            raise UnknownLabelError(f"label {label} is not a ground element")
        return i

    def rotation(self, label: int) -> tuple[int, ...]:
        """Cyclic order at ``label`` as labels, canonical linearization."""
        labs = self.labels
        return tuple(labs[q] for q in self.rows[self.position(label)])

    def rotations(self) -> dict[int, tuple[int, ...]]:
        """All rotations keyed by label, in ascending label order."""
        labs = self.labels
        return {
            labs[p]: tuple(labs[q] for q in row)
            for p, row in enumerate(self.rows)
        }

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        body = ", ".join(
            f"{lab}:{list(rot)}" for lab, rot in self.rotations().items()
        )
        return f"RotationSystem({body})"


def validate(raw: Mapping[int, Sequence[int]]) -> RotationSystem:
    """Build a rotation system from one label sequence per ground element.

    Accepts exactly those inputs where every sequence is a permutation of
    the other ground labels; rotations are normalized to canonical
    linearization.  Degenerate sizes (1 and 2 elements, with empty or
    single-entry rotations) are accepted.
    """
    if not raw:
        raise EmptySubsetError("a rotation system needs at least one element")
    for label in raw:
        if not isinstance(label, int) or isinstance(label, bool) or label < 1:
            raise InvalidLabelError(f"ground labels must be positive integers, got {label!r}")
    labels = tuple(sorted(raw))
    ground = set(labels)
    index = {lab: p for p, lab in enumerate(labels)}
    rows = []
    for lab in labels:
        entries = tuple(raw[lab])
        if lab in entries:
            raise SelfReferenceError(f"rotation of {lab} mentions {lab} itself")
        if len(set(entries)) != len(entries):
            raise DuplicateLabelError(f"rotation of {lab} repeats a label")
        if set(entries) != ground - {lab}:
            raise LabelSetError(
                f"rotation of {lab} is not a permutation of the other labels"
            )
        rows.append(canonical_cycle(tuple(index[x] for x in entries)))
    return RotationSystem(labels, tuple(rows))


def induce(system: RotationSystem, subset: Iterable[int]) -> RotationSystem:
    """Rotation subsystem inherited by ``subset`` of the ground set.

    Each rotation is the original cyclic order with all labels outside the
    subset deleted, re-canonicalized.  Labels are kept as-is.
    """
    labs = tuple(sorted(set(subset)))
    if not labs:
        raise EmptySubsetError("cannot induce on an empty subset")
    old_pos = [system.position(lab) for lab in labs]
    new_of_old = {p: q for q, p in enumerate(old_pos)}
    rows = tuple(
        canonical_cycle(
            tuple(new_of_old[q] for q in system.rows[p] if q in new_of_old)
        )
        for p in old_pos
    )
    return RotationSystem(labs, rows)


def invert(system: RotationSystem) -> RotationSystem:
    """Reverse every cyclic order; an involution on rotation systems."""
    rows = tuple(canonical_cycle(tuple(reversed(row))) for row in system.rows)
    return RotationSystem(system.labels, rows)


@dataclass(frozen=True, slots=True)
class Relabelling:
    """A bijection between two equal-size label sets.

    ``pairs`` lists (source, image) with sources strictly ascending.
    """

    pairs: tuple[tuple[int, int], ...]

    @classmethod
    def from_mapping(cls, mapping: Mapping[int, int]) -> "Relabelling":
        pairs = tuple(sorted(mapping.items()))
        images = [img for _, img in pairs]
        if len(set(images)) != len(images):
            raise DuplicateLabelError("relabelling images must be distinct")
        return cls(pairs)

    def as_dict(self) -> dict[int, int]:
        return dict(self.pairs)

    def apply(self, label: int) -> int:
        for src, img in self.pairs:
            if src == label:
                return img
        raise UnknownLabelError(f"label {label} not in relabelling domain")

    def inverse(self) -> "Relabelling":
        return Relabelling(tuple(sorted((img, src) for src, img in self.pairs)))

    @property
    def image_tuple(self) -> tuple[int, ...]:
        """Images listed by ascending source label; the tie-break key."""
        return tuple(img for _, img in self.pairs)


def relabel(system: RotationSystem, mapping: Mapping[int, int]) -> RotationSystem:
    """Apply a bijective relabelling to every ground element and rotation."""
    if sorted(mapping) != list(system.labels):
        raise PreconditionError("relabelling domain must equal the ground set")
    images = list(mapping.values())
    if len(set(images)) != len(images):
        raise DuplicateLabelError("relabelling images must be distinct")
    raw = {
        mapping[lab]: tuple(mapping[x] for x in rot)
        for lab, rot in system.rotations().items()
    }
    return validate(raw)


def order_preserving_relabelling(
    source: Sequence[int], target: Sequence[int]
) -> Relabelling:
    """The unique order-preserving bijection between two sorted label sets."""
    src = tuple(sorted(set(source)))
    dst = tuple(sorted(set(target)))
    if len(src) != len(dst):
        raise PreconditionError("label sets must have equal size")
    return Relabelling(tuple(zip(src, dst)))


def order_equivalent(a: RotationSystem, b: RotationSystem) -> bool:
    """Whether the order-preserving relabelling of ``b`` equals ``a``.

    This is the restricted reading of equivalence used by the extraction
    pipeline; :func:`equivalent` is the unrestricted one.  Dense rows encode
    a system up to the order-preserving relabelling, so comparing them
    decides the question directly.
    """
    return a.size == b.size and a.rows == b.rows


def equivalent(a: RotationSystem, b: RotationSystem) -> Relabelling | None:
    """Find a relabelling of ``b``'s ground elements that turns it into ``a``.

    Returns a witness bijection, or None when the systems are inequivalent
    (size mismatch included).  The search fixes the image of ``b``'s
    smallest element and propagates along its rotation, so only
    ``n * (n - 1)`` candidate bijections are ever verified instead of
    ``n!``.  When several witnesses exist the one with the lexicographically
    smallest image sequence (by ascending source label) is returned, which
    in particular yields the identity whenever it is a witness.
    """
    if a.size != b.size:
        return None
    n = a.size
    x0 = b.labels[0]
    rot_b0 = b.rotation(x0)
    k = n - 1
    best_imgs: tuple[int, ...] | None = None
    best_phi: dict[int, int] | None = None
    for y0 in a.labels:
        rot_a0 = a.rotation(y0)
        if k == 0:
            candidates = [{x0: y0}]
        elif k == 1:
            candidates = [{x0: y0, rot_b0[0]: rot_a0[0]}]
        else:
            candidates = []
            for off in range(k):
                phi = {x0: y0}
                for i, x in enumerate(rot_b0):
                    phi[x] = rot_a0[(off + i) % k]
                candidates.append(phi)
        for phi in candidates:
            if _is_witness(a, b, phi):
                imgs = tuple(phi[x] for x in b.labels)
                if best_imgs is None or imgs < best_imgs:
                    best_imgs, best_phi = imgs, phi
    if best_phi is None:
        return None
    return Relabelling.from_mapping(best_phi)


def _is_witness(a: RotationSystem, b: RotationSystem, phi: Mapping[int, int]) -> bool:
    """Check that applying ``phi`` entrywise to ``b`` yields exactly ``a``."""
    try:
        positions = {lab: a.position(phi[lab]) for lab in b.labels}
    except UnknownLabelError:
        return False
    for lab in b.labels:
        image_rot = tuple(phi[x] for x in b.rotation(lab))
        p = positions[lab]
        target = tuple(a.labels[q] for q in a.rows[p])
        if canonical_cycle(image_rot) != target:
            return False
    return True
