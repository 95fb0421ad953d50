"""Greedy sieves, the pigeonhole extraction pipeline, and bound recurrences.

Three sieves shrink a rotation system while fixing structure on a growing
prefix (or suffix):

* separated sieve: with the first s elements separated, delete the smaller
  labels from element s+1's rotation and keep the longest surviving arc of
  larger labels; at most s arcs exist, so the kept size is at least
  ``(s+1) + ceil((n-s-1)/s)``.
* forward sieve: on a separated system with the first s elements forward
  monotone, keep a longest monotone subsequence of element s+1's larger
  block; the kept size is at least ``(s+1) + ceil(sqrt(n-s-1))``.
* backward sieve: the mirror image, processed from the largest label down.

Running the three to completion yields a separated, forward and backward
monotone subsystem.  Each surviving element then has a (forward, backward)
direction pair, four cells in all; inducing on m elements of one cell gives
exactly the canonical family of that cell, which is returned as an
independently checkable certificate.

The worst-case recurrences also run in reverse, giving the least input size
whose guaranteed output reaches a target: ``bound_n1`` for the separated
sieve, ``bound_n2`` for the monotone ones, and their composition
``bound_n0(m) = n1(n2(n2(4m)))``, astronomically large for m >= 2.  All
bound arithmetic is exact; results above a configurable ceiling raise
``BoundOverflowError``.

Every step keeps the *longest* arc or subsequence rather than one of merely
guaranteed length, so practical extraction beats the worst case; the stated
lower bound is still checked on every invocation and a shortfall raises
``AssertionError``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from .canonical import (
    CLASS_ORDER,
    FamilyTag,
    MonotoneClass,
    canonical_of,
    class_of_family,
    family_of_class,
)
from .core import (
    PreconditionError,
    Relabelling,
    RotationError,
    RotationSystem,
    induce,
    order_preserving_relabelling,
    relabel,
)
from .structure import (
    Direction,
    classify_element,
    is_backward_monotone,
    is_forward_monotone,
    is_separated,
    row_separated,
    separated_split,
)


class ExtractionError(RotationError):
    """The pipeline could not assemble a certificate (input below guarantee).

    Carries the per-step ``stage_log`` and the best cell population
    achieved, so callers can report how far the greedy run got.
    """

    def __init__(self, message: str, stage_log: tuple[tuple[str, int], ...],
                 best_count: int, required: int):
        super().__init__(message)
        self.stage_log = stage_log
        self.best_count = best_count
        self.required = required


class BoundOverflowError(RotationError):
    """A bound value exceeds the configured ceiling."""

    def __init__(self, ceiling: int):
        # ceilings can be too large for int-to-str conversion limits, so the
        # message only carries the magnitude
        digits = (ceiling.bit_length() * 30103) // 100000
        super().__init__(f"bound exceeds the configured ceiling (about 10^{digits})")
        self.ceiling = ceiling


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _ceil_sqrt(k: int) -> int:
    return 0 if k <= 0 else isqrt(k - 1) + 1


# ---------------------------------------------------------------------------
# longest monotone subsequence


def longest_monotone_subsequence(
    seq: tuple[int, ...] | list[int],
) -> tuple[Direction, tuple[int, ...]]:
    """The longer of the longest increasing and decreasing subsequences.

    Ties go to increasing, then to the lexicographically smallest index
    set.  Runs in O(k log k).  By the Erdos-Szekeres theorem the result has
    length at least ceil(sqrt(k)) for k distinct entries.
    """
    seq = tuple(seq)
    inc = _lex_least_longest(seq, increasing=True)
    dec = _lex_least_longest(seq, increasing=False)
    if len(inc) >= len(dec):
        return Direction.INC, inc
    return Direction.DEC, dec


def _lex_least_longest(seq: tuple[int, ...], increasing: bool) -> tuple[int, ...]:
    if not seq:
        return ()
    vals = seq if increasing else tuple(-x for x in seq)
    # runs[i] = length of the longest strictly increasing run of vals
    # starting at i; computed right to left by patience on the reversed,
    # negated sequence.
    n = len(vals)
    runs = [0] * n
    tails: list[int] = []  # tails[d] = largest value ending a run of length d+1
    from bisect import bisect_left

    for i in range(n - 1, -1, -1):
        v = -vals[i]
        d = bisect_left(tails, v)
        runs[i] = d + 1
        if d == len(tails):
            tails.append(v)
        else:
            tails[d] = v
    need = max(runs)
    picked: list[int] = []
    last: int | None = None
    for i in range(n):
        if runs[i] == need and (last is None or vals[i] > last):
            picked.append(seq[i])
            last = vals[i]
            need -= 1
            if need == 0:
                break
    return tuple(picked)


# ---------------------------------------------------------------------------
# sieve steps


def _require_separated(system: RotationSystem, labels) -> None:
    for lab in labels:
        p = system.position(lab)
        if not row_separated(system.rows[p], p):
            raise PreconditionError(f"element {lab} is not separated")


def separated_sieve_step(system: RotationSystem, s: int) -> RotationSystem:
    """Extend a separated prefix of s elements to s+1, keeping the longest arc.

    Removing the s smallest labels from element s+1's rotation leaves at
    most s arcs of larger labels; the longest one (ties: the arc whose first
    entry is smallest) is kept together with the first s+1 elements.
    """
    n = system.size
    if s < 1:
        raise PreconditionError("separated sieve needs s >= 1")
    if n <= s + 1:
        raise PreconditionError("nothing left to sieve")
    _require_separated(system, system.labels[:s])
    pivot = system.labels[s]
    rot = system.rotation(pivot)
    length = len(rot)
    arcs: list[tuple[int, ...]] = []
    small_pos = [i for i, x in enumerate(rot) if x < pivot]
    for a, b in zip(small_pos, small_pos[1:] + [small_pos[0] + length]):
        arc = tuple(rot[i % length] for i in range(a + 1, b))
        if arc:
            arcs.append(arc)
    best = min(arcs, key=lambda arc: (-len(arc), arc[0]))
    keep = set(system.labels[: s + 1]) | set(best)
    out = induce(system, keep)
    lower = (s + 1) + _ceil_div(n - s - 1, s)
    if out.size < lower:
        raise AssertionError(
            f"separated sieve produced {out.size} < guaranteed {lower}"
        )
    return out


def find_separated_subsystem(
    system: RotationSystem,
    target: int | None = None,
    *,
    log: list[tuple[str, int]] | None = None,
) -> RotationSystem:
    """Iterate the separated sieve until the whole system is separated.

    The smallest element is separated outright and the largest one
    trivially so, hence the loop stops once the prefix covers everything.
    ``target`` documents the size the caller hopes for; it never changes
    the run, and the result is only guaranteed to reach it when the input
    has at least ``bound_n1(target)`` elements.
    """
    current = system
    s = 1
    while s + 1 < current.size:
        current = separated_sieve_step(current, s)
        if log is not None:
            log.append(("separated", current.size))
        s += 1
    return current


def forward_sieve_step(system: RotationSystem, s: int) -> RotationSystem:
    """Extend a forward monotone prefix of s elements to s+1 on a separated system.

    For s = 0 the pivot's larger block is the whole rotation and has no
    canonical cut; every cut is tried and the one whose longest monotone
    subsequence is longest wins (ties: smallest cut position in the
    canonical linearization).
    """
    return _monotone_sieve_step(system, s, forward=True)


def backward_sieve_step(system: RotationSystem, s: int) -> RotationSystem:
    """Mirror of :func:`forward_sieve_step`, processing largest labels first."""
    return _monotone_sieve_step(system, s, forward=False)


def _monotone_sieve_step(system: RotationSystem, s: int, forward: bool) -> RotationSystem:
    n = system.size
    if s < 0:
        raise PreconditionError("monotone sieve needs s >= 0")
    if n <= s + 1:
        raise PreconditionError("nothing left to sieve")
    if not is_separated(system):
        raise PreconditionError("monotone sieve requires a separated system")
    fixed = system.labels[: s + 1] if forward else system.labels[n - s - 1 :]
    for lab in fixed[:-1] if forward else fixed[1:]:
        cls = classify_element(system, lab)
        block = cls.forward if forward else cls.backward
        if not block:
            raise PreconditionError(
                f"element {lab} is not {'forward' if forward else 'backward'} monotone"
            )
    pivot = system.labels[s] if forward else system.labels[n - 1 - s]
    split = separated_split(system, pivot)
    block = split.tau if forward else split.sigma
    opposite = split.sigma if forward else split.tau
    if opposite:
        _, kept = longest_monotone_subsequence(block)
    else:
        # the block is the entire rotation, cyclic: pick the best cut
        kept = ()
        for cut in range(len(block)):
            linear = block[cut:] + block[:cut]
            _, cand = longest_monotone_subsequence(linear)
            if len(cand) > len(kept):
                kept = cand
    keep = set(fixed) | set(kept)
    out = induce(system, keep)
    lower = (s + 1) + _ceil_sqrt(n - s - 1)
    if out.size < lower:
        raise AssertionError(
            f"monotone sieve produced {out.size} < guaranteed {lower}"
        )
    return out


def find_forward_monotone_subsystem(
    system: RotationSystem,
    target: int | None = None,
    *,
    log: list[tuple[str, int]] | None = None,
) -> RotationSystem:
    """Iterate the forward sieve until every element is forward monotone."""
    if not is_separated(system):
        raise PreconditionError("input must be separated")
    current = system
    s = 0
    while s + 1 < current.size:
        current = forward_sieve_step(current, s)
        if log is not None:
            log.append(("forward", current.size))
        s += 1
    return current


def find_backward_monotone_subsystem(
    system: RotationSystem,
    target: int | None = None,
    *,
    log: list[tuple[str, int]] | None = None,
) -> RotationSystem:
    """Iterate the backward sieve until every element is backward monotone."""
    if not is_separated(system):
        raise PreconditionError("input must be separated")
    current = system
    s = 0
    while s + 1 < current.size:
        current = backward_sieve_step(current, s)
        if log is not None:
            log.append(("backward", current.size))
        s += 1
    return current


# ---------------------------------------------------------------------------
# full pipeline


@dataclass(frozen=True, slots=True)
class ExtractionCertificate:
    """A checkable witness that a canonical family occurs as a subsystem.

    Inducing the original system on ``subset`` and applying ``relabel``
    (the unique order-preserving bijection onto {1..m}) yields exactly
    ``canonical_of(tag, m)``.  ``stage_log`` records the system size after
    every sieve step.
    """

    subset: tuple[int, ...]
    tag: FamilyTag
    relabel: Relabelling
    stage_log: tuple[tuple[str, int], ...]


def find_unavoidable(system: RotationSystem, m: int) -> ExtractionCertificate:
    """Extract a size-m canonical subsystem via sieves plus pigeonhole.

    Runs greedily regardless of input size and raises
    :class:`ExtractionError` only when the most populated direction cell
    ends up with fewer than m members (never for inputs of size at least
    ``bound_n0(m)``, and never for m <= 3 on inputs of size >= m, where any
    m elements induce the unique degenerate-or-size-3 system).
    """
    if not isinstance(m, int) or isinstance(m, bool) or m < 1:
        raise ValueError(f"target size must be a positive integer, got {m!r}")
    log: list[tuple[str, int]] = [("input", system.size)]
    sep = find_separated_subsystem(system, log=log)
    fwd = find_forward_monotone_subsystem(sep, log=log)
    bwd = find_backward_monotone_subsystem(fwd, log=log)
    if not (is_separated(bwd) and is_forward_monotone(bwd) and is_backward_monotone(bwd)):
        raise AssertionError("sieve stages failed to preserve structure")

    members: dict[MonotoneClass, list[int]] = {cell: [] for cell in CLASS_ORDER}
    for lab in bwd.labels:
        cls = classify_element(bwd, lab)
        for cell in CLASS_ORDER:
            if cell.forward in cls.forward and cell.backward in cls.backward:
                members[cell].append(lab)
    best_cell = max(CLASS_ORDER, key=lambda cell: len(members[cell]))
    for cell in CLASS_ORDER:  # first maximal cell in preference order wins
        if len(members[cell]) == len(members[best_cell]):
            best_cell = cell
            break
    best = members[best_cell]
    if bwd.size >= 4 * m and len(best) < m:
        raise AssertionError("pigeonhole bound violated on a size >= 4m system")

    if len(best) >= m:
        subset = tuple(best[:m])  # member lists are in ascending label order
        tag = family_of_class(best_cell)
    elif m <= min(3, bwd.size):
        # any m <= 3 elements induce the unique system of that size, which
        # equals every family; keep the smallest labels and the preferred tag
        subset = tuple(bwd.labels[:m])
        tag = family_of_class(best_cell)
    else:
        log.append(("class", len(best)))
        raise ExtractionError(
            f"best direction cell has {len(best)} members, need {m}",
            tuple(log), len(best), m,
        )
    log.append(("class", len(best)))

    mapping = order_preserving_relabelling(subset, range(1, m + 1))
    induced = relabel(induce(system, subset), mapping.as_dict())
    if induced != canonical_of(tag, m):
        raise AssertionError("extracted subsystem is not the expected family")
    return ExtractionCertificate(subset, tag, mapping, tuple(log))


def verify_certificate(system: RotationSystem, cert: ExtractionCertificate) -> bool:
    """Independently check a certificate against the original system.

    Uses only induction, relabelling and the family constructors, none of
    the sieve code.  Malformed certificates return False rather than raise.
    """
    try:
        subset = tuple(sorted(set(cert.subset)))
        if not subset or subset != tuple(cert.subset):
            return False
        m = len(subset)
        expected = order_preserving_relabelling(subset, range(1, m + 1))
        if cert.relabel != expected:
            return False
        induced = relabel(induce(system, subset), expected.as_dict())
        return induced == canonical_of(cert.tag, m)
    except (RotationError, ValueError):
        return False


# ---------------------------------------------------------------------------
# worst-case bound recurrences

#: Default ceiling for bound values; chosen above the composed bound for
#: m = 1 (a 1619-digit number) and far below anything m >= 2 produces,
#: while keeping every representable value printable under CPython's
#: int-to-str conversion limit.
DEFAULT_CEILING = 10 ** 4000


def simulate_separated_recurrence(n: int) -> int:
    """Final size the separated sieve guarantees from an n-element input."""
    size, s = n, 1
    while s + 1 < size:
        size = (s + 1) + _ceil_div(size - s - 1, s)
        s += 1
    return size


def simulate_monotone_recurrence(n: int) -> int:
    """Final size either monotone sieve guarantees from a separated n-element input."""
    size, s = n, 0
    while s + 1 < size:
        size = (s + 1) + _ceil_sqrt(size - s - 1)
        s += 1
    return size


def _confirm_least(simulate, candidate: int, t: int) -> int:
    # the simulated final size is nondecreasing in n; check it on the two
    # probed points instead of assuming it silently
    got = simulate(candidate)
    if got < t:
        raise AssertionError(f"simulation reached {got} < {t} at n={candidate}")
    if candidate > 1:
        below = simulate(candidate - 1)
        if below > got:
            raise AssertionError("simulated final size is not monotone in n")
        if below >= t:
            raise AssertionError(f"n={candidate} is not least for target {t}")
    return candidate


def bound_n1(t: int, ceiling: int = DEFAULT_CEILING) -> int:
    """Least n whose separated-sieve guarantee reaches final size t.

    Derived by running the worst-case recurrence backwards (the exact
    inverse of :func:`simulate_separated_recurrence`) and confirmed minimal
    by forward simulation at n and n-1.
    """
    if not isinstance(t, int) or isinstance(t, bool) or t < 1:
        raise ValueError(f"target must be a positive integer, got {t!r}")
    if t <= 2:
        return t
    r = 0
    for s in range(t - 2, 0, -1):
        r = s * r + 1
        if r > ceiling:
            raise BoundOverflowError(ceiling)
    candidate = r + 2
    if candidate > ceiling:
        raise BoundOverflowError(ceiling)
    return _confirm_least(simulate_separated_recurrence, candidate, t)


def bound_n2(t: int, ceiling: int = DEFAULT_CEILING) -> int:
    """Least n whose monotone-sieve guarantee reaches final size t."""
    if not isinstance(t, int) or isinstance(t, bool) or t < 1:
        raise ValueError(f"target must be a positive integer, got {t!r}")
    if t <= 2:
        return t
    r = 0
    for _ in range(t - 2, -1, -1):
        r = r * r + 1
        if r > ceiling:
            raise BoundOverflowError(ceiling)
    candidate = r + 1
    if candidate > ceiling:
        raise BoundOverflowError(ceiling)
    return _confirm_least(simulate_monotone_recurrence, candidate, t)


def bound_n0(m: int, ceiling: int = DEFAULT_CEILING) -> int:
    """Composed worst-case input size for extracting a size-m family.

    Equals ``bound_n1(bound_n2(bound_n2(4 m)))``; already for m = 2 this
    exceeds any realistic ceiling (the inner recurrences grow doubly
    exponentially), so expect :class:`BoundOverflowError` there.
    """
    if not isinstance(m, int) or isinstance(m, bool) or m < 1:
        raise ValueError(f"target size must be a positive integer, got {m!r}")
    inner = bound_n2(4 * m, ceiling)
    middle = bound_n2(inner, ceiling)
    return bound_n1(middle, ceiling)
