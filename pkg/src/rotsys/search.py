"""Exhaustive enumeration, containment search, and the threshold experiment.

This is the performance-critical module.  The ground set for exhaustive
work is always {1..n} with n <= 6; each element independently takes one of
(n-2)! cyclic orders, enumerated as permutations of the non-minimal entries
behind a fixed minimal first entry (canonical form is built into the
generator).  Systems are identified with their *digit tuples* (one rotation
index per element) and with the integer *encoding* obtained by reading the
digits most-significant-first in base (n-2)!; ascending encodings equal
lexicographic digit order.

Containment of a size-m canonical family only depends on induced m-subsets
taken up to arbitrary relabelling, so the scan reduces to table lookups:

* the set of size-m systems equivalent to one of the four families is
  materialized once, as integer codes, by applying all m! relabellings to
  each family (at most 4 * 720 systems);
* for every element, rotation index and m-subset, the digit contributed by
  the induced, order-preservingly normalized rotation is precomputed;
* a system then contains a family iff some subset's digit sum hits the
  good-code table, which numpy evaluates for 24^3 systems at a time by
  broadcasting per-axis digit vectors over the last three elements'
  rotation indices.

The full n = 6 space (24^6 = 191 102 976 systems) scans in seconds this
way.  Work is partitioned by the first element's rotation index, so the
scan parallelizes over processes with a deterministic merge: counts are
summed and the counterexample with the least encoding wins.  Reports are
identical for any worker count.

Randomized corpora come from a seeded generator with documented stream
splitting: element j of a size-n draw uses ``sha256("rotsys:<seed>:<n>:<j>")``
as its own Mersenne Twister seed, and shuffles use an explicit
rejection-sampled Fisher-Yates, so outputs are stable across platforms,
Python versions and worker counts.
"""

from __future__ import annotations

import hashlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations, product
from math import factorial
from time import perf_counter
from typing import Callable, Iterator

import numpy as np

from .canonical import FAMILY_ORDER, FamilyTag, canonical_of
from .core import (
    Relabelling,
    RotationSystem,
    SizeOutOfRangeError,
    canonical_cycle,
    equivalent,
    induce,
    relabel,
)

#: Largest ground size the exhaustive drivers accept.
MAX_ENUM_SIZE = 6


def _check_enum_size(n: int, smallest: int = 3) -> None:
    if not isinstance(n, int) or isinstance(n, bool) or not smallest <= n <= MAX_ENUM_SIZE:
        raise SizeOutOfRangeError(
            f"size must be an integer in [{smallest}, {MAX_ENUM_SIZE}], got {n!r}"
        )


@lru_cache(maxsize=None)
def cyclic_orders(n: int, element: int) -> tuple[tuple[int, ...], ...]:
    """All (n-2)! canonical cyclic orders available to ``element`` in {1..n}.

    Index 0 is the fully ascending order; indices follow the lexicographic
    order of the permutation behind the fixed minimal first entry.
    """
    others = [x for x in range(1, n + 1) if x != element]
    head, rest = others[0], others[1:]
    return tuple((head,) + perm for perm in permutations(rest))


@lru_cache(maxsize=None)
def _order_index(n: int, element: int) -> dict[tuple[int, ...], int]:
    return {cyc: i for i, cyc in enumerate(cyclic_orders(n, element))}


def system_from_digits(n: int, digits: tuple[int, ...]) -> RotationSystem:
    """Build the system on {1..n} whose element j uses rotation ``digits[j-1]``."""
    labels = tuple(range(1, n + 1))
    rows = tuple(
        tuple(x - 1 for x in cyclic_orders(n, j)[digits[j - 1]])
        for j in labels
    )
    return RotationSystem(labels, rows)


def digits_of_system(system: RotationSystem) -> tuple[int, ...]:
    """Inverse of :func:`system_from_digits` for systems on {1..n}."""
    n = system.size
    if system.labels != tuple(range(1, n + 1)):
        raise SizeOutOfRangeError("digit encoding needs ground set {1..n}")
    return tuple(
        _order_index(n, j)[system.rotation(j)] for j in system.labels
    )


def encoding_of_digits(n: int, digits: tuple[int, ...]) -> int:
    """Integer encoding: digits read most-significant-first in base (n-2)!."""
    base = factorial(n - 2)
    code = 0
    for d in digits:
        code = code * base + d
    return code


def iter_systems(n: int, first_index: int | None = None) -> Iterator[RotationSystem]:
    """Yield every system on {1..n} in ascending encoding order.

    ``first_index`` restricts the walk to one enumeration partition (a
    fixed rotation index for element 1), the unit of parallel work.
    """
    _check_enum_size(n)
    labels = tuple(range(1, n + 1))
    dense = [
        tuple(tuple(x - 1 for x in cyc) for cyc in cyclic_orders(n, j))
        for j in labels
    ]
    first_choices = dense[0] if first_index is None else (dense[0][first_index],)
    for rows in product(first_choices, *dense[1:]):
        yield RotationSystem(labels, rows)


def enumerate_systems(n: int, visitor: Callable[[RotationSystem], None]) -> int:
    """Visit every system on {1..n} exactly once; returns the visit count.

    The count always equals ((n-2)!)^n.
    """
    count = 0
    for system in iter_systems(n):
        visitor(system)
        count += 1
    return count


def count_systems(n: int) -> int:
    """Closed-form size of the enumeration space (validated against the iterator)."""
    _check_enum_size(n)
    return factorial(n - 2) ** n


# ---------------------------------------------------------------------------
# containment


@dataclass(frozen=True, slots=True)
class ContainmentWitness:
    """An m-subset plus a bijection onto {1..m} hitting a canonical family."""

    subset: tuple[int, ...]
    relabel: Relabelling
    tag: FamilyTag


def contains_canonical(
    system: RotationSystem, tag: FamilyTag, m: int
) -> ContainmentWitness | None:
    """First witness, in deterministic order, that ``tag``'s size-m family occurs.

    Subsets are tried in lexicographic order; within a subset the anchored
    bijection search of :func:`rotsys.core.equivalent` supplies the
    lexicographically least relabelling.
    """
    if not 1 <= m <= system.size:
        raise ValueError(f"need 1 <= m <= {system.size}, got {m}")
    target = canonical_of(tag, m)
    for subset in combinations(system.labels, m):
        witness = equivalent(target, induce(system, subset))
        if witness is not None:
            return ContainmentWitness(subset, witness, tag)
    return None


def contains_any(system: RotationSystem, m: int) -> ContainmentWitness | None:
    """Disjunction of :func:`contains_canonical` over the four families."""
    for tag in FAMILY_ORDER:
        witness = contains_canonical(system, tag, m)
        if witness is not None:
            return witness
    return None


# ---------------------------------------------------------------------------
# vectorized all-systems scan


@lru_cache(maxsize=None)
def family_orbit_codes(m: int) -> frozenset[int]:
    """Integer codes of every size-m system equivalent to one of the families.

    Materialized by relabelling each family with all m! bijections; this is
    exactly the union of the four equivalence classes.
    """
    out = set()
    labels = list(range(1, m + 1))
    for tag in FAMILY_ORDER:
        base = canonical_of(tag, m)
        for perm in permutations(labels):
            mapping = dict(zip(labels, perm))
            image = relabel(base, mapping)
            out.add(encoding_of_digits(m, digits_of_system(image)))
    return frozenset(out)


@lru_cache(maxsize=None)
def _scan_tables(n: int, m: int):
    """Digit-contribution tables and good-code lookup for the (n, m) scan.

    For each m-subset S of {1..n} and each element j in S, ``weights[S][j]``
    maps j's rotation index to ``digit * base**position`` where the digit
    identifies the induced rotation after the order-preserving relabelling
    of S onto {1..m} and the position is j's rank within S (rank 0 most
    significant).  Summing one entry per element of S gives the induced
    system's integer code.
    """
    base = factorial(m - 2)
    if base**m > 10**7:
        # n = m = 6 would need a 24^6 lookup table; the orbit path in
        # _scan_equal_max covers that case instead
        raise SizeOutOfRangeError(f"good-code table too large for m={m}")
    lut = np.zeros(base**m, dtype=bool)
    lut[sorted(family_orbit_codes(m))] = True
    subsets = list(combinations(range(1, n + 1), m))
    tables = []
    for S in subsets:
        rank = {x: q for q, x in enumerate(S)}
        per_element = {}
        for j in S:
            weight = base ** (m - 1 - rank[j])
            idx = _order_index(m, rank[j] + 1)
            keep = set(S) - {j}
            arr = np.empty(factorial(n - 2), dtype=np.int64)
            for r, cyc in enumerate(cyclic_orders(n, j)):
                restricted = tuple(rank[x] + 1 for x in cyc if x in keep)
                arr[r] = idx[canonical_cycle(restricted)] * weight
            per_element[j] = arr
        tables.append((S, per_element))
    return lut, tables


@dataclass(frozen=True, slots=True)
class PartitionScan:
    """Result of scanning one enumeration partition."""

    scanned: int
    all_pass: bool
    counterexample: tuple[int, ...] | None  # digit tuple, least in the partition


def scan_partition(n: int, m: int, first_index: int) -> PartitionScan:
    """Test contains-any-family over one partition of the size-n space.

    Element 1's rotation index is fixed to ``first_index``; elements up to
    n-3 are looped in lexicographic order and the last three axes are
    evaluated as numpy tensors, so the recorded counterexample is the one
    with the least encoding in the partition.
    """
    _check_enum_size(n)
    if not 3 <= m <= n:
        raise SizeOutOfRangeError(f"need 3 <= m <= n, got m={m}")
    k = factorial(n - 2)
    lut, tables = _scan_tables(n, m)
    vector_labels = tuple(range(max(2, n - 2), n + 1))
    loop_labels = tuple(x for x in range(2, n + 1) if x not in vector_labels)
    shape = (k,) * len(vector_labels)

    # per subset: weighted digit tensor over the vector axes, then a cache
    # of good-lookup tensors keyed by the fixed elements' partial code
    prepared = []
    for S, per_element in tables:
        fixed = [j for j in S if j not in vector_labels]
        tensor = np.zeros((1,) * len(vector_labels), dtype=np.int64)
        for axis, lab in enumerate(vector_labels):
            if lab in S:
                ax_shape = [1] * len(vector_labels)
                ax_shape[axis] = k
                tensor = tensor + per_element[lab].reshape(ax_shape)
        prepared.append((fixed, per_element, tensor, {}))

    out = np.empty(shape, dtype=bool)
    scanned = 0
    all_pass = True
    counterexample: tuple[int, ...] | None = None
    block_size = k ** len(vector_labels)
    for assignment in product(range(k), repeat=len(loop_labels)):
        fixed_digits = {1: first_index, **dict(zip(loop_labels, assignment))}
        out[:] = False
        for fixed, per_element, tensor, cache in prepared:
            partial = 0
            for lab in fixed:
                partial += int(per_element[lab][fixed_digits[lab]])
            good = cache.get(partial)
            if good is None:
                good = lut[partial + tensor]
                cache[partial] = good
            out |= good
        scanned += block_size
        if not out.all():
            all_pass = False
            if counterexample is None:
                flat = int(np.argmin(out.reshape(-1)))
                tail = np.unravel_index(flat, shape)
                counterexample = (
                    first_index,
                    *assignment,
                    *(int(t) for t in tail),
                )
    return PartitionScan(scanned, all_pass, counterexample)


def _scan_size(n: int, m: int, jobs: int) -> PartitionScan:
    """Scan the whole size-n space; deterministic merge over partitions."""
    if n == m == MAX_ENUM_SIZE:
        return _scan_equal_max()
    parts = list(range(factorial(n - 2)))
    if jobs <= 1:
        results = [scan_partition(n, m, p) for p in parts]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(scan_partition, [n] * len(parts), [m] * len(parts), parts))
    scanned = sum(r.scanned for r in results)
    all_pass = all(r.all_pass for r in results)
    counterexample = None
    for r in results:  # partitions ascend by first digit: first hit is least
        if r.counterexample is not None:
            counterexample = r.counterexample
            break
    return PartitionScan(scanned, all_pass, counterexample)


def _scan_equal_max() -> PartitionScan:
    """The n = m = 6 case: containment means equivalence to a family.

    The four equivalence classes cover at most 4 * 6! systems out of 24^6,
    so universal containment is decided by cardinality rather than a scan,
    and the counterexample is the least encoding outside the orbit set
    (found by walking encodings from 0).  ``scanned`` reports the systems
    actually visited by that walk.
    """
    n = MAX_ENUM_SIZE
    orbit = family_orbit_codes(n)
    total = count_systems(n)
    all_pass = len(orbit) == total
    counterexample = None
    scanned = 0
    if not all_pass:
        base = factorial(n - 2)
        code = 0
        while code in orbit:
            code += 1
        scanned = code + 1
        digits = []
        rest = code
        for _ in range(n):
            rest, d = divmod(rest, base)
            digits.append(d)
        counterexample = tuple(reversed(digits))
    return PartitionScan(scanned, all_pass, counterexample)


# ---------------------------------------------------------------------------
# threshold experiment


@dataclass(frozen=True, slots=True)
class SizeScan:
    """Outcome of testing every size-n system for family containment."""

    n: int
    scanned: int
    all_pass: bool
    counterexample: RotationSystem | None


@dataclass(frozen=True, slots=True)
class ThresholdReport:
    """Least size at which every system contains a size-m family, if any.

    ``threshold`` is the least scanned n where all systems pass, absent
    when none does up to ``n_max``.  Each per-size entry keeps the least
    counterexample encoding found, if any.  ``wall_time_ms`` is the only
    field that varies between runs; :meth:`comparable` drops it.
    """

    m: int
    n_max: int
    threshold: int | None
    per_n: tuple[SizeScan, ...]
    wall_time_ms: int

    def comparable(self) -> tuple:
        return (self.m, self.n_max, self.threshold, self.per_n)


def ramsey_threshold(m: int, n_max: int, jobs: int = 1) -> ThresholdReport:
    """Exhaustively locate the least n forcing a size-m canonical subsystem.

    Scans n = m..n_max; every reported counterexample is re-verified by the
    direct (non-tabled) containment search before being returned.
    """
    if not isinstance(m, int) or isinstance(m, bool) or m < 3:
        raise SizeOutOfRangeError(f"need m >= 3, got {m!r}")
    _check_enum_size(n_max, smallest=m)
    start = perf_counter()
    per_n = []
    threshold = None
    for n in range(m, n_max + 1):
        scan = _scan_size(n, m, jobs)
        witness_system = None
        if scan.counterexample is not None:
            witness_system = system_from_digits(n, scan.counterexample)
            if contains_any(witness_system, m) is not None:
                raise AssertionError(
                    f"scan reported a false counterexample at n={n}"
                )
        per_n.append(SizeScan(n, scan.scanned, scan.all_pass, witness_system))
        if threshold is None and scan.all_pass:
            threshold = n
    wall_ms = int((perf_counter() - start) * 1000)
    return ThresholdReport(m, n_max, threshold, tuple(per_n), wall_ms)


# ---------------------------------------------------------------------------
# seeded random generation

_M64 = (1 << 64) - 1


class _SplitMix64:
    """SplitMix64 stream; tiny state, portable, cheap to seed per element."""

    __slots__ = ("state",)

    def __init__(self, state: int):
        self.state = state & _M64

    def next64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _M64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _M64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _M64
        return z ^ (z >> 31)


def _element_rng(seed: int, n: int, element: int) -> _SplitMix64:
    digest = hashlib.sha256(f"rotsys:{seed}:{n}:{element}".encode()).digest()
    return _SplitMix64(int.from_bytes(digest[:8], "big"))


def _rand_below(rng: _SplitMix64, bound: int) -> int:
    # rejection sampling on the top bits keeps the draw unbiased
    bits = bound.bit_length()
    shift = 64 - bits
    while True:
        value = rng.next64() >> shift
        if value < bound:
            return value


def _shuffled(items: list[int], rng: _SplitMix64) -> list[int]:
    out = list(items)
    for i in range(len(out) - 1, 0, -1):
        j = _rand_below(rng, i + 1)
        out[i], out[j] = out[j], out[i]
    return out


def random_system(n: int, seed: int) -> RotationSystem:
    """Uniform random system on {1..n}; deterministic for a fixed seed."""
    if not isinstance(n, int) or isinstance(n, bool) or n < 3:
        raise SizeOutOfRangeError(f"need n >= 3, got {n!r}")
    labels = tuple(range(1, n + 1))
    rows = []
    for j in labels:
        rng = _element_rng(seed, n, j)
        others = [x for x in labels if x != j]
        row = [others[0]] + _shuffled(others[1:], rng)
        rows.append(tuple(x - 1 for x in row))
    return RotationSystem(labels, tuple(rows))


def random_separated_system(n: int, seed: int) -> RotationSystem:
    """Uniform random separated system: per element, a shuffled smaller block
    followed by a shuffled larger block."""
    if not isinstance(n, int) or isinstance(n, bool) or n < 3:
        raise SizeOutOfRangeError(f"need n >= 3, got {n!r}")
    labels = tuple(range(1, n + 1))
    rows = []
    for j in labels:
        rng = _element_rng(seed, n, j)
        sigma = _shuffled([x for x in labels if x < j], rng)
        tau = _shuffled([x for x in labels if x > j], rng)
        rows.append(canonical_cycle(tuple(x - 1 for x in sigma + tau)))
    return RotationSystem(labels, tuple(rows))
