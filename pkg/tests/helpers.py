"""Independent brute-force oracles used to cross-check the library."""

from itertools import combinations, permutations

from rotsys import Relabelling, RotationSystem, induce, relabel
from rotsys.structure import Direction


def naive_equivalent(a: RotationSystem, b: RotationSystem) -> Relabelling | None:
    """All-bijections equivalence search, no pruning; lex-least witness."""
    if a.size != b.size:
        return None
    best = None
    for images in permutations(a.labels):
        mapping = dict(zip(b.labels, images))
        if relabel(b, mapping) == a:
            if best is None or images < best:
                best = images
    if best is None:
        return None
    return Relabelling.from_mapping(dict(zip(b.labels, best)))


def naive_split(rotation: tuple[int, ...], owner: int):
    """Try every linearization of the cycle for the (smaller, larger) shape."""
    length = len(rotation)
    k = sum(1 for x in rotation if x < owner)
    for cut in range(max(1, length)):
        lin = rotation[cut:] + rotation[:cut]
        if all(x < owner for x in lin[:k]) and all(x > owner for x in lin[k:]):
            return lin[:k], lin[k:]
    return None


def naive_longest_monotone(seq):
    """Exhaustive subsequence search with the library's documented tie-break:
    longer wins, increasing preferred, then lexicographically least index set."""
    n = len(seq)
    for r in range(n, 0, -1):
        for direction in (Direction.INC, Direction.DEC):
            for idx in combinations(range(n), r):
                sub = [seq[i] for i in idx]
                if direction is Direction.INC:
                    ok = all(a < b for a, b in zip(sub, sub[1:]))
                else:
                    ok = all(a > b for a, b in zip(sub, sub[1:]))
                if ok:
                    return direction, tuple(sub)
    return Direction.INC, ()


def naive_contains(system: RotationSystem, targets, m: int):
    """Subset x bijection x family search with no pruning at all."""
    for subset in combinations(system.labels, m):
        sub = induce(system, subset)
        for tag, target in targets:
            for images in permutations(range(1, m + 1)):
                mapping = dict(zip(subset, images))
                if relabel(sub, mapping) == target:
                    return subset, tag, mapping
    return None
