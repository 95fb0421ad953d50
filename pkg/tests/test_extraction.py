import random
from itertools import permutations

import pytest
from hypothesis import given
import hypothesis.strategies as st

from rotsys import (
    BoundOverflowError,
    DEFAULT_CEILING,
    Direction,
    ExtractionError,
    FamilyTag,
    PreconditionError,
    backward_sieve_step,
    bound_n0,
    bound_n1,
    bound_n2,
    canonical_c,
    canonical_t,
    class_of_family,
    classify_element,
    contains_canonical,
    find_backward_monotone_subsystem,
    find_forward_monotone_subsystem,
    find_separated_subsystem,
    find_unavoidable,
    forward_sieve_step,
    invert,
    is_backward_monotone,
    is_forward_monotone,
    is_separated,
    iter_systems,
    longest_monotone_subsequence,
    random_separated_system,
    random_system,
    separated_sieve_step,
    simulate_monotone_recurrence,
    simulate_separated_recurrence,
    validate,
    verify_certificate,
)

from helpers import naive_longest_monotone

INC, DEC = Direction.INC, Direction.DEC


# ---------------------------------------------------------------------------
# longest monotone subsequence


def test_lms_sorted_input():
    assert longest_monotone_subsequence((1, 2, 3, 4)) == (INC, (1, 2, 3, 4))


def test_lms_example():
    # max monotone length 3, increasing preferred, least index set
    assert longest_monotone_subsequence((3, 1, 4, 2, 5)) == (INC, (3, 4, 5))


def test_lms_empty_and_decreasing():
    assert longest_monotone_subsequence(()) == (INC, ())
    assert longest_monotone_subsequence((9, 4, 2)) == (DEC, (9, 4, 2))


@given(st.lists(st.integers(0, 400), unique=True, max_size=12))
def test_lms_agrees_with_exhaustive_search(seq):
    assert longest_monotone_subsequence(tuple(seq)) == naive_longest_monotone(seq)


def test_lms_erdos_szekeres_length():
    rng = random.Random(7)
    for k in (5, 10, 17, 26):
        for _ in range(40):
            seq = rng.sample(range(100), k)
            _, sub = longest_monotone_subsequence(tuple(seq))
            assert len(sub) * len(sub) >= k


# ---------------------------------------------------------------------------
# sieve steps


def _with_rotation(n, element, rotation):
    raw = {j: tuple(x for x in range(1, n + 1) if x != j) for j in range(1, n + 1)}
    raw[element] = rotation
    return validate(raw)


def test_separated_step_single_small_label_keeps_everything():
    system = _with_rotation(6, 2, (1, 4, 6, 3, 5))
    out = separated_sieve_step(system, 1)
    assert out.size == 6 and out.labels == (1, 2, 3, 4, 5, 6)


def test_separated_step_keeps_longest_arc():
    system = _with_rotation(6, 3, (1, 4, 5, 2, 6))
    out = separated_sieve_step(system, 2)
    assert out.labels == (1, 2, 3, 4, 5)
    assert out.size >= 3 + -(-3 // 2)


def test_separated_step_precondition():
    # element 3 in the prefix is not separated, so s=3 must be rejected
    system = validate({
        1: (2, 3, 4, 5, 6),
        2: (1, 3, 4, 5, 6),
        3: (1, 4, 2, 5, 6),
        4: (1, 2, 3, 5, 6),
        5: (1, 2, 3, 4, 6),
        6: (1, 2, 3, 4, 5),
    })
    with pytest.raises(PreconditionError):
        separated_sieve_step(system, 3)


def test_monotone_steps_keep_monotone_blocks_whole():
    tm = canonical_t(8)
    assert forward_sieve_step(tm, 3).size == 8
    assert backward_sieve_step(tm, 3).size == 8


def test_forward_step_requires_separated():
    bad = validate({
        1: (2, 3, 4, 5),
        2: (1, 3, 4, 5),
        3: (1, 4, 2, 5),
        4: (1, 2, 3, 5),
        5: (1, 2, 3, 4),
    })
    with pytest.raises(PreconditionError):
        forward_sieve_step(bad, 0)


def test_step_lower_bounds_on_random_corpus():
    for seed in range(300):
        system = random_system(9, seed)
        out = separated_sieve_step(system, 1)  # never raises the bound error
        assert out.size >= 2 + (system.size - 2)
        sep = find_separated_subsystem(system)
        s = 0
        cur = sep
        while s + 1 < cur.size:
            nxt = forward_sieve_step(cur, s)
            assert nxt.size >= (s + 1) + _ceil_sqrt(cur.size - s - 1)
            cur = nxt
            s += 1


def _ceil_sqrt(k):
    from math import isqrt

    return 0 if k <= 0 else isqrt(k - 1) + 1


# ---------------------------------------------------------------------------
# finders


def test_find_separated_identity_on_small_and_canonical():
    for system in iter_systems(4):
        assert find_separated_subsystem(system) == system
    cm = canonical_c(9)
    assert find_separated_subsystem(cm) == cm


def test_find_separated_reaches_target_at_bound():
    for t in (3, 4):
        n = bound_n1(t)
        for system in iter_systems(n):
            out = find_separated_subsystem(system, t)
            assert is_separated(out) and out.size >= t
    for t, samples in ((5, 400), (6, 400)):
        n = bound_n1(t)
        for seed in range(samples):
            out = find_separated_subsystem(random_system(n, seed), t)
            assert is_separated(out) and out.size >= t


def test_find_monotone_reaches_target_at_bound():
    for t in (3, 4):
        n = bound_n2(t)
        for seed in range(400):
            system = random_separated_system(n, seed)
            fwd = find_forward_monotone_subsystem(system, t)
            assert is_separated(fwd) and is_forward_monotone(fwd)
            assert fwd.size >= t
            bwd = find_backward_monotone_subsystem(system, t)
            assert is_separated(bwd) and is_backward_monotone(bwd)
            assert bwd.size >= t


def test_backward_pass_preserves_forward_monotonicity():
    for seed in range(200):
        system = random_separated_system(8, seed)
        fwd = find_forward_monotone_subsystem(system)
        bwd = find_backward_monotone_subsystem(fwd)
        assert is_forward_monotone(bwd) and is_backward_monotone(bwd)
        assert is_separated(bwd)


def test_twisted_family_passes_through_unchanged():
    tm = canonical_t(7)
    assert find_forward_monotone_subsystem(tm) == tm
    assert find_backward_monotone_subsystem(tm) == tm


def test_finders_require_separated_input():
    bad = validate({
        1: (2, 3, 4, 5),
        2: (1, 3, 4, 5),
        3: (1, 4, 2, 5),
        4: (1, 2, 3, 5),
        5: (1, 2, 3, 4),
    })
    with pytest.raises(PreconditionError):
        find_forward_monotone_subsystem(bad)
    with pytest.raises(PreconditionError):
        find_backward_monotone_subsystem(bad)


# ---------------------------------------------------------------------------
# pipeline


def test_pipeline_on_convex_input():
    for m in (3, 4):
        cert = find_unavoidable(canonical_c(4 * m), m)
        assert cert.tag is FamilyTag.C
        assert cert.subset == tuple(range(1, m + 1))
        assert verify_certificate(canonical_c(4 * m), cert)


def test_pipeline_m3_succeeds_on_any_input():
    for seed in range(150):
        system = random_system(5, seed)
        cert = find_unavoidable(system, 3)
        assert verify_certificate(system, cert)
    for system in iter_systems(4):
        cert = find_unavoidable(system, 3)
        assert verify_certificate(system, cert)


def test_pipeline_certificates_verify_and_match_cells():
    for seed in range(200):
        system = random_system(12, seed)
        try:
            cert = find_unavoidable(system, 3)
        except ExtractionError:
            continue
        assert verify_certificate(system, cert)
        # the certificate's family cell is visible on the extracted system
        cell = class_of_family(cert.tag)
        from rotsys import induce, relabel, order_preserving_relabelling

        sub = relabel(
            induce(system, cert.subset),
            order_preserving_relabelling(cert.subset, range(1, len(cert.subset) + 1)).as_dict(),
        )
        for label in sub.labels:
            cls = classify_element(sub, label)
            assert cell.forward in cls.forward and cell.backward in cls.backward


def test_pipeline_agrees_with_containment_search():
    for seed in range(60):
        system = random_system(12, seed)
        try:
            cert = find_unavoidable(system, 3)
        except ExtractionError:
            continue
        assert contains_canonical(system, cert.tag, 3) is not None


def test_pipeline_failure_reports_stages():
    # a system whose direction cells stay small: all four cells tie at 2 < 3
    system = validate({
        1: (2, 3, 4), 2: (1, 4, 3), 3: (1, 2, 4), 4: (1, 3, 2),
    })
    with pytest.raises(ExtractionError) as info:
        find_unavoidable(system, 4)
    err = info.value
    assert err.required == 4
    assert err.stage_log[0] == ("input", 4)
    assert err.best_count < 4


def test_verify_certificate_rejects_malformed():
    t5 = canonical_t(5)
    good = find_unavoidable(t5, 5)
    assert good.tag is FamilyTag.T
    assert verify_certificate(t5, good)
    from dataclasses import replace

    assert not verify_certificate(t5, replace(good, tag=FamilyTag.C))
    assert not verify_certificate(t5, replace(good, subset=(1, 2, 3, 4, 9)))
    assert not verify_certificate(canonical_c(4), replace(good, subset=(1, 2, 3, 4, 5)))


# ---------------------------------------------------------------------------
# bounds


def test_bound_values_small():
    assert [bound_n1(t) for t in range(1, 7)] == [1, 2, 3, 4, 6, 12]
    assert [bound_n2(t) for t in range(1, 7)] == [1, 2, 3, 6, 27, 678]


def test_bounds_monotone_and_dominating():
    n1 = [bound_n1(t) for t in range(1, 13)]
    n2 = [bound_n2(t) for t in range(1, 13)]
    assert all(a <= b for a, b in zip(n1, n1[1:]))
    assert all(a <= b for a, b in zip(n2, n2[1:]))
    assert all(v >= t for t, v in enumerate(n1, start=1))
    assert all(v >= t for t, v in enumerate(n2, start=1))


def test_bounds_match_upward_scan():
    def scan_least(sim, t):
        n = 1
        while sim(n) < t:
            n += 1
        return n

    for t in range(1, 11):
        assert bound_n1(t) == scan_least(simulate_separated_recurrence, t)
    for t in range(1, 7):
        assert bound_n2(t) == scan_least(simulate_monotone_recurrence, t)


def test_bound_n0_composition():
    assert bound_n0(1) == bound_n1(bound_n2(bound_n2(4)))
    assert bound_n0(1) >= 4
    with pytest.raises(BoundOverflowError):
        bound_n0(2)
    with pytest.raises(BoundOverflowError):
        bound_n0(5)


def test_bound_ceiling_configurable():
    with pytest.raises(BoundOverflowError):
        bound_n1(100, ceiling=10**6)
    assert bound_n1(100, ceiling=DEFAULT_CEILING) > 10**6


def test_bound_rejects_bad_targets():
    with pytest.raises(ValueError):
        bound_n1(0)
    with pytest.raises(ValueError):
        bound_n2(-3)
    with pytest.raises(ValueError):
        bound_n0(0)
