import pytest
from hypothesis import given
import hypothesis.strategies as st

from rotsys import (
    DuplicateLabelError,
    EmptySubsetError,
    InvalidLabelError,
    LabelSetError,
    SelfReferenceError,
    UnknownLabelError,
    canonical_c,
    canonical_cycle,
    canonical_t,
    cycles_equal,
    equivalent,
    induce,
    invert,
    order_equivalent,
    relabel,
    validate,
)

from conftest import rotation_systems
from helpers import naive_equivalent


def test_validate_accepts_nonrealizable_example():
    raw = {1: (2, 3, 4), 2: (1, 3, 4), 3: (1, 2, 4), 4: (1, 3, 2)}
    system = validate(raw)
    assert system.rotation(4) == (1, 3, 2)


def test_validate_accepts_unique_size3_system():
    system = validate({1: (2, 3), 2: (1, 3), 3: (1, 2)})
    assert system == canonical_c(3)


def test_validate_rejects_duplicate():
    with pytest.raises(DuplicateLabelError):
        validate({1: (2, 3, 3), 2: (1, 3), 3: (1, 2)})


def test_validate_rejects_self_reference():
    with pytest.raises(SelfReferenceError):
        validate({1: (1, 2), 2: (1, 3), 3: (1, 2)})


def test_validate_rejects_wrong_label_set():
    with pytest.raises(LabelSetError):
        validate({1: (2, 5), 2: (1, 3), 3: (1, 2)})


def test_validate_rejects_bad_labels():
    with pytest.raises(InvalidLabelError):
        validate({0: (2,), 2: (0,)})


def test_validate_accepts_degenerate_sizes():
    single = validate({7: ()})
    assert single.size == 1 and single.degenerate
    pair = validate({2: (9,), 9: (2,)})
    assert pair.rotation(2) == (9,)


def test_canonical_cycle_idempotent():
    seq = (4, 7, 2, 9)
    once = canonical_cycle(seq)
    assert once[0] == 2
    assert canonical_cycle(once) == once
    assert cycles_equal(seq, once)


def test_induce_full_set_is_identity():
    c4 = canonical_c(4)
    assert induce(c4, {1, 2, 3, 4}) == c4


def test_induce_drops_labels_preserving_cyclic_order():
    got = induce(canonical_c(4), {1, 2, 4})
    assert got.rotations() == {1: (2, 4), 2: (1, 4), 4: (1, 2)}
    # equals the size-3 family after the order-preserving relabel 4 -> 3
    assert order_equivalent(canonical_c(3), got)


def test_induce_errors():
    with pytest.raises(EmptySubsetError):
        induce(canonical_c(4), ())
    with pytest.raises(UnknownLabelError):
        induce(canonical_c(4), {1, 9})


@given(rotation_systems(max_size=6), st.data())
def test_induce_composition(system, data):
    mid = data.draw(st.sets(st.sampled_from(system.labels), min_size=1))
    inner = data.draw(st.sets(st.sampled_from(sorted(mid)), min_size=1))
    assert induce(induce(system, mid), inner) == induce(system, inner)


def test_invert_example():
    assert invert(canonical_c(4)).rotation(4) == (1, 3, 2)


def test_invert_size3_fixed_point():
    s3 = validate({1: (2, 3), 2: (1, 3), 3: (1, 2)})
    assert invert(s3) == s3


@given(rotation_systems(max_size=7))
def test_invert_involution(system):
    assert invert(invert(system)) == system


@given(rotation_systems(max_size=6), st.data())
def test_invert_commutes_with_induce(system, data):
    subset = data.draw(st.sets(st.sampled_from(system.labels), min_size=1))
    assert invert(induce(system, subset)) == induce(invert(system), subset)


def test_equivalent_size3_families_coincide():
    w = equivalent(canonical_c(3), canonical_t(3))
    assert w is not None
    assert w.image_tuple == (1, 2, 3)


@given(rotation_systems(max_size=6))
def test_equivalent_reflexive_identity_witness(system):
    w = equivalent(system, system)
    assert w is not None
    assert w.image_tuple == system.labels


def test_equivalent_c4_with_its_inverse():
    # decided by the exhaustive bijection search: a witness exists
    w = equivalent(canonical_c(4), invert(canonical_c(4)))
    assert w is not None
    assert relabel(invert(canonical_c(4)), w.as_dict()) == canonical_c(4)
    assert naive_equivalent(canonical_c(4), invert(canonical_c(4))) == w


def test_equivalent_size_mismatch():
    assert equivalent(canonical_c(3), canonical_c(4)) is None


@given(rotation_systems(max_size=5), rotation_systems(max_size=5))
def test_equivalent_agrees_with_naive_oracle(a, b):
    assert equivalent(a, b) == naive_equivalent(a, b)


@given(rotation_systems(max_size=6, dense_labels=True), st.permutations(list(range(1, 7))))
def test_equivalent_symmetry_and_transitivity(system, perm):
    mapping = dict(zip(system.labels, perm[: system.size]))
    # the permuted image may collide with used labels; remap injectively
    used = sorted(set(mapping.values()))
    mapping = {k: used.index(v) + 1 for k, v in mapping.items()}
    other = relabel(system, mapping)
    w = equivalent(system, other)
    assert w is not None
    # symmetric witness inverts
    back = w.inverse()
    assert relabel(system, back.as_dict()) == other
    # transitive witnesses compose (system ~ other ~ system)
    w2 = equivalent(other, system)
    assert w2 is not None
    composed = {lab: w2.as_dict()[w.as_dict()[lab]] for lab in other.labels}
    assert relabel(other, composed) == other


def test_reversal_relabelling_facts():
    # order reversal turns the convex family into its inverse and fixes the
    # twisted family; frozen from direct computation
    for m in range(3, 9):
        rev = {x: m + 1 - x for x in range(1, m + 1)}
        assert relabel(canonical_c(m), rev) == invert(canonical_c(m))
        assert relabel(canonical_t(m), rev) == canonical_t(m)


def test_order_equivalent_vs_unrestricted():
    c4, t4 = canonical_c(4), canonical_t(4)
    assert not order_equivalent(c4, t4)
    assert equivalent(c4, t4) is not None  # swap 3 and 4 is a witness
    assert equivalent(canonical_c(5), canonical_t(5)) is None
