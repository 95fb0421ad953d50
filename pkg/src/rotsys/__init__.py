"""Abstract rotation systems: data model, canonical families, structure
sieves, certificate extraction, exact bound recurrences, and exhaustive
small-size search."""

from .canonical import (
    FAMILY_ORDER,
    FamilyTag,
    MonotoneClass,
    canonical_c,
    canonical_of,
    canonical_t,
    class_of_family,
    family_of_class,
)
from .core import (
    DuplicateLabelError,
    EmptySubsetError,
    InvalidLabelError,
    LabelSetError,
    PreconditionError,
    Relabelling,
    RotationError,
    RotationSystem,
    SelfReferenceError,
    SizeOutOfRangeError,
    UnknownLabelError,
    canonical_cycle,
    cycles_equal,
    equivalent,
    induce,
    invert,
    order_equivalent,
    order_preserving_relabelling,
    relabel,
    validate,
)
from .extraction import (
    DEFAULT_CEILING,
    BoundOverflowError,
    ExtractionCertificate,
    ExtractionError,
    backward_sieve_step,
    bound_n0,
    bound_n1,
    bound_n2,
    find_backward_monotone_subsystem,
    find_forward_monotone_subsystem,
    find_separated_subsystem,
    find_unavoidable,
    forward_sieve_step,
    longest_monotone_subsequence,
    separated_sieve_step,
    simulate_monotone_recurrence,
    simulate_separated_recurrence,
    verify_certificate,
)
from .search import (
    MAX_ENUM_SIZE,
    ContainmentWitness,
    SizeScan,
    ThresholdReport,
    contains_any,
    contains_canonical,
    count_systems,
    enumerate_systems,
    family_orbit_codes,
    iter_systems,
    ramsey_threshold,
    random_separated_system,
    random_system,
)
from .structure import (
    Direction,
    ElementClass,
    SeparatedSplit,
    classify,
    classify_element,
    is_backward_decreasing,
    is_backward_increasing,
    is_backward_monotone,
    is_forward_decreasing,
    is_forward_increasing,
    is_forward_monotone,
    is_separated,
    separated_split,
)
from .sysfile import SystemFileError, load, parse, render, save

__version__ = "0.1.0"
