import hypothesis.strategies as st
from hypothesis import HealthCheck, settings

from rotsys import RotationSystem, canonical_cycle

settings.register_profile(
    "repo",
    max_examples=60,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")


@st.composite
def rotation_systems(draw, min_size=3, max_size=7, dense_labels=False):
    """Arbitrary rotation systems, optionally with non-contiguous labels."""
    n = draw(st.integers(min_size, max_size))
    if dense_labels:
        labels = tuple(range(1, n + 1))
    else:
        labels = tuple(sorted(draw(
            st.sets(st.integers(1, 40), min_size=n, max_size=n)
        )))
    rows = []
    for p, lab in enumerate(labels):
        others = [q for q in range(n) if q != p]
        row = draw(st.permutations(others))
        rows.append(canonical_cycle(tuple(row)))
    return RotationSystem(labels, tuple(rows))
