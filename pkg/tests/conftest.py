import sys
from pathlib import Path

from hypothesis import HealthCheck, settings, strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from nearbinary.core import Matroid, default_labels, uniform  # noqa: E402
from nearbinary.gf2 import BinaryMatrix, vector_matroid  # noqa: E402
from nearbinary.relaxed import circuit_hyperplanes, relax  # noqa: E402

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@st.composite
def binary_matrices(draw, max_rows=4, max_cols=7, min_cols=1):
    r = draw(st.integers(1, max_rows))
    n = draw(st.integers(min_cols, max_cols))
    cols = draw(st.lists(st.integers(0, (1 << r) - 1), min_size=n, max_size=n))
    return BinaryMatrix(r, tuple(cols), default_labels(n))


@st.composite
def binary_matroids(draw, max_rows=4, max_cols=7, min_cols=1):
    return vector_matroid(draw(binary_matrices(max_rows, max_cols, min_cols)))


@st.composite
def small_matroids(draw, max_cols=7):
    """Binary matroids, uniform matroids and single relaxations of binary ones."""
    kind = draw(st.sampled_from(["binary", "uniform", "relaxed"]))
    if kind == "uniform":
        n = draw(st.integers(1, max_cols))
        return uniform(draw(st.integers(0, n)), n)
    m = draw(binary_matroids(max_cols=max_cols))
    if kind == "relaxed":
        chs = circuit_hyperplanes(m)
        if chs:
            m = relax(m, chs[draw(st.integers(0, len(chs) - 1))])
    return m


def relabelled(m: Matroid, labels) -> Matroid:
    return Matroid(labels, m.bases)
