import numpy as np
import pytest
from hypothesis import strategies as st

from gf5lat.gf5 import LinearCode


@st.composite
def gf5_matrices(draw, max_rows=7, max_cols=14, min_rows=1):
    rows = draw(st.integers(min_rows, max_rows))
    cols = draw(st.integers(max(rows, 1), max_cols))
    flat = draw(st.lists(st.integers(0, 4), min_size=rows * cols, max_size=rows * cols))
    return np.array(flat, dtype=np.int64).reshape(rows, cols)


@st.composite
def gf5_codes(draw, max_k=7, max_n=14):
    """Random codes of full rank k <= max_k, length n <= max_n."""
    k = draw(st.integers(1, max_k))
    n = draw(st.integers(k, max_n))
    body = draw(st.lists(st.integers(0, 4), min_size=k * (n - k), max_size=k * (n - k)))
    g = np.hstack([np.eye(k, dtype=np.int64), np.array(body, dtype=np.int64).reshape(k, n - k)])
    perm = draw(st.permutations(range(n)))
    return LinearCode(g[:, list(perm)])


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)
