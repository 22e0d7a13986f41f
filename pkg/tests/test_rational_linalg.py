from fractions import Fraction

import numpy as np
import pytest
import scipy.sparse as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from complexforge.rational_linalg import exact_rank, solve_exact

small_ints = st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=5)


@settings(max_examples=60, deadline=None)
@given(small_ints)
def test_rank_matches_numpy(rows):
    assert exact_rank(rows) == np.linalg.matrix_rank(np.array(rows, dtype=float))


def test_rank_inputs():
    m = np.array([[1, 2], [2, 4]])
    assert exact_rank(m) == exact_rank(sp.csr_matrix(m)) == 1
    assert exact_rank(np.zeros((0, 3))) == 0


def test_solve():
    x = solve_exact([[2, 1], [1, 3]], [Fraction(1), Fraction(2)])
    assert x == [Fraction(1, 5), Fraction(3, 5)]


def test_solve_singular():
    with pytest.raises(ValueError):
        solve_exact([[1, 2], [2, 4]], [1, 2])
