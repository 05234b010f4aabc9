from __future__ import annotations

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from mapspace.linalg import Echelon, kernel, matrix_rank, rank, solve, vadd

small = st.integers(min_value=-3, max_value=3)


def dense_rank(rows):
    """Plain Gaussian elimination on a dense copy; the oracle for the sparse code."""
    m = [[Fraction(x) for x in r] for r in rows]
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c] / m[r][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
    return r


def as_columns(rows):
    ncols = len(rows[0]) if rows else 0
    return [{i: Fraction(rows[i][j]) for i in range(len(rows)) if rows[i][j]} for j in range(ncols)]


def test_small_ranks():
    assert matrix_rank([[1, 0], [0, 1]]) == 2
    assert matrix_rank([[1, 2], [2, 4]]) == 1
    assert matrix_rank([[0, 0], [0, 0]]) == 0


def test_kernel_of_zero_matrix_is_everything():
    assert len(kernel([{}, {}, {}])) == 3


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5), st.integers(1, 5), st.data())
def test_rank_and_kernel_agree_with_dense_oracle(nr, nc, data):
    rows = [[data.draw(small) for _ in range(nc)] for _ in range(nr)]
    cols = as_columns(rows)
    r = dense_rank(rows)
    assert rank(cols) == r == matrix_rank(rows)
    ks = kernel(cols)
    assert len(ks) == nc - r
    for k in ks:
        total: dict = {}
        for j, c in k.items():
            total = vadd(total, cols[j], c)
        assert total == {}


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_solve_reproduces_target(nr, nc, data):
    rows = [[data.draw(small) for _ in range(nc)] for _ in range(nr)]
    cols = as_columns(rows)
    coeffs = [data.draw(small) for _ in range(nc)]
    target: dict = {}
    for j, c in enumerate(coeffs):
        target = vadd(target, cols[j], c)
    x = solve(cols, target)
    assert x is not None
    back: dict = {}
    for j, c in x.items():
        back = vadd(back, cols[j], c)
    assert back == target


def test_solve_reports_inconsistent_system():
    assert solve([{0: Fraction(1)}], {1: Fraction(1)}) is None


def test_echelon_tracks_combinations():
    e = Echelon(track=True)
    e.add({0: Fraction(1), 1: Fraction(1)}, "u")
    e.add({1: Fraction(1)}, "v")
    assert e.express({0: Fraction(2)}) == {"u": 2, "v": -2}
    assert e.contains({0: Fraction(5), 1: Fraction(-1)})


def test_solve_linear_signals_inconsistency():
    from mapspace.linalg import solve_linear
    cols = [{0: Fraction(1), 1: Fraction(2)}, {0: Fraction(2), 1: Fraction(4)}]
    assert solve_linear(cols, {0: Fraction(1), 1: Fraction(3)}) is None
    x = solve_linear(cols, {0: Fraction(3), 1: Fraction(6)})
    assert x is not None
