from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fincat import snf


def _det(mat):
    n = len(mat)
    if n == 0:
        return 1
    a = [[Fraction(x) for x in row] for row in mat]
    out = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != 0), None)
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            out = -out
        out *= a[col][col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for i in range(col + 1, n):
            if a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return out


matrices = st.integers(0, 4).flatmap(
    lambda rows: st.integers(0, 4).flatmap(
        lambda cols: st.lists(
            st.lists(st.integers(-9, 9), min_size=cols, max_size=cols),
            min_size=rows,
            max_size=rows,
        )
    )
)


@settings(max_examples=200, deadline=None)
@given(matrices)
def test_smith_normal_form_properties(mat):
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    u, v, d = snf.smith_normal_form(mat)
    assert snf.mat_mul(snf.mat_mul(u, mat), v) == d
    for i in range(rows):
        for j in range(cols):
            if i != j:
                assert d[i][j] == 0
    diag = [d[i][i] for i in range(min(rows, cols))]
    for i in range(len(diag) - 1):
        assert diag[i] >= 0
        if diag[i] == 0:
            assert diag[i + 1] == 0
        else:
            assert diag[i + 1] % diag[i] == 0
    if rows:
        assert abs(_det(u)) == 1
    if cols:
        assert abs(_det(v)) == 1


@settings(max_examples=100, deadline=None)
@given(matrices)
def test_nullspace_columns_annihilate(mat):
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    if cols == 0:
        return
    basis = snf.integer_nullspace(mat)
    for col in basis:
        assert all(
            sum(mat[i][k] * col[k] for k in range(cols)) == 0 for i in range(rows)
        )


def test_known_invariant_factors():
    u, v, d = snf.smith_normal_form([[2, 0], [0, 3]])
    assert [d[0][0], d[1][1]] == [1, 6]
    u, v, d = snf.smith_normal_form([[4, 0], [0, 2]])
    assert [d[0][0], d[1][1]] == [2, 4]


def test_column_lattice_basis_spans():
    basis = snf.column_lattice_basis([[2, 0], [0, 3], [2, 3]], 2)
    # the lattice contains (2,0) and (0,3); echelon keeps rank 2
    assert len(basis) == 2


def test_integer_inverse_round_trip():
    mat = [[1, 2], [0, 1]]
    inv = snf.integer_inverse(mat)
    assert snf.mat_mul(mat, inv) == [[1, 0], [0, 1]]
    with pytest.raises(ValueError):
        snf.exact_inverse([[1, 1], [1, 1]])
