import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gorhom.errors import InputShapeError
from gorhom.exactlin import FieldSpec, Mat, fraction_free_rank, rref, solve

F2 = FieldSpec(2)
F101 = FieldSpec(101)
QQ = FieldSpec(0)


def test_fieldspec_rejects_composite_characteristic():
    with pytest.raises(ValueError):
        FieldSpec(6)
    with pytest.raises(ValueError):
        FieldSpec(1)
    FieldSpec(2147483647)  # largest prime below 2^31


def test_scalar_text_roundtrip():
    assert QQ.parse("3/6") == Fraction(1, 2)
    assert QQ.format(Fraction(-4, 8)) == "-1/2"
    assert F101.parse("205") == 3
    assert F101.format(F101.coerce(-1)) == "100"


def test_rref_identity_over_f2():
    res = rref(Mat.identity(F2, 2))
    assert res.rank == 2
    assert res.pivots == (0, 1)
    assert res.matrix == Mat.identity(F2, 2)


def test_rref_duplicate_rows_over_f2():
    res = rref(Mat(F2, [[1, 1], [1, 1]]))
    assert res.rank == 1
    assert res.pivots == (0,)


@pytest.mark.parametrize("seed", range(20))
def test_rref_rank_matches_fraction_free_oracle(seed):
    rng = random.Random(seed)
    m = Mat(F101, [[rng.randrange(101) for _ in range(7)] for _ in range(5)])
    assert rref(m).rank == fraction_free_rank(m)


@pytest.mark.parametrize("seed", range(10))
def test_rref_rank_matches_oracle_over_q(seed):
    rng = random.Random(1000 + seed)
    m = Mat(QQ, [[Fraction(rng.randrange(-6, 7), rng.randrange(1, 5)) for _ in range(6)] for _ in range(4)])
    assert rref(m).rank == fraction_free_rank(m)


def test_solve_identity():
    b = Mat(QQ, [[1, 2], [3, 4]])
    res = solve(Mat.identity(QQ, 2), b)
    assert res.particular == b
    assert res.kernel.cols == 0
    assert res.column_consistent == (True, True)


def test_solve_inconsistent_flagged_per_column():
    a = Mat(QQ, [[1], [0]])
    b = Mat(QQ, [[0, 5], [1, 0]])
    res = solve(a, b)
    assert res.particular is None
    assert res.column_consistent == (False, True)


def test_solve_shape_mismatch():
    with pytest.raises(InputShapeError):
        solve(Mat.identity(F2, 2), Mat.identity(F2, 3))


def brute_force_kernel_dim_f2(a: Mat) -> int:
    """Enumerate all vectors over F_2 and count the kernel."""
    n = a.cols
    count = 0
    for bits in range(1 << n):
        v = Mat.col_vector(F2, [(bits >> i) & 1 for i in range(n)])
        if (a * v).is_zero():
            count += 1
    return count.bit_length() - 1  # log2 of the kernel size


@pytest.mark.parametrize("seed", range(8))
def test_kernel_dim_matches_exhaustive_enumeration(seed):
    rng = random.Random(seed)
    a = Mat(F2, [[rng.randrange(2) for _ in range(6)] for _ in range(4)])
    assert a.kernel_basis().cols == brute_force_kernel_dim_f2(a)


def test_zero_dimension_bookkeeping():
    a = Mat.zeros(F2, 0, 3)
    assert a.cols == 3
    assert a.transpose().rows == 3
    b = Mat.zeros(F2, 3, 0)
    prod = b * a  # 3x0 times 0x3 is the 3x3 zero matrix
    assert prod.rows == 3 and prod.cols == 3 and prod.is_zero()
    assert solve(a, Mat.zeros(F2, 0, 2)).kernel.cols == 3


def _small_fraction():
    return st.builds(Fraction, st.integers(-5, 5), st.integers(1, 4))


@st.composite
def matrices(draw, field):
    rows = draw(st.integers(1, 4))
    cols = draw(st.integers(1, 4))
    if field.characteristic:
        entry = st.integers(0, field.characteristic - 1)
    else:
        entry = _small_fraction()
    data = draw(st.lists(st.lists(entry, min_size=cols, max_size=cols), min_size=rows, max_size=rows))
    return Mat(field, data)


@settings(max_examples=60, deadline=None)
@given(matrices(F101))
def test_rref_is_idempotent_fp(m):
    once = rref(m).matrix
    assert rref(once).matrix == once


@settings(max_examples=60, deadline=None)
@given(matrices(QQ))
def test_rref_is_idempotent_q(m):
    once = rref(m).matrix
    assert rref(once).matrix == once


@settings(max_examples=60, deadline=None)
@given(matrices(QQ))
def test_solve_solutions_are_exact(m):
    b = m * Mat(QQ, [[Fraction(i + 1, j + 2) for j in range(2)] for i in range(m.cols)])
    res = solve(m, b)
    assert res.particular is not None
    assert m * res.particular == b
    k = res.kernel
    assert (m * k).is_zero()
    assert k.cols == m.cols - rref(m).rank


@settings(max_examples=40, deadline=None)
@given(matrices(QQ))
def test_rationals_stay_in_lowest_terms(m):
    from math import gcd

    r = rref(m).matrix
    for row in r.data:
        for x in row:
            assert gcd(x.numerator, x.denominator) == 1
