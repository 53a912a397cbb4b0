"""Exact scalar and matrix layer: arithmetic laws, canonical forms, kernels."""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qlattice.linalg import (
    GR_I,
    GR_ONE,
    GR_ZERO,
    DimensionMismatch,
    GaussianRational,
    Matrix,
    ScalarFormatError,
    conj_transpose,
    format_matrix,
    format_scalar,
    hermitian_dot,
    kernel,
    matmul,
    parse_matrix,
    parse_scalar,
    rref,
    transpose,
)

rationals = st.fractions(
    min_value=-4, max_value=4, max_denominator=3
)
scalars = st.builds(GaussianRational, rationals, rationals)


@st.composite
def matrices(draw, max_rows=4, max_cols=4, entry=scalars):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    rows = [[draw(entry) for _ in range(c)] for _ in range(r)]
    return Matrix.from_rows(rows)


def to_numpy(m: Matrix) -> np.ndarray:
    if m.rows == 0:
        return np.zeros((0, m.cols), dtype=complex)
    return np.array(
        [[complex(e.re) + 1j * complex(e.im) for e in row] for row in m.entries]
    )


def float_rank(m: Matrix) -> int:
    return int(np.linalg.matrix_rank(to_numpy(m))) if m.rows else 0


class TestScalars:
    def test_basic_arithmetic(self):
        i = GR_I
        assert i * i == GaussianRational(-1)
        assert (1 + i) * (1 - i) == GaussianRational(2)
        assert GaussianRational(Fraction(1, 2), 1) + GaussianRational(
            Fraction(1, 2), -1
        ) == GR_ONE
        assert GaussianRational(3, 4) / GaussianRational(3, 4) == GR_ONE

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            GR_ONE / GR_ZERO

    def test_lowest_terms(self):
        z = GaussianRational(Fraction(2, 4), Fraction(-3, -6))
        assert z.re.denominator == 2 and z.re.numerator == 1
        assert z.im.denominator == 2 and z.im.numerator == 1

    @given(scalars, scalars, scalars)
    def test_ring_laws(self, a, b, c):
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c

    @given(scalars)
    def test_field_inverse(self, a):
        if not a.is_zero():
            assert a / a == GR_ONE
            assert a * (GR_ONE / a) == GR_ONE

    @given(scalars, scalars)
    def test_conjugate_is_ring_hom(self, a, b):
        assert (a + b).conjugate() == a.conjugate() + b.conjugate()
        assert (a * b).conjugate() == a.conjugate() * b.conjugate()
        assert a.conjugate().conjugate() == a

    @given(scalars)
    def test_norm2(self, a):
        assert a * a.conjugate() == GaussianRational(a.norm2())
        assert (a.norm2() > 0) == (not a.is_zero())


class TestScalarText:
    @pytest.mark.parametrize(
        "text,value",
        [
            ("0", GR_ZERO),
            ("3", GaussianRational(3)),
            ("-1/2", GaussianRational(Fraction(-1, 2))),
            ("i", GR_I),
            ("-i", -GR_I),
            ("2*i", GaussianRational(0, 2)),
            ("-2/3*i", GaussianRational(0, Fraction(-2, 3))),
            ("1+2*i", GaussianRational(1, 2)),
            ("1-i", GaussianRational(1, -1)),
            ("1/2-3/4*i", GaussianRational(Fraction(1, 2), Fraction(-3, 4))),
        ],
    )
    def test_parse(self, text, value):
        assert parse_scalar(text) == value

    @pytest.mark.parametrize("bad", ["", "x", "1.5", "1+", "i*i", "1//2", "1/0", "+"])
    def test_parse_rejects(self, bad):
        with pytest.raises(ScalarFormatError):
            parse_scalar(bad)

    @given(scalars)
    def test_round_trip(self, z):
        assert parse_scalar(format_scalar(z)) == z

    def test_matrix_round_trip_text(self):
        text = "1 0 1/2-3/4*i\n0 2*i 1"
        m = parse_matrix(text)
        assert parse_matrix(format_matrix(m)) == m

    def test_matrix_bad_row_width(self):
        with pytest.raises(ScalarFormatError, match="line 2"):
            parse_matrix("1 2\n3")

    def test_empty_matrix_needs_cols(self):
        assert parse_matrix("", cols=3).rows == 0
        with pytest.raises(ScalarFormatError):
            parse_matrix("# only a comment\n")


class TestRref:
    def test_frozen_example_complex(self):
        # by hand: r2 <- r2 - 2 r1 kills the second row
        m = Matrix.from_rows([[0, 1, GR_I], [0, 2, GaussianRational(0, 2)]])
        e, rank = rref(m)
        assert rank == 1
        assert e == Matrix.from_rows([[0, 1, GR_I], [0, 0, 0]])

    def test_frozen_example_dependent_rows(self):
        e, rank = rref(Matrix.from_rows([[1, 1], [1, 1]]))
        assert rank == 1
        assert e == Matrix.from_rows([[1, 1], [0, 0]])

    def test_identity_fixed(self):
        m = Matrix.identity(4)
        e, rank = rref(m)
        assert rank == 4 and e == m

    def test_zero_matrix(self):
        m = Matrix.zero(2, 3)
        e, rank = rref(m)
        assert rank == 0 and e == m

    def test_pivot_normalisation(self):
        # complex pivot must become 1 exactly
        m = Matrix.from_rows([[GaussianRational(1, 1), 2]])
        e, rank = rref(m)
        assert rank == 1
        assert e == Matrix.from_rows([[1, GaussianRational(1, -1)]])

    @given(matrices())
    @settings(max_examples=150)
    def test_rank_matches_float_oracle(self, m):
        _, rank = rref(m)
        assert rank == float_rank(m)

    @given(matrices())
    def test_idempotent(self, m):
        e, rank = rref(m)
        e2, rank2 = rref(e)
        assert e2 == e and rank2 == rank

    @given(matrices(), st.randoms(use_true_random=False))
    def test_row_permutation_invariant(self, m, rnd):
        rows = list(m.entries)
        rnd.shuffle(rows)
        assert rref(Matrix(tuple(rows), m.cols))[0] == rref(m)[0]

    @given(matrices(), scalars)
    def test_row_scaling_invariant(self, m, z):
        if z.is_zero():
            return
        scaled = Matrix(
            (tuple(z * e for e in m.entries[0]),) + m.entries[1:], m.cols
        )
        assert rref(scaled)[0] == rref(m)[0]

    @given(matrices())
    def test_echelon_shape(self, m):
        e, rank = rref(m)
        pivots = []
        for i in range(rank):
            row = e.entries[i]
            lead = next(c for c in range(e.cols) if not row[c].is_zero())
            assert row[lead] == GR_ONE
            assert all(e.entries[j][lead].is_zero() for j in range(e.rows) if j != i)
            pivots.append(lead)
        assert pivots == sorted(pivots)
        for i in range(rank, e.rows):
            assert all(x.is_zero() for x in e.entries[i])


class TestKernel:
    def test_frozen_example(self):
        k = kernel(Matrix.from_rows([[1, 0, 1]]))
        assert k == Matrix.from_rows([[1, 0, -1], [0, 1, 0]])

    def test_full_rank_kernel_empty(self):
        k = kernel(Matrix.identity(3))
        assert k.rows == 0 and k.cols == 3

    def test_zero_matrix_kernel_full(self):
        assert kernel(Matrix.zero(2, 3)) == Matrix.identity(3)

    @given(matrices())
    @settings(max_examples=150)
    def test_substitute_back(self, m):
        k = kernel(m)
        if k.rows:
            prod = matmul(m, transpose(k))
            assert all(e.is_zero() for row in prod.entries for e in row)

    @given(matrices())
    def test_rank_nullity(self, m):
        _, rank = rref(m)
        assert kernel(m).rows == m.cols - rank

    @given(matrices())
    def test_kernel_is_canonical(self, m):
        k = kernel(m)
        if k.rows:
            e, rank = rref(k)
            assert rank == k.rows and e == k


class TestConjTranspose:
    def test_example(self):
        m = Matrix.from_rows([[GaussianRational(1, 2), 3]])
        assert conj_transpose(m) == Matrix.from_rows(
            [[GaussianRational(1, -2)], [3]]
        )

    @given(matrices())
    def test_involution(self, m):
        assert conj_transpose(conj_transpose(m)) == m

    @given(matrices())
    def test_rank_preserved(self, m):
        assert rref(m)[1] == rref(conj_transpose(m))[1]


class TestMatmul:
    def test_identity(self):
        m = Matrix.from_rows([[1, GR_I], [2, 3]])
        assert matmul(m, Matrix.identity(2)) == m
        assert matmul(Matrix.identity(2), m) == m

    def test_shape_mismatch(self):
        with pytest.raises(DimensionMismatch):
            matmul(Matrix.identity(2), Matrix.identity(3))

    @given(matrices(max_rows=3, max_cols=3))
    @settings(max_examples=60)
    def test_associative(self, a):
        b = Matrix.identity(a.cols)
        c = Matrix.from_rows(
            [[1 if (i + j) % 2 else 0 for j in range(2)] for i in range(a.cols)]
        )
        assert matmul(matmul(a, b), c) == matmul(a, matmul(b, c))

    def test_hermitian_dot_conjugates_first_argument(self):
        u = (GR_I, GR_ZERO)
        v = (GR_ONE, GR_ONE)
        # <i*e1, e1+e2> = conj(i) * 1 = -i
        assert hermitian_dot(u, v) == -GR_I
        assert hermitian_dot(v, u) == GR_I
