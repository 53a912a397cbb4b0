"""Lattice of subspaces: canonical form, lattice laws, orthocomplement."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qlattice.linalg import GR_I, Matrix, hermitian_dot, matmul, rref
from qlattice.subspaces import (
    AmbientMismatch,
    Subspace,
    complement,
    embed,
    join,
    leq,
    meet,
    meet_via_demorgan,
    random_subspace,
)


def span(ambient, *rows):
    return Subspace.from_spanning(Matrix.from_rows(list(rows)), ambient)


@st.composite
def subspaces(draw, ambient=None, max_ambient=4):
    n = ambient if ambient is not None else draw(st.integers(1, max_ambient))
    d = draw(st.integers(0, n))
    seed = draw(st.integers(0, 10**6))
    return random_subspace(n, d, seed)


@st.composite
def subspace_pairs(draw, max_ambient=4):
    n = draw(st.integers(1, max_ambient))
    return draw(subspaces(ambient=n)), draw(subspaces(ambient=n))


@st.composite
def subspace_triples(draw, max_ambient=4):
    n = draw(st.integers(1, max_ambient))
    return tuple(draw(subspaces(ambient=n)) for _ in range(3))


class TestConstruction:
    def test_spanning_canonicalises(self):
        s = span(2, [1, 1], [2, 2])
        assert s.dim == 1
        assert s.basis == Matrix.from_rows([[1, 1]])

    def test_equality_is_set_equality(self):
        assert span(2, [1, 1], [1, -1]) == Subspace.full(2)
        assert span(3, [0, 2, 0]) == span(3, [0, 5, 0])

    def test_zero_and_full(self):
        z = Subspace.zero(3)
        assert z.dim == 0 and z.is_zero() and z.basis.rows == 0
        f = Subspace.full(3)
        assert f.dim == 3 and f.is_full()
        assert f.basis == Matrix.identity(3)

    def test_ambient_mismatch(self):
        with pytest.raises(AmbientMismatch):
            Subspace.from_spanning(Matrix.from_rows([[1, 0]]), 3)
        with pytest.raises(AmbientMismatch):
            join(Subspace.zero(2), Subspace.zero(3))

    @given(subspaces())
    def test_basis_is_canonical_rref(self, s):
        e, rank = rref(s.basis) if s.dim else (s.basis, 0)
        assert rank == s.dim
        if s.dim:
            assert e == s.basis


class TestJoinMeet:
    def test_join_example(self):
        p = span(4, [1, 0, 0, 0], [0, 1, 0, 0])
        r = span(4, [1, 0, 0, 0], [0, 1, 1, 0])
        assert join(p, r) == span(4, [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0])

    def test_meet_of_planes_is_line(self):
        p = span(3, [1, 0, 0], [0, 1, 0])
        q = span(3, [0, 1, 0], [0, 0, 1])
        assert meet(p, q) == span(3, [0, 1, 0])

    def test_meet_of_distinct_lines_is_zero(self):
        p = span(2, [1, 1])
        q = span(2, [1, -1])
        assert meet(p, q).is_zero()

    @given(subspace_pairs())
    @settings(max_examples=80)
    def test_dimension_formula(self, pq):
        p, q = pq
        assert meet(p, q).dim + join(p, q).dim == p.dim + q.dim

    @given(subspace_pairs())
    @settings(max_examples=80)
    def test_meet_routes_agree(self, pq):
        p, q = pq
        assert meet(p, q) == meet_via_demorgan(p, q)

    @given(subspace_pairs())
    def test_leq_meet_consistency(self, pq):
        p, q = pq
        assert leq(p, q) == (meet(p, q) == p)
        assert leq(meet(p, q), p) and leq(p, join(p, q))

    @given(subspace_triples())
    @settings(max_examples=60)
    def test_lattice_axioms(self, pqr):
        p, q, r = pqr
        assert meet(p, q) == meet(q, p) and join(p, q) == join(q, p)
        assert meet(meet(p, q), r) == meet(p, meet(q, r))
        assert join(join(p, q), r) == join(p, join(q, r))
        assert join(p, meet(p, q)) == p and meet(p, join(p, q)) == p

    def test_distributivity_fails_with_three_lines(self):
        p = span(2, [1, 1])
        q = span(2, [1, 0])
        r = span(2, [0, 1])
        lhs = join(p, meet(q, r))
        rhs = meet(join(p, q), join(p, r))
        assert lhs == p and rhs == Subspace.full(2)
        assert lhs != rhs


class TestComplement:
    def test_coordinate_example(self):
        assert complement(span(2, [1, 0])) == span(2, [0, 1])

    def test_complex_line(self):
        # <(1, i), (1, -i)> = 1 + conj(i)(-i) = 0, checked by hand
        assert complement(span(2, [1, GR_I])) == span(2, [1, -GR_I])

    @given(subspaces())
    def test_involution_returns_same_object(self, s):
        assert complement(complement(s)) is s

    @given(subspaces())
    @settings(max_examples=80)
    def test_complement_dimension_and_orthogonality(self, s):
        c = complement(s)
        assert s.dim + c.dim == s.ambient
        for u in s.basis.entries:
            for v in c.basis.entries:
                assert hermitian_dot(u, v).is_zero()

    @given(subspaces())
    def test_meet_with_complement_is_zero(self, s):
        assert meet(s, complement(s)).is_zero()
        assert join(s, complement(s)).is_full()

    @given(subspace_pairs())
    @settings(max_examples=60)
    def test_de_morgan(self, pq):
        p, q = pq
        assert complement(meet(p, q)) == join(complement(p), complement(q))
        assert complement(join(p, q)) == meet(complement(p), complement(q))

    @given(subspace_pairs())
    @settings(max_examples=60)
    def test_orthomodular_law(self, pq):
        p, q = pq
        # p ^ (~p v (p ^ q)) = p ^ q
        assert meet(p, join(complement(p), meet(p, q))) == meet(p, q)

    @given(subspace_triples())
    @settings(max_examples=60)
    def test_modular_law(self, pqr):
        p, q, r = pqr
        lhs = join(meet(p, r), meet(q, r))
        rhs = meet(join(meet(p, r), q), r)
        assert lhs == rhs


class TestEmbed:
    def test_pads_with_block(self):
        p = span(2, [1, 1])
        big = embed(p, 3, Subspace.full(1))
        assert big == span(3, [1, 1, 0], [0, 0, 1])

    def test_zero_pad(self):
        p = span(2, [1, GR_I])
        big = embed(p, 4, Subspace.zero(2))
        assert big.dim == 1
        assert big == span(4, [1, GR_I, 0, 0])

    def test_blocks_must_tile(self):
        with pytest.raises(AmbientMismatch):
            embed(span(2, [1, 0]), 4, Subspace.full(1))

    def test_transported_distributivity_failure(self):
        # the three-line counterexample keeps working after p (+) C^k
        for extra in (1, 2):
            pad = Subspace.full(extra)
            p = embed(span(2, [1, 1]), 2 + extra, pad)
            q = embed(span(2, [1, 0]), 2 + extra, pad)
            r = embed(span(2, [0, 1]), 2 + extra, pad)
            assert join(p, meet(q, r)) != meet(join(p, q), join(p, r))


class TestRandomSubspace:
    def test_deterministic(self):
        a = random_subspace(4, 2, seed=11)
        b = random_subspace(4, 2, seed=11)
        assert a == b and a is not b

    def test_requested_dimension(self):
        for dim in range(5):
            assert random_subspace(4, dim, seed=dim).dim == dim

    def test_full_and_zero_dims(self):
        assert random_subspace(3, 0, seed=1).is_zero()
        assert random_subspace(3, 3, seed=1).is_full()

    def test_dim_out_of_range(self):
        with pytest.raises(AmbientMismatch):
            random_subspace(3, 4, seed=1)
