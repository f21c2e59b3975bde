"""Exact elimination tests; coefficients exercise genuine cyclotomic entries."""

import random

import pytest

from coribbon.cyclotomic import CycloScalar, field_degree, one, root_power, zero
from coribbon.linalg import (
    column_space_basis,
    identity_matrix,
    mat_mul,
    mat_vec,
    matrix_det,
    matrix_inverse,
    matrix_rank,
    nullspace,
    row_reduce,
    solve_linear,
    solve_many,
    span_intersection,
    transpose,
)

LEVEL = 5


def random_scalar(rng, level=LEVEL):
    coeffs = [rng.randint(-3, 3) for _ in range(field_degree(level))]
    return CycloScalar(level, coeffs)


def random_matrix(rng, rows, cols, level=LEVEL):
    return [[random_scalar(rng, level) for _ in range(cols)] for _ in range(rows)]


class TestBasics:
    def test_identity_multiplication(self):
        rng = random.Random(7001)
        m = random_matrix(rng, 3, 3)
        assert mat_mul(identity_matrix(LEVEL, 3), m) == m
        assert mat_mul(m, identity_matrix(LEVEL, 3)) == m

    def test_transpose_involution(self):
        rng = random.Random(7002)
        m = random_matrix(rng, 2, 4)
        assert transpose(transpose(m)) == m

    def test_mat_vec_matches_mat_mul(self):
        rng = random.Random(7003)
        m = random_matrix(rng, 3, 2)
        v = [random_scalar(rng) for _ in range(2)]
        assert mat_vec(m, v) == [row[0] for row in mat_mul(m, [[x] for x in v])]

    def test_shape_mismatch_raises(self):
        rng = random.Random(7004)
        with pytest.raises(ValueError, match="do not compose"):
            mat_mul(random_matrix(rng, 2, 3), random_matrix(rng, 2, 2))


class TestRowReduce:
    def test_rank_of_identity(self):
        assert matrix_rank(LEVEL, identity_matrix(LEVEL, 4)) == 4

    def test_rank_of_outer_product_is_one(self):
        rng = random.Random(7010)
        u = [random_scalar(rng) for _ in range(4)]
        v = [random_scalar(rng) for _ in range(4)]
        m = [[a * b for b in v] for a in u]
        assert matrix_rank(LEVEL, m) == 1

    def test_rref_is_idempotent(self):
        rng = random.Random(7011)
        m = random_matrix(rng, 3, 5)
        rref, _, _ = row_reduce(LEVEL, m)
        again, _, _ = row_reduce(LEVEL, rref)
        assert rref == again

    def test_input_not_modified(self):
        rng = random.Random(7012)
        m = random_matrix(rng, 3, 3)
        snapshot = [list(row) for row in m]
        row_reduce(LEVEL, m)
        assert m == snapshot


class TestDeterminant:
    def test_identity(self):
        assert matrix_det(LEVEL, identity_matrix(LEVEL, 3)) == one(LEVEL)

    def test_swap_changes_sign(self):
        rng = random.Random(7020)
        m = random_matrix(rng, 3, 3)
        swapped = [m[1], m[0], m[2]]
        assert matrix_det(LEVEL, swapped) == -matrix_det(LEVEL, m)

    def test_multiplicative(self):
        rng = random.Random(7021)
        a = random_matrix(rng, 3, 3)
        b = random_matrix(rng, 3, 3)
        assert matrix_det(LEVEL, mat_mul(a, b)) == (
            matrix_det(LEVEL, a) * matrix_det(LEVEL, b)
        )

    def test_singular_is_zero(self):
        rng = random.Random(7022)
        row = [random_scalar(rng) for _ in range(3)]
        m = [row, [x * root_power(LEVEL, 2) for x in row],
             [random_scalar(rng) for _ in range(3)]]
        assert matrix_det(LEVEL, m).is_zero()

    def test_empty_matrix(self):
        assert matrix_det(LEVEL, []) == one(LEVEL)

    def test_non_square_raises(self):
        with pytest.raises(ValueError, match="square"):
            matrix_det(LEVEL, [[one(LEVEL), zero(LEVEL)]])


class TestInverseAndSolve:
    def test_inverse_round_trip(self):
        rng = random.Random(7030)
        while True:
            m = random_matrix(rng, 3, 3)
            if not matrix_det(LEVEL, m).is_zero():
                break
        assert mat_mul(m, matrix_inverse(LEVEL, m)) == identity_matrix(LEVEL, 3)
        assert mat_mul(matrix_inverse(LEVEL, m), m) == identity_matrix(LEVEL, 3)

    def test_singular_inverse_raises(self):
        z = zero(LEVEL)
        with pytest.raises(ValueError, match="singular"):
            matrix_inverse(LEVEL, [[z, z], [z, z]])

    def test_solve_reproduces_solution(self):
        rng = random.Random(7031)
        while True:
            m = random_matrix(rng, 3, 3)
            if not matrix_det(LEVEL, m).is_zero():
                break
        x = [random_scalar(rng) for _ in range(3)]
        assert solve_linear(LEVEL, m, mat_vec(m, x)) == x

    def test_underdetermined_solve_is_consistent(self):
        rng = random.Random(7032)
        m = random_matrix(rng, 2, 4)
        x = [random_scalar(rng) for _ in range(4)]
        rhs = mat_vec(m, x)
        found = solve_linear(LEVEL, m, rhs)
        assert mat_vec(m, found) == rhs

    def test_inconsistent_raises(self):
        z, o = zero(LEVEL), one(LEVEL)
        with pytest.raises(ValueError, match="inconsistent"):
            solve_linear(LEVEL, [[o, o], [o, o]], [o, z])

    def test_solve_many_matches_columnwise_solve(self):
        rng = random.Random(7033)
        while True:
            m = random_matrix(rng, 3, 3)
            if not matrix_det(LEVEL, m).is_zero():
                break
        columns = [[random_scalar(rng) for _ in range(3)] for _ in range(4)]
        batch = solve_many(LEVEL, m, columns)
        assert batch == [solve_linear(LEVEL, m, col) for col in columns]

    def test_solve_many_flags_inconsistent_column(self):
        z, o = zero(LEVEL), one(LEVEL)
        m = [[o, o], [o, o]]
        good = [o, o]
        bad = [o, z]
        with pytest.raises(ValueError, match="inconsistent"):
            solve_many(LEVEL, m, [good, bad])

    def test_solve_many_rejects_length_mismatch(self):
        o = one(LEVEL)
        with pytest.raises(ValueError, match="mismatch"):
            solve_many(LEVEL, [[o]], [[o, o]])


class TestNullspaceAndSpans:
    def test_nullspace_vectors_annihilate(self):
        rng = random.Random(7040)
        m = random_matrix(rng, 2, 5)
        basis = nullspace(LEVEL, m)
        assert len(basis) == 5 - matrix_rank(LEVEL, m)
        for vec in basis:
            assert all(entry.is_zero() for entry in mat_vec(m, vec))

    def test_full_rank_square_has_trivial_nullspace(self):
        assert nullspace(LEVEL, identity_matrix(LEVEL, 3)) == []

    def test_column_space_basis_spans_image(self):
        rng = random.Random(7041)
        u = [random_scalar(rng) for _ in range(4)]
        v = [random_scalar(rng) for _ in range(4)]
        m = [[a * b for b in v] for a in u]
        basis = column_space_basis(LEVEL, m)
        assert len(basis) == 1
        # every column is a multiple of the single basis vector
        stacked = basis + [[row[j] for row in m] for j in range(4)]
        assert matrix_rank(LEVEL, stacked) == 1

    def test_span_intersection(self):
        o, z = one(LEVEL), zero(LEVEL)
        e1, e2, e3 = [o, z, z], [z, o, z], [z, z, o]
        both = span_intersection(LEVEL, [e1, e2], [e2, e3])
        assert len(both) == 1
        stacked = both + [e2]
        assert matrix_rank(LEVEL, stacked) == 1

    def test_disjoint_spans_intersect_trivially(self):
        o, z = one(LEVEL), zero(LEVEL)
        assert span_intersection(LEVEL, [[o, z]], [[z, o]]) == []
