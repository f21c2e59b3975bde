"""Comodule-layer tests: coaction axioms for every constructed comodule,
truncated tensor products against the fusion rules, braiding/twist/duality
maps against the recoupling eigenvalues, and the unit-object trace against
the quantum dimensions and the categorical composite."""

import random

import pytest

from coribbon.cyclotomic import CycloScalar, one, zero
from coribbon.linalg import identity_matrix, mat_mul, matrix_rank
from coribbon.weak_hopf import BasisVector, add_elements, algebra, prune
from coribbon.comodules import (
    Comodule,
    associator_inverse_map,
    associator_map,
    braiding_inverse_map,
    braiding_map,
    coassociativity_defect,
    coev_map,
    comodule_trace,
    counit_defect,
    dual_comodule,
    endomorphism_basis,
    ev_map,
    irreducible_comodule,
    kron,
    ribbon_map,
    tensor_morphism,
    truncated_tensor,
    truncation_idempotent,
    unit_comodule,
    unit_endomorphism_scalar,
    unit_left_inverse,
    unit_left_map,
    unit_right_inverse,
    unit_right_map,
)


def rational(level, value):
    return CycloScalar.from_rational(level, value)


def compose(*maps):
    out = maps[0]
    for factor in maps[1:]:
        out = mat_mul(out, factor)
    return out


def fusion_channels(tab, a, b):
    return [c for c in tab.labels if tab.admissible(a, b, c)]


def irreducibles(wha):
    return {j: irreducible_comodule(wha, j) for j in wha.tables.labels}


def assert_comodule_axioms(comodule):
    assert counit_defect(comodule) is None
    assert coassociativity_defect(comodule) is None


def random_endomorphism(rng, level, basis):
    size = len(basis[0])
    out = [[zero(level) for _ in range(size)] for _ in range(size)]
    for matrix in basis:
        weight = rational(level, rng.randrange(-3, 4))
        for i in range(size):
            for k in range(size):
                out[i][k] = out[i][k] + weight * matrix[i][k]
    return out


def categorical_trace(wha, unit, comodule, endo):
    """Independent trace: ev ∘ braiding ∘ ((twist∘f) ⊗ id) ∘ coev."""
    level = wha.level
    dual = dual_comodule(comodule)
    pair = truncated_tensor(comodule, dual)
    swapped = truncated_tensor(dual, comodule)
    twisted = mat_mul(ribbon_map(comodule), endo)
    middle = tensor_morphism(
        twisted, identity_matrix(level, dual.dimension), pair, pair
    )
    return unit_endomorphism_scalar(
        unit,
        compose(
            ev_map(comodule, source=swapped, unit=unit),
            braiding_map(comodule, dual, source=pair, target=swapped),
            middle,
            coev_map(comodule, target=pair, unit=unit),
        ),
    )


class TestComoduleAxioms:
    def test_unit_comodule_dimension_is_label_count(self):
        for r in (2, 3, 4, 5):
            assert unit_comodule(algebra(r)).dimension == algebra(r).label_count

    def test_irreducible_dimensions_count_admissible_pairs(self):
        for r in (3, 4):
            wha = algebra(r)
            for j in wha.tables.labels:
                comodule = irreducible_comodule(wha, j)
                assert comodule.dimension == len(wha.tables.admissible_pairs(j))

    def test_axioms_hold_for_unit_irreducibles_duals(self):
        for r in (3, 4):
            wha = algebra(r)
            assert_comodule_axioms(unit_comodule(wha))
            for j in wha.tables.labels:
                comodule = irreducible_comodule(wha, j)
                assert_comodule_axioms(comodule)
                assert_comodule_axioms(dual_comodule(comodule))

    def test_block_one_coaction_frozen(self):
        comodule = irreducible_comodule(algebra(3), 1)
        assert comodule.dimension == 2
        assert comodule.coaction(0) == [
            (0, {BasisVector(1, 1, 0, 0, 1): one(3)}),
            (1, {BasisVector(1, 0, 1, 0, 1): one(3)}),
        ]
        assert comodule.coaction(1) == [
            (0, {BasisVector(1, 1, 0, 1, 0): one(3)}),
            (1, {BasisVector(1, 0, 1, 1, 0): one(3)}),
        ]

    def test_irreducible_coefficients_cover_block(self):
        for r in (3, 4):
            wha = algebra(r)
            for j in wha.tables.labels:
                comodule = irreducible_comodule(wha, j)
                seen = set()
                for col in range(comodule.dimension):
                    for row, element in comodule.coaction(col):
                        (vector,) = element
                        seen.add(vector)
                assert seen == set(wha.block_basis(j))

    def test_irreducible_endomorphisms_are_scalars(self):
        for r in (3, 4):
            wha = algebra(r)
            for j in wha.tables.labels:
                basis = endomorphism_basis(irreducible_comodule(wha, j))
                assert len(basis) == 1, (r, j)

    def test_counit_defect_reports_bad_column(self):
        wha = algebra(3)
        broken = Comodule(wha, 1, {(0, 0): {BasisVector(1, 0, 1, 0, 1): one(3)}})
        assert counit_defect(broken) == (0, 0)

    def test_dual_coefficients_are_antipode_transposes(self):
        wha = algebra(3)
        comodule = irreducible_comodule(wha, 1)
        dual = dual_comodule(comodule)
        assert dual.coefficient(0, 1) == {BasisVector(1, 0, 1, 0, 1): -one(3)}
        for row in range(2):
            for col in range(2):
                assert dual.coefficient(row, col) == prune(
                    wha.antipode(comodule.coefficient(col, row))
                )


class TestTruncation:
    def test_unit_block_pair_at_level_two_is_trivial(self):
        wha = algebra(2)
        unit = unit_comodule(wha)
        block = irreducible_comodule(wha, 0)
        assert truncation_idempotent(unit, block) == [[one(2)]]
        assert truncated_tensor(unit, block).dimension == 1

    def test_projector_idempotent_and_rank_matches_fusion(self):
        for r in (3, 4):
            wha = algebra(r)
            blocks = irreducibles(wha)
            for a in wha.tables.labels:
                for b in wha.tables.labels:
                    product = truncated_tensor(blocks[a], blocks[b])
                    projector = product.projector
                    assert mat_mul(projector, projector) == projector
                    expected = sum(
                        blocks[c].dimension
                        for c in fusion_channels(wha.tables, a, b)
                    )
                    assert product.dimension == expected, (r, a, b)
                    assert matrix_rank(r, projector) == expected
                    assert len(product.embedded_basis) == expected

    def test_block_one_square_rank_frozen(self):
        product = truncated_tensor(
            irreducible_comodule(algebra(3), 1),
            irreducible_comodule(algebra(3), 1),
        )
        # the only fusion channel of 1 with 1 at this level is the unit block
        assert product.dimension == irreducible_comodule(algebra(3), 0).dimension

    def test_induced_coaction_satisfies_axioms(self):
        for r in (3, 4):
            blocks = irreducibles(algebra(r))
            for a in blocks:
                for b in blocks:
                    assert_comodule_axioms(truncated_tensor(blocks[a], blocks[b]))

    def test_character_additive_over_fusion_channels(self):
        for r in (3, 4):
            wha = algebra(r)
            blocks = irreducibles(wha)
            for a in wha.tables.labels:
                for b in wha.tables.labels:
                    product = truncated_tensor(blocks[a], blocks[b])
                    expected = {}
                    for c in fusion_channels(wha.tables, a, b):
                        expected = add_elements(expected, blocks[c].character())
                    assert prune(product.character()) == prune(expected)

    def test_endomorphism_count_matches_channel_count(self):
        for r in (3, 4):
            wha = algebra(r)
            blocks = irreducibles(wha)
            for a in wha.tables.labels:
                for b in wha.tables.labels:
                    product = truncated_tensor(blocks[a], blocks[b])
                    channels = fusion_channels(wha.tables, a, b)
                    assert len(endomorphism_basis(product)) == len(channels)

    def test_construction_is_deterministic(self):
        blocks = irreducibles(algebra(3))
        first = truncated_tensor(blocks[1], blocks[1])
        second = truncated_tensor(blocks[1], blocks[1])
        assert first.projector == second.projector
        assert first.embedded_basis == second.embedded_basis
        assert first._coefficients == second._coefficients

    def test_mixed_level_factors_rejected(self):
        with pytest.raises(ValueError, match="different algebras"):
            truncated_tensor(
                irreducible_comodule(algebra(3), 0),
                irreducible_comodule(algebra(4), 0),
            )


class TestBraiding:
    def test_braiding_invertible_both_ways(self):
        for r in (3, 4):
            wha = algebra(r)
            blocks = irreducibles(wha)
            for a in wha.tables.labels:
                for b in wha.tables.labels:
                    forward = truncated_tensor(blocks[a], blocks[b])
                    backward = truncated_tensor(blocks[b], blocks[a])
                    sigma = braiding_map(
                        blocks[a], blocks[b], source=forward, target=backward
                    )
                    sigma_inv = braiding_inverse_map(
                        blocks[a], blocks[b], source=backward, target=forward
                    )
                    assert mat_mul(sigma_inv, sigma) == identity_matrix(
                        r, forward.dimension
                    )
                    assert mat_mul(sigma, sigma_inv) == identity_matrix(
                        r, backward.dimension
                    )

    def test_default_truncations_give_same_matrix(self):
        wha = algebra(3)
        blocks = irreducibles(wha)
        explicit = braiding_map(
            blocks[0],
            blocks[1],
            source=truncated_tensor(blocks[0], blocks[1]),
            target=truncated_tensor(blocks[1], blocks[0]),
        )
        assert braiding_map(blocks[0], blocks[1]) == explicit

    def test_ribbon_acts_as_twist_eigenvalue_on_blocks(self):
        for r in (3, 4, 5):
            wha = algebra(r)
            for j in wha.tables.labels:
                comodule = irreducible_comodule(wha, j)
                twist = wha.tables.twist(j)
                expected = [
                    [
                        twist if row == col else zero(r)
                        for col in range(comodule.dimension)
                    ]
                    for row in range(comodule.dimension)
                ]
                assert ribbon_map(comodule) == expected, (r, j)

    def test_ribbon_of_product_is_double_braiding_with_twists(self):
        for r in (3, 4):
            wha = algebra(r)
            blocks = irreducibles(wha)
            for a in wha.tables.labels:
                for b in wha.tables.labels:
                    forward = truncated_tensor(blocks[a], blocks[b])
                    backward = truncated_tensor(blocks[b], blocks[a])
                    double = mat_mul(
                        braiding_map(
                            blocks[b], blocks[a], source=backward, target=forward
                        ),
                        braiding_map(
                            blocks[a], blocks[b], source=forward, target=backward
                        ),
                    )
                    twists = tensor_morphism(
                        ribbon_map(blocks[a]),
                        ribbon_map(blocks[b]),
                        forward,
                        forward,
                    )
                    assert mat_mul(double, twists) == ribbon_map(forward)

    def test_double_braiding_trace_matches_modular_matrix(self):
        for r in (3, 4):
            wha = algebra(r)
            blocks = irreducibles(wha)
            qtilde = wha.qtilde_matrix()
            for ia, a in enumerate(wha.tables.labels):
                for ib, b in enumerate(wha.tables.labels):
                    forward = truncated_tensor(blocks[a], blocks[b])
                    backward = truncated_tensor(blocks[b], blocks[a])
                    double = mat_mul(
                        braiding_map(
                            blocks[b], blocks[a], source=backward, target=forward
                        ),
                        braiding_map(
                            blocks[a], blocks[b], source=forward, target=backward
                        ),
                    )
                    assert comodule_trace(double, forward) == qtilde[ia][ib]


class TestDuality:
    def test_triangle_identities(self):
        for r in (3, 4):
            wha = algebra(r)
            unit = unit_comodule(wha)
            for j in wha.tables.labels:
                comodule = irreducible_comodule(wha, j)
                dual = dual_comodule(comodule)
                pair = truncated_tensor(comodule, dual)
                swapped = truncated_tensor(dual, comodule)
                ev = ev_map(comodule, source=swapped, unit=unit)
                coev = coev_map(comodule, target=pair, unit=unit)
                size = comodule.dimension

                with_unit = truncated_tensor(unit, comodule)
                left_nested = truncated_tensor(pair, comodule)
                right_nested = truncated_tensor(comodule, swapped)
                unit_after = truncated_tensor(comodule, unit)
                first = compose(
                    unit_right_map(unit_after),
                    tensor_morphism(
                        identity_matrix(r, size), ev, right_nested, unit_after
                    ),
                    associator_map(left_nested, right_nested),
                    tensor_morphism(
                        coev, identity_matrix(r, size), with_unit, left_nested
                    ),
                    unit_left_inverse(with_unit),
                )
                assert first == identity_matrix(r, size), (r, j)

                dual_before = truncated_tensor(dual, unit)
                dual_nested = truncated_tensor(dual, pair)
                swapped_nested = truncated_tensor(swapped, dual)
                dual_after = truncated_tensor(unit, dual)
                second = compose(
                    unit_left_map(dual_after),
                    tensor_morphism(
                        ev, identity_matrix(r, size), swapped_nested, dual_after
                    ),
                    associator_inverse_map(swapped_nested, dual_nested),
                    tensor_morphism(
                        identity_matrix(r, size), coev, dual_before, dual_nested
                    ),
                    unit_right_inverse(dual_before),
                )
                assert second == identity_matrix(r, size), (r, j)

    def test_unit_constraints_invert_exactly(self):
        for r in (3, 4):
            wha = algebra(r)
            unit = unit_comodule(wha)
            for j in wha.tables.labels:
                comodule = irreducible_comodule(wha, j)
                size = comodule.dimension
                before = truncated_tensor(unit, comodule)
                after = truncated_tensor(comodule, unit)
                left = unit_left_map(before)
                left_inv = unit_left_inverse(before)
                right = unit_right_map(after)
                right_inv = unit_right_inverse(after)
                assert mat_mul(left, left_inv) == identity_matrix(r, size)
                assert mat_mul(left_inv, left) == identity_matrix(
                    r, before.dimension
                )
                assert mat_mul(right, right_inv) == identity_matrix(r, size)
                assert mat_mul(right_inv, right) == identity_matrix(
                    r, after.dimension
                )

    def test_associator_inverts_associator(self):
        wha = algebra(3)
        blocks = irreducibles(wha)
        inner = truncated_tensor(blocks[1], blocks[1])
        left = truncated_tensor(inner, blocks[1])
        right = truncated_tensor(blocks[1], inner)
        forward = associator_map(left, right)
        backward = associator_inverse_map(left, right)
        assert mat_mul(backward, forward) == identity_matrix(3, left.dimension)
        assert mat_mul(forward, backward) == identity_matrix(3, right.dimension)


class TestTrace:
    def test_identity_trace_is_quantum_dimension(self):
        for r in (3, 4, 5):
            wha = algebra(r)
            for j in wha.tables.labels:
                comodule = irreducible_comodule(wha, j)
                trace = comodule_trace(
                    identity_matrix(r, comodule.dimension), comodule
                )
                assert trace == wha.tables.dim(j), (r, j)

    def test_identity_trace_values_frozen(self):
        assert comodule_trace(
            identity_matrix(3, 2), irreducible_comodule(algebra(3), 0)
        ) == rational(3, 1)
        assert comodule_trace(
            identity_matrix(3, 2), irreducible_comodule(algebra(3), 1)
        ) == rational(3, -1)

    def test_unit_comodule_identity_trace_is_one(self):
        for r in (3, 4):
            unit = unit_comodule(algebra(r))
            assert comodule_trace(
                identity_matrix(r, unit.dimension), unit
            ) == one(r)

    def test_matches_quantum_character_normalization(self):
        for r in (3, 4, 5):
            wha = algebra(r)
            count = rational(r, wha.label_count)
            for j in wha.tables.labels:
                comodule = irreducible_comodule(wha, j)
                trace = comodule_trace(
                    identity_matrix(r, comodule.dimension), comodule
                )
                assert trace == wha.counit(wha.dual_quantum_character(j)) / count

    def test_cyclic_on_random_endomorphisms(self):
        wha = algebra(4)
        block = irreducible_comodule(wha, 1)
        product = truncated_tensor(block, block)
        basis = endomorphism_basis(product)
        assert len(basis) == 2
        rng = random.Random(21)
        for _ in range(5):
            f = random_endomorphism(rng, 4, basis)
            g = random_endomorphism(rng, 4, basis)
            assert comodule_trace(mat_mul(f, g), product) == comodule_trace(
                mat_mul(g, f), product
            )

    def test_matches_categorical_composite(self):
        rng = random.Random(22)
        for r in (3, 4):
            wha = algebra(r)
            unit = unit_comodule(wha)
            for j in wha.tables.labels:
                comodule = irreducible_comodule(wha, j)
                endo = random_endomorphism(
                    rng, r, endomorphism_basis(comodule)
                )
                assert comodule_trace(endo, comodule) == categorical_trace(
                    wha, unit, comodule, endo
                ), (r, j)
            block = irreducible_comodule(wha, 1)
            product = truncated_tensor(block, block)
            endo = random_endomorphism(rng, r, endomorphism_basis(product))
            assert comodule_trace(endo, product) == categorical_trace(
                wha, unit, product, endo
            ), (r, "product")

    def test_non_morphism_rejected(self):
        wha = algebra(4)
        comodule = irreducible_comodule(wha, 0)
        size = comodule.dimension
        # the projection onto one basis vector does not commute with the
        # coaction, so its "trace" is not a multiple of the unit
        projection = [
            [rational(4, 1 if row == col == 0 else 0) for col in range(size)]
            for row in range(size)
        ]
        with pytest.raises(ValueError, match="multiple of the unit"):
            comodule_trace(projection, comodule)

    def test_unit_endomorphism_scalar_reads_identity(self):
        for r in (3, 4):
            unit = unit_comodule(algebra(r))
            matrix = identity_matrix(r, unit.dimension)
            assert unit_endomorphism_scalar(unit, matrix) == one(r)
            doubled = [[x + x for x in row] for row in matrix]
            assert unit_endomorphism_scalar(unit, doubled) == rational(r, 2)
